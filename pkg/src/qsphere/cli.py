"""Command line surface: one binary, subcommands per operation.

Every artifact embeds the full session configuration and the schema tag
"qsphere/1"; reruns with identical configuration and seed reproduce the
bytes.  Wall-clock timings never enter artifacts unless asked for, so
they do not break reproducibility.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys

from . import exprs, mkdist, specnorm, suites
from .berezin import Berezin
from .exprs import QExprError, canonical_json
from .gns import GnsContext
from .qhopf import Algebra
from .session import SessionConfig
from .uq_actions import UqActions


class UsageError(Exception):
    pass


class CheckFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_ACTION_LABELS = ("delta1", "delta2", "delta3", "delta4", "deltaK",
                  "deltaKinv", "partialE", "partialF", "partialK",
                  "partialKinv")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="1/2",
                        help="deformation parameter, rational p/r or decimal")
    common.add_argument("--scalar-mode", default="exact",
                        choices=("exact", "float"))
    common.add_argument("--precision", type=int, default=50,
                        help="working digits in float mode")
    common.add_argument("--trunc", type=int, default=200,
                        help="representation size for norm estimates")
    common.add_argument("--M", type=int, default=4, dest="M",
                        help="fuzzy truncation level for search spaces")
    common.add_argument("--theta-grid", type=int, default=16)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=8)
    common.add_argument("--max-iters", type=int, default=150)
    common.add_argument("--gap", type=float, default=0.05,
                        help="estimator-quality gap for probe ratios")
    common.add_argument("--cache-dir", default="",
                        help="cache directory (default: QSPHERE_CACHE)")
    common.add_argument("--format", default="json", choices=("json", "csv"))
    common.add_argument("--out", default="",
                        help="write the artifact to this path instead of stdout")
    common.add_argument("--print-config", action="store_true",
                        help="dump the resolved configuration and exit")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in verify reports "
                             "(non-reproducible)")

    p = _Parser(prog="qsphere", description=__doc__)
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("expand", parents=[common],
                        help="parse an expression and emit its normal form")
    sp.add_argument("--expr", required=True)

    sp = sub.add_parser("haar", parents=[common],
                        help="Haar state of an expression")
    sp.add_argument("--expr", required=True)

    sp = sub.add_parser("coproduct", parents=[common],
                        help="coproduct of an expression")
    sp.add_argument("--expr", required=True)

    sp = sub.add_parser("act", parents=[common],
                        help="apply a derivation or character action")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--action", required=True, choices=_ACTION_LABELS)

    sp = sub.add_parser("berezin", parents=[common],
                        help="level-N transform of a sphere expression")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--N", type=int, required=True)

    sp = sub.add_parser("spectrum", parents=[common],
                        help="transform eigenvalues by spin layer")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--max-spin", type=int, default=4)

    sp = sub.add_parser("lipnorm", parents=[common],
                        help="Lip seminorm estimate with provenance")
    sp.add_argument("--expr", required=True)

    sp = sub.add_parser("dist", parents=[common],
                        help="distance lower bound between the level-N "
                             "state and the counit")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--mode", default="certified",
                    choices=("certified", "heuristic"))

    sp = sub.add_parser("verify", parents=[common],
                        help="run a verification suite, or the trend "
                             "harness over a level range")
    sp.add_argument("--suite", default="",
                    help="suite name or 'all' (see --list-suites)")
    sp.add_argument("--N", default="", dest="n_range",
                    help="level range like 1..5 for the trend harness")
    sp.add_argument("--list-suites", action="store_true")

    sp = sub.add_parser("sweep", parents=[common],
                        help="grid run over (q, N, M) cells, resumable")
    sp.add_argument("--q-list", required=True,
                    help="comma-separated q values, e.g. 1/2,9/10")
    sp.add_argument("--N", required=True, dest="n_range",
                    help="level range like 1..3")
    sp.add_argument("--M-range", required=True,
                    help="search truncation range like 2..4")
    return p


def _config_from(ns) -> SessionConfig:
    try:
        return SessionConfig(
            q_text=ns.q,
            scalar_mode=ns.scalar_mode,
            precision=ns.precision,
            norm_truncation=ns.trunc,
            search_truncation=ns.M,
            theta_grid=ns.theta_grid,
            estimator_gap=ns.gap,
            restarts=ns.restarts,
            max_iters=ns.max_iters,
            seed=ns.seed,
            cache_dir=ns.cache_dir,
            output_format=ns.format,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(ns, text: str) -> None:
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _artifact(cfg: SessionConfig, kind: str, payload: dict) -> dict:
    out = {"schema": "qsphere/1", "kind": kind, "config": cfg.to_obj()}
    out.update(payload)
    return out


def _csv_text(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _fmt_float(v: float) -> str:
    return repr(float(v))


def _parse_range(text: str) -> list:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected like 1..5")


def _parse_expr(alg: Algebra, text: str):
    try:
        return exprs.parse_expression(alg, text)
    except QExprError as exc:
        # message already carries the 1-based line and column
        raise UsageError(str(exc)) from exc


def _scalar_payload(field, value) -> dict:
    out = {"scalar": exprs.scalar_to_obj(value, field)}
    z = complex(value.to_complex())
    out["float"] = z.real if z.imag == 0 else [z.real, z.imag]
    return out


def _element_payload(x) -> dict:
    return {"element": exprs.element_to_obj(x),
            "text": exprs.element_to_text(x)}


def _norm_payload(est: specnorm.NormEstimate) -> dict:
    return {
        "lowerBound": est.lower_bound,
        "upperBound": est.upper_bound,
        "converged": est.converged,
        "iterationConverged": est.iteration_converged,
        "MUsed": est.M_used,
        "thetaGridSize": est.theta_grid_size,
        "ladder": list(est.ladder),
        "thetaValues": list(est.theta_values),
        "notes": list(est.notes),
    }


# -- subcommand bodies -------------------------------------------------------


def _cmd_expand(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    x = _parse_expr(alg, ns.expr)
    _emit(ns, canonical_json(_artifact(cfg, "element", _element_payload(x))))
    return 0


def _cmd_haar(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    x = _parse_expr(alg, ns.expr)
    payload = _scalar_payload(alg.field, alg.haar(x))
    _emit(ns, canonical_json(_artifact(cfg, "haar", payload)))
    return 0


def _cmd_coproduct(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    x = _parse_expr(alg, ns.expr)
    t = alg.coproduct(x)
    terms = []
    for (ml, mr) in sorted(t.terms):
        c = t.terms[(ml, mr)]
        terms.append({
            "left": {"aExp": ml.a_exp, "bExp": ml.b_exp,
                     "bStarExp": ml.bs_exp},
            "right": {"aExp": mr.a_exp, "bExp": mr.b_exp,
                      "bStarExp": mr.bs_exp},
            "coeff": exprs.scalar_to_obj(c, alg.field),
        })
    _emit(ns, canonical_json(_artifact(cfg, "coproduct", {"terms": terms})))
    return 0


def _cmd_act(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    actions = UqActions(alg)
    x = _parse_expr(alg, ns.expr)
    if ns.action == "partialKinv":
        y = actions.partial_action("kinv", x)
    else:
        y = actions.twisted_derivation(ns.action, x)
    payload = _element_payload(y)
    payload["action"] = ns.action
    _emit(ns, canonical_json(_artifact(cfg, "action", payload)))
    return 0


def _cmd_berezin(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    actions = UqActions(alg)
    ber = Berezin(GnsContext(alg, actions))
    x = _parse_expr(alg, ns.expr)
    try:
        y = ber.via_coproduct(x, ns.N)
        top = max(x.sphere_degree(), 1)
        spec = ber.spectrum(ns.N, max_spin=max(top, ns.N))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [(n, float(spec.eigenvalue(n).to_complex().real))
            for n in range(top + 1)]
    if cfg.output_format == "csv":
        _emit(ns, _csv_text(["n", "c"],
                            [(n, _fmt_float(c)) for n, c in rows]))
        return 0
    payload = _element_payload(y)
    payload["N"] = ns.N
    payload["spectrum"] = [
        {"n": n, "c": exprs.scalar_to_obj(spec.eigenvalue(n), alg.field),
         "float": c} for n, c in rows]
    _emit(ns, canonical_json(_artifact(cfg, "berezin", payload)))
    return 0


def _cmd_spectrum(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    actions = UqActions(alg)
    ber = Berezin(GnsContext(alg, actions))
    try:
        spec = ber.spectrum(ns.N, max_spin=max(ns.max_spin, ns.N))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [(n, float(spec.eigenvalue(n).to_complex().real))
            for n in range(ns.max_spin + 1)]
    if cfg.output_format == "csv":
        _emit(ns, _csv_text(["n", "c"],
                            [(n, _fmt_float(c)) for n, c in rows]))
        return 0
    payload = {
        "N": ns.N,
        "spectrum": [
            {"n": n, "c": exprs.scalar_to_obj(spec.eigenvalue(n), alg.field),
             "float": c} for n, c in rows],
    }
    _emit(ns, canonical_json(_artifact(cfg, "spectrum", payload)))
    return 0


def _cmd_lipnorm(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    actions = UqActions(alg)
    x = _parse_expr(alg, ns.expr)
    res = specnorm.lip_norm(actions, x, cfg.norm_truncation,
                            theta_grid=cfg.theta_grid)
    payload = _norm_payload(res.value)
    payload["components"] = {
        k: exprs.element_to_text(v) for k, v in res.components.items()}
    _emit(ns, canonical_json(_artifact(cfg, "lipnorm", payload)))
    return 0


def _cmd_dist(ns, cfg: SessionConfig) -> int:
    alg = cfg.build_algebra()
    actions = UqActions(alg)
    ber = Berezin(GnsContext(alg, actions))
    try:
        prob = mkdist.OptimizationProblem(
            N=ns.N, M=cfg.search_truncation,
            norm_truncation=cfg.norm_truncation, mode=ns.mode,
            restarts=cfg.restarts, max_iters=cfg.max_iters, seed=cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    est = mkdist.estimate_distance(ber, prob)
    payload = {
        "value": est.value,
        "mode": est.mode,
        "N": est.N,
        "M": est.M,
        "normTruncation": est.norm_truncation,
        "certifiedValue": est.certified_value,
        "heuristicValue": est.heuristic_value,
        "degraded": est.degraded,
        "source": est.source,
        "witness": exprs.element_to_obj(est.witness),
        "witnessText": exprs.element_to_text(est.witness),
        "trace": [float(v) for v in est.trace],
    }
    _emit(ns, canonical_json(_artifact(cfg, "distance", payload)))
    return 0


def _trend_check(rows, tol: float) -> bool:
    dist = [r["dist_lb"] for r in rows]
    rmax = [r["max_probe_ratio"] for r in rows]
    ok = all(dist[i + 1] <= dist[i] + tol for i in range(len(dist) - 1))
    ok = ok and all(rmax[i + 1] <= rmax[i] + tol
                    for i in range(len(rmax) - 1))
    ok = ok and not any(r["probe_flagged"] for r in rows)
    return ok


def _cmd_verify(ns, cfg: SessionConfig) -> int:
    if ns.list_suites:
        _emit(ns, "\n".join(sorted(suites.SUITES)) + "\n")
        return 0
    if ns.suite:
        names = sorted(suites.SUITES) if ns.suite == "all" else [ns.suite]
        reports = []
        for name in names:
            try:
                reports.append(suites.run_suite(name, cfg))
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        if len(reports) == 1:
            obj = reports[0].to_obj(include_timings=ns.timings)
        else:
            obj = {"schema": "qsphere/1",
                   "kind": "verify-all",
                   "config": cfg.to_obj(),
                   "suites": [r.to_obj(include_timings=ns.timings)
                              for r in reports]}
        _emit(ns, canonical_json(obj))
        return 0 if all(r.passed for r in reports) else 2
    if ns.n_range:
        levels = _parse_range(ns.n_range)
        rows = suites.theoremb_rows(cfg, levels)
        text = _csv_text(
            ["N", "dist_lb", "max_probe_ratio", "mean_lipSlack"],
            [(r["N"], _fmt_float(r["dist_lb"]),
              _fmt_float(r["max_probe_ratio"]),
              _fmt_float(r["mean_lipSlack"])) for r in rows])
        _emit(ns, text)
        return 0 if _trend_check(rows, cfg.trend_tol) else 2
    raise UsageError("verify needs --suite NAME or --N RANGE")


def _sweep_cell(cfg: SessionConfig, N: int, M: int) -> dict:
    alg = cfg.build_algebra()
    actions = UqActions(alg)
    ber = Berezin(GnsContext(alg, actions))
    prob = mkdist.OptimizationProblem(
        N=N, M=M, norm_truncation=cfg.norm_truncation, mode="certified",
        restarts=cfg.restarts, max_iters=cfg.max_iters, seed=cfg.seed)
    est = mkdist.estimate_distance(ber, prob)
    ratios, slacks = [], []
    for p in mkdist.default_probes(alg):
        rep = mkdist.approx_inequality_check(ber, p, N, est,
                                             cfg.norm_truncation,
                                             gap=cfg.estimator_gap)
        ratios.append(rep.ratio)
        app = mkdist.theorem_b_approximant(ber, p, N,
                                           truncation=cfg.norm_truncation)
        slacks.append(app.lip_slack)
    spec = ber.spectrum(N, max_spin=max(3, N))
    cs = [float(spec.eigenvalue(n).to_complex().real) for n in range(4)]
    return {
        "q": cfg.q_text, "N": N, "M": M,
        "dist_lb": est.value,
        "dist_heuristic": est.heuristic_value,
        "max_probe_ratio": max(ratios),
        "mean_lipSlack": sum(slacks) / len(slacks),
        "c0": cs[0], "c1": cs[1], "c2": cs[2], "c3": cs[3],
        "status": "ok",
    }


def _cmd_sweep(ns, cfg: SessionConfig) -> int:
    q_texts = [t.strip() for t in ns.q_list.split(",") if t.strip()]
    if not q_texts:
        raise UsageError("empty --q-list")
    levels = _parse_range(ns.n_range)
    m_values = _parse_range(ns.M_range)

    cache_dir = cfg.resolved_cache_dir()
    os.makedirs(cache_dir, exist_ok=True)

    rows = []
    for q_text in q_texts:
        try:
            qcfg = cfg.with_q(q_text)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        for N in levels:
            for M in m_values:
                key_src = canonical_json({
                    "cell": [q_text, N, M],
                    "config": {k: v for k, v in qcfg.to_obj().items()
                               if k not in ("cacheDir", "outputFormat")},
                })
                key = hashlib.sha256(key_src.encode()).hexdigest()[:24]
                path = os.path.join(cache_dir, f"sweep-{key}.json")
                if os.path.exists(path):
                    with open(path, encoding="utf-8") as fh:
                        rows.append(json.load(fh))
                    continue
                try:
                    row = _sweep_cell(qcfg, N, M)
                except Exception as exc:  # flagged row, run continues
                    row = {"q": q_text, "N": N, "M": M,
                           "dist_lb": "", "dist_heuristic": "",
                           "max_probe_ratio": "", "mean_lipSlack": "",
                           "c0": "", "c1": "", "c2": "", "c3": "",
                           "status": f"error: {exc}"}
                else:
                    with open(path, "w", encoding="utf-8") as fh:
                        fh.write(canonical_json(row))
                rows.append(row)

    header = ["q", "N", "M", "dist_lb", "dist_heuristic",
              "max_probe_ratio", "mean_lipSlack", "c0", "c1", "c2", "c3",
              "status"]
    csv_rows = []
    for r in rows:
        csv_rows.append([
            r["q"], r["N"], r["M"],
            _fmt_float(r["dist_lb"]) if r["dist_lb"] != "" else "",
            _fmt_float(r["dist_heuristic"])
            if r["dist_heuristic"] != "" else "",
            _fmt_float(r["max_probe_ratio"])
            if r["max_probe_ratio"] != "" else "",
            _fmt_float(r["mean_lipSlack"])
            if r["mean_lipSlack"] != "" else "",
            _fmt_float(r["c0"]) if r["c0"] != "" else "",
            _fmt_float(r["c1"]) if r["c1"] != "" else "",
            _fmt_float(r["c2"]) if r["c2"] != "" else "",
            _fmt_float(r["c3"]) if r["c3"] != "" else "",
            r["status"],
        ])
    _emit(ns, _csv_text(header, csv_rows))
    return 0


_COMMANDS = {
    "expand": _cmd_expand,
    "haar": _cmd_haar,
    "coproduct": _cmd_coproduct,
    "act": _cmd_act,
    "berezin": _cmd_berezin,
    "spectrum": _cmd_spectrum,
    "lipnorm": _cmd_lipnorm,
    "dist": _cmd_dist,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise UsageError("a subcommand is required")
        cfg = _config_from(ns)
        if ns.print_config:
            _emit(ns, canonical_json(
                {"schema": "qsphere/1", "kind": "config",
                 "config": cfg.to_obj()}))
            return 0
        return _COMMANDS[ns.command](ns, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (QExprError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

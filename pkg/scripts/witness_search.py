#!/usr/bin/env python3
"""Single distance search with the full optimizer trace.

Shows the witness element, both objective flavours, and how the best
value improved across iterations.

    python3 scripts/witness_search.py --q 1/2 --N 2 --M 3 --mode certified
"""

import argparse
import sys

from qsphere import Berezin, GnsContext, UqActions
from qsphere.exprs import element_to_text
from qsphere.mkdist import OptimizationProblem, estimate_distance
from qsphere.session import SessionConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="1/2")
    ap.add_argument("--N", type=int, default=1)
    ap.add_argument("--M", type=int, default=3)
    ap.add_argument("--mode", default="certified",
                    choices=("certified", "heuristic"))
    ap.add_argument("--trunc", type=int, default=150)
    ap.add_argument("--restarts", type=int, default=6)
    ap.add_argument("--max-iters", type=int, default=120)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()

    cfg = SessionConfig(q_text=ns.q)
    alg = cfg.build_algebra()
    ber = Berezin(GnsContext(alg, UqActions(alg)))
    prob = OptimizationProblem(N=ns.N, M=ns.M, norm_truncation=ns.trunc,
                               mode=ns.mode, restarts=ns.restarts,
                               max_iters=ns.max_iters, seed=ns.seed)
    est = estimate_distance(ber, prob)

    print(f"q={ns.q} N={ns.N} M={ns.M} mode={ns.mode}")
    print(f"value      {est.value:.10f}")
    print(f"certified  {est.certified_value:.10f}")
    print(f"heuristic  {est.heuristic_value:.10f}")
    print(f"source     {est.source}  degraded={est.degraded}")
    print(f"witness    {element_to_text(est.witness)}")
    if est.trace:
        stride = max(1, len(est.trace) // 12)
        print("trace:")
        for i in range(0, len(est.trace), stride):
            print(f"  iter {i:>4}  best {est.trace[i]:.10f}")
        print(f"  iter {len(est.trace) - 1:>4}  best {est.trace[-1]:.10f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Numerical operator norms for the quantum group and the sphere.

For 0 < q < 1 every element is represented on the weighted-shift model
(a acts as a raising shift with weights sqrt(1 - q^(2n+2)), b as the
diagonal e^(i theta) q^n); truncating to M dimensions gives compression
norms that increase monotonically to the true norm.  At q = 1 the
algebra is commutative and elements are evaluated on an angle grid
instead; that path reports itself as grid-resolution-limited.

Lower bounds come from a block subspace iteration on the normal matrix,
upper bounds from the crude coefficient-sum estimate.  The Gram oracle
at the bottom reaches the same Lip seminorm through Haar inner products
alone, with no representation matrices, which is what makes it an
independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import mpmath
import numpy as np
from scipy import sparse

from .qhopf import Algebra, AlgebraElement, Monomial
from .uq_actions import UqActions

_POWER_TOL = 1e-12
_POWER_MAXIT = 100_000


@dataclass
class RepTruncation:
    """One truncated irreducible representation: dimension and gauge."""

    q: float
    M: int
    theta: float = 0.0

    def __post_init__(self):
        if not (0 < self.q < 1):
            raise ValueError("shift model needs 0 < q < 1, got %r" % (self.q,))
        if self.M < 2:
            raise ValueError("truncation dimension must be at least 2")


@dataclass
class NormEstimate:
    lower_bound: float
    upper_bound: float
    converged: bool
    M_used: int
    theta_grid_size: int
    ladder: tuple = ()
    theta_values: tuple = ()
    iteration_converged: bool = True
    notes: tuple = ()

    def __post_init__(self):
        if self.lower_bound > self.upper_bound + 1e-9 * max(1.0, self.upper_bound):
            raise AssertionError("lower bound %g exceeds upper bound %g"
                                 % (self.lower_bound, self.upper_bound))


@dataclass
class LipResult:
    value: NormEstimate
    components: dict


def coefficient_sum_bound(x: AlgebraElement) -> float:
    """Crude norm upper bound: every generator image is a contraction."""
    return float(sum(abs(c.to_complex()) for c in x.terms.values()))


# -- weighted-shift model (0 < q < 1) ---------------------------------------


def _shift_weights(q: float, M: int) -> np.ndarray:
    n = np.arange(M, dtype=float)
    return np.sqrt(np.maximum(0.0, 1.0 - q ** (2 * n)))


def represent_monomial(m: Monomial, trunc: RepTruncation) -> sparse.csr_matrix:
    """Single offset-diagonal matrix of a normal-ordered monomial."""
    q, M, theta = trunc.q, trunc.M, trunc.theta
    k, l, mm = m.a_exp, m.b_exp, m.bs_exp
    n = np.arange(M, dtype=float)
    # b^l b*^m acts first: diagonal q^(n(l+m)) e^(i theta (l-m))
    diag = (q ** (n * (l + mm))) * np.exp(1j * theta * (l - mm))
    w = _shift_weights(q, M)   # w[n] = sqrt(1 - q^(2n))
    if k >= 0:
        # a^k raises by k: factor prod_{j=1..k} w[n+j]
        amp = np.ones(M)
        for j in range(1, k + 1):
            idx = n.astype(int) + j
            amp = amp * np.where(idx < M, w[np.minimum(idx, M - 1)], 0.0)
        vals = diag * amp
        rows = np.arange(k, M)
        cols = np.arange(0, M - k)
        data = vals[: M - k] if k else vals
    else:
        kk = -k
        amp = np.ones(M)
        for j in range(kk):
            idx = n.astype(int) - j
            amp = amp * np.where(idx >= 1, w[np.maximum(idx, 0)], 0.0)
        vals = diag * amp
        rows = np.arange(0, M - kk)
        cols = np.arange(kk, M)
        data = vals[kk:]
    return sparse.csr_matrix((data, (rows, cols)), shape=(M, M))


def represent_generator(name: str, trunc: RepTruncation) -> sparse.csr_matrix:
    table = {
        "a": Monomial(1, 0, 0), "as": Monomial(-1, 0, 0),
        "b": Monomial(0, 1, 0), "bs": Monomial(0, 0, 1),
    }
    if name not in table:
        raise ValueError("unknown generator %r" % (name,))
    return represent_monomial(table[name], trunc)


def represent_element(x: AlgebraElement, trunc: RepTruncation) -> sparse.csr_matrix:
    out = sparse.csr_matrix((trunc.M, trunc.M), dtype=complex)
    for m, c in x.terms.items():
        out = out + represent_monomial(m, trunc) * complex(c.to_complex())
    return out


def relation_residuals(trunc: RepTruncation) -> dict:
    """Defining-relation residuals on interior basis vectors."""
    a = represent_generator("a", trunc)
    b = represent_generator("b", trunc)
    astar = a.getH()
    bstar = b.getH()
    M = trunc.M
    eye = sparse.identity(M, format="csr", dtype=complex)
    q = trunc.q
    rels = {
        "ba=qab": b @ a - q * (a @ b),
        "b*a=qab*": bstar @ a - q * (a @ bstar),
        "bb*=b*b": b @ bstar - bstar @ b,
        "a*a+q2bb*=1": astar @ a + q * q * (b @ bstar) - eye,
        "aa*+bb*=1": a @ astar + b @ bstar - eye,
    }
    out = {}
    interior = M - 2
    for name, mat in rels.items():
        dense = np.abs(mat.toarray())
        out[name] = float(dense[:interior, :interior].max()) if interior > 0 else 0.0
    return out


# -- dominant singular value -------------------------------------------------


def dominant_sigma(mat: sparse.csr_matrix, tol: float = _POWER_TOL,
                   max_iter: int = _POWER_MAXIT) -> tuple:
    """Largest singular value by 2-block subspace iteration on A*A.

    Deterministic seeds (all-ones and alternating signs); returns
    (sigma, converged).  The block of width two keeps nearly degenerate
    leading pairs from stalling the iteration.
    """
    n = mat.shape[1]
    if n == 0:
        return 0.0, True
    ah = mat.getH().tocsr()

    v0 = np.ones(n, dtype=complex)
    v1 = np.array([(-1.0) ** i for i in range(n)], dtype=complex)
    V = np.stack([v0, v1], axis=1)
    V, _ = np.linalg.qr(V)
    lam_prev = -1.0
    converged = False
    for _ in range(max_iter):
        W = ah @ (mat @ V)
        # Rayleigh-Ritz on the 2-dim block
        H = V.conj().T @ W
        H = 0.5 * (H + H.conj().T)
        evals, evecs = np.linalg.eigh(H)
        lam = float(evals[-1])
        if lam <= 0:
            return 0.0, True
        V, _ = np.linalg.qr(W @ evecs[:, ::-1])
        if abs(lam - lam_prev) <= tol * max(1.0, abs(lam)):
            converged = True
            break
        lam_prev = lam
    return math.sqrt(max(lam, 0.0)), converged


# -- theta reduction ----------------------------------------------------------


def _single_theta_suffices(x: AlgebraElement) -> bool:
    """True when the gauge torus makes the compression norm
    theta-independent: either the b-charge l-m is constant across terms
    (theta becomes a global phase) or the element lives in the sphere
    subalgebra, where the a-phase gauge absorbs theta."""
    charges = {m.b_exp - m.bs_exp for m in x.terms}
    if len(charges) <= 1:
        return True
    return all(m.right_degree() == 0 for m in x.terms)


def _theta_grid(g: int) -> list:
    return [2.0 * math.pi * j / g for j in range(g)]


# -- q = 1 commutative grid model ---------------------------------------------


_ETA_POINTS = 65          # includes the midpoint pi/4
_PHASE_POINTS = 64


def _grid_eval(x: AlgebraElement, eta: np.ndarray, alpha: np.ndarray,
               beta: np.ndarray) -> np.ndarray:
    """Evaluate at a = cos(eta) e^(i alpha), b = sin(eta) e^(i beta).

    The arrays broadcast; the result has their common shape.
    """
    out = np.zeros(np.broadcast(eta, alpha, beta).shape, dtype=complex)
    c, s = np.cos(eta), np.sin(eta)
    for m, coeff in x.terms.items():
        k, l, mm = m.a_exp, m.b_exp, m.bs_exp
        val = (c ** abs(k)) * (s ** (l + mm)) * np.exp(
            1j * (k * alpha + (l - mm) * beta))
        out = out + complex(coeff.to_complex()) * val
    return out


def _classical_points(x_list: list, sphere_only: bool,
                      eta_n: int = _ETA_POINTS, phase_n: int = _PHASE_POINTS):
    """Grid evaluations of several elements on a shared grid, flattened."""
    eta = np.linspace(0.0, math.pi / 2, eta_n)
    if sphere_only:
        # right-degree-0 elements depend on the phases only through
        # alpha - beta, so a 2-torus slice carries the full range
        chi = np.linspace(0.0, 2 * math.pi, 2 * phase_n, endpoint=False)
        E, C = np.meshgrid(eta, chi, indexing="ij")
        Z = np.zeros_like(E)
        return [_grid_eval(x, E, C, Z).ravel() for x in x_list]
    alpha = np.linspace(0.0, 2 * math.pi, phase_n, endpoint=False)
    beta = np.linspace(0.0, 2 * math.pi, phase_n, endpoint=False)
    E, Al, Be = np.meshgrid(eta, alpha, beta, indexing="ij")
    return [_grid_eval(x, E, Al, Be).ravel() for x in x_list]


def _classical_norm(x: AlgebraElement) -> float:
    sphere = all(m.right_degree() == 0 for m in x.terms)
    vals = _classical_points([x], sphere)[0]
    return float(np.abs(vals).max()) if vals.size else 0.0


# -- public norm API -----------------------------------------------------------


def default_truncation(x: AlgebraElement) -> int:
    return max(100, 10 * x.total_degree())


def operator_norm(x: AlgebraElement, M: int | None = None,
                  theta_grid: int = 16, rel_tol: float = 1e-8,
                  max_doublings: int = 4, ladder: bool = True) -> NormEstimate:
    """Compression norm of one element, with convergence bookkeeping.

    lower_bound is the max over the theta grid of the dominant singular
    value at the final truncation; ladder=False skips the doubling
    convergence test and reports only iteration convergence.
    """
    alg = x.alg
    upper = coefficient_sum_bound(x)
    if not x.terms:
        return NormEstimate(0.0, 0.0, True, 0, 0)
    q = alg.field.float_q()
    if q == 1.0:
        val = _classical_norm(x)
        return NormEstimate(val, upper, True, _ETA_POINTS, 1,
                            notes=("classical-grid",))
    if M is None:
        M = default_truncation(x)
    M = max(M, x.total_degree() + 2)

    thetas = [0.0] if _single_theta_suffices(x) else _theta_grid(theta_grid)

    def level(Mcur: int, th_list: list):
        vals = []
        it_ok = True
        for th in th_list:
            mat = represent_element(x, RepTruncation(q, Mcur, th))
            sig, ok = dominant_sigma(mat)
            vals.append(sig)
            it_ok = it_ok and ok
        return vals, it_ok

    steps = []
    vals, it_ok = level(M, thetas)
    best = max(vals)
    steps.append((M, best))
    # adaptive halving: a flat theta profile means the gauge argument
    # applies in practice, so later levels drop to a single angle
    if len(thetas) > 1 and max(vals) - min(vals) < 1e-12 * max(1.0, best):
        thetas = [thetas[int(np.argmax(vals))]]
    conv = not ladder
    if ladder:
        for _ in range(max_doublings):
            M2 = 2 * M
            vals2, ok2 = level(M2, thetas)
            it_ok = it_ok and ok2
            best2 = max(vals2)
            steps.append((M2, best2))
            done = abs(best2 - best) <= rel_tol * max(1.0, best2)
            M, best, vals = M2, best2, vals2
            if done:
                conv = True
                break
    lower = min(best, upper)     # guard against roundoff overshoot
    return NormEstimate(lower, upper, conv and it_ok, M, len(thetas),
                        ladder=tuple(steps), theta_values=tuple(vals),
                        iteration_converged=it_ok)


def _block_rep(entries: list, trunc: RepTruncation) -> sparse.csr_matrix:
    """2x2 operator-valued matrix to a 2M x 2M sparse matrix."""
    blocks = [[represent_element(e, trunc) for e in row] for row in entries]
    return sparse.bmat(blocks, format="csr")


def _classical_lip_value(entries: list) -> float:
    flat = [entries[0][0], entries[0][1], entries[1][0], entries[1][1]]
    pts = _classical_points(flat, sphere_only=True)
    stack = np.stack([p.reshape(-1) for p in pts], axis=1)
    mats = stack.reshape(-1, 2, 2)
    sigs = np.linalg.svd(mats, compute_uv=False)
    return float(sigs[:, 0].max())


def lip_norm(actions: UqActions, x: AlgebraElement, M: int | None = None,
             theta_grid: int = 16, rel_tol: float = 1e-8,
             max_doublings: int = 4, ladder: bool = True,
             theta_samples: int | None = None) -> LipResult:
    """Lip seminorm: dominant singular value of the derivation matrix.

    The 2x2 matrix [[-d3(x), d2(x)], [d1(x), d3(x)]] is assembled in the
    truncated representation; its compression norm increases to L(x).
    """
    if theta_samples is not None:
        theta_grid = theta_samples
    alg = x.alg
    entries = actions.delta_matrix(x)
    components = {
        "delta1": entries[1][0], "delta2": entries[0][1],
        "delta3": entries[1][1],
    }
    upper = 2.0 * max(coefficient_sum_bound(e) for row in entries for e in row)
    q = alg.field.float_q()
    if all(e.is_zero() for row in entries for e in row):
        return LipResult(NormEstimate(0.0, 0.0, True, 0, 0), components)
    if q == 1.0:
        val = _classical_lip_value(entries)
        est = NormEstimate(val, max(val, upper), True, _ETA_POINTS, 1,
                           notes=("classical-grid",))
        return LipResult(est, components)

    if M is None:
        M = default_truncation(x)
    M = max(M, x.total_degree() + 2)
    # every entry lies in the sphere subalgebra, so one theta suffices;
    # keep the grid available for paranoia runs
    single = all(_single_theta_suffices(e) for row in entries for e in row)
    thetas = [0.0] if single else _theta_grid(theta_grid)

    def level(Mcur: int):
        vals = []
        it_ok = True
        for th in thetas:
            sig, ok = dominant_sigma(_block_rep(entries, RepTruncation(q, Mcur, th)))
            vals.append(sig)
            it_ok = it_ok and ok
        return max(vals), vals, it_ok

    steps = []
    best, vals, it_ok = level(M)
    steps.append((M, best))
    conv = not ladder
    if ladder:
        for _ in range(max_doublings):
            M2 = 2 * M
            best2, vals2, ok2 = level(M2)
            it_ok = it_ok and ok2
            steps.append((M2, best2))
            done = abs(best2 - best) <= rel_tol * max(1.0, best2)
            M, best, vals = M2, best2, vals2
            if done:
                conv = True
                break
    est = NormEstimate(min(best, upper), upper, conv and it_ok, M, len(thetas),
                       ladder=tuple(steps), theta_values=tuple(vals),
                       iteration_converged=it_ok)
    return LipResult(est, components)


def lip_upper_bound(actions: UqActions, x: AlgebraElement) -> float:
    """Certified crude upper bound of the Lip seminorm."""
    entries = actions.delta_matrix(x)
    return 2.0 * max(coefficient_sum_bound(e) for row in entries for e in row)


def delta_block_matrix(actions: UqActions, x: AlgebraElement,
                       trunc: RepTruncation) -> sparse.csr_matrix:
    """Truncated representation of the derivation matrix (q < 1)."""
    return _block_rep(actions.delta_matrix(x), trunc)


def delta_block_grid(actions: UqActions, x: AlgebraElement) -> np.ndarray:
    """Pointwise 2x2 derivation matrices on the classical grid (q = 1),
    stacked as an array of shape (points, 2, 2)."""
    entries = actions.delta_matrix(x)
    flat = [entries[0][0], entries[0][1], entries[1][0], entries[1][1]]
    pts = _classical_points(flat, sphere_only=True)
    stack = np.stack([p.reshape(-1) for p in pts], axis=1)
    return stack.reshape(-1, 2, 2)


# -- Gram dual oracle ----------------------------------------------------------


def _graded_monomials(right_degree: int, count: int) -> list:
    """First `count` monomials of fixed right degree, by total degree
    then lexicographic (a_exp, b_exp)."""
    out = []
    d = 0
    while len(out) < count:
        layer = []
        for k in range(-d, d + 1):
            for l in range(d - abs(k) + 1):
                m = k + l - right_degree
                if m >= 0 and abs(k) + l + m == d:
                    layer.append(Monomial(k, l, m))
        layer.sort(key=lambda mo: (mo.a_exp, mo.b_exp))
        out.extend(layer)
        d += 1
        if d > 4 * count + 4:
            break
    return out[:count]


class _HaarInnerCache:
    """h(m1* m2) for monomial pairs, with a bidegree prefilter."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.cache: dict = {}

    def __call__(self, m1: Monomial, m2: Monomial):
        alg = self.alg
        if (m1.left_degree() != m2.left_degree()
                or m1.right_degree() != m2.right_degree()):
            return alg.field.zero
        key = (m1, m2)
        hit = self.cache.get(key)
        if hit is None:
            e1 = AlgebraElement(alg, {m1: alg.field.one})
            e2 = AlgebraElement(alg, {m2: alg.field.one})
            hit = alg.haar(e1.star() * e2)
            self.cache[key] = hit
        return hit


class _GradedOrtho:
    """Orthogonal chains of graded monomials, one per a-exponent.

    Monomials of a fixed right degree split into chains sharing the same
    a-exponent; Haar inner products vanish across chains, so the chains
    can be orthogonalized independently.  Raw monomial Gram matrices are
    numerically singular far beyond double precision, which is why the
    orthogonalization runs in the exact scalar field and only the final
    whitened operator matrix is floated.
    """

    def __init__(self, alg: Algebra, rdeg: int):
        self.alg = alg
        self.rdeg = rdeg
        self.inner = _HaarInnerCache(alg)
        # chain key k -> {"monos": [...], "vecs": [(w, snorm)], "proj": [dict]}
        # proj[alpha][t] = <w_alpha, mono_t> over the chain positions t
        self.chains: dict = {}
        self.order: list = []            # (k, pos) in graded enumeration order
        self.built_degree = -1

    def ensure_degree(self, D: int) -> None:
        alg = self.alg
        for d in range(self.built_degree + 1, D + 1):
            layer = []
            for k in range(-d, d + 1):
                for l in range(d - abs(k) + 1):
                    m = k + l - self.rdeg
                    if m >= 0 and abs(k) + l + m == d:
                        layer.append(Monomial(k, l, m))
            layer.sort(key=lambda mo: (mo.a_exp, mo.b_exp))
            for mono in layer:
                self._append(mono)
            self.built_degree = d

    def _append(self, mono: Monomial) -> None:
        alg = self.alg
        ch = self.chains.setdefault(mono.a_exp,
                                    {"monos": [], "vecs": [], "proj": []})
        vec = AlgebraElement(alg, {mono: alg.field.one})
        for w, s in ch["vecs"]:
            c = self._elem_mono_inner(w, mono) / s
            if not c.is_zero():
                vec = vec - w.scale(c)
        snorm = alg.haar(vec.star() * vec)
        if snorm.is_zero():
            raise RuntimeError("graded monomials degenerated at %r" % (mono,))
        pos = len(ch["monos"])
        ch["monos"].append(mono)
        ch["vecs"].append((vec, snorm))
        # projections of the new vector onto every chain monomial so far
        # are zero below the diagonal by orthogonality; record the rest
        # lazily when queried
        ch["proj"].append({pos: snorm})
        self.order.append((mono.a_exp, pos))

    def _elem_mono_inner(self, w: AlgebraElement, mono: Monomial):
        tot = self.alg.field.zero
        for m, c in w.terms.items():
            tot = tot + c.conjugate() * self.inner(m, mono)
        return tot

    def proj_coeff(self, k: int, alpha: int, pos: int):
        """<w_alpha, mono_pos> within chain k, memoized."""
        ch = self.chains[k]
        row = ch["proj"][alpha]
        hit = row.get(pos)
        if hit is None:
            if pos < alpha:
                hit = self.alg.field.zero
            else:
                hit = self._elem_mono_inner(ch["vecs"][alpha][0],
                                            ch["monos"][pos])
            row[pos] = hit
        return hit

    def basis_selection(self, count: int):
        """(chain, position) pairs of the first `count` graded monomials."""
        d = self.built_degree
        while len(self.order) < count:
            d += 1
            self.ensure_degree(d)
        return self.order[:count]


def _graded_ortho(alg: Algebra, rdeg: int) -> _GradedOrtho:
    cache = getattr(alg, "_graded_ortho_cache", None)
    if cache is None:
        cache = {}
        alg._graded_ortho_cache = cache
    if rdeg not in cache:
        cache[rdeg] = _GradedOrtho(alg, rdeg)
    return cache[rdeg]


_LIFTED_ALGEBRAS: dict = {}


def _lifted_context(x: AlgebraElement, extra_degree: int):
    """Return (algebra, element) precise enough for the oracle.

    Exact fields pass through.  Float fields are lifted to a working
    precision that dominates the chain conditioning, which grows like
    q^(-2 d^2) in the maximum chain degree d.
    """
    alg = x.alg
    if alg.field.mode == "exact":
        return alg, x
    from .qhopf import make_algebra_float
    from .scalars import FloatScalar

    q = alg.field.float_q()
    D = x.total_degree() + extra_degree
    dps = max(120, int(2 * D * D * abs(math.log10(q))) + 80)
    key = (repr(q), dps)
    hi = _LIFTED_ALGEBRAS.get(key)
    if hi is None:
        hi = make_algebra_float(q, precision=dps)
        _LIFTED_ALGEBRAS[key] = hi
    terms = {m: FloatScalar(hi.field, hi.field.ctx.mpc(c.val))
             for m, c in x.terms.items()}
    return hi, AlgebraElement(hi, terms)


def _mult_op_sigma(alg: Algebra, y: AlgebraElement, rdeg: int,
                   basis_size: int, ctx) -> float:
    """Largest singular value of mult-by-y from the graded basis span.

    Assembled entirely in orthonormal coordinates.  The domain vectors
    are the orthogonalized chains of right degree rdeg; the symbol
    shifts that grading uniformly, so the codomain family lives at
    rdeg + shift and is extended far enough to contain every image
    exactly.  The singular values are then true compression values of
    the multiplication operator into all of L².
    """
    shifts = {m.right_degree() for m in y.terms}
    if len(shifts) != 1:
        raise ValueError("symbol mixes right degrees %s" % sorted(shifts))
    ortho = _graded_ortho(alg, rdeg)
    cod = _graded_ortho(alg, rdeg + shifts.pop())
    sel = ortho.basis_selection(basis_size)
    D_basis = max(ortho.chains[k]["monos"][pos].total_degree()
                  for k, pos in sel)
    D_ext = D_basis + y.total_degree()
    cod.ensure_degree(D_ext)

    rows: dict = {}
    for k, ch in sorted(cod.chains.items()):
        for alpha in range(len(ch["monos"])):
            rows[(k, alpha)] = len(rows)

    sqrt_s: dict = {}

    def root_of(ortho_obj, k: int, alpha: int):
        key = (id(ortho_obj), k, alpha)
        if key not in sqrt_s:
            s = ortho_obj.chains[k]["vecs"][alpha][1]
            sqrt_s[key] = ctx.sqrt(s.to_mpc(ctx).real)
        return sqrt_s[key]

    Y = np.zeros((len(rows), len(sel)), dtype=complex)
    for j, (kj, pos_j) in enumerate(sel):
        wj, sj = ortho.chains[kj]["vecs"][pos_j]
        image = y * wj
        col: dict = {}
        for t_mono, c in image.terms.items():
            kt = t_mono.a_exp
            ch = cod.chains.get(kt)
            if ch is None or t_mono not in ch["monos"]:
                raise RuntimeError("image escaped the graded extension")
            pos_t = ch["monos"].index(t_mono)
            cm = c.to_mpc(ctx)
            for alpha in range(pos_t + 1):
                p = cod.proj_coeff(kt, alpha, pos_t)
                if p.is_zero():
                    continue
                key = (kt, alpha)
                col[key] = col.get(key, ctx.mpc(0)) + cm * p.to_mpc(ctx)
        rj = root_of(ortho, kj, pos_j)
        for (kt, alpha), val in col.items():
            Y[rows[(kt, alpha)], j] = complex(
                val / (root_of(cod, kt, alpha) * rj))
    if not np.isfinite(Y).all():
        raise RuntimeError("whitened operator matrix overflowed")
    return float(np.linalg.svd(Y, compute_uv=False)[0]) if Y.size else 0.0


def lip_norm_gram_oracle(actions: UqActions, x: AlgebraElement,
                         basis_size: int = 200) -> NormEstimate:
    """L(x) from below through Haar inner products alone.

    The two off-diagonal Dirac symbols act by multiplication on the
    right-degree +1 / -1 graded subspaces; the seminorm is the larger
    of the two restricted-multiplication compression norms.  No
    representation matrices are involved, so agreement with lip_norm is
    a genuine cross-check of the whole derivation stack.
    """
    p1, p2 = actions.dirac_components(x)
    upper = max(coefficient_sum_bound(p1), coefficient_sum_bound(p2))
    if p1.is_zero() and p2.is_zero():
        return NormEstimate(0.0, 0.0, True, basis_size, 0,
                            notes=("gram-oracle",))
    ctx = mpmath.mp.clone()
    ctx.dps = 80
    # chains for `basis_size` graded monomials reach roughly this degree;
    # the float-mode precision lift must dominate their conditioning
    reach = int(math.isqrt(2 * basis_size)) + 2
    vals = []
    for y, rdeg in ((p1, 1), (p2, -1)):
        if y.is_zero():
            vals.append(0.0)
            continue
        alg_hi, y_hi = _lifted_context(y, extra_degree=reach)
        sigma = _mult_op_sigma(alg_hi, y_hi, rdeg, basis_size, ctx)
        vals.append(sigma)
    lower = max(vals)
    return NormEstimate(min(lower, upper), upper, True, basis_size, 0,
                        notes=("gram-oracle",))

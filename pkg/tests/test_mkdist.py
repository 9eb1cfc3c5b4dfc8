"""Distance search invariants at desk scale."""

from fractions import Fraction

import pytest

from qsphere import make_algebra
from qsphere.mkdist import (OptimizationProblem, approx_inequality_check,
                            default_probes, estimate_distance,
                            objective_value, selfadjoint_basis,
                            theorem_b_approximant)


SMALL = dict(norm_truncation=100, restarts=2, max_iters=40, seed=3)


@pytest.fixture(scope="module")
def est1(ber_half):
    prob = OptimizationProblem(N=1, M=2, **SMALL)
    return estimate_distance(ber_half, prob)


def test_problem_validation():
    with pytest.raises(ValueError):
        OptimizationProblem(N=0, M=2)
    with pytest.raises(ValueError):
        OptimizationProblem(N=1, M=0)
    with pytest.raises(ValueError):
        OptimizationProblem(N=1, M=2, mode="exact")


def test_basis_structure(gns_half, alg_half):
    basis = selfadjoint_basis(gns_half, 2)
    assert len(basis) == 8      # (M+1)^2 - 1
    for v in basis:
        assert v == v.star()
        assert alg_half.haar(v).is_zero() or v.sphere_degree() > 0
        assert not all(m.is_unit() for m in v.terms)


def test_frozen_level_one_value(est1):
    # witness A - h(A): numerator h_1(A) - eps(A) = 4/21, scale bound 4
    want = float(Fraction(4, 21) / 4)
    assert est1.certified_value == pytest.approx(want, rel=1e-12)
    assert est1.value == est1.certified_value
    assert est1.mode == "certified"


def test_cert_below_heur(est1):
    assert est1.certified_value <= est1.heuristic_value + 1e-12


def test_witness_reproduces_value(ber_half, est1):
    v = objective_value(ber_half, est1.witness, 1, "certified", 100)
    assert v == pytest.approx(est1.value, rel=1e-9)


def test_scale_and_shift_invariance(ber_half, alg_half, est1):
    alg = alg_half
    x = est1.witness
    for c in (3, Fraction(-7, 2)):
        y = x.scale(alg.field.from_rational(Fraction(c)))
        assert objective_value(ber_half, y, 1, "certified", 100) == \
            pytest.approx(est1.value, rel=1e-12)
    z = x + alg.unit.scale(alg.field.from_rational(5, 3))
    assert objective_value(ber_half, z, 1, "certified", 100) == \
        pytest.approx(est1.value, rel=1e-12)


def test_deterministic(ber_half, est1):
    prob = OptimizationProblem(N=1, M=2, **SMALL)
    again = estimate_distance(ber_half, prob)
    assert again.value == est1.value
    assert again.witness == est1.witness
    assert again.coords == est1.coords


def test_monotone_in_search_space(ber_half, est1):
    prob = OptimizationProblem(N=1, M=1, **SMALL)
    small = estimate_distance(ber_half, prob)
    assert small.value <= est1.value + 1e-12


def test_warm_start_never_hurts(ber_half, est1):
    prob = OptimizationProblem(N=1, M=2, norm_truncation=100,
                               restarts=0, max_iters=25, seed=9)
    warm = estimate_distance(ber_half, prob, warm=est1)
    assert warm.value >= est1.value - 1e-12


def test_heuristic_mode(ber_half):
    prob = OptimizationProblem(N=1, M=2, mode="heuristic", **SMALL)
    est = estimate_distance(ber_half, prob)
    assert est.value == est.heuristic_value
    assert est.certified_value <= est.heuristic_value + 1e-12


def test_probe_ratios_within_estimate(ber_half, alg_half, est1):
    for p in default_probes(alg_half):
        rep = approx_inequality_check(ber_half, p, 1, est1, 100)
        assert rep.ratio <= est1.heuristic_value + 0.05
        assert not rep.flagged


def test_inequality_rejects_scalar(ber_half, alg_half, est1):
    with pytest.raises(ValueError):
        approx_inequality_check(ber_half, alg_half.unit, 1, est1, 100)


def test_approximant_slacks(ber_half, alg_half):
    rep = theorem_b_approximant(ber_half, alg_half.sphere_A, 1,
                                truncation=100)
    assert rep.lip_slack >= -1e-9
    assert rep.dist_slack >= 0.0
    assert rep.approximant == ber_half.via_coproduct(alg_half.sphere_A, 1)


def test_approximant_of_unit(ber_half, alg_half):
    rep = theorem_b_approximant(ber_half, alg_half.unit, 1, truncation=80)
    assert rep.lip_slack == 0.0
    assert rep.dist_slack == 0.0

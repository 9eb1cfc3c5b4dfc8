"""Twisted derivations: frozen values, Leibniz rule, star behaviour."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qsphere import UqActions, make_algebra, make_algebra_float


@pytest.fixture(scope="module")
def ctx():
    alg = make_algebra(1, 2)
    return alg, UqActions(alg)


def _elem(alg, terms):
    return alg.element([((k, l, m), c) for (k, l, m, c) in terms])


def test_generator_values(ctx):
    alg, act = ctx
    fld = alg.field
    half_rt2 = fld.from_parts(sre=Fraction(1, 2))     # sqrt(2)/2 = q^(1/2)
    rt2 = fld.from_parts(sre=1)                       # q^(-1/2)
    assert act.twisted_derivation("delta1", alg.a).is_zero()
    assert act.twisted_derivation("delta1", alg.b) == alg.a.scale(-rt2)
    assert act.twisted_derivation("delta2", alg.a) == alg.b.scale(
        -half_rt2)
    assert act.twisted_derivation("delta2", alg.b).is_zero()
    assert act.twisted_derivation("deltaK", alg.a) == alg.a.scale(half_rt2)
    assert act.twisted_derivation("deltaKinv", alg.a) == alg.a.scale(rt2)
    # diagonal derivation scales by (q^(w/2) - q^(-w/2))/(q - 1/q)
    third_rt2 = fld.from_parts(sre=Fraction(1, 3))
    assert act.twisted_derivation("delta3", alg.a) == alg.a.scale(third_rt2)
    assert act.twisted_derivation("delta3", alg.b) == alg.b.scale(
        -third_rt2)


def test_sphere_values(ctx):
    alg, act = ctx
    assert act.twisted_derivation("delta1", alg.sphere_A) == -(
        alg.a * alg.b_star)
    assert act.twisted_derivation("delta2", alg.sphere_A) == (
        alg.a_star * alg.b).scale(alg.field.from_rational(2))
    assert act.twisted_derivation("delta3", alg.sphere_B) == (
        alg.a * alg.b_star)


def test_twisted_leibniz(ctx):
    alg, act = ctx
    xs = [alg.a * alg.b, alg.sphere_A, alg.b_star + alg.unit]
    ys = [alg.a_star, alg.sphere_B, alg.b * alg.b]
    for lab in ("delta1", "delta2", "delta3"):
        for x in xs:
            for y in ys:
                lhs = act.twisted_derivation(lab, x * y)
                rhs = act.twisted_derivation(lab, x) * \
                    act.twisted_derivation("deltaK", y) + \
                    act.twisted_derivation("deltaKinv", x) * \
                    act.twisted_derivation(lab, y)
                assert lhs == rhs


@settings(max_examples=20, deadline=None)
@given(t1=st.tuples(st.integers(-1, 1), st.integers(0, 1), st.integers(0, 1),
                    st.fractions(max_denominator=5)),
       t2=st.tuples(st.integers(-1, 1), st.integers(0, 1), st.integers(0, 1),
                    st.fractions(max_denominator=5)))
def test_leibniz_random(t1, t2):
    alg = make_algebra(1, 2)
    act = UqActions(alg)
    x = _elem(alg, [t1])
    y = _elem(alg, [t2])
    lhs = act.twisted_derivation("delta1", x * y)
    rhs = act.twisted_derivation("delta1", x) * \
        act.twisted_derivation("deltaK", y) + \
        act.twisted_derivation("deltaKinv", x) * \
        act.twisted_derivation("delta1", y)
    assert lhs == rhs


def test_star_rules(ctx):
    alg, act = ctx
    for x in (alg.a, alg.b, alg.a * alg.b_star, alg.sphere_B):
        d1 = act.twisted_derivation("delta1", x.star())
        d2 = act.twisted_derivation("delta2", x)
        assert d1 == -(d2.star())
        d3s = act.twisted_derivation("delta3", x.star())
        d3 = act.twisted_derivation("delta3", x)
        assert d3s == -(d3.star())


def test_haar_annihilation(ctx):
    alg, act = ctx
    for lab in ("delta1", "delta2", "delta3"):
        for x in (alg.a, alg.sphere_A, alg.a * alg.b, alg.sphere_B * alg.sphere_A):
            assert alg.haar(act.twisted_derivation(lab, x)).is_zero()


def test_delta_matrix_shape(ctx):
    alg, act = ctx
    m = act.delta_matrix(alg.sphere_B)
    assert m[0][0] == -act.twisted_derivation("delta3", alg.sphere_B)
    assert m[0][1] == act.twisted_derivation("delta2", alg.sphere_B)
    assert m[1][0] == act.twisted_derivation("delta1", alg.sphere_B)
    assert m[1][1] == act.twisted_derivation("delta3", alg.sphere_B)


def test_delta4_is_negated_delta3(ctx):
    alg, act = ctx
    x = alg.sphere_A * alg.sphere_B
    assert act.twisted_derivation("delta4", x) == \
        -(act.twisted_derivation("delta3", x))


def test_partial_action_characters(ctx):
    alg, act = ctx
    # k acts diagonally by half-integer powers of q
    x = act.partial_action("k", alg.a)
    assert x == alg.a.scale(alg.field.q_half_power(1))
    y = act.partial_action("kinv", alg.a)
    assert y == alg.a.scale(alg.field.q_half_power(-1))


def test_unknown_label(ctx):
    alg, act = ctx
    with pytest.raises(ValueError):
        act.twisted_derivation("delta9", alg.a)
    with pytest.raises(ValueError):
        act.partial_action("x", alg.a)


def test_classical_limit_diagonal():
    # at q=1 the diagonal action degenerates to half the weight
    alg = make_algebra_float(1.0, precision=50)
    act = UqActions(alg)
    y = act.twisted_derivation("delta3", alg.a)
    got = complex((alg.haar(alg.a_star * y)
                   / alg.haar(alg.a_star * alg.a)).to_complex())
    assert abs(got - 0.5) < 1e-30

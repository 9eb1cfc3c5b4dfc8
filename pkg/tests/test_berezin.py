"""Level-N transform: two independent routes and frozen spectra."""

from fractions import Fraction

import pytest

from qsphere import make_algebra


def _fr(scal) -> Fraction:
    return scal.as_fraction()


def test_unit_fixed(ber_half, alg_half):
    for N in (1, 2):
        assert ber_half.via_coproduct(alg_half.unit, N) == alg_half.unit


def test_frozen_level_one(ber_half, alg_half):
    alg = alg_half
    y = ber_half.via_coproduct(alg.sphere_A, 1)
    want = alg.unit.scale(alg.field.from_rational(4, 21)) + \
        alg.sphere_A.scale(alg.field.from_rational(16, 21))
    assert y == want
    # B spans a one-dimensional spin layer so it is an eigenvector
    z = ber_half.via_coproduct(alg.sphere_B, 1)
    assert z == alg.sphere_B.scale(alg.field.from_rational(16, 21))


def test_frozen_spectra(ber_half):
    spec1 = ber_half.spectrum(1, max_spin=3)
    assert _fr(spec1.eigenvalue(0)) == 1
    assert _fr(spec1.eigenvalue(1)) == Fraction(16, 21)
    assert _fr(spec1.eigenvalue(2)) == 0
    assert _fr(spec1.eigenvalue(3)) == 0
    spec2 = ber_half.spectrum(2, max_spin=3)
    assert _fr(spec2.eigenvalue(1)) == Fraction(16, 17)
    assert _fr(spec2.eigenvalue(2)) == Fraction(4096, 5797)
    spec3 = ber_half.spectrum(3, max_spin=3)
    assert _fr(spec3.eigenvalue(1)) == Fraction(336, 341)
    assert _fr(spec3.eigenvalue(2)) == Fraction(4096, 4433)
    assert _fr(spec3.eigenvalue(3)) == Fraction(16777216, 24208613)


def test_routes_agree(ber_half, alg_half):
    alg = alg_half
    xs = [alg.sphere_A * alg.sphere_A,
          alg.sphere_B * alg.sphere_A - alg.unit,
          alg.sphere_B_star + alg.sphere_A.scale(alg.field.from_rational(2, 5))]
    for N in (1, 2):
        for x in xs:
            assert ber_half.via_coproduct(x, N) == \
                ber_half.via_spectrum(x, N)


def test_state_value_matches_haar_of_transform(ber_half, alg_half):
    # h_twisted(x, N) equals the invariant state of the transform at 0
    alg = alg_half
    x = alg.sphere_A * alg.sphere_A
    v = ber_half.h_twisted(x, 1)
    y = ber_half.via_coproduct(x, 1)
    # constant term of y is the twisted state value
    assert y.coefficient(next(m for m in y.terms if m.is_unit())) == v


def test_sphere_only(ber_half, alg_half):
    with pytest.raises(ValueError):
        ber_half.via_coproduct(alg_half.a, 1)


def test_spectrum_needs_room(ber_half):
    with pytest.raises(ValueError):
        ber_half.spectrum(3, max_spin=2)


def test_monotone_in_level(ber_half):
    # eigenvalues increase toward 1 with the level, per fixed layer
    prev = None
    for N in (1, 2, 3, 4):
        c = _fr(ber_half.spectrum(N, max_spin=max(3, N)).eigenvalue(1))
        if prev is not None:
            assert c > prev
        prev = c
    assert prev < 1


def test_classical_eigenvalues():
    # at q=1 the first layer eigenvalue is N/(N+2)
    alg = make_algebra(1, 1)
    from qsphere import Berezin, GnsContext, UqActions
    ber = Berezin(GnsContext(alg, UqActions(alg)))
    for N in (1, 2, 3):
        c = ber.spectrum(N, max_spin=max(2, N)).eigenvalue(1)
        assert _fr(c) == Fraction(N, N + 2)


def test_slice_estimate(ber_half, alg_half):
    alg = alg_half
    chk = ber_half.slice_lip_check(
        alg.sphere_A, alg.a, alg.a, truncation=80)
    assert chk.lip_slice <= chk.bound * (1 + 1e-4) + 1e-12
    assert chk.slice_element.sphere_degree() <= alg.sphere_A.sphere_degree()

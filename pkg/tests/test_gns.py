"""Fuzzy bases, projections, and compressed derivation matrices."""

import pytest

from qsphere import GnsContext, make_algebra
from qsphere.gns import FuzzyBasis


@pytest.fixture(scope="module")
def gns():
    return GnsContext(make_algebra(1, 2))


def test_basis_count_and_prefix(gns):
    b2 = gns.fuzzy_basis(2)
    b3 = gns.fuzzy_basis(3)
    assert len(b2) == 9
    assert len(b3) == 16
    for v2, v3 in zip(b2.vectors, b3.vectors):
        assert v2.element == v3.element
        assert v2.weight == v3.weight


def test_basis_orthogonal(gns):
    alg = gns.alg
    vs = gns.fuzzy_basis(2).vectors
    for i, v in enumerate(vs):
        for w in vs[i + 1:]:
            assert gns.haar_inner(v.element, w.element).is_zero()
        sn = gns.haar_inner(v.element, v.element)
        assert sn == v.snorm
        assert sn.as_fraction() > 0
    assert vs[0].element == alg.unit
    assert all(v.spin > 0 for v in vs[1:])


def test_projection_truncates_spin(gns):
    alg = gns.alg
    x = alg.sphere_A * alg.sphere_A           # spins 0..2
    p1 = gns.phi_projection(x, 1)
    assert p1.sphere_degree() <= 1
    # projection is idempotent and exact on low levels
    assert gns.phi_projection(p1, 1) == p1
    p2 = gns.phi_projection(x, 2)
    assert p2 == x


def test_spin_split_reassembles(gns):
    alg = gns.alg
    x = alg.sphere_A + alg.sphere_B * alg.sphere_A
    parts = gns.spin_split(x)
    total = alg.scalar_element(alg.field.zero)
    for p in parts.values():
        total = total + p
    assert total == x


def test_operator_matrix_adjoint_pattern(gns):
    t1 = gns.operator_matrix_of("delta1", 3)
    t2 = gns.operator_matrix_of("delta2", 3)
    # delta2 is q times the adjoint of delta1 in this inner product
    diff = t2.sub(t1.adjoint().scale(gns.alg.field.q))
    assert diff.is_zero()
    t3 = gns.operator_matrix_of("delta3", 3)
    assert t3.sub(t3.adjoint()).is_zero()


def test_compression_commutes(gns):
    # compressing at N then M equals compressing at M for M <= N
    r = gns.pn_commutation_check("delta1", 1, 3)
    assert r == 0.0


def test_basis_round_trip(gns):
    b = gns.fuzzy_basis(2)
    obj = b.to_obj()
    back = FuzzyBasis.from_obj(gns.alg, obj)
    assert len(back) == len(b)
    for u, v in zip(back.vectors, b.vectors):
        assert u.element == v.element
        assert u.snorm == v.snorm


def test_modular_conjugation_involution(gns):
    alg = gns.alg
    x = alg.sphere_B + alg.sphere_A.scale(alg.field.from_rational(2, 3))
    assert gns.modular_conjugation(gns.modular_conjugation(x)) == x


def test_commutant_check(gns):
    # right multiplication twisted by modular conjugation commutes with
    # left multiplication away from the truncation boundary
    alg = gns.alg
    r = gns.commutant_check(alg.sphere_A, alg.sphere_B, 5)
    assert r < 1e-12

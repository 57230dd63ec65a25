from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from voacheck.fock import (CutoffExceeded, InvalidSector, Monomial, SpaceConfig, Vector, check_cutoff,
                           cocycle, enumerate_basis, fixed_space_basis, fixed_subspace_basis, graded_dimension,
                           inner_product, partition_count, partitions, render_terms, sectors_at, space_basis,
                           theta_involution, weight_of)

# p(n) for n = 0..20, from OEIS A000041
P = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]


def test_partition_counts():
    assert [partition_count(n) for n in range(21)] == P
    assert [len(partitions(n)) for n in range(15)] == P[:15]
    assert partition_count(-3) == 0


def test_partitions_descending():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions(5, 2) == ((2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1))


def test_m1_dims_are_partition_numbers(m1):
    assert [graded_dimension(m1, n) for n in range(13)] == P[:13]


def test_m1plus_dims():
    # even number of parts, counted by hand
    cfg = SpaceConfig(0, 10, True)
    assert [graded_dimension(cfg, n) for n in range(9)] == [1, 0, 1, 1, 3, 3, 6, 7, 12]


def _lattice_dim(k, n):
    out, m = P[n], 1
    while k * k * m * m <= n:
        out += 2 * P[n - k * k * m * m]
        m += 1
    return out


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lattice_dims(k):
    cfg = SpaceConfig(k, 14, False)
    assert [graded_dimension(cfg, n) for n in range(15)] == [_lattice_dim(k, n) for n in range(15)]


def test_lattice_plus_dims_half_plus():
    # dim V^+_n = (dim V_n + tr theta|V_n) / 2, trace from the sector-0 part only
    cfg, plus = SpaceConfig(2, 14, False), SpaceConfig(2, 14, True)
    for n in range(15):
        tr = sum((-1) ** len(p) for p in partitions(n))
        assert 2 * graded_dimension(plus, n) == graded_dimension(cfg, n) + tr


def test_weight_and_sectors():
    assert weight_of(Monomial((3, 1), 2), 2) == 4 + 16
    assert sectors_at(SpaceConfig(2, 20), 17) == [0, 1, -1, 2, -2]
    assert sectors_at(SpaceConfig(0, 20), 17) == [0]
    assert enumerate_basis(SpaceConfig(2, 20), 3, 1) == []


def test_sector_errors():
    with pytest.raises(InvalidSector):
        enumerate_basis(SpaceConfig(0, 5), 2, 1)
    with pytest.raises(ValueError):
        SpaceConfig(-1)
    with pytest.raises(CutoffExceeded):
        check_cutoff(Vector.monomial((5,)), SpaceConfig(0, 4))


def test_cocycle_values():
    assert cocycle(1, 1, 1) == -1
    assert cocycle(1, 2, 1) == 1
    assert cocycle(2, 1, 1) == 1
    assert cocycle(3, 1, 3) == -1


def test_vector_arithmetic():
    a = Vector.monomial((2, 1), coeff=3)
    b = Vector.monomial((1, 2), coeff=Q(-3))
    assert not (a + b)
    assert a - a == 0
    assert (a * 2).coeff(Monomial((2, 1))) == 6
    assert (a / 3).coeff(Monomial((2, 1))) == 1
    assert Vector.vacuum().weight() == 0
    with pytest.raises(ValueError):
        (Vector.monomial((1,)) + Vector.monomial((2,))).weight()
    assert render_terms(Vector.monomial((2,), 1, 1, 2).terms) == "2*g(-2)e^1a"


def test_theta_is_involution(vl2):
    v = Vector({Monomial((2, 1), 1): Q(1), Monomial((3,), 0): Q(2)}, 2)
    assert theta_involution(theta_involution(v)) == v
    assert theta_involution(v).coeff(Monomial((3,), 0)) == -2
    assert theta_involution(v).coeff(Monomial((2, 1), -1)) == 1


def test_fixed_basis_is_fixed(vl2):
    for w in range(0, 10):
        for s in (0, 1):
            for v in fixed_subspace_basis(vl2, w, s):
                assert theta_involution(v) == v
        assert len(fixed_space_basis(vl2, w)) == graded_dimension(SpaceConfig(2, 12, True), w)


def test_form_values():
    # (h(-1)1, h(-1)1) = -1 with h(n)^dagger = -h(-n); J-type even monomials are positive
    cfg = SpaceConfig(0, 6)
    h = Vector.monomial((1,))
    assert inner_product(h, h, cfg) == -1
    hh = Vector.monomial((1, 1))
    assert inner_product(hh, hh, cfg) == 2
    assert inner_product(Vector.monomial((2,)), Vector.monomial((2,)), cfg) == -2
    e = Vector({Monomial((), 1): Q(1), Monomial((), -1): Q(1)}, 2)
    assert inner_product(e, e, SpaceConfig(2, 6)) == 2


@settings(max_examples=200, derandomize=True, deadline=None)
@given(st.integers(0, 12), st.integers(0, 3))
def test_space_basis_weights(n, k):
    cfg = SpaceConfig(k, 12)
    basis = space_basis(cfg, n)
    assert len(basis) == len(set(basis))
    assert all(weight_of(m, k) == n for m in basis)
    assert all(list(m.parts) == sorted(m.parts, reverse=True) for m in basis)

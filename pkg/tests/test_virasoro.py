from fractions import Fraction as Q

from hypothesis import given, settings, strategies as st

from voacheck.fock import Monomial, SpaceConfig, Vector
from voacheck.identities import build_J
from voacheck.virasoro import (LJ_commutator_check, VermaOracle, apply_L, descendants_at, isotypic_multiplicities,
                               omega, primary_space, verma_descendant_gram, virasoro_bracket_check)


def test_L0_is_weight(vl2):
    v = Vector({Monomial((3, 1), 1): Q(2)}, 2)
    assert apply_L(0, v, vl2) == v * 8


def test_omega_and_vacuum(m1):
    one = Vector.vacuum()
    assert apply_L(-2, one, m1) == omega(m1)
    assert not apply_L(-1, one, m1)


def test_verma_oracle_known_grams():
    # <L(-2)v, L(-2)v> = 4h + c/2 and the level-2 Kac determinant at c = 1
    o = VermaOracle(Q(3))
    assert o.gram((2,), (2,)) == 4 * 3 + Q(1, 2)
    assert o.gram((1, 1), (1, 1)) == 4 * 3 * (2 * 3 + 1)
    g = verma_descendant_gram(Q(1, 4), [(2,), (1, 1)])
    assert g[0][0] * g[1][1] - g[0][1] * g[1][0] == 0  # h = 1/4 is degenerate at level 2


def test_vacuum_gram_is_nine_halves():
    assert VermaOracle(0).gram((2, 2), (2, 2)) == Q(9, 2)


def test_m1_primaries():
    # M(1) = sum_n L(1, n^2), M(1)^+ = sum_n L(1, 4n^2)
    assert isotypic_multiplicities(SpaceConfig(0, 16), 16) == {0: 1, 1: 1, 4: 1, 9: 1, 16: 1}
    assert isotypic_multiplicities(SpaceConfig(0, 16, True), 16) == {0: 1, 4: 1, 16: 1}


def test_J_is_the_weight4_primary(m1plus8):
    (p,) = primary_space(m1plus8, 4)
    J = build_J(m1plus8)
    ratio = J.coeff(Monomial((2, 2))) / p.coeff(Monomial((2, 2)))
    assert p * ratio == J


def test_J_descendant_dims(m1plus8):
    J = build_J(m1plus8)
    from voacheck.virasoro import echelonize
    dims = [len(echelonize(descendants_at(J, lvl, m1plus8))) for lvl in range(5)]
    assert dims == [1, 1, 2, 3, 5]


def test_LJ_commutator(m1plus8):
    for m, n in [(1, 3), (2, 2), (-1, 4), (0, 5)]:
        assert LJ_commutator_check(m, n, m1plus8, max_weight=4).passed


@settings(max_examples=200, derandomize=True, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([(), (1,), (2, 1), (3, 1, 1), (2, 2)]),
       st.integers(-1, 1))
def test_virasoro_bracket(m, n, parts, sector):
    cfg = SpaceConfig(1, 16)
    v = Vector.monomial(parts, sector, 1)
    assert virasoro_bracket_check(m, n, v, cfg).passed

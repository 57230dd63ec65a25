from fractions import Fraction as Q

import pytest

from voacheck.fock import SpaceConfig, Vector, inner_product
from voacheck.identities import (GRAM_VALUES, app2_consistency, build_E, build_J, compute_ladder, descendant_grams,
                                 vacuum_descendant, verify_E_relations, verify_J_ladder, verify_lemma_app1,
                                 verify_rearrangements, verify_X0_gram)
from voacheck.report import INCONCLUSIVE


def test_J_norm(m1plus8):
    J = build_J(m1plus8)
    assert inner_product(J, J, m1plus8) == 54


def test_J_is_normalisation_independent():
    # the same J in M(1) and inside V_L (k = 2) has the same ladder
    a = compute_ladder(SpaceConfig(0, 8, True))
    b = compute_ladder(SpaceConfig(2, 8, True))
    assert a.lam == b.lam == -60
    assert a.x0_part == b.x0_part == (Q(-72), Q(336))


def test_ladder_values(m1plus8):
    lad = compute_ladder(m1plus8)
    e = lad.entries
    assert e[7] == Vector.vacuum() * 54
    assert not e[6]
    assert e[5] == vacuum_descendant((2,), m1plus8) * 432
    assert e[4] == vacuum_descendant((3,), m1plus8) * 216


def test_ladder_report_with_golden(m1plus8):
    assert verify_J_ladder(m1plus8, golden={"lambda": Q(-60)}).passed
    bad = verify_J_ladder(m1plus8, golden={"lambda": Q(-61)})
    assert bad.status == "fail"


def test_ladder_too_small():
    assert verify_J_ladder(SpaceConfig(0, 7, True)).status == INCONCLUSIVE


def test_descendant_grams_match_printed(m1plus8):
    for pair, (fock, verma) in descendant_grams(m1plus8).items():
        assert fock == verma == GRAM_VALUES[pair]


def test_app1_and_x0(m1plus8):
    assert verify_lemma_app1(m1plus8).passed
    rep = verify_X0_gram(m1plus8)
    assert rep.passed
    assert rep.computed["(L(-2)^2 1, L(-2)^2 1)"] == "9/2"
    assert rep.expected["(L(-2)^2 1, L(-2)^2 1) as printed"] == "2/4"


@pytest.mark.parametrize("k,eig", [(1, 3), (2, 60), (3, 315)])
def test_E_relations(k, eig):
    rep = verify_E_relations(k)
    assert rep.passed
    assert 4 * k ** 4 - k ** 2 == eig


def test_E_needs_lattice():
    with pytest.raises(ValueError):
        build_E(1, SpaceConfig(0, 8))


def test_rearrangements_and_app2(m1plus12):
    assert verify_rearrangements(m1plus12, samples=5).passed
    rep = app2_consistency(m1plus12)
    assert rep.passed
    assert rep.computed["residual"] == "0"

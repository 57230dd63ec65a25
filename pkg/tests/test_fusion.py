import pytest

from voacheck.fock import SpaceConfig, Vector
from voacheck.fusion import (check_Nm_products, descendant_closure, fusion_support, lemma_span_equality,
                             product_span, sector_primaries, window)
from voacheck.identities import build_E, build_J
from voacheck.report import INCONCLUSIVE


def _dims(span, lo, hi):
    return [len(span.get(w, [])) for w in range(lo, hi + 1)]


def test_vacuum_closure():
    cfg = SpaceConfig(0, 8, True)
    assert _dims(descendant_closure(Vector.vacuum(), cfg, 4), 0, 4) == [1, 0, 1, 1, 2]


def test_J_closure():
    cfg = SpaceConfig(0, 8, True)
    assert _dims(descendant_closure(build_J(cfg), cfg, 8), 4, 8) == [1, 1, 2, 3, 5]


def test_E_closure_bottom():
    cfg = SpaceConfig(2, 8, True)
    assert _dims(descendant_closure(build_E(1, cfg), cfg, 5), 4, 5) == [1, 1]


def test_closure_rejects_non_primary():
    cfg = SpaceConfig(0, 8, True)
    with pytest.raises(ValueError):
        descendant_closure(Vector.monomial((2, 1)), cfg, 5)


def test_vacuum_is_unit_for_products():
    cfg = SpaceConfig(0, 10, True)
    J = build_J(cfg)
    a = product_span(Vector.vacuum(), J, cfg).span
    b = descendant_closure(J, cfg, 10)
    assert all(len(a[w]) == len(b.get(w, [])) for w in range(11))


def test_window():
    assert window(2, 2) == {0, 1, 4, 9, 16}
    assert window(2, 3) == {1, 4, 9, 16, 25}


def test_JJ_support_low_cutoff():
    # below the cutoff 16 the L(1,16) summand cannot be seen
    cfg = SpaceConfig(0, 10, True)
    J = build_J(cfg)
    assert fusion_support(product_span(J, J, cfg), cfg) == {0: 1, 4: 1}


def test_span_equality_exhaustive():
    cfg = SpaceConfig(2, 12, True)
    J, E = build_J(cfg), build_E(1, cfg)
    assert lemma_span_equality(J, J, cfg, 8).passed
    assert lemma_span_equality(J, E, cfg, 8).passed


def test_span_equality_sampled():
    cfg = SpaceConfig(0, 12, True)
    J = build_J(cfg)
    assert lemma_span_equality(J, J, cfg, 10, samples=30, seed=3).passed


def test_sector_primaries():
    cfg = SpaceConfig(1, 10, True)
    # N^1 for k = 1: theta-fixed primaries in sectors +-1 below 10 sit at (1 + j)^2
    assert [v.weight() for v in sector_primaries(cfg, 1, 10)] == [1, 4, 9]


def test_nm_small_lattice():
    cfg = SpaceConfig(1, 10, True)
    r = check_Nm_products(1, 1, 1, cfg)
    assert r.passed
    assert r.computed["support"] == {"0": "1", "4": "1"}
    r = check_Nm_products(1, 2, 1, cfg)
    assert r.passed
    assert r.computed["support"] == {"1": "1", "4": "1", "9": "1"}


def test_nm_inconclusive_when_upper_summand_is_out_of_reach():
    cfg = SpaceConfig(2, 12, True)
    assert check_Nm_products(2, 1, 1, cfg).status == INCONCLUSIVE

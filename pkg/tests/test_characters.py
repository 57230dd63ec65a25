from fractions import Fraction as Q

import pytest

from voacheck.characters import (QSeries, TailBoundError, char_from_basis, char_L1, eta, eta_inverse, eta_probe,
                                 evaluate_at, m1plus_character_forms, quotient_probe, s_transform_probe,
                                 signed_square_series, theta_series, verify_eta_s_law, verify_m1plus_characters,
                                 verify_s_defect_demo, verify_theta_identity)
from voacheck.fock import SpaceConfig


def test_eta_coefficients():
    # Euler: prod(1 - q^n) = 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...
    e = eta(16)
    assert e.offset == Q(1, 24)
    want = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1}
    assert e.as_list() == [want.get(n, 0) for n in range(16)]


def test_inverse_and_division():
    e = eta(20)
    assert (e * eta_inverse(20)).agrees_with(QSeries.from_list([1], 0, 20))
    assert (QSeries.from_list([1], 0, 20) / e).agrees_with(eta_inverse(20))
    with pytest.raises(ZeroDivisionError):
        QSeries.from_list([0, 1]).inverse()


def test_qseries_order_bookkeeping():
    a = QSeries.from_list([1, 2, 3])
    b = QSeries.from_list([1, 1, 1, 1, 1])
    assert (a + b).order == 3
    assert a.shift(2).as_list() == [0, 0, 1, 2, 3]
    with pytest.raises(IndexError):
        a[3]
    with pytest.raises(ValueError):
        a.agrees_with(b, 4)
    with pytest.raises(ValueError):
        a + QSeries(Q(1, 2), {0: 1}, 3)


def test_char_L1_degenerate_and_generic():
    # L(1, 1/4): (1 - q^2)/prod, L(1, 1/3) is a Verma module
    assert char_L1(Q(1, 4), 6).as_list() == [1, 1, 1, 2, 3, 4]
    assert char_L1(Q(1, 3), 6).as_list() == [1, 1, 2, 3, 5, 7]
    assert char_L1(Q(4), 6).offset == 4 - Q(1, 24)


def test_m1plus_by_count():
    plus = char_from_basis(SpaceConfig(0, 20, True), 20)
    for s in m1plus_character_forms(20).values():
        assert plus.agrees_with(s)


def test_theta():
    assert theta_series(10).as_list() == [1, -2, 0, 0, 2, 0, 0, 0, 0, -2]
    assert signed_square_series(10).as_list() == [1, -1, 0, 0, 1, 0, 0, 0, 0, -1]


def test_reports():
    assert verify_m1plus_characters(17).passed
    assert verify_theta_identity(17).passed
    assert verify_eta_s_law().passed
    assert verify_s_defect_demo().passed


def test_basis_order_limited_by_cutoff():
    with pytest.raises(ValueError):
        char_from_basis(SpaceConfig(0, 5), 10)


def test_eta_probe_values():
    r = s_transform_probe(eta_probe(), 1, 200, Q(1, 2))
    # eta(i) = Gamma(1/4) / (2 pi^{3/4})
    assert abs(r["value_at_it"] - 0.768225422326056659) < 1e-12
    assert r["defect"] < 1e-12


def test_defect_at_two():
    z = quotient_probe("z", {0: 1, 1: -1, 4: 1, 9: -1})
    r = s_transform_probe(z, 2, 200)
    assert r["defect"] > 0.1


def test_tail_guard():
    with pytest.raises(TailBoundError):
        evaluate_at(eta_probe(), Q(1, 100), 20)

from fractions import Fraction as Q

import pytest

from voacheck.fock import CutoffExceeded, Vector
from voacheck.identities import build_J
from voacheck.virasoro import omega
from voacheck.zhu import (P_POLY, Q_POLY, StarPolynomial, circle_product, o_subspace, poly_divmod, split_JJ,
                          vacuum_module_basis, verify_lemma_JJ, verify_p_roots, zhu_product)


def test_vacuum_is_unit(m1plus8):
    one = Vector.vacuum()
    J = build_J(m1plus8)
    assert zhu_product(one, J, m1plus8) == J
    assert zhu_product(J, one, m1plus8) == J


def test_omega_star(m1plus8):
    # omega * v = (L(-2) + 2L(-1) + L(0)) v
    from voacheck.virasoro import apply_L
    J = build_J(m1plus8)
    w = omega(m1plus8)
    rhs = apply_L(-2, J, m1plus8) + apply_L(-1, J, m1plus8) * 2 + J * 4
    assert zhu_product(w, J, m1plus8) == rhs


def test_circle_of_vacuum_is_zero(m1plus8):
    J = build_J(m1plus8)
    assert not circle_product(Vector.vacuum(), J, m1plus8)


def test_vacuum_module_dims(m1plus8):
    # parts >= 2: 1, 0, 1, 1, 2, 2, 4, 4, 7
    assert [len(vacuum_module_basis(m1plus8, w)) for w in range(9)] == [1, 0, 1, 1, 2, 2, 4, 4, 7]


def test_polynomials():
    assert P_POLY(Q(0)) == 0 and P_POLY(Q(1, 4)) == 0
    assert P_POLY.degree == 4 and Q_POLY.degree == 2
    assert list(reversed(P_POLY.coefficients))[:4] == [Q(1816, 35), Q(-212, 5), Q(89, 10), Q(-27, 70)]
    assert list(reversed(Q_POLY.coefficients)) == [Q(-314, 35), Q(89, 14), Q(-27, 70)]
    with pytest.raises(ValueError):
        StarPolynomial((1,) * 6)


def test_poly_divmod():
    q, r = poly_divmod([Q(-1), 0, 1], [Q(-1), 1])
    assert q == [1, 1] and r == []
    with pytest.raises(ZeroDivisionError):
        poly_divmod([1], [0])


def test_p_roots():
    assert verify_p_roots().passed


def test_split(m1plus8):
    JJ, u0, v0 = split_JJ(m1plus8)
    assert JJ == u0 + v0
    assert JJ.weights() == [4, 5, 6, 7, 8]


def test_o_L10_quotient(m1plus12):
    o = o_subspace(m1plus12, "L10", 8)
    total = sum(len(vacuum_module_basis(m1plus12, w)) for w in range(9))
    assert total - len(o) == 5


def test_o_subspace_bad_tag(m1plus8):
    with pytest.raises(ValueError):
        o_subspace(m1plus8, "nope", 4)


def test_lemma_JJ_too_small(m1plus8):
    assert verify_lemma_JJ(m1plus8).status == "inconclusive"
    with pytest.raises(CutoffExceeded):
        o_subspace(m1plus8, "L10", 8)


def test_lemma_JJ_parts(m1plus12):
    rep = verify_lemma_JJ(m1plus12)
    assert rep.computed["u0 - p(omega) in O(L(1,0))"] is True
    assert rep.computed["split exact"] is True
    # the M^(4) residual lands in the wider subspace (L(-1)+L(0))M^(4) + L(1,0) o M^(4)
    assert rep.computed["v0 - q(omega)*J in (L(-1)+L(0))M^(4) + L(1,0) o M^(4)"] is True


def test_omega_circle_vacuum(m1plus8):
    # omega o 1 = (L(-1) + L(0)) omega = L(-3)1 + 2 L(-2)1, and omega * 1 = omega
    from voacheck.virasoro import apply_L
    w = omega(m1plus8)
    one = Vector.vacuum()
    assert circle_product(w, one, m1plus8) == apply_L(-3, one, m1plus8) + apply_L(-2, one, m1plus8) * 2
    assert zhu_product(w, one, m1plus8) == w

"""Zhu's product, the O-subspaces used for J*J, and the polynomials p, q.

u * v  = Res_z (1+z)^{wt u} z^{-1} Y(u,z) v = sum_j C(wt u, j) u_{j-1} v
u o v  = Res_z (1+z)^{wt u} z^{-2} Y(u,z) v = sum_j C(wt u, j) u_{j-2} v
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Dict, List, Sequence, Tuple

from .fock import CutoffExceeded, SpaceConfig, Vector, linear_combination, partitions, weight_of
from .linalg import Echelon
from .report import CheckReport, timed
from .vertex import mode
from .virasoro import apply_L, coordinates, descendants_at, omega, virasoro_descendant

Q = Fraction

P_COEFFS = (Q(0), Q(-27, 70), Q(89, 10), Q(-212, 5), Q(1816, 35))
Q_COEFFS = (Q(-27, 70), Q(89, 14), Q(-314, 35))
O_TAGS = ("L10", "M4", "M1plus")


def _graded(u: Vector, v: Vector, config: SpaceConfig, shift: int) -> Vector:
    out: Dict = {}
    for d, comp in u.components().items():
        for j in range(d + 1):
            x = mode(comp, j - shift, v, config)
            c = comb(d, j)
            for m, a in x.terms.items():
                s = out.get(m, 0) + a * c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
    return Vector._raw(out, config.k)


def zhu_product(u: Vector, v: Vector, config: SpaceConfig) -> Vector:
    """u * v, extended linearly over the weight components of u."""
    return _graded(u, v, config, 1)


def circle_product(u: Vector, v: Vector, config: SpaceConfig) -> Vector:
    return _graded(u, v, config, 2)


def _weight_key(m):
    return (sum(m.parts), m.parts, m.sector)


def vacuum_module_basis(config: SpaceConfig, weight: int) -> List[Vector]:
    """PBW basis of L(1,0)_weight: L(-n1)...L(-nr)1 with all n_i >= 2 (c = 1 has no further relations)."""
    one = Vector.vacuum(config.k)
    return [virasoro_descendant(lam, one, config) for lam in partitions(weight) if all(p >= 2 for p in lam)]


def module_basis(top: Vector, config: SpaceConfig, weight: int) -> List[Vector]:
    """L(-lam) top over partitions lam of weight - wt(top); independent below level (2 sqrt(h) + 1)."""
    level = weight - top.weight()
    if level < 0:
        return []
    return descendants_at(top, level, config)


def _truncate(gens: Sequence[Vector], max_weight: int, k: int) -> List[Vector]:
    # rows of an echelon form under a weight-first order: those whose pivot has
    # weight <= max_weight span exactly (span of gens) intersected with V_{<= max_weight}
    e = Echelon(key=_weight_key)
    for g in gens:
        e.add(g.terms)
    out = []
    for row in e.basis():
        if weight_of(max(row, key=_weight_key), k) <= max_weight:
            out.append(Vector._raw({m: Q(c) for m, c in row.items()}, k))
    return out


def l_minus1_plus_l0(vectors: Sequence[Vector], config: SpaceConfig) -> List[Vector]:
    return [apply_L(-1, w, config) + apply_L(0, w, config) for w in vectors]


def o_subspace(config: SpaceConfig, space_tag: str, max_weight: int, extra: int = 0) -> List[Vector]:
    """Spanning set of the tagged O-subspace intersected with weights <= max_weight.

    L10    : span{u o v : u, v in L(1,0)}
    M4     : span{u o w : u in L(1,0), w in M^(4)} + (L(-1) + L(0)) M^(4)
    M1plus : span{u o v : u, v in M(1)^+}

    Generators come from pairs with wt u + wt v <= max_weight + extra.
    """
    if space_tag not in O_TAGS:
        raise ValueError(f"unknown space tag {space_tag!r}")
    top = max_weight + extra
    if top + 1 > config.cutoff:
        raise CutoffExceeded(f"circle products reach weight {top + 1} > cutoff {config.cutoff}")
    from .fock import fixed_subspace_basis
    from .identities import build_J

    vac = {w: vacuum_module_basis(config, w) for w in range(top + 1)}
    gens: List[Vector] = []
    if space_tag == "L10":
        left, right = vac, vac
    elif space_tag == "M4":
        J = build_J(config)
        m4 = {w: module_basis(J, config, w) for w in range(4, top + 1)}
        left, right = vac, m4
        gens += l_minus1_plus_l0([w for ww in range(4, top) for w in m4[ww]], config)
    else:
        plus = {w: fixed_subspace_basis(config, w, 0) for w in range(top + 1)}
        left, right = plus, plus
    for a, us in left.items():
        for b, ws in right.items():
            if a + b > top:
                continue
            for u in us:
                for w in ws:
                    gens.append(circle_product(u, w, config))
    return _truncate(gens, max_weight, config.k)


def in_subspace(v: Vector, spanning: Sequence[Vector]) -> bool:
    e = Echelon(key=_weight_key)
    for g in spanning:
        e.add(g.terms)
    return e.contains(v.terms)


# ---------------------------------------------------------------- star polynomials


@dataclass(frozen=True)
class StarPolynomial:
    """c_0 + c_1 x + ... + c_d x^d, evaluated at x = omega with * powers."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) > 5:
            raise ValueError("degree at most 4")

    @property
    def degree(self) -> int:
        d = len(self.coefficients) - 1
        while d > 0 and self.coefficients[d] == 0:
            d -= 1
        return d

    def __call__(self, x):
        acc = Q(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def evaluate(self, config: SpaceConfig, on: Vector | None = None) -> Vector:
        """sum_i c_i omega^{*i} * on (on defaults to the vacuum)."""
        w = omega(config)
        cur = on if on is not None else Vector.vacuum(config.k)
        pairs = []
        for c in self.coefficients:
            pairs.append((c, cur))
            cur = zhu_product(w, cur, config)
        return linear_combination(pairs, config.k)


P_POLY = StarPolynomial(P_COEFFS)
Q_POLY = StarPolynomial(Q_COEFFS)


def split_JJ(config: SpaceConfig) -> Tuple[Vector, Vector, Vector]:
    """J*J and its L(1,0) and M^(4) components (u0, v0)."""
    from .identities import build_J

    J = build_J(config)
    JJ = zhu_product(J, J, config)
    vac = [v for w in range(9) for v in vacuum_module_basis(config, w)]
    m4 = [v for w in range(4, 9) for v in module_basis(J, config, w)]
    x = coordinates(JJ, vac + m4)
    if x is None:
        raise ArithmeticError("J*J left L(1,0) + M^(4) below weight 9")
    u0 = linear_combination(zip(x[:len(vac)], vac), config.k)
    v0 = linear_combination(zip(x[len(vac):], m4), config.k)
    return JJ, u0, v0


def verify_lemma_JJ(config: SpaceConfig, sign: int = 1) -> CheckReport:
    """u0 - p(omega) in O(L(1,0)); v0 - q(omega)*J in (L(-1)+L(0))M^(4).

    ``sign = -1`` replaces J by -J, which leaves J*J and p alone and flips q(omega)*J.
    """
    rep = CheckReport("lemma-jj", "J*J = u0 + v0, u0 in p(omega) + O(L(1,0)), v0 in q(omega)J + (L(-1)+L(0))M^(4)")
    with timed(rep):
        # omega^{*4} and the circle products reach weight 10 before truncation to 8
        if config.cutoff < 10:
            rep.mark_inconclusive(f"cutoff {config.cutoff} < 10")
            return rep
        from .identities import build_J

        J = build_J(config) * sign
        JJ, u0, v0 = split_JJ(config)
        rep.compare("weights of J*J", [4, 5, 6, 7, 8], JJ.weights())
        rep.require("split exact", JJ == u0 + v0)
        rep.record("p", list(P_POLY.coefficients))
        rep.record("q", list(Q_POLY.coefficients))
        rep.record("q used for sign", [c * sign for c in Q_POLY.coefficients])
        pw = P_POLY.evaluate(config)
        qJ = Q_POLY.evaluate(config, J) * sign
        o_l10 = o_subspace(config, "L10", 8)
        vac_dim = sum(len(vacuum_module_basis(config, w)) for w in range(9))
        rep.record("dim L(1,0)_{<=8} / O(L(1,0))", vac_dim - len(o_l10))
        rep.require("u0 - p(omega) in O(L(1,0))", in_subspace(u0 - pw, o_l10))
        m4_low = [v for w in range(4, 8) for v in module_basis(J, config, w)]
        small = _truncate(l_minus1_plus_l0(m4_low, config), 8, config.k)
        ok_small = in_subspace(v0 - qJ, small)
        rep.require("v0 - q(omega)*J in (L(-1)+L(0))M^(4)", ok_small)
        wide = o_subspace(config, "M4", 8)
        ok_wide = in_subspace(v0 - qJ, wide)
        rep.record("v0 - q(omega)*J in (L(-1)+L(0))M^(4) + L(1,0) o M^(4)", ok_wide)
        if not ok_small:
            rep.notes.append("the M^(4) residual is not in (L(-1)+L(0))M^(4) alone"
                             + ("; it is in (L(-1)+L(0))M^(4) + L(1,0) o M^(4), a subspace of O(M(1)^+)"
                                if ok_wide else ""))
    return rep


# ---------------------------------------------------------------- p and its roots


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    """Coefficient lists, lowest degree first."""
    num = [Q(c) for c in num]
    den = [Q(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Q(0)] * max(len(num) - len(den) + 1, 1)
    rem = num[:]
    for i in range(len(num) - len(den), -1, -1):
        c = rem[i + len(den) - 1] / den[-1]
        quot[i] = c
        for j, d in enumerate(den):
            rem[i + j] -= c * d
    rem = rem[:len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def verify_p_roots(bound: int = 100) -> CheckReport:
    rep = CheckReport("p-roots", "p has roots 0, 1/4, (515 +- sqrt(167161))/1816 and no nonzero integer roots")
    with timed(rep):
        if bound < 1:
            raise ValueError("bound must be >= 1")
        p = P_POLY
        rep.compare("p(0)", Q(0), p(Q(0)))
        rep.compare("p(1/4)", Q(0), p(Q(1, 4)))
        quad, rem = poly_divmod(p.coefficients, [Q(0), Q(-1, 4), Q(1)])
        rep.compare("remainder of p / (x(x - 1/4))", [], rem)
        # scale so the leading coefficient is 1816
        s = Q(1816) / quad[2]
        c0, c1, c2 = (c * s for c in quad)
        rep.compare("scaled quotient", [Q(54), Q(-1030), Q(1816)], [c0, c1, c2])
        disc = c1 * c1 - 4 * c2 * c0
        rep.compare("discriminant", Q(4 * 167161), disc)
        rep.require("167161 is not a square", isqrt(167161) ** 2 != 167161)
        bad = [n for n in range(-bound, bound + 1) if n and p(Q(n)) == 0]
        rep.compare(f"integer roots with 1 <= |n| <= {bound}", [], bad)
    return rep

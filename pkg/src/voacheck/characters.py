"""Truncated q-series with exact coefficients, c = 1 characters, and a numeric S-probe.

A ``QSeries`` stands for q^offset * sum_{n >= 0} c_n q^n with every c_n for
n < order known exactly; exponents at or beyond ``order`` are unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable, Dict, Iterable, List

import mpmath

from .fock import SpaceConfig, graded_dimension, partition_count
from .report import CheckReport, timed

Q = Fraction
C_OVER_24 = Q(1, 24)


class TailBoundError(ValueError):
    """The truncated series cannot be evaluated to the required accuracy."""


@dataclass(frozen=True)
class QSeries:
    offset: Fraction
    coefficients: Dict[int, Fraction] = field(default_factory=dict)
    order: int = 0

    def __post_init__(self):
        clean = {n: Q(c) for n, c in self.coefficients.items() if c != 0 and n < self.order}
        if any(n < 0 for n in clean):
            raise ValueError("exponents are relative to the offset and must be >= 0")
        object.__setattr__(self, "coefficients", clean)
        object.__setattr__(self, "offset", Q(self.offset))

    @classmethod
    def from_list(cls, coeffs: Iterable, offset=0, order: int | None = None) -> "QSeries":
        coeffs = list(coeffs)
        return cls(Q(offset), dict(enumerate(coeffs)), len(coeffs) if order is None else order)

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coefficients.get(n, Q(0))

    def as_list(self) -> List[Fraction]:
        return [self[n] for n in range(self.order)]

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.offset, self.coefficients, min(order, self.order))

    def _aligned(self, other: "QSeries"):
        d = self.offset - other.offset
        if d.denominator != 1:
            raise ValueError("offsets differ by a non-integer")
        return int(d)

    def __add__(self, other: "QSeries") -> "QSeries":
        d = self._aligned(other)
        if d < 0:
            return other + self
        # self starts d steps above other
        out = dict(other.coefficients)
        for n, c in self.coefficients.items():
            out[n + d] = out.get(n + d, 0) + c
        return QSeries(other.offset, out, min(other.order, self.order + d))

    def __neg__(self) -> "QSeries":
        return QSeries(self.offset, {n: -c for n, c in self.coefficients.items()}, self.order)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c) -> "QSeries":
        return QSeries(self.offset, {n: v * Q(c) for n, v in self.coefficients.items()}, self.order)

    def shift(self, n: int) -> "QSeries":
        """Multiply by q^n (n >= 0 keeps the offset, raising the order)."""
        return QSeries(self.offset, {m + n: c for m, c in self.coefficients.items()}, self.order + n)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        order = min(self.order, other.order)
        out: Dict[int, Fraction] = {}
        for a, ca in self.coefficients.items():
            for b, cb in other.coefficients.items():
                if a + b < order:
                    out[a + b] = out.get(a + b, 0) + ca * cb
        return QSeries(self.offset + other.offset, out, order)

    __rmul__ = scale

    def inverse(self) -> "QSeries":
        c0 = self.coefficients.get(0, Q(0))
        if c0 == 0 or self.order == 0:
            raise ZeroDivisionError("leading coefficient is zero")
        inv = [Q(0)] * self.order
        inv[0] = 1 / c0
        for n in range(1, self.order):
            s = sum((self.coefficients.get(j, 0) * inv[n - j] for j in range(1, n + 1)), Q(0))
            inv[n] = -s / c0
        return QSeries(-self.offset, dict(enumerate(inv)), self.order)

    def __truediv__(self, other: "QSeries") -> "QSeries":
        return self * other.inverse()

    def agrees_with(self, other: "QSeries", order: int | None = None) -> bool:
        """Coefficientwise equality below ``order`` (default: the common order)."""
        if self.offset != other.offset:
            return False
        n = min(self.order, other.order) if order is None else order
        if n > min(self.order, other.order):
            raise ValueError("comparison beyond the known coefficients")
        return all(self.coefficients.get(i, 0) == other.coefficients.get(i, 0) for i in range(n))

    def render(self) -> Dict[str, str]:
        return {"offset": str(self.offset), "order": str(self.order),
                "coefficients": [str(c) for c in self.as_list()]}


# ---------------------------------------------------------------- standard series


def eta(order: int) -> QSeries:
    """q^{1/24} prod (1 - q^n) via Euler's pentagonal theorem."""
    coeffs: Dict[int, Fraction] = {}
    j = 0
    while True:
        hit = False
        for g in {j * (3 * j - 1) // 2, j * (3 * j + 1) // 2}:
            if g < order:
                coeffs[g] = Q((-1) ** j)
                hit = True
        if not hit:
            break
        j += 1
    return QSeries(C_OVER_24, coeffs, order)


def eta_inverse(order: int) -> QSeries:
    if order < 1:
        raise ValueError("order must be >= 1")
    return QSeries(-C_OVER_24, {n: Q(partition_count(n)) for n in range(order)}, order)


def _square_quarter(h: Fraction):
    """n >= 0 with h = n^2/4, or None."""
    h = Q(h)
    four_h = 4 * h
    if four_h.denominator != 1 or four_h < 0:
        return None
    n = isqrt(int(four_h))
    return n if n * n == four_h else None


def char_L1(h, order: int) -> QSeries:
    """Character of L(1, h): q^{h - 1/24}(1 - q^{n+1}) / prod(1 - q^k) when h = n^2/4, else q^{h - 1/24} / prod."""
    h = Q(h)
    if h < 0:
        raise ValueError("h must be nonnegative")
    base = eta_inverse(order)
    n = _square_quarter(h)
    if n is not None:
        base = base - eta_inverse(order).shift(n + 1).truncate(order)
    return QSeries(base.offset + h, base.coefficients, order)


def char_from_basis(config: SpaceConfig, order: int) -> QSeries:
    """q^{-1/24} sum_n dim V_n q^n for n < order, counted from the basis."""
    if order > config.cutoff:
        raise ValueError(f"order {order} exceeds cutoff {config.cutoff}")
    return QSeries(-C_OVER_24, {n: Q(graded_dimension(config, n)) for n in range(order)}, order)


def theta_series(order: int) -> QSeries:
    """theta_{0,1} = sum_{n in Z} (-1)^n q^{n^2}."""
    coeffs: Dict[int, Fraction] = {0: Q(1)}
    n = 1
    while n * n < order:
        coeffs[n * n] = Q(2 * (-1) ** n)
        n += 1
    return QSeries(Q(0), coeffs, order)


def signed_square_series(order: int) -> QSeries:
    """sum_{n >= 0} (-q)^{n^2}."""
    coeffs = {}
    n = 0
    while n * n < order:
        coeffs[n * n] = Q((-1) ** n)
        n += 1
    return QSeries(Q(0), coeffs, order)


def m1plus_character_forms(order: int) -> Dict[str, QSeries]:
    """The closed forms of char M(1)^+ that must agree."""
    ei = eta_inverse(order)
    decomposition = None
    n = 0
    while 4 * n * n < order:
        term = char_L1(4 * n * n, order)
        decomposition = term if decomposition is None else decomposition + term
        n += 1
    return {
        "signed squares / eta": signed_square_series(order) * ei,
        "sum of L(1,4n^2)": decomposition,
        "1/(2 eta) + theta/(2 eta)": ei.scale(Q(1, 2)) + (theta_series(order) * ei).scale(Q(1, 2)),
    }


def verify_m1plus_characters(order: int = 17, config: SpaceConfig | None = None) -> CheckReport:
    rep = CheckReport("char-m1plus", "char M(1)^+ = sum (-q)^{n^2}/eta = sum char L(1,4n^2); char M(1) = 1/eta")
    with timed(rep):
        config = config or SpaceConfig(0, max(order, 17), True)
        plus = char_from_basis(SpaceConfig(0, config.cutoff, True), order)
        full = char_from_basis(SpaceConfig(0, config.cutoff, False), order)
        rep.record("char M(1)^+", plus.as_list())
        for name, s in m1plus_character_forms(order).items():
            rep.require(f"basis count == {name}", plus.agrees_with(s, order), s.as_list())
        rep.require("char M(1) == 1/eta", full.agrees_with(eta_inverse(order), order), full.as_list())
    return rep


def verify_theta_identity(order: int = 17) -> CheckReport:
    rep = CheckReport("theta-identity", "sum_{n>=0}(-q)^{n^2}/eta = 1/(2 eta) + theta_{0,1}/(2 eta)")
    with timed(rep):
        th = theta_series(order)
        rep.compare("theta_{0,1} through q^9", [1, -2, 0, 0, 2, 0, 0, 0, 0, -2][:order],
                    [int(c) for c in th.as_list()[:10]])
        ei = eta_inverse(order)
        lhs = signed_square_series(order) * ei
        rhs = ei.scale(Q(1, 2)) + (th * ei).scale(Q(1, 2))
        rep.require("identity to order", lhs.agrees_with(rhs, order))
        rep.require("eta * (1/eta) = 1", (eta(order) * ei).agrees_with(QSeries.from_list([1], 0, order)))
    return rep


# ---------------------------------------------------------------- numeric S-transform probe

DPS = 50
TAIL_TOLERANCE = mpmath.mpf("1e-12")


def partition_bound(n: int):
    """p(n) <= exp(pi sqrt(2n/3))."""
    return mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * n) / 3))


@dataclass
class ProbeSeries:
    """A q-series known to any order, with a bound |c_n| <= bound(n) for the tail."""

    name: str
    factory: Callable[[int], QSeries]
    bound: Callable[[int], object]


def _tail(bound, x, start: int):
    # sum_{n >= start} bound(n) x^n; stop once terms shrink geometrically below 1e-40
    total = mpmath.mpf(0)
    n = start
    prev = None
    while True:
        term = bound(n) * x ** n
        total += term
        if prev is not None and term < prev / 2 and term < mpmath.mpf("1e-40"):
            return total + term  # geometric remainder with ratio <= 1/2
        prev = term
        n += 1
        if n - start > 100000:
            raise TailBoundError("tail sum did not converge")


def evaluate_at(series: ProbeSeries, t, terms: int):
    """Value at tau = i t, i.e. q = exp(-2 pi t); raises if the tail bound is too large."""
    with mpmath.workdps(DPS):
        t = mpmath.mpf(t.numerator) / t.denominator if isinstance(t, Fraction) else mpmath.mpf(t)
        x = mpmath.exp(-2 * mpmath.pi * t)
        s = series.factory(terms)
        tail = _tail(series.bound, x, terms)
        if tail > TAIL_TOLERANCE:
            raise TailBoundError(f"{series.name}: tail bound {mpmath.nstr(tail, 5)} at t={mpmath.nstr(t, 5)} "
                                 f"with {terms} terms exceeds 1e-12")
        total = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * x ** n for n, c in s.coefficients.items())
        off = s.offset
        return total * x ** (mpmath.mpf(off.numerator) / off.denominator), tail


def eta_probe() -> ProbeSeries:
    return ProbeSeries("eta", eta, lambda n: mpmath.mpf(1))


def quotient_probe(name: str, numerator: Dict[int, int]) -> ProbeSeries:
    """(sum a_j q^j) / eta with |c_n| <= sum |a_j| p(n)."""
    total = sum(abs(a) for a in numerator.values())

    def factory(order: int) -> QSeries:
        return QSeries(Q(0), {j: Q(a) for j, a in numerator.items()}, order) * eta_inverse(order)

    return ProbeSeries(name, factory, lambda n: total * partition_bound(n))


def theta_over_eta_probe() -> ProbeSeries:
    def factory(order: int) -> QSeries:
        return theta_series(order) * eta_inverse(order)

    return ProbeSeries("theta_{0,1}/eta", factory,
                       lambda n: (2 * mpmath.sqrt(n) + 1) * partition_bound(n))


def s_transform_probe(series: ProbeSeries, t, precision_terms: int = 200, weight=Fraction(0)) -> Dict[str, object]:
    """Compare f(i/t) with t^weight f(i t); returns the defect and a doubling-stability figure.

    The weight is 1/2 for eta (eta(-1/tau) = (-i tau)^{1/2} eta(tau)) and 0 for characters.
    """
    t = Q(t)
    if t <= 0:
        raise ValueError("t must be positive")
    with mpmath.workdps(DPS):
        w = mpmath.mpf(weight.numerator) / weight.denominator
        tt = mpmath.mpf(t.numerator) / t.denominator

        def defect(terms):
            a, ta = evaluate_at(series, 1 / t, terms)
            b, tb = evaluate_at(series, t, terms)
            return abs(a - tt ** w * b), max(ta, tb), a, b

        d1, tail1, a, b = defect(precision_terms)
        d2, _, _, _ = defect(2 * precision_terms)
        return {
            "series": series.name,
            "t": str(t),
            "terms": precision_terms,
            "value_at_i/t": float(a),
            "value_at_it": float(b),
            "defect": float(d1),
            "doubling_change": float(abs(d1 - d2)),
            "tail_bound": float(tail1),
        }


def verify_eta_s_law(terms: int = 200) -> CheckReport:
    rep = CheckReport("eta-s-law", "eta(-1/tau) = (-i tau)^{1/2} eta(tau), checked at tau = i, 2i")
    with timed(rep):
        for t in (1, 2):
            r = s_transform_probe(eta_probe(), t, terms, Q(1, 2))
            rep.record(f"t={t}", r)
            rep.require(f"defect < 1e-9 at t={t}", r["defect"] < 1e-9, r["defect"])
            rep.require(f"stable under doubling at t={t}", r["doubling_change"] < 1e-9, r["doubling_change"])
    return rep


def verify_s_defect_demo(terms: int = 200) -> CheckReport:
    rep = CheckReport("s-defect-demo", "Z = (1 - q + q^4 - q^9)/eta is not S-invariant")
    with timed(rep):
        z = quotient_probe("(1-q+q^4-q^9)/eta", {0: 1, 1: -1, 4: 1, 9: -1})
        r = s_transform_probe(z, 2, terms)
        rep.record("t=2", r)
        rep.require("defect > 0.1", r["defect"] > 0.1, r["defect"])
        rep.require("stable under doubling", r["doubling_change"] < 1e-9, r["doubling_change"])
        r1 = s_transform_probe(theta_over_eta_probe(), 1, terms)
        rep.record("theta_{0,1}/eta at t=1", r1)
        rep.require("fixed point tau = i has zero defect", r1["defect"] < 1e-6, r1["defect"])
    return rep

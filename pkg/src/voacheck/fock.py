"""Graded Fock bases for M(1) and V_L (L = Z alpha, (alpha, alpha) = 2k^2).

Everything is over the rationals.  The Heisenberg generator used internally
is gamma = alpha for lattice configurations (norm N = 2k^2) and gamma = h
(norm 1) for plain M(1), so no square roots ever appear.

A basis monomial is ``Monomial(parts, sector)``, meaning
gamma(-parts[0]) ... gamma(-parts[-1]) e^{sector * alpha}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, Iterator, List, NamedTuple, Tuple

Q = Fraction


class CutoffExceeded(ValueError):
    """A requested result would have weight above the configured cutoff."""


class InvalidSector(ValueError):
    pass


class Monomial(NamedTuple):
    parts: Tuple[int, ...]
    sector: int = 0


VACUUM = Monomial((), 0)


@dataclass(frozen=True)
class SpaceConfig:
    """Ambient algebra: M(1) when ``k == 0``, otherwise V_L with (alpha, alpha) = 2k^2."""

    k: int = 0
    cutoff: int = 17
    fixed_point: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("lattice_k must be nonnegative")
        if self.cutoff < 0:
            raise ValueError("cutoff must be nonnegative")

    @property
    def N(self) -> int:
        return 2 * self.k * self.k if self.k else 1

    @property
    def generator_norm(self) -> int:
        return self.N

    def with_cutoff(self, cutoff: int) -> "SpaceConfig":
        return SpaceConfig(self.k, cutoff, self.fixed_point)

    def label(self) -> str:
        name = "M(1)" if self.k == 0 else f"V_L(k={self.k})"
        return name + ("+" if self.fixed_point else "")


def weight_of(mono: Monomial, k: int) -> int:
    return sum(mono.parts) + k * k * mono.sector * mono.sector


def cocycle(k: int, m: int, n: int) -> int:
    # bimultiplicative sign (-1)^{k^2 m n}; trivial when k is even
    return -1 if (k * m * n) % 2 and k % 2 else 1


# ---------------------------------------------------------------- partitions


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> Tuple[Tuple[int, ...], ...]:
    """All partitions of n with parts <= max_part, lexicographically descending."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    # Euler pentagonal recurrence
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > n:
            break
        sign = 1 if j % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = j * (3 * j + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        j += 1
    return total


def insert_part(parts: Tuple[int, ...], p: int) -> Tuple[int, ...]:
    i = 0
    while i < len(parts) and parts[i] >= p:
        i += 1
    return parts[:i] + (p,) + parts[i:]


def remove_part(parts: Tuple[int, ...], p: int) -> Tuple[int, ...]:
    i = parts.index(p)
    return parts[:i] + parts[i + 1:]


def multiplicities(parts: Iterable[int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for p in parts:
        out[p] = out.get(p, 0) + 1
    return out


# ---------------------------------------------------------------- vectors


class Vector:
    """Finite Q-linear combination of monomials; zero coefficients are never stored.

    Vectors are treated as immutable values: every operation returns a new one.
    """

    __slots__ = ("terms", "k")

    def __init__(self, terms: Dict[Monomial, Fraction] | None = None, k: int = 0):
        self.terms = {m: Q(c) for m, c in (terms or {}).items() if c != 0}
        self.k = k

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], k: int) -> "Vector":
        v = cls.__new__(cls)
        v.terms = terms
        v.k = k
        return v

    @classmethod
    def monomial(cls, parts: Iterable[int] = (), sector: int = 0, k: int = 0,
                 coeff=1) -> "Vector":
        mono = Monomial(tuple(sorted(parts, reverse=True)), sector)
        return cls({mono: Q(coeff)}, k)

    @classmethod
    def vacuum(cls, k: int = 0) -> "Vector":
        return cls({VACUUM: Q(1)}, k)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, Vector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Vector") -> "Vector":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Vector._raw(out, self.k)

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def __neg__(self) -> "Vector":
        return Vector._raw({m: -c for m, c in self.terms.items()}, self.k)

    def __mul__(self, scalar) -> "Vector":
        scalar = Q(scalar)
        if scalar == 0:
            return Vector._raw({}, self.k)
        return Vector._raw({m: c * scalar for m, c in self.terms.items()}, self.k)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Vector":
        return self * (1 / Q(scalar))

    def __repr__(self):
        if not self.terms:
            return "Vector(0)"
        return "Vector(" + render_terms(self.terms) + ")"

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Q(0))

    def weights(self) -> List[int]:
        return sorted({weight_of(m, self.k) for m in self.terms})

    def max_weight(self) -> int:
        return max((weight_of(m, self.k) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def weight(self) -> int:
        ws = self.weights()
        if len(ws) > 1:
            raise ValueError("vector is not weight-homogeneous")
        return ws[0] if ws else 0

    def component(self, weight: int) -> "Vector":
        return Vector._raw({m: c for m, c in self.terms.items()
                            if weight_of(m, self.k) == weight}, self.k)

    def components(self) -> Dict[int, "Vector"]:
        return {w: self.component(w) for w in self.weights()}

    def sectors(self) -> List[int]:
        return sorted({m.sector for m in self.terms})


def render_terms(terms: Dict[Monomial, Fraction]) -> str:
    pieces = []
    for m in sorted(terms, key=monomial_sort_key):
        body = "".join(f"g(-{p})" for p in m.parts) or ""
        if m.sector:
            body += f"e^{m.sector}a"
        pieces.append(f"{terms[m]}*{body or '1'}")
    return " + ".join(pieces)


def monomial_sort_key(m: Monomial):
    # lexicographic-descending on parts, then lattice exponent
    return (tuple(-p for p in m.parts) + (0,), -m.sector)


def linear_combination(pairs: Iterable[Tuple[object, Vector]], k: int) -> Vector:
    out: Dict[Monomial, Fraction] = {}
    for c, v in pairs:
        c = Q(c)
        if c == 0:
            continue
        for m, a in v.terms.items():
            s = out.get(m, 0) + c * a
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Vector._raw(out, k)


def add_into(acc: Dict, terms: Dict, scale=1) -> None:
    """In-place acc += scale * terms, dropping zeros."""
    if scale == 0:
        return
    for m, a in terms.items():
        s = acc.get(m, 0) + a * scale
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)


# ---------------------------------------------------------------- Heisenberg action


def heis_mode_terms(j: int, mono: Monomial, k: int, N: int) -> Dict[Monomial, Fraction]:
    """gamma(j) applied to a single monomial, as a term dict."""
    parts, sector = mono
    if j < 0:
        return {Monomial(insert_part(parts, -j), sector): Q(1)}
    if j == 0:
        if sector == 0 or k == 0:
            return {}
        return {mono: Q(2 * k * k * sector)}
    cnt = parts.count(j)
    if not cnt:
        return {}
    return {Monomial(remove_part(parts, j), sector): Q(cnt * j * N)}


def heis_mode(j: int, v: Vector, config: SpaceConfig) -> Vector:
    out: Dict[Monomial, Fraction] = {}
    for m, c in v.terms.items():
        add_into(out, heis_mode_terms(j, m, config.k, config.N), c)
    return Vector._raw(out, v.k)


# ---------------------------------------------------------------- bases


def _check_sector(config: SpaceConfig, weight: int, sector: int) -> None:
    if config.k == 0 and sector != 0:
        raise InvalidSector("nonzero sector requested for plain M(1)")
    if weight < 0:
        raise ValueError("weight must be nonnegative")


def enumerate_basis(config: SpaceConfig, weight: int, sector: int = 0) -> List[Monomial]:
    """Monomials of the given weight in the given sector, lexicographically descending."""
    _check_sector(config, weight, sector)
    rest = weight - config.k ** 2 * sector ** 2
    if rest < 0:
        return []
    return [Monomial(p, sector) for p in partitions(rest)]


def sectors_at(config: SpaceConfig, weight: int) -> List[int]:
    if config.k == 0:
        return [0]
    out = [0]
    m = 1
    while config.k ** 2 * m * m <= weight:
        out += [m, -m]
        m += 1
    return out


def space_basis(config: SpaceConfig, weight: int) -> List[Monomial]:
    """All monomials of the full space (M(1) or V_L) at a weight, every sector."""
    out = []
    for s in sorted(sectors_at(config, weight), key=lambda s: (abs(s), -s)):
        out += enumerate_basis(config, weight, s)
    return out


def theta_involution(v: Vector) -> Vector:
    """gamma(-n) -> -gamma(-n), e^{m alpha} -> e^{-m alpha}."""
    return Vector._raw({Monomial(m.parts, -m.sector): (-c if len(m.parts) % 2 else c)
                        for m, c in v.terms.items()}, v.k)


def fixed_subspace_basis(config: SpaceConfig, weight: int, sector: int = 0) -> List[Vector]:
    """Basis of the theta-fixed vectors of the given weight in sectors +-|sector|."""
    sector = abs(sector)
    _check_sector(config, weight, sector)
    out = []
    for mono in enumerate_basis(config, weight, sector):
        if sector == 0:
            if len(mono.parts) % 2 == 0:
                out.append(Vector._raw({mono: Q(1)}, config.k))
        else:
            v = Vector._raw({mono: Q(1)}, config.k)
            out.append(v + theta_involution(v))
    return out


def fixed_space_basis(config: SpaceConfig, weight: int) -> List[Vector]:
    """Basis of V^+ (or M(1)^+) at a weight, all sectors."""
    out = []
    for s in sectors_at(config, weight):
        if s >= 0:
            out += fixed_subspace_basis(config, weight, s)
    return out


def full_or_fixed_basis(config: SpaceConfig, weight: int) -> List[Vector]:
    if config.fixed_point:
        return fixed_space_basis(config, weight)
    return [Vector._raw({m: Q(1)}, config.k) for m in space_basis(config, weight)]


def graded_dimension(config: SpaceConfig, weight: int) -> int:
    return len(full_or_fixed_basis(config, weight))


# ---------------------------------------------------------------- bilinear form


def lattice_pairing_sign(k: int, m: int) -> int:
    # (e^{m alpha}, e^{-m alpha}); +1 is compatible with invariance for the
    # cocycle chosen in ``cocycle``.
    return 1


def monomial_pairing(a: Monomial, b: Monomial, k: int, N: int) -> Fraction:
    if a.parts != b.parts or a.sector + b.sector != 0:
        return Q(0)
    val = lattice_pairing_sign(k, a.sector)
    for n, c in multiplicities(a.parts).items():
        val *= (-n * N) ** c * factorial(c)
    return Q(val)


def inner_product(u: Vector, v: Vector, config: SpaceConfig | None = None) -> Fraction:
    """Invariant symmetric bilinear form with (1, 1) = 1 and gamma(n)^dagger = -gamma(-n)."""
    k = u.k if config is None else config.k
    N = (2 * k * k if k else 1)
    total = Q(0)
    small, big = (u, v) if len(u) <= len(v) else (v, u)
    for a, ca in small.terms.items():
        b = Monomial(a.parts, -a.sector)
        cb = big.terms.get(b)
        if cb is not None:
            total += ca * cb * monomial_pairing(a, b, k, N)
    return total


def gram_matrix(vectors: List[Vector], config: SpaceConfig | None = None) -> List[List[Fraction]]:
    return [[inner_product(a, b, config) for b in vectors] for a in vectors]


def check_cutoff(v: Vector, config: SpaceConfig, what: str = "result") -> Vector:
    if v.terms and v.max_weight() > config.cutoff:
        raise CutoffExceeded(f"{what} has weight {v.max_weight()} > cutoff {config.cutoff}")
    return v

"""Virasoro operators at c = 1 on the Fock spaces, primaries and multiplicities.

L(n) = (1/2N) sum_j :gamma(j) gamma(n - j):, with gamma(0) acting on
e^{m alpha} by 2k^2 m.  A small abstract Verma-module calculator is included
as an independent oracle: it knows nothing about Fock spaces, only the
bracket [L(m), L(n)] = (m - n) L(m + n) + (m^3 - m)/12 c delta_{m+n,0}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .fock import (CutoffExceeded, Monomial, SpaceConfig, Vector, add_into, full_or_fixed_basis,
                   heis_mode_terms)
from .linalg import Echelon, nullspace
from .report import CheckReport, timed

Q = Fraction
CENTRAL_CHARGE = Q(1)


@lru_cache(maxsize=200000)
def _L_mono(n: int, mono: Monomial, k: int) -> Tuple[Tuple[Monomial, Fraction], ...]:
    N = 2 * k * k if k else 1
    D = sum(mono.parts)
    lo, hi = min(n, 0) - D - 1, max(n, 0) + D + 1
    acc: Dict[Monomial, Fraction] = {}
    for j in range(lo, hi + 1):
        a, b = j, n - j
        first, second = (a, b) if a >= b else (b, a)
        if first > D:
            continue
        step = heis_mode_terms(first, mono, k, N)
        for m1, c1 in step.items():
            for m2, c2 in heis_mode_terms(second, m1, k, N).items():
                s = acc.get(m2, 0) + c1 * c2
                if s:
                    acc[m2] = s
                else:
                    acc.pop(m2, None)
    scale = Q(1, 2 * N)
    return tuple((m, c * scale) for m, c in acc.items())


def apply_L(n: int, v: Vector, config: SpaceConfig) -> Vector:
    """L(n) v; raises CutoffExceeded if the result weight exceeds the cutoff."""
    if v.terms and v.max_weight() - n > config.cutoff:
        raise CutoffExceeded(f"L({n}) on weight {v.max_weight()} exceeds cutoff {config.cutoff}")
    out: Dict[Monomial, Fraction] = {}
    for m, c in v.terms.items():
        for m2, c2 in _L_mono(n, m, config.k):
            s = out.get(m2, 0) + c * c2
            if s:
                out[m2] = s
            else:
                out.pop(m2, None)
    return Vector._raw(out, v.k)


def apply_word(word: Sequence[int], v: Vector, config: SpaceConfig) -> Vector:
    """L(word[0]) L(word[1]) ... L(word[-1]) v (rightmost acts first)."""
    for n in reversed(word):
        v = apply_L(n, v, config)
    return v


def omega(config: SpaceConfig) -> Vector:
    return Vector.monomial((1, 1), 0, config.k, Q(1, 2 * config.N))


def virasoro_descendant(word: Sequence[int], v: Vector, config: SpaceConfig) -> Vector:
    """L(-word[0]) ... L(-word[-1]) v for a word of positive integers."""
    return apply_word([-n for n in word], v, config)


# ---------------------------------------------------------------- abstract Verma oracle


class VermaOracle:
    """Highest-weight Verma module M(c, h) in the PBW basis L(-n1)...L(-nr)v, n1 >= ... >= nr >= 1."""

    def __init__(self, h, c=CENTRAL_CHARGE):
        self.h = Q(h)
        self.c = Q(c)
        self._cache: Dict = {}

    def _create(self, a: int, word: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        # L(-a) applied to PBW word, re-sorted
        if not word or a >= word[0]:
            return {(a,) + word: Q(1)}
        key = ("c", a, word)
        if key in self._cache:
            return self._cache[key]
        n1, rest = word[0], word[1:]
        out: Dict[Tuple[int, ...], Fraction] = {}
        # L(-a) L(-n1) = L(-n1) L(-a) + (n1 - a) L(-a-n1)
        for w, c in self._create(a, rest).items():
            add_into(out, self._create(n1, w), c)
        add_into(out, self._create(a + n1, rest), Q(n1 - a))
        self._cache[key] = out
        return out

    def apply(self, m: int, word: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        """L(m) on a PBW word, any integer m."""
        if m < 0:
            return self._create(-m, word)
        key = ("a", m, word)
        if key in self._cache:
            return self._cache[key]
        if m == 0:
            level = self.h + sum(word)
            return {word: level} if level else {}
        if not word:
            return {}
        n1, rest = word[0], word[1:]
        out: Dict[Tuple[int, ...], Fraction] = {}
        # L(m) L(-n1) = L(-n1) L(m) + (m + n1) L(m - n1) + c/12 (m^3 - m) delta
        for w, c in self.apply(m, rest).items():
            add_into(out, self._create(n1, w), c)
        coef = m + n1
        if coef:
            for w, c in self.apply(m - n1, rest).items():
                add_into(out, {w: c}, coef)
        if m == n1:
            add_into(out, {rest: Q(1)}, self.c * (m ** 3 - m) / 12)
        self._cache[key] = out
        return out

    def apply_vec(self, m: int, vec: Dict[Tuple[int, ...], Fraction]) -> Dict[Tuple[int, ...], Fraction]:
        out: Dict[Tuple[int, ...], Fraction] = {}
        for w, c in vec.items():
            add_into(out, self.apply(m, w), c)
        return out

    def gram(self, word_a: Sequence[int], word_b: Sequence[int]) -> Fraction:
        """<L(-a1)...L(-ar)v, L(-b1)...L(-bs)v> with <v, v> = 1 and L(n)^dagger = L(-n)."""
        vec: Dict[Tuple[int, ...], Fraction] = {(): Q(1)}
        for n in reversed(list(word_b)):
            vec = self.apply_vec(-n, vec)
        for n in list(word_a):
            vec = self.apply_vec(n, vec)
        return vec.get((), Q(0))


# ---------------------------------------------------------------- checks and primaries


def virasoro_bracket_check(m: int, n: int, v: Vector, config: SpaceConfig) -> CheckReport:
    rep = CheckReport(f"virasoro-bracket[{m},{n}]", "c=1 Virasoro relations")
    with timed(rep):
        lhs = apply_L(m, apply_L(n, v, config), config) - apply_L(n, apply_L(m, v, config), config)
        rhs = (m - n) * apply_L(m + n, v, config)
        if m + n == 0:
            rhs = rhs + v * (CENTRAL_CHARGE * (m ** 3 - m) / 12)
        rep.compare("bracket", rhs, lhs)
    return rep


def _weight_basis(config: SpaceConfig, weight: int, in_space: List[Vector] | None) -> List[Vector]:
    if in_space is not None:
        return in_space
    return full_or_fixed_basis(config, weight)


def kernel_of(ops: Sequence[int], basis: List[Vector], config: SpaceConfig) -> List[Vector]:
    """Basis (echelonized) of the common kernel of L(n), n in ops, inside span(basis)."""
    cols = []
    for b in basis:
        col: Dict = {}
        for n in ops:
            for m, c in apply_L(n, b, config).terms.items():
                col[(n, m)] = c
        cols.append(col)
    kern = nullspace(cols, key=_col_key)
    vecs = []
    for x in kern:
        acc: Dict[Monomial, Fraction] = {}
        for i, c in x.items():
            add_into(acc, basis[i].terms, c)
        vecs.append(Vector._raw(acc, config.k))
    return echelonize(vecs)


def _col_key(c):
    n, m = c
    return (n, m.parts, m.sector)


def echelonize(vectors: List[Vector]) -> List[Vector]:
    """Deterministic reduced spanning set: rows of the echelon form, pivot-descending."""
    if not vectors:
        return []
    k = vectors[0].k
    e = Echelon(key=_mono_key)
    for v in vectors:
        e.add(v.terms)
    return [Vector._raw({m: Q(c) for m, c in row.items()}, k) for row in e.basis()]


def _mono_key(m: Monomial):
    return (m.parts, m.sector)


def primary_space(config: SpaceConfig, weight: int, in_space: List[Vector] | None = None) -> List[Vector]:
    """Basis of ker L(1) ∩ ker L(2) in the weight component (of ``in_space`` if given)."""
    if weight > config.cutoff:
        raise CutoffExceeded(f"weight {weight} > cutoff {config.cutoff}")
    basis = _weight_basis(config, weight, in_space)
    if not basis:
        return []
    return kernel_of((1, 2), basis, config)


def isotypic_multiplicities(config: SpaceConfig, max_weight: int) -> Dict[int, int]:
    """Multiplicity of L(1, h) for each h <= max_weight (counted by highest-weight vectors)."""
    if max_weight > config.cutoff:
        raise CutoffExceeded(f"max_weight {max_weight} > cutoff {config.cutoff}")
    out = {}
    for h in range(max_weight + 1):
        d = len(primary_space(config, h))
        if d:
            out[h] = d
    return out


def LJ_commutator_check(m: int, n: int, config: SpaceConfig, max_weight: int = 8) -> CheckReport:
    """[L(m), J_n] v = (3(m+1) - n) J_{m+n} v on every basis vector v of weight <= max_weight."""
    from .identities import build_J
    from .vertex import mode

    rep = CheckReport(f"LJ-commutator[{m},{n}]", "[L(m), J_n] = [3(m+1)-n] J_{m+n}")
    with timed(rep):
        J = build_J(config)
        coef = 3 * (m + 1) - n
        failures = []
        checked = 0
        for w in range(max_weight + 1):
            for v in full_or_fixed_basis(config, w):
                if w + 3 - n > config.cutoff or w + 3 - n - m > config.cutoff:
                    continue
                lhs = apply_L(m, mode(J, n, v, config), config) - mode(J, n, apply_L(m, v, config), config)
                rhs = coef * mode(J, m + n, v, config)
                checked += 1
                if lhs != rhs:
                    failures.append(v)
        rep.record("vectors_checked", checked)
        rep.compare("failures", 0, len(failures))
        if failures:
            rep.record("first_failure", failures[0])
        rep.notes.append("subscript read as J_{m+n} (printed J_{m+m})")
    return rep


def verma_descendant_gram(h, words: Sequence[Sequence[int]], c=CENTRAL_CHARGE) -> List[List[Fraction]]:
    o = VermaOracle(h, c)
    return [[o.gram(a, b) for b in words] for a in words]


def descendants_at(v: Vector, level: int, config: SpaceConfig) -> List[Vector]:
    """L(-lam_1)...L(-lam_r) v over all partitions lam of ``level`` (PBW order)."""
    from .fock import partitions

    return [virasoro_descendant(lam, v, config) for lam in partitions(level)]


def coordinates(target: Vector, vectors: Sequence[Vector]) -> List[Fraction] | None:
    """Coefficients expressing ``target`` in the (independent) ``vectors``, or None."""
    e = Echelon(key=_mono_key, track=True)
    for v in vectors:
        e.add(v.terms)
    x = e.express(target.terms)
    if x is None:
        return None
    return [x.get(i, Q(0)) for i in range(len(vectors))]


def in_span(target: Vector, vectors: Sequence[Vector]) -> bool:
    e = Echelon(key=_mono_key)
    for v in vectors:
        e.add(v.terms)
    return e.contains(target.terms)

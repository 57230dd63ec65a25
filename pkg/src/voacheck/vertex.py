"""Vertex operator modes u_t v on M(1) and V_L.

The mode of a monomial gamma(-n) u' is peeled off the normal-ordered
iterate

    Y(gamma(-n) u', z) = : (1/(n-1)!) d^{n-1} gamma(z) . Y(u', z) :

with gamma(j), j >= 0, placed to the right.  The recursion bottoms out in
the vacuum (1_t v = delta_{t,-1} v) or in a lattice exponential, whose
vertex operator

    Y(e^{m alpha}, z) = E^-(-m alpha, z) E^+(-m alpha, z) e_{m alpha} z^{m alpha(0)}

is expanded to exactly the degree a requested mode needs.  Everything is
memoized per monomial triple; the caches are plain lru_caches of pure
functions, so sharing them between threads is harmless.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Tuple

from .fock import (CutoffExceeded, Monomial, SpaceConfig, Vector, add_into, cocycle,
                   heis_mode_terms, insert_part, multiplicities, partitions, weight_of)
from .report import CheckReport, timed

Q = Fraction
Terms = Tuple[Tuple[Monomial, Fraction], ...]


def binom(m: int, i: int) -> Fraction:
    """C(m, i) for any integer m via the falling factorial."""
    if i < 0:
        return Q(0)
    if m >= 0:
        return Q(comb(m, i))
    num = 1
    for r in range(i):
        num *= m - r
    return Q(num, factorial(i))


def _norm(k: int) -> int:
    return 2 * k * k if k else 1


def _merge(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(sorted(a + b, reverse=True))


# ---------------------------------------------------------------- lattice exponentials


@lru_cache(maxsize=None)
def _creation_expansion(m: int, d: int) -> Terms:
    """Coefficient of z^d in exp(sum_s m gamma(-s) z^s / s), as partition -> coefficient."""
    out = []
    for lam in partitions(d):
        c = Q(1)
        for s, a in multiplicities(lam).items():
            c *= Q(m, s) ** a / factorial(a)
        out.append((Monomial(lam, 0), c))
    return tuple(out)


@lru_cache(maxsize=None)
def _annihilation_expansion(m: int, parts: Tuple[int, ...], k: int) -> Tuple[Tuple[Tuple[int, ...], int, Fraction], ...]:
    """exp(-sum_s m gamma(s) z^{-s} / s) on gamma(-parts) 1: triples (remaining parts, degree, coeff).

    The degree d means the term carries z^{-d}.
    """
    N = _norm(k)
    states = {((), 0): Q(1)}
    for s, c in multiplicities(parts).items():
        new: Dict = {}
        for (rest, d), coef in states.items():
            for a in range(c + 1):
                # gamma(s)^a gamma(-s)^c = c!/(c-a)! (sN)^a gamma(-s)^{c-a}
                val = coef * Q(-m, s) ** a / factorial(a) * Q(factorial(c), factorial(c - a)) * (s * N) ** a
                key = (rest + (s,) * (c - a), d + s * a)
                new[key] = new.get(key, 0) + val
        states = new
    return tuple((tuple(sorted(r, reverse=True)), d, c) for (r, d), c in states.items() if c)


@lru_cache(maxsize=None)
def _lattice_mode_mono(m: int, t: int, v: Monomial, k: int) -> Terms:
    if m == 0:
        return ((v, Q(1)),) if t == -1 else ()
    n = v.sector
    shift = 2 * k * k * m * n
    eps = cocycle(k, m, n)
    acc: Dict[Monomial, Fraction] = {}
    for rest, d_ann, c_ann in _annihilation_expansion(m, v.parts, k):
        d_cre = -t - 1 - shift + d_ann
        if d_cre < 0:
            continue
        for lam, c_cre in _creation_expansion(m, d_cre):
            mono = Monomial(_merge(lam.parts, rest), n + m)
            add_into(acc, {mono: c_ann * c_cre * eps})
    return tuple(acc.items())


# ---------------------------------------------------------------- general monomial modes


@lru_cache(maxsize=None)
def _mode_mono(u: Monomial, t: int, v: Monomial, k: int) -> Terms:
    W = weight_of(u, k) + weight_of(v, k) - t - 1
    if W < 0:
        return ()
    if not u.parts:
        return _lattice_mode_mono(u.sector, t, v, k)
    N = _norm(k)
    n, rest = u.parts[0], Monomial(u.parts[1:], u.sector)
    acc: Dict[Monomial, Fraction] = {}
    # creation half: gamma(j), j <= -n, to the left
    for j in range(-n, -W - 1, -1):
        c = binom(-j - 1, n - 1)
        for m1, c1 in _mode_mono(rest, t - j - n, v, k):
            add_into(acc, {Monomial(insert_part(m1.parts, -j), m1.sector): c1}, c)
    # annihilation half: gamma(j), j >= 0, to the right
    top = max(v.parts, default=0)
    for j in range(0, top + 1):
        terms = heis_mode_terms(j, v, k, N)
        if not terms:
            continue
        c = binom(-j - 1, n - 1)
        for v2, c2 in terms.items():
            for m1, c1 in _mode_mono(rest, t - j - n, v2, k):
                add_into(acc, {m1: c1}, c * c2)
    return tuple(acc.items())


def mode(u: Vector, t: int, v: Vector, config: SpaceConfig) -> Vector:
    """u_t v, the coefficient of z^{-t-1} in Y(u, z) v."""
    k = config.k
    out: Dict[Monomial, Fraction] = {}
    for um, uc in u.terms.items():
        if um.sector and not k:
            raise ValueError("lattice exponentials need lattice_k >= 1")
        wu = weight_of(um, k)
        for vm, vc in v.terms.items():
            W = wu + weight_of(vm, k) - t - 1
            if W < 0:
                continue
            if W > config.cutoff:
                raise CutoffExceeded(f"mode result weight {W} > cutoff {config.cutoff}")
            for m, c in _mode_mono(um, t, vm, k):
                s = out.get(m, 0) + c * uc * vc
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
    return Vector._raw(out, k)


general_mode = mode


def heisenberg_mode(u: Vector, t: int, v: Vector, config: SpaceConfig) -> Vector:
    if any(m.sector for m in u.terms):
        raise ValueError("heisenberg_mode takes a sector-0 operator vector")
    return mode(u, t, v, config)


def lattice_mode(m: int, t: int, v: Vector, config: SpaceConfig) -> Vector:
    """(e^{m alpha})_t v."""
    if config.k < 1:
        raise ValueError("lattice_mode needs lattice_k >= 1")
    return mode(Vector.monomial((), m, config.k), t, v, config)


def clear_caches() -> None:
    for f in (_mode_mono, _lattice_mode_mono, _creation_expansion, _annihilation_expansion):
        f.cache_clear()


# ---------------------------------------------------------------- derived operations


def weight_of_vector(u: Vector) -> int:
    return u.weight()


def adjoint_mode(u: Vector, t: int, w: Vector, config: SpaceConfig) -> Vector:
    """The operator u_t^dagger applied to w, for homogeneous u.

    u_t^dagger = (-1)^d sum_j (1/j!) (L(1)^j u)_{2d - j - t - 2}, d = wt u.
    """
    from .virasoro import apply_L

    d = u.weight()
    out = Vector._raw({}, config.k)
    a = u
    j = 0
    while a:
        out = out + mode(a, 2 * d - j - t - 2, w, config) * Q(1, factorial(j))
        a = apply_L(1, a, config)
        j += 1
    return out * (-1) ** d


def skew_symmetry_rhs(u: Vector, t: int, v: Vector, config: SpaceConfig) -> Vector:
    """sum_i (-1)^{t+i+1} L(-1)^i (v_{t+i} u) / i!."""
    from .virasoro import apply_L

    W = u.max_weight() + v.max_weight() - t - 1
    out = Vector._raw({}, config.k)
    for i in range(0, W + 1):
        x = mode(v, t + i, u, config)
        for _ in range(i):
            x = apply_L(-1, x, config)
        out = out + x * (Q((-1) ** (t + i + 1)) / factorial(i))
    return out


def borcherds_rhs(u: Vector, m: int, v: Vector, n: int, w: Vector, config: SpaceConfig) -> Vector:
    """sum_{i >= 0} C(m, i) (u_i v)_{m+n-i} w."""
    top = u.max_weight() + v.max_weight() - 1
    out = Vector._raw({}, config.k)
    for i in range(0, top + 1):
        uv = mode(u, i, v, config)
        if uv:
            out = out + mode(uv, m + n - i, w, config) * binom(m, i)
    return out


def skew_symmetry_check(u: Vector, v: Vector, t: int, config: SpaceConfig) -> CheckReport:
    rep = CheckReport(f"skew[{t}]", "skew symmetry Y(u,z)v = e^{zL(-1)} Y(v,-z)u")
    with timed(rep):
        lhs = mode(u, t, v, config)
        rhs = skew_symmetry_rhs(u, t, v, config)
        rep.compare("u_t v", rhs, lhs)
    return rep


def borcherds_commutator_check(u: Vector, m: int, v: Vector, n: int, w: Vector,
                               config: SpaceConfig) -> CheckReport:
    rep = CheckReport(f"borcherds[{m},{n}]", "[u_m, v_n] = sum_i C(m,i) (u_i v)_{m+n-i}")
    with timed(rep):
        lhs = mode(u, m, mode(v, n, w, config), config) - mode(v, n, mode(u, m, w, config), config)
        rhs = borcherds_rhs(u, m, v, n, w, config)
        rep.compare("commutator", rhs, lhs)
    return rep

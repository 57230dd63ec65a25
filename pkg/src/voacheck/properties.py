"""Seeded random-draw suites for the vertex algebra axioms we rely on.

Each suite draws small homogeneous vectors from the configured space and
checks one identity exactly; a report counts failures and keeps the first
few counterexamples.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, List, Tuple

from .fock import (CutoffExceeded, SpaceConfig, Vector, enumerate_basis, inner_product,
                   sectors_at, theta_involution, weight_of)
from .report import CheckReport, timed
from .vertex import adjoint_mode, borcherds_rhs, mode, skew_symmetry_rhs

Q = Fraction
DEFAULT_MAX_WEIGHT = 4


def draw_weight(config: SpaceConfig, base: int = DEFAULT_MAX_WEIGHT) -> int:
    # large enough to reach the sectors +-1 of the lattice
    return max(base, config.k * config.k + 1)


def random_vector(rng: random.Random, config: SpaceConfig, max_weight: int | None = None,
                  weight: int | None = None, terms: int = 3, sector: int | None = None) -> Vector:
    """A homogeneous vector with a few small integer coefficients."""
    if weight is None:
        weight = rng.randint(0, draw_weight(config) if max_weight is None else max_weight)
    if sector is None:
        sector = rng.choice(sectors_at(config, weight) if config.k else [0])
    basis = enumerate_basis(config, weight, sector) if config.k * config.k * sector * sector <= weight else []
    if not basis:
        return Vector({}, config.k)
    out: dict = {}
    while not any(out.values()):
        out = {}
        for _ in range(terms):
            m = rng.choice(basis)
            out[m] = out.get(m, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return Vector({m: Q(c) for m, c in out.items()}, config.k)


def _verdict(lhs, rhs):
    """True/False for an identity, None when both sides vanish (counted separately)."""
    if lhs == rhs:
        return None if lhs == 0 else True
    return False


def _suite(check_id: str, ref: str, samples: int, seed: int,
           draw: Callable[[random.Random], Tuple[str, bool]]) -> CheckReport:
    rep = CheckReport(check_id, ref)
    with timed(rep):
        rng = random.Random(seed)
        bad: List[str] = []
        skipped = trivial = 0
        for _ in range(samples):
            try:
                label, ok = draw(rng)
            except CutoffExceeded:
                # draws are sized to stay well under the cutoff; count any that do not
                skipped += 1
                continue
            if ok is None:
                trivial += 1
            elif not ok:
                bad.append(label)
        rep.record("draws", samples)
        rep.record("draws with both sides zero", trivial)
        rep.record("skipped above cutoff", skipped)
        rep.compare("failures", 0, len(bad))
        rep.notes.extend(bad[:3])
    return rep


def borcherds_suite(config: SpaceConfig, samples: int = 200, seed: int = 0) -> CheckReport:
    """[u_m, v_n] w = sum_i C(m, i) (u_i v)_{m+n-i} w."""
    def draw(rng):
        u, v = random_vector(rng, config), random_vector(rng, config)
        w = random_vector(rng, config)
        m, n = rng.randint(-2, 3), rng.randint(-2, 3)
        lhs = mode(u, m, mode(v, n, w, config), config) - mode(v, n, mode(u, m, w, config), config)
        rhs = borcherds_rhs(u, m, v, n, w, config)
        return f"m={m} n={n} u={u!r} v={v!r} w={w!r}", _verdict(lhs, rhs)
    return _suite("borcherds-props", "commutator formula", samples, seed, draw)


def skew_suite(config: SpaceConfig, samples: int = 200, seed: int = 0) -> CheckReport:
    """u_t v = sum_i (-1)^{t+i+1} L(-1)^i (v_{t+i} u) / i!."""
    def draw(rng):
        u, v = random_vector(rng, config), random_vector(rng, config)
        t = rng.randint(-3, u.max_weight() + v.max_weight())
        return f"t={t} u={u!r} v={v!r}", _verdict(mode(u, t, v, config), skew_symmetry_rhs(u, t, v, config))
    return _suite("skew-props", "skew symmetry", samples, seed, draw)


def form_suite(config: SpaceConfig, samples: int = 200, seed: int = 0) -> CheckReport:
    """(u_t w, x) = (w, u_t^dagger x), symmetry of ( , ) and theta-invariance of the form."""
    def draw(rng):
        u = random_vector(rng, config)
        w = random_vector(rng, config)
        t = rng.randint(-2, max(u.weight() + w.weight() - 1, -2))
        target = u.weight() + w.weight() - t - 1
        # the form pairs sector s with sector -s
        x = random_vector(rng, config, weight=target, sector=-(u.sectors()[0] + w.sectors()[0]))
        y = random_vector(rng, config, weight=w.weight(), sector=-w.sectors()[0])
        lhs = inner_product(mode(u, t, w, config), x, config)
        rhs = inner_product(w, adjoint_mode(u, t, x, config), config)
        sym = inner_product(w, y, config) == inner_product(y, w, config)
        inv = inner_product(theta_involution(w), theta_involution(y), config) == inner_product(w, y, config)
        if not (sym and inv):
            return f"symmetry/theta-invariance w={w!r} y={y!r}", False
        return f"t={t} u={u!r} w={w!r} x={x!r}", _verdict(lhs, rhs)
    return _suite("form-props", "invariant bilinear form", samples, seed, draw)


def theta_suite(config: SpaceConfig, samples: int = 200, seed: int = 0) -> CheckReport:
    """theta is an involutive automorphism: theta(u_t v) = theta(u)_t theta(v)."""
    def draw(rng):
        u, v = random_vector(rng, config), random_vector(rng, config)
        t = rng.randint(-2, 4)
        lhs = theta_involution(mode(u, t, v, config))
        rhs = mode(theta_involution(u), t, theta_involution(v), config)
        if theta_involution(theta_involution(u)) != u:
            return f"theta^2 u != u for u={u!r}", False
        return f"t={t} u={u!r} v={v!r}", _verdict(lhs, rhs)
    return _suite("theta-props", "theta automorphism", samples, seed, draw)


def grading_suite(config: SpaceConfig, samples: int = 200, seed: int = 0) -> CheckReport:
    """wt(u_t v) = wt u + wt v - t - 1 and sectors add."""
    def draw(rng):
        u, v = random_vector(rng, config), random_vector(rng, config)
        t = rng.randint(-3, 4)
        x = mode(u, t, v, config)
        if not x:
            return "zero", None
        want = u.weight() + v.weight() - t - 1
        su, sv = u.sectors()[0], v.sectors()[0]
        ok = x.weights() == [want] and x.sectors() == [su + sv]
        ok = ok and all(weight_of(m, config.k) == want for m in x.terms)
        return f"t={t} u={u!r} v={v!r}", ok
    return _suite("grading-props", "weight and sector bookkeeping", samples, seed, draw)

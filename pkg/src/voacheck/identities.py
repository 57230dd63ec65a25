"""The explicit J and E identities in M(1)^+ and V_L^+.

J = h(-1)^4 1 - 2 h(-3)h(-1) 1 + (3/2) h(-2)^2 1 is the weight-4 primary of
M(1)^+.  Internally h = gamma / sqrt(N), and J only contains even-degree
monomials, so its gamma-coordinates are rational: (1/N^2, -2/N, 3/(2N)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .fock import (CutoffExceeded, Monomial, SpaceConfig, Vector, full_or_fixed_basis,
                   inner_product, linear_combination)
from .golden import load_golden
from .linalg import solve
from .report import CheckReport, timed
from .vertex import binom, mode
from .virasoro import (VermaOracle, apply_L, apply_word, coordinates, descendants_at, in_span,
                       virasoro_descendant)

Q = Fraction

# values as printed
GRAM_VALUES = {
    ((1,), (1,)): Q(8),
    ((2,), (2,)): Q(33, 2),
    ((2,), (1, 1)): Q(24),
    ((1, 1), (1, 1)): Q(144),
    ((3,), (3,)): Q(26),
    ((3,), (2, 1)): Q(40),
    ((3,), (1, 1, 1)): Q(96),
    ((2, 1), (2, 1)): Q(164),
    ((2, 1), (1, 1, 1)): Q(624),
    ((1, 1, 1), (1, 1, 1)): Q(4320),
}
MU_OVER_LAMBDA = (Q(1, 2), Q(28, 75), Q(23, 300), Q(14, 75), Q(14, 75), Q(-1, 300))
X0_COEFFS = (Q(-72), Q(336))
PRINTED_L2L2_ENTRY = Q(2, 4)


def build_J(config: SpaceConfig) -> Vector:
    if config.cutoff < 4:
        raise CutoffExceeded("J has weight 4")
    N = config.N
    return Vector({
        Monomial((1, 1, 1, 1), 0): Q(1, N * N),
        Monomial((3, 1), 0): Q(-2, N),
        Monomial((2, 2), 0): Q(3, 2 * N),
    }, config.k)


def build_E(m: int, config: SpaceConfig) -> Vector:
    """E^m = e^{m alpha} + e^{-m alpha}."""
    if config.k < 1:
        raise ValueError("E needs a lattice (k >= 1)")
    return Vector({Monomial((), m): Q(1), Monomial((), -m): Q(1)}, config.k)


def vacuum_descendant(word: Sequence[int], config: SpaceConfig) -> Vector:
    return virasoro_descendant(word, Vector.vacuum(config.k), config)


def X0(config: SpaceConfig) -> Vector:
    """-72 L(-4)1 + 336 L(-2)^2 1."""
    return (vacuum_descendant((4,), config) * X0_COEFFS[0]
            + vacuum_descendant((2, 2), config) * X0_COEFFS[1])


def _too_small(rep: CheckReport, config: SpaceConfig, need: int) -> bool:
    if config.cutoff < need:
        rep.mark_inconclusive(f"cutoff {config.cutoff} < {need}")
        return True
    return False


# ---------------------------------------------------------------- the ladder


@dataclass
class JLadder:
    entries: Dict[int, Vector] = field(default_factory=dict)
    lam: Fraction = Q(0)
    x0_part: Tuple[Fraction, Fraction] = (Q(0), Q(0))


def compute_ladder(config: SpaceConfig) -> JLadder:
    J = build_J(config)
    lad = JLadder({t: mode(J, t, J, config) for t in range(7, -1, -1)})
    basis = [vacuum_descendant((4,), config), vacuum_descendant((2, 2), config), J]
    x = coordinates(lad.entries[3], basis)
    if x is None:
        raise ArithmeticError("J_3 J left the weight-4 space of M(1)^+")
    lad.x0_part = (x[0], x[1])
    lad.lam = x[2]
    return lad


def verify_J_ladder(config: SpaceConfig, golden: Dict[str, Fraction] | None = None) -> CheckReport:
    rep = CheckReport("j-ladder", "J_7J = 54*1, J_4J = 216 L(-3)1, J_3J = -72L(-4)1 + 336L(-2)^2 1 + lambda J")
    with timed(rep):
        if _too_small(rep, config, 8):
            return rep
        lad = compute_ladder(config)
        one = Vector.vacuum(config.k)
        e = lad.entries
        rep.compare("J_7J", one * 54, e[7])
        rep.compare("J_6J", Vector.vacuum(config.k) * 0, e[6])
        rep.compare("J_5J", vacuum_descendant((2,), config) * 432, e[5])
        rep.compare("J_4J", vacuum_descendant((3,), config) * 216, e[4])
        rep.compare("J_3J vacuum-module part", X0(config), e[3] - build_J(config) * lad.lam)
        rep.require("lambda != 0", lad.lam != 0, lad.lam)
        rep.record("lambda", lad.lam)
        rep.record("ladder", {t: e[t] for t in sorted(e)})
        if golden is None:
            golden = load_golden()
        if golden is None or "lambda" not in golden:
            rep.mark_inconclusive("no pinned golden lambda")
        else:
            rep.compare("lambda (golden)", golden["lambda"], lad.lam)
    return rep


# ---------------------------------------------------------------- Lemma app1


def descendant_grams(config: SpaceConfig) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Tuple[Fraction, Fraction]]:
    """(Fock value, Verma value) of (L(-a)J, L(-b)J) / (J, J) for the ten pairs."""
    J = build_J(config)
    jj = inner_product(J, J, config)
    verma = VermaOracle(4)
    out = {}
    for a, b in GRAM_VALUES:
        fock = inner_product(virasoro_descendant(a, J, config), virasoro_descendant(b, J, config), config) / jj
        out[(a, b)] = (fock, verma.gram(a, b))
    return out


def verify_lemma_app1(config: SpaceConfig) -> CheckReport:
    rep = CheckReport("app1", "Gram systems for J_2J, J_1J, J_0J; mu = (1/2, 28/75, 23/300, 14/75, 14/75, -1/300) lambda")
    with timed(rep):
        if _too_small(rep, config, 8):
            return rep
        J = build_J(config)
        jj = inner_product(J, J, config)
        lad = compute_ladder(config)
        lam = lad.lam
        grams = descendant_grams(config)
        G = {}
        for (a, b), (fock, verma) in grams.items():
            name = f"(L{a}J, L{b}J)/(J,J)"
            rep.compare(name, GRAM_VALUES[(a, b)], fock)
            rep.compare(name + " [Verma oracle]", GRAM_VALUES[(a, b)], verma)
            G[(a, b)] = G[(b, a)] = fock

        def pair(t, word):
            return inner_product(lad.entries[t], virasoro_descendant(word, J, config), config) / jj

        # right-hand sides (J_t J, L(-word) J) / (J, J), printed as multiples of lambda
        rhs_expected = {(2, (1,)): 4, (1, (2,)): 8, (1, (1, 1)): 20,
                        (0, (3,)): 12, (0, (2, 1)): 36, (0, (1, 1, 1)): 120}
        rhs = {}
        for (t, word), mult in rhs_expected.items():
            rhs[(t, word)] = pair(t, word)
            rep.compare(f"(J_{t}J, L{word}J)/(J,J)", mult * lam, rhs[(t, word)])

        systems = [
            (2, [(1,)]),
            (1, [(2,), (1, 1)]),
            (0, [(3,), (2, 1), (1, 1, 1)]),
        ]
        mus: List[Fraction] = []
        for t, words in systems:
            mat = [[G[(a, b)] for b in words] for a in words]
            sol = solve(mat, [rhs[(t, w)] for w in words])
            if sol is None:
                rep.require(f"system for J_{t}J nonsingular", False)
                continue
            mus += sol
            # direct projection: J_t J minus the M^(4) part lies in the vacuum module
            m4 = linear_combination(((c, virasoro_descendant(w, J, config)) for c, w in zip(sol, words)), config.k)
            rest = lad.entries[t] - m4
            level = 7 - t
            rep.require(f"J_{t}J - M4 part in L(1,0)", in_span(rest, descendants_at(Vector.vacuum(config.k), level, config)))
        rep.compare("mu", [c * lam for c in MU_OVER_LAMBDA], mus)
        rep.record("lambda", lam)
    return rep


def verify_X0_gram(config: SpaceConfig) -> CheckReport:
    rep = CheckReport("x0-gram", "(L(-4)1, J_3J) = 12*54, (L(-2)^2 1, J_3J) = 24*54; 5l1 + 3l2, 3l1 + (2/4) l2")
    with timed(rep):
        if _too_small(rep, config, 8):
            return rep
        J = build_J(config)
        J3J = mode(J, 3, J, config)
        a = vacuum_descendant((4,), config)
        b = vacuum_descendant((2, 2), config)
        one = Vector.vacuum(config.k)
        rep.compare("(L(-4)1, J_3J)", Q(12 * 54), inner_product(a, J3J, config))
        rep.compare("(L(-2)^2 1, J_3J)", Q(24 * 54), inner_product(b, J3J, config))
        # same numbers via the commutator route (1, L(4) J_3J), (1, L(2)^2 J_3J)
        rep.compare("(1, L(4)J_3J)", Q(12 * 54), inner_product(one, apply_L(4, J3J, config), config))
        rep.compare("(1, L(2)^2 J_3J)", Q(24 * 54), inner_product(one, apply_word((2, 2), J3J, config), config))
        gaa, gab, gbb = (inner_product(a, a, config), inner_product(a, b, config), inner_product(b, b, config))
        verma = VermaOracle(0)
        rep.compare("(L(-4)1, L(-4)1)", Q(5), gaa)
        rep.compare("(L(-4)1, L(-2)^2 1)", Q(3), gab)
        rep.compare("(L(-2)^2 1, L(-2)^2 1)", verma.gram((2, 2), (2, 2)), gbb)
        rep.expected["(L(-2)^2 1, L(-2)^2 1) as printed"] = "2/4"
        sol = solve([[gaa, gab], [gab, gbb]], [Q(12 * 54), Q(24 * 54)])
        rep.compare("(lambda1, lambda2)", list(X0_COEFFS), sol)
        printed = solve([[gaa, gab], [gab, PRINTED_L2L2_ENTRY]], [Q(12 * 54), Q(24 * 54)])
        rep.record("(lambda1, lambda2) with printed entry", printed)
        if gbb != PRINTED_L2L2_ENTRY:
            rep.notes.append(f"Gram entry computed {gbb}, printed 2/4; "
                             f"only the computed value reproduces (-72, 336)")
    return rep


# ---------------------------------------------------------------- E relations


def verify_E_relations(k: int, config: SpaceConfig | None = None) -> CheckReport:
    if config is None:
        config = SpaceConfig(k, k * k + 8, True)
    rep = CheckReport(f"e-relations[k={k}]", "(E,E) = 2, J_3 E = (4k^4 - k^2) E, J_t E = 0 for t >= 4")
    with timed(rep):
        if config.k != k:
            raise ValueError("config lattice parameter disagrees with k")
        if _too_small(rep, config, k * k + 8):
            return rep
        E = build_E(1, config)
        J = build_J(config)
        rep.compare("(E,E)", Q(2), inner_product(E, E, config))
        rep.compare("J_3E", E * (4 * k ** 4 - k ** 2), mode(J, 3, E, config))
        for t in range(4, 9):
            rep.compare(f"J_{t}E", E * 0, mode(J, t, E, config))
        for n in (1, 2):
            rep.compare(f"L({n})E", E * 0, apply_L(n, E, config))
    return rep


# ---------------------------------------------------------------- rearrangements

# operator words act right to left: ("J", n) is J_n, ("L", n) is L(n)
REARRANGEMENTS = [
    ("J4 L(-1)", [("J", 4), ("L", -1)], [(1, [("L", -1), ("J", 4)]), (4, [("J", 3)])]),
    ("J5 L(-2)", [("J", 5), ("L", -2)], [(1, [("L", -2), ("J", 5)]), (8, [("J", 3)])]),
    ("J5 L(-1)^2", [("J", 5), ("L", -1), ("L", -1)],
     [(1, [("L", -1), ("L", -1), ("J", 5)]), (10, [("L", -1), ("J", 4)]), (20, [("J", 3)])]),
    ("J6 L(-3)", [("J", 6), ("L", -3)], [(1, [("L", -3), ("J", 6)]), (12, [("J", 3)])]),
    ("J6 L(-1)", [("J", 6), ("L", -1)], [(1, [("L", -1), ("J", 6)]), (6, [("J", 5)])]),
    ("J6 L(-2)L(-1)", [("J", 6), ("L", -2), ("L", -1)],
     [(1, [("L", -2), ("L", -1), ("J", 6)]), (6, [("L", -2), ("J", 5)]),
      (9, [("L", -1), ("J", 4)]), (36, [("J", 3)])]),
    ("J6 L(-1)^3", [("J", 6), ("L", -1), ("L", -1), ("L", -1)],
     [(1, [("L", -1), ("L", -1), ("L", -1), ("J", 6)]), (18, [("L", -1), ("L", -1), ("J", 5)]),
      (90, [("L", -1), ("J", 4)]), (120, [("J", 3)])]),
]


def apply_ops(ops, v: Vector, J: Vector, config: SpaceConfig) -> Vector:
    for kind, n in reversed(ops):
        v = apply_L(n, v, config) if kind == "L" else mode(J, n, v, config)
    return v


def verify_rearrangements(config: SpaceConfig, samples: int = 20, seed: int = 0) -> CheckReport:
    rep = CheckReport("rearrangements", "operator identities J_n L(-m...) = L(-m...) J_n + ... (X replaced by J)")
    with timed(rep):
        if _too_small(rep, config, 12):
            return rep
        J = build_J(config)
        rng = random.Random(seed)
        tests = [J]
        pools = {w: full_or_fixed_basis(config, w) for w in range(0, 7)}
        for _ in range(samples):
            w = rng.randint(0, 6)
            pool = pools[w]
            if not pool:
                continue
            v = linear_combination(((rng.randint(-5, 5), rng.choice(pool)) for _ in range(3)), config.k)
            if v:
                tests.append(v)
        failures = []
        for name, lhs, rhs in REARRANGEMENTS:
            for v in tests:
                left = apply_ops(lhs, v, J, config)
                right = linear_combination(((c, apply_ops(word, v, J, config)) for c, word in rhs), config.k)
                if left != right:
                    failures.append((name, v))
                    break
            rep.require(name, not any(f[0] == name for f in failures))
        rep.record("identities", len(REARRANGEMENTS))
        rep.record("vectors per identity", len(tests))
        if failures:
            rep.record("first failure", f"{failures[0][0]} on {failures[0][1]!r}")
    return rep


# ---------------------------------------------------------------- Lemma app2, s = 1


def jacobi_expansion(J: Vector, config: SpaceConfig) -> Vector:
    """sum_p (-1)^p C(4,p) [J_{4-p} J_{2+p} - J_{6-p} J_p] J."""
    out = Vector._raw({}, config.k)
    for p in range(5):
        c = (-1) ** p * binom(4, p)
        a = mode(J, 4 - p, mode(J, 2 + p, J, config), config)
        b = mode(J, 6 - p, mode(J, p, J, config), config)
        out = out + (a - b) * c
    return out


def app2_consistency(config: SpaceConfig, lam: Fraction | None = None) -> CheckReport:
    rep = CheckReport("app2", "(X_4 X)_2 X expansion with s = 1, X = J, delta -> (J,J)/2, a -> lambda")
    with timed(rep):
        if _too_small(rep, config, 12):
            return rep
        J = build_J(config)
        lad = compute_ladder(config)
        if lam is None:
            lam = lad.lam
        rep.compare("lambda agrees with ladder", lad.lam, lam)
        direct = mode(mode(J, 4, J, config), 2, J, config)
        rep.compare("Jacobi expansion", direct, jacobi_expansion(J, config))

        def L(word, v):
            return apply_word([-n for n in word], v, config)

        J4J, J5J = lad.entries[4], lad.entries[5]
        known = (L((1,), J4J) * Q(1, 2) * lam
                 + (L((2,), J5J) * Q(28, 75) + L((1, 1), J5J) * Q(11, 30)) * lam
                 - L((1,), J4J) * Q(197, 150) * lam
                 + X0(config) * ((Q(114, 75) - 2) * lam)
                 - J * (2 * lam * lam)
                 + J * (Q(114, 75) * lam * lam))
        residual = direct - known
        # the a and b slots both multiply J when s = 1, so the fit has one effective unknown
        coeff = coordinates(residual, [J])
        if coeff is None:
            rep.require("template fit solvable", False, residual)
        else:
            rep.record("a + b", coeff[0])
            rep.compare("residual", Vector._raw({}, config.k), residual - J * coeff[0])
        rep.record("fit rank", 1)
    return rep

"""Products U^1 . U^2 = span{x_n y} of Virasoro submodules and their fusion supports.

Spans are kept weight by weight.  A Virasoro submodule generated by a set S
that is already stable under L(n), n > 0, is built as

    span_W = L(-1) span_{W-1} + L(-2) span_{W-2} + S_W

since L(-1) and L(-2) generate the negative part of the Virasoro algebra.
For primaries u^1, u^2 the family {u^1_n u^2} is L(n > 0)-stable, so the
product is the submodule it generates; ``lemma_span_equality`` compares
that with the literal definition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Sequence, Set, Tuple

from .fock import SpaceConfig, Vector
from .linalg import Echelon
from .report import CheckReport, timed
from .vertex import mode
from .virasoro import apply_L, kernel_of

Q = Fraction


def _key(m):
    return (m.parts, m.sector)


def _basis(vectors: Sequence[Vector], k: int) -> List[Vector]:
    e = Echelon(key=_key)
    for v in vectors:
        if v:
            e.add(v.terms)
    return [Vector._raw({m: Q(c) for m, c in row.items()}, k) for row in e.basis()]


def is_primary(v: Vector, config: SpaceConfig) -> bool:
    return bool(v) and v.is_homogeneous() and not apply_L(1, v, config) and not apply_L(2, v, config)


def generate_submodule(seeds: Dict[int, List[Vector]], config: SpaceConfig, max_weight: int) -> Dict[int, List[Vector]]:
    """Weight-graded basis of the submodule generated by L(n>0)-stable seeds."""
    span: Dict[int, List[Vector]] = {}
    for W in range(max_weight + 1):
        gens = list(seeds.get(W, []))
        for m in (1, 2):
            for b in span.get(W - m, []):
                gens.append(apply_L(-m, b, config))
        span[W] = _basis(gens, config.k)
    return span


def descendant_closure(primary: Vector, config: SpaceConfig, max_weight: int) -> Dict[int, List[Vector]]:
    """Basis of the L(1,0)-submodule generated by a primary, per weight up to max_weight."""
    if not is_primary(primary, config):
        raise ValueError("descendant_closure needs a homogeneous primary vector")
    return generate_submodule({primary.weight(): [primary]}, config, max_weight)


@dataclass
class ProductSpan:
    generators: Tuple[str, str]
    cutoff: int
    span: Dict[int, List[Vector]] = field(default_factory=dict)

    def dims(self) -> Dict[int, int]:
        return {w: len(b) for w, b in sorted(self.span.items()) if b}


def _products(u1: Vector, u2: Vector, config: SpaceConfig, cutoff: int) -> Dict[int, List[Vector]]:
    w1, w2 = u1.weight(), u2.weight()
    out: Dict[int, List[Vector]] = {}
    # weight of u1_n u2 is w1 + w2 - n - 1, kept between 0 and cutoff
    for n in range(w1 + w2 - 1 - cutoff, w1 + w2):
        v = mode(u1, n, u2, config)
        if v:
            out.setdefault(w1 + w2 - n - 1, []).append(v)
    return out


def product_span(u1: Vector, u2: Vector, config: SpaceConfig, cutoff: int | None = None,
                 labels: Tuple[str, str] = ("U1", "U2")) -> ProductSpan:
    """U^1 . U^2 for the modules generated by primaries u1, u2, up to ``cutoff``."""
    cutoff = config.cutoff if cutoff is None else cutoff
    for u in (u1, u2):
        if not is_primary(u, config):
            raise ValueError("product_span takes primary generators")
    seeds = _products(u1, u2, config, cutoff)
    return ProductSpan(labels, cutoff, generate_submodule(seeds, config, cutoff))


def full_definition_span(u1: Vector, u2: Vector, config: SpaceConfig, cutoff: int) -> Dict[int, List[Vector]]:
    """span{x_n y : x in <u1>, y in <u2>} up to ``cutoff``, straight from the definition."""
    c1 = descendant_closure(u1, config, cutoff)
    c2 = descendant_closure(u2, config, cutoff)
    gens: Dict[int, List[Vector]] = {}
    for wx, xs in c1.items():
        for wy, ys in c2.items():
            for n in range(wx + wy - 1 - cutoff, wx + wy):
                for x in xs:
                    for y in ys:
                        v = mode(x, n, y, config)
                        if v:
                            gens.setdefault(wx + wy - n - 1, []).append(v)
    return {w: _basis(gens.get(w, []), config.k) for w in range(cutoff + 1)}


def _same_span(a: List[Vector], b: List[Vector]) -> bool:
    ea, eb = Echelon(key=_key), Echelon(key=_key)
    for v in a:
        ea.add(v.terms)
    for v in b:
        eb.add(v.terms)
    return ea.rank == eb.rank and all(eb.contains(v.terms) for v in a)


def lemma_span_equality(u1: Vector, u2: Vector, config: SpaceConfig, cutoff: int,
                        samples: int | None = None, seed: int = 0) -> CheckReport:
    """Reduced spanning set versus the literal product, exhaustively or on random x_n y draws."""
    rep = CheckReport("span-equality", "U1.U2 = span{L(-m1)...L(-ms) u1_n u2}")
    with timed(rep):
        reduced = product_span(u1, u2, config, cutoff).span
        if samples is None:
            full = full_definition_span(u1, u2, config, cutoff)
            bad = [w for w in range(cutoff + 1) if not _same_span(full[w], reduced[w])]
            rep.compare("weights where spans differ", [], bad)
            rep.record("dims", {w: len(reduced[w]) for w in range(cutoff + 1)})
            return rep
        rng = random.Random(seed)
        c1 = descendant_closure(u1, config, cutoff)
        c2 = descendant_closure(u2, config, cutoff)
        echelons = {}
        for w, b in reduced.items():
            e = Echelon(key=_key)
            for v in b:
                e.add(v.terms)
            echelons[w] = e
        w1 = [w for w in c1 if c1[w]]
        w2 = [w for w in c2 if c2[w]]
        bad = 0
        for _ in range(samples):
            wx, wy = rng.choice(w1), rng.choice(w2)
            x = sum((rng.choice(c1[wx]) * rng.randint(-3, 3) for _ in range(2)), Vector._raw({}, config.k))
            y = sum((rng.choice(c2[wy]) * rng.randint(-3, 3) for _ in range(2)), Vector._raw({}, config.k))
            W = rng.randint(0, cutoff)
            n = wx + wy - 1 - W
            v = mode(x, n, y, config)
            if v and not echelons[W].contains(v.terms):
                bad += 1
        rep.compare("draws outside the reduced span", 0, bad)
        rep.record("draws", samples)
    return rep


# ---------------------------------------------------------------- supports


def primaries_in(span: Dict[int, List[Vector]], config: SpaceConfig) -> Dict[int, List[Vector]]:
    out = {}
    for w, basis in sorted(span.items()):
        if basis:
            prim = kernel_of((1, 2), basis, config)
            if prim:
                out[w] = prim
    return out


def fusion_support(span: ProductSpan, config: SpaceConfig) -> Dict[int, int]:
    """Lowest weights (with multiplicity) of the Virasoro summands visible below the cutoff."""
    return {w: len(p) for w, p in primaries_in(span.span, config).items()}


def window(m: int, n: int) -> Set[int]:
    """Allowed lowest weights j^2 with |n - m| <= j <= n + m."""
    return {j * j for j in range(abs(n - m), n + m + 1)}


def _root(h: int) -> int:
    r = isqrt(h)
    if r * r != h:
        raise ValueError(f"{h} is not a square weight")
    return r


def support_report(check_id: str, ref: str, span: ProductSpan, config: SpaceConfig, h1: int, h2: int,
                   expected_exact: Set[int] | None = None, expected_within: Set[int] | None = None) -> CheckReport:
    rep = CheckReport(check_id, ref)
    with timed(rep):
        sup = fusion_support(span, config)
        win = window(_root(h1), _root(h2))
        rep.record("support", sup)
        rep.record("window", sorted(win))
        rep.record("dims", span.dims())
        rep.require("support inside window", set(sup) <= win, sorted(sup))
        if expected_exact is not None:
            rep.compare("support", sorted(expected_exact), sorted(sup))
        if expected_within is not None:
            rep.require(f"support inside {sorted(expected_within)}", set(sup) <= expected_within, sorted(sup))
        if max(win) > span.cutoff:
            rep.mark_inconclusive(f"window reaches {max(win)} > cutoff {span.cutoff}")
    return rep


def check_eaa1(config: SpaceConfig) -> CheckReport:
    """M^(4) . M^(4) inside M(1)^+."""
    from .identities import build_J

    J = build_J(config)
    span = product_span(J, J, config, labels=("M4", "M4"))
    return support_report("fusion-eaa1", "M(4).M(4) = L(1,0) + M(4) + L(1,16)", span, config, 4, 4,
                          expected_exact={0, 4, 16})


def check_ee7(config: SpaceConfig) -> CheckReport:
    """M^(4) . M^(k^2) inside V_L^+, where M^(k^2) is generated by E."""
    from .identities import build_E, build_J

    k = config.k
    if k < 1:
        rep = CheckReport("fusion-ee7", "M(4).M(m^2) in V_L^+")
        rep.mark_inconclusive("needs a lattice (k >= 1)")
        return rep
    J, E = build_J(config), build_E(1, config)
    span = product_span(J, E, config, labels=("M4", f"M{k * k}"))
    allowed = {(k + j) ** 2 for j in range(0, 3)}
    return support_report("fusion-ee7", "M(4).M(m^2) inside M(m^2) + L(1,(m+1)^2) + L(1,(m+2)^2)",
                          span, config, 4, k * k, expected_within=allowed)


def _classes(v: Vector) -> Set[int]:
    return {abs(m.sector) for m in v.terms}


def sector_primaries(config: SpaceConfig, s: int, max_weight: int) -> List[Vector]:
    """Primaries of N^s (theta-fixed vectors in sectors +-s) up to max_weight; N^0 = M(1)^+."""
    from .fock import fixed_subspace_basis

    out = []
    for w in range(config.k * config.k * s * s, max_weight + 1):
        basis = fixed_subspace_basis(config, w, s)
        if basis:
            out += kernel_of((1, 2), basis, config)
    return out


def check_Nm_products(k: int, m: int, n: int, config: SpaceConfig) -> CheckReport:
    """E^m-module . E^n-module: primaries only in sectors |m - n| and m + n.

    Each factor is a single L(1, k^2 m^2), so the product is multiplicity free
    and a primary may be a mixture of the two sectors (at k = 2, m = n = 1 the
    weight 16 primary mixes the M(1)^+ vector with e^{2a} + e^{-2a}).
    """
    rep = CheckReport(f"fusion-nm[k={k},m={m},n={n}]", "N^m . N^n = N^{m-n} + N^{m+n}")
    with timed(rep):
        if config.k != k or k < 1:
            raise ValueError("config lattice parameter disagrees with k")
        from .identities import build_E

        Em, En = build_E(m, config), build_E(n, config)
        span = product_span(Em, En, config, labels=(f"E{m}", f"E{n}"))
        prims = primaries_in(span.span, config)
        allowed = {abs(m - n), m + n}
        touched: Dict[int, List[int]] = {}
        for w, vecs in prims.items():
            cls: Set[int] = set()
            for v in vecs:
                cls |= _classes(v)
            touched[w] = sorted(cls)
        sup = {w: len(v) for w, v in prims.items()}
        win = window(k * m, k * n)
        rep.record("support", sup)
        rep.record("window", sorted(win))
        rep.record("sector classes by weight", touched)
        rep.require("support inside window", set(sup) <= win, sorted(sup))
        stray = {w: c for w, c in touched.items() if not set(c) <= allowed}
        rep.compare("primaries outside sectors |m-n|, m+n", {}, stray)
        # a primary of the product has weight of a primary of N^{|m-n|} or N^{m+n}
        targets: Set[int] = set()
        for s_ in sorted(allowed):
            targets |= {v.weight() for v in sector_primaries(config, s_, config.cutoff)}
        rep.require("support inside primary weights of N^{|m-n|} + N^{m+n}", set(sup) <= targets, sorted(sup))
        rep.require("multiplicity free", all(c == 1 for c in sup.values()), sup)
        for s_ in sorted(allowed):
            low = k * k * s_ * s_
            if low > config.cutoff:
                rep.mark_inconclusive(f"lowest weight {low} of N^{s_} is above cutoff {config.cutoff}")
                continue
            rep.require(f"N^{s_} lowest weight {low} present", s_ in touched.get(low, []))
        if max(win) > config.cutoff:
            rep.mark_inconclusive(f"window reaches {max(win)} > cutoff {config.cutoff}")
    return rep

"""Named checks and the batch runner behind ``voacheck verify``."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .fock import SpaceConfig
from .report import FAIL, INCONCLUSIVE, CheckReport


@dataclass(frozen=True)
class RunConfig:
    k: int = 2
    cutoff: int = 17
    order: int = 17
    checks: Tuple[str, ...] = ("all",)
    samples: int = 200
    rng_seed: int = 0
    pin: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")

    def space(self, fixed_point: bool = True) -> SpaceConfig:
        return SpaceConfig(self.k, self.cutoff, fixed_point)

    def as_dict(self) -> Dict:
        d = asdict(self)
        d["checks"] = list(self.checks)
        return d


def _j_ladder(rc: RunConfig):
    from .identities import verify_J_ladder
    return [verify_J_ladder(rc.space())]


def _app1(rc):
    from .identities import verify_lemma_app1
    return [verify_lemma_app1(rc.space())]


def _x0(rc):
    from .identities import verify_X0_gram
    return [verify_X0_gram(rc.space())]


def _lemma_jj(rc):
    from .zhu import verify_lemma_JJ
    return [verify_lemma_JJ(rc.space())]


def _p_roots(rc):
    from .zhu import verify_p_roots
    return [verify_p_roots()]


def _e_relations(rc):
    from .identities import verify_E_relations
    return [verify_E_relations(k) for k in (1, 2, 3)]


def _rearrangements(rc):
    from .identities import verify_rearrangements
    return [verify_rearrangements(rc.space(), seed=rc.rng_seed)]


def _app2(rc):
    from .identities import app2_consistency
    return [app2_consistency(rc.space())]


def _char(rc):
    from .characters import verify_m1plus_characters
    return [verify_m1plus_characters(rc.order)]


def _theta(rc):
    from .characters import verify_theta_identity
    return [verify_theta_identity(rc.order)]


def _eta(rc):
    from .characters import verify_eta_s_law
    return [verify_eta_s_law()]


def _s_defect(rc):
    from .characters import verify_s_defect_demo
    return [verify_s_defect_demo()]


def _eaa1(rc):
    from .fusion import check_eaa1
    return [check_eaa1(rc.space())]


def _ee7(rc):
    from .fusion import check_ee7
    return [check_ee7(rc.space())]


def _nm(rc):
    from .fusion import check_Nm_products
    out = []
    if rc.k >= 1:
        out.append(check_Nm_products(rc.k, 1, 1, rc.space()))
    # the small lattice k = 1 reaches both summands of N^1.N^1 and N^2.N^1 cheaply
    if rc.k != 1 and rc.cutoff >= 10:
        small = SpaceConfig(1, 10, True)
        out += [check_Nm_products(1, 1, 1, small), check_Nm_products(1, 2, 1, small)]
    if not out:
        rep = CheckReport("fusion-nm", "N^m . N^n = N^{m-n} + N^{m+n}")
        rep.mark_inconclusive("needs k >= 1 or cutoff >= 10")
        out.append(rep)
    return out


def _props(name):
    def run(rc):
        from . import properties
        suite = getattr(properties, name)
        return [suite(rc.space(fixed_point=False), rc.samples, rc.rng_seed)]
    return run


def _span(rc):
    from .fusion import lemma_span_equality
    from .identities import build_E, build_J

    cfg = rc.space()
    cut = min(12, rc.cutoff)
    J = build_J(cfg)
    pairs = [("J.J", J, J)]
    if rc.k >= 1:
        pairs.append(("J.E", J, build_E(1, cfg)))
    out = []
    for label, a, b in pairs:
        rep = lemma_span_equality(a, b, cfg, cut, samples=rc.samples, seed=rc.rng_seed)
        rep.check_id = f"span-equality[{label}]"
        out.append(rep)
    return out


REGISTRY: Dict[str, Callable[[RunConfig], List[CheckReport]]] = {
    "j-ladder": _j_ladder,
    "app1": _app1,
    "x0-gram": _x0,
    "lemma-jj": _lemma_jj,
    "p-roots": _p_roots,
    "e-relations": _e_relations,
    "rearrangements": _rearrangements,
    "app2": _app2,
    "char-m1plus": _char,
    "theta-identity": _theta,
    "eta-s-law": _eta,
    "s-defect-demo": _s_defect,
    "fusion-eaa1": _eaa1,
    "fusion-ee7": _ee7,
    "fusion-nm": _nm,
    "borcherds-props": _props("borcherds_suite"),
    "skew-props": _props("skew_suite"),
    "form-props": _props("form_suite"),
    "theta-props": _props("theta_suite"),
    "grading-props": _props("grading_suite"),
    "span-equality": _span,
}


class UnknownCheck(KeyError):
    pass


def resolve(names: Sequence[str]) -> List[str]:
    if not names or "all" in names:
        return list(REGISTRY)
    bad = [n for n in names if n not in REGISTRY]
    if bad:
        raise UnknownCheck(", ".join(bad))
    return list(dict.fromkeys(names))


def _run_one(args: Tuple[str, RunConfig]) -> List[CheckReport]:
    name, rc = args
    try:
        return REGISTRY[name](rc)
    except Exception as exc:  # a crash is a failed check, not a crashed run
        rep = CheckReport(name, "", status=FAIL)
        rep.notes.append(f"{type(exc).__name__}: {exc}")
        return [rep]


def run(rc: RunConfig, workers: int | None = None) -> List[CheckReport]:
    """Run the selected checks; reports come back ordered by check_id."""
    names = resolve(rc.checks)
    jobs = [(n, rc) for n in names]
    if workers is None:
        workers = min(len(jobs), os.cpu_count() or 1)
    if workers <= 1 or len(jobs) == 1:
        results = [_run_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    reports = [r for rs in results for r in rs]
    return sorted(reports, key=lambda r: r.check_id)


def exit_code(reports: Sequence[CheckReport], strict: bool = False) -> int:
    bad = {FAIL, INCONCLUSIVE} if strict else {FAIL}
    return 1 if any(r.status in bad for r in reports) else 0


def golden_values(rc: RunConfig) -> Dict[str, Fraction]:
    """The values a ``--pin`` run freezes."""
    from .fock import inner_product
    from .identities import compute_ladder, vacuum_descendant

    cfg = SpaceConfig(rc.k, max(rc.cutoff, 8), True)
    lad = compute_ladder(cfg)
    b = vacuum_descendant((2, 2), cfg)
    five = lad.entries[5].coeff(next(iter(vacuum_descendant((2,), cfg).terms)))
    base = next(iter(vacuum_descendant((2,), cfg).terms.values()))
    return {
        "lambda": lad.lam,
        "gram_L2L2_vacuum": inner_product(b, b, cfg),
        "J5J_coefficient": five / base,
    }

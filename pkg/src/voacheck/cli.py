"""Command line driver: ``voacheck verify | char | fusion | probe``.

Exit codes: 0 when no report failed, 1 otherwise (inconclusive counts as a
failure only with --strict), 2 for usage errors such as an unknown check id,
3 when the output path cannot be written.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Sequence

from .checks import REGISTRY, RunConfig, UnknownCheck, exit_code, golden_values, resolve, run
from .golden import GoldenExists, dump_golden, golden_path
from .report import CheckReport

SCHEMA_VERSION = 1
EXIT_USAGE = 2
EXIT_UNWRITABLE = 3

REPORT_SCHEMA = {
    "type": "object",
    "required": ["version", "config", "reports"],
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "config": {"type": "object"},
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check_id", "paper_ref", "status", "expected", "computed", "runtime_ms"],
                "properties": {
                    "check_id": {"type": "string"},
                    "paper_ref": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "inconclusive"]},
                    "expected": {"type": "object"},
                    "computed": {"type": "object"},
                    "runtime_ms": {"type": "integer", "minimum": 0},
                    "notes": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
}


def render_json(rc: RunConfig, reports: Sequence[CheckReport], include_runtime: bool = True) -> str:
    payload = {
        "version": SCHEMA_VERSION,
        "config": rc.as_dict(),
        "reports": [r.to_dict(include_runtime) for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_text(reports: Sequence[CheckReport]) -> str:
    rows = [("check_id", "status", "paper_ref")] + [(r.check_id, r.status, r.paper_ref) for r in reports]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    lines = [f"{a:<{w0}}  {b:<{w1}}  {c}".rstrip() for a, b, c in rows]
    for r in reports:
        for note in r.notes:
            lines.append(f"  [{r.check_id}] {note}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> int:
    if out is None or out == "-":
        sys.stdout.write(text)
        return 0
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    return 0


def _run_config(args, checks: Sequence[str]) -> RunConfig:
    return RunConfig(k=args.k, cutoff=args.cutoff, order=args.order, checks=tuple(checks),
                     samples=args.samples, rng_seed=args.rng_seed, pin=getattr(args, "pin", False))


def _report_and_exit(args, rc: RunConfig, reports: List[CheckReport]) -> int:
    text = render_json(rc, reports) if args.format == "json" else render_text(reports)
    code = _emit(text, args.out)
    return code or exit_code(reports, args.strict)


def cmd_verify(args) -> int:
    checks = [c for item in args.check for c in item.split(",") if c]
    try:
        resolve(checks)
    except UnknownCheck as exc:
        print(f"unknown check id: {exc.args[0]}; known: {', '.join(REGISTRY)}", file=sys.stderr)
        return EXIT_USAGE
    rc = _run_config(args, checks)
    if args.pin:
        try:
            path = dump_golden(golden_values(rc), golden_path(), force=args.force)
        except GoldenExists as exc:
            print(f"{exc}", file=sys.stderr)
            return 1
        except OSError as exc:
            print(f"cannot write golden file: {exc}", file=sys.stderr)
            return EXIT_UNWRITABLE
        print(f"pinned golden values to {path}", file=sys.stderr)
    return _report_and_exit(args, rc, run(rc, workers=args.jobs))


def cmd_fusion(args) -> int:
    rc = _run_config(args, ["fusion-eaa1", "fusion-ee7", "fusion-nm"])
    return _report_and_exit(args, rc, run(rc, workers=args.jobs))


def _char_table(module: str, order: int) -> Dict[str, List[Fraction]]:
    from .characters import char_from_basis, eta, eta_inverse, m1plus_character_forms, theta_series
    from .fock import SpaceConfig

    if module == "m1plus":
        table = {"basis count": char_from_basis(SpaceConfig(0, order, True), order).as_list()}
        table.update({name: s.as_list() for name, s in m1plus_character_forms(order).items()})
    elif module == "m1":
        table = {"basis count": char_from_basis(SpaceConfig(0, order, False), order).as_list(),
                 "1/eta": eta_inverse(order).as_list()}
    elif module == "eta":
        table = {"eta": eta(order).as_list()}
    else:
        table = {"theta_{0,1}": theta_series(order).as_list()}
    return table


def cmd_char(args) -> int:
    table = _char_table(args.module, args.order)
    names = list(table)
    if args.format == "json":
        text = json.dumps({"version": SCHEMA_VERSION, "module": args.module, "order": args.order,
                           "coefficients": {n: [str(c) for c in v] for n, v in table.items()}},
                          indent=2, sort_keys=True) + "\n"
    else:
        cols = [[str(c) for c in table[n]] for n in names]
        width = [max([len(n)] + [len(c) for c in col]) for n, col in zip(names, cols)]
        lines = ["  n  " + "  ".join(f"{n:>{w}}" for n, w in zip(names, width))]
        for i in range(args.order):
            lines.append(f"{i:>3}  " + "  ".join(f"{col[i]:>{w}}" for col, w in zip(cols, width)))
        text = "\n".join(lines) + "\n"
    return _emit(text, args.out)


def cmd_probe(args) -> int:
    from .characters import eta_probe, quotient_probe, s_transform_probe, theta_over_eta_probe

    if args.series == "eta":
        series, weight = eta_probe(), Fraction(1, 2)
    elif args.series == "quotient":
        series, weight = quotient_probe("(1-q+q^4-q^9)/eta", {0: 1, 1: -1, 4: 1, 9: -1}), Fraction(0)
    else:
        series, weight = theta_over_eta_probe(), Fraction(0)
    result = s_transform_probe(series, Fraction(args.t), args.terms, weight)
    if args.format == "json":
        text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    else:
        text = "".join(f"{k:<14} {v}\n" for k, v in result.items())
    return _emit(text, args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="voacheck", description="Exact checks for rank-one c = 1 vertex operator algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order=17):
        sp.add_argument("--k", type=int, default=2, help="lattice L = Z alpha with (alpha, alpha) = 2k^2")
        sp.add_argument("--cutoff", type=int, default=17, help="largest weight computed")
        sp.add_argument("--order", type=int, default=order, help="q-series truncation order")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--samples", type=int, default=200, help="random draws for property checks")
        sp.add_argument("--rng-seed", type=int, default=0)
        sp.add_argument("--strict", action="store_true", help="inconclusive reports also fail")
        sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: one per check)")

    v = sub.add_parser("verify", help="run named checks")
    v.add_argument("--check", action="append", default=[], help="check id, comma list, or 'all' (repeatable)")
    v.add_argument("--pin", action="store_true", help="write the golden file before running")
    v.add_argument("--force", action="store_true", help="let --pin overwrite an existing golden file")
    common(v)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fusion", help="fusion support checks")
    common(f)
    f.set_defaults(func=cmd_fusion)

    c = sub.add_parser("char", help="print q-series coefficients")
    c.add_argument("--module", choices=("m1plus", "m1", "eta", "theta"), default="m1plus")
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--order", type=int, default=17)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_char)

    pr = sub.add_parser("probe", help="numeric S-transform probe")
    pr.add_argument("--series", choices=("eta", "quotient", "theta"), default="eta")
    pr.add_argument("--t", default="1", help="probe tau = i t (rational)")
    pr.add_argument("--terms", type=int, default=200)
    pr.add_argument("--format", choices=("json", "text"), default="text")
    pr.add_argument("--out", default=None)
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

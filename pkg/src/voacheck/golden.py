"""Pinned golden constants (exact rationals stored as strings).

The default file ships inside the package; ``VOA_GOLDEN_PATH`` points
elsewhere.  Pinning never overwrites an existing file unless forced.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Dict

GOLDEN_ENV = "VOA_GOLDEN_PATH"
DEFAULT_PATH = Path(__file__).parent / "data" / "golden.json"


class GoldenExists(FileExistsError):
    pass


def golden_path() -> Path:
    env = os.environ.get(GOLDEN_ENV)
    return Path(env) if env else DEFAULT_PATH


def load_golden(path: Path | None = None) -> Dict[str, Fraction] | None:
    path = path or golden_path()
    if not path.exists():
        return None
    with open(path) as fh:
        data = json.load(fh)
    return {k: Fraction(v) for k, v in data["values"].items()}


def dump_golden(values: Dict[str, Fraction], path: Path | None = None, force: bool = False) -> Path:
    path = path or golden_path()
    if path.exists() and not force:
        raise GoldenExists(f"{path} exists; refusing to overwrite without --force")
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"version": 1, "values": {k: str(Fraction(v)) for k, v in sorted(values.items())}}
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    with open(path, "w") as fh:
        fh.write(text)
    return path

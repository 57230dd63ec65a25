"""Sparse exact linear algebra over Q.

Rows are dicts column -> value.  Elimination is fraction-free: every row is
kept as a primitive integer vector (content divided out), pivots are
cleared by integer cross-multiplication.  Columns are any hashable, totally
ordered keys; the pivot of a row is its largest column under ``key``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Row = Dict[Hashable, int]


def to_primitive(row: Dict[Hashable, Fraction]) -> Tuple[Row, Fraction]:
    """Scale a rational row to a primitive integer row; returns (prim, scale) with prim = scale * row."""
    if not row:
        return {}, Fraction(1)
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    ints = {c: int(Fraction(v) * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {c: v // g for c, v in ints.items()}, Fraction(den, g)


class Echelon:
    """Incremental echelon form of a row space.

    ``add`` inserts a row and reports whether the rank grew; ``reduce``
    returns the remainder of a row modulo the current span (zero iff member).
    Optionally tracks, for every stored row, its expression in terms of
    the inserted rows (``track=True``), which is what ``solve`` uses.
    """

    def __init__(self, key: Callable = lambda c: c, track: bool = False):
        self.key = key
        self.rows: Dict[Hashable, Row] = {}
        self.track = track
        self.history: Dict[Hashable, Dict[int, Fraction]] = {}
        self.count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivot(self, row: Row):
        return max(row, key=self.key)

    def _reduce_int(self, row: Row, hist: Optional[Dict[int, Fraction]]):
        # returns (remainder, multiplier, hist): remainder = multiplier*row - combination
        mult = Fraction(1)
        steps = 0
        while True:
            hits = [c for c in row if c in self.rows]
            if not hits:
                if steps % 8 and row:
                    gg = 0
                    for v in row.values():
                        gg = gcd(gg, v)
                        if gg == 1:
                            break
                    if gg > 1:
                        row = {col: v // gg for col, v in row.items()}
                        mult /= gg
                        if hist is not None:
                            hist = {i: v / gg for i, v in hist.items()}
                return row, mult, hist
            c = max(hits, key=self.key)
            prow = self.rows[c]
            a, b = prow[c], row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            # new = fa*row - fb*prow
            new = {col: v * fa for col, v in row.items()}
            for col, v in prow.items():
                s = new.get(col, 0) - fb * v
                if s:
                    new[col] = s
                else:
                    new.pop(col, None)
            mult *= fa
            if hist is not None:
                h = {i: v * fa for i, v in hist.items()}
                for i, v in self.history[c].items():
                    h[i] = h.get(i, 0) - fb * v
                hist = h
            steps += 1
            if steps % 8 or not new:
                row = new
                continue
            gg = 0
            for v in new.values():
                gg = gcd(gg, v)
                if gg == 1:
                    break
            if gg > 1:
                new = {col: v // gg for col, v in new.items()}
                mult /= gg
                if hist is not None:
                    hist = {i: v / gg for i, v in hist.items()}
            row = new

    def reduce(self, row: Dict[Hashable, Fraction]) -> Row:
        prim, _ = to_primitive({c: v for c, v in row.items() if v})
        rem, _, _ = self._reduce_int(prim, None)
        return rem

    def contains(self, row: Dict[Hashable, Fraction]) -> bool:
        return not self.reduce(row)

    def add(self, row: Dict[Hashable, Fraction]) -> bool:
        idx = self.count
        self.count += 1
        row = {c: v for c, v in row.items() if v}
        if not row:
            return False
        prim, scale = to_primitive(row)
        hist = {idx: scale} if self.track else None
        rem, _, hist = self._reduce_int(prim, hist)
        if not rem:
            return False
        p = self._pivot(rem)
        if rem[p] < 0:
            rem = {c: -v for c, v in rem.items()}
            if hist is not None:
                hist = {i: -v for i, v in hist.items()}
        self.rows[p] = rem
        if hist is not None:
            self.history[p] = hist
        return True

    def express(self, row: Dict[Hashable, Fraction]) -> Optional[Dict[int, Fraction]]:
        """Coefficients c_i with row = sum c_i * (i-th inserted row), or None if not in the span."""
        if not self.track:
            raise ValueError("express needs track=True")
        row = {c: v for c, v in row.items() if v}
        if not row:
            return {}
        prim, scale = to_primitive(row)
        # invariant during reduction: current = mult*prim + sum_i hist_i * inserted_i
        rem, mult, hist = self._reduce_int(prim, {})
        if rem:
            return None
        return {i: -Fraction(v) / (mult * scale) for i, v in hist.items() if v}

    def basis(self) -> List[Row]:
        return [self.rows[c] for c in sorted(self.rows, key=self.key, reverse=True)]


def rank(rows: Iterable[Dict[Hashable, Fraction]], key: Callable = lambda c: c) -> int:
    e = Echelon(key)
    for r in rows:
        e.add(r)
    return e.rank


class _Tag(tuple):
    """Identity column attached to input vector i; sorts below every real column."""


def nullspace(columns: Sequence[Dict[Hashable, Fraction]], key: Callable = lambda c: c) -> List[Dict[int, Fraction]]:
    """Kernel of the linear map sending basis vector i to ``columns[i]``.

    Returns a deterministic basis of {x : sum_i x_i columns[i] = 0}, as dicts
    index -> value, each normalized so that its distinguished index (the
    first column found dependent on earlier ones) has coefficient 1.  The
    bookkeeping rides along as extra integer columns, so elimination stays
    fraction-free.
    """
    def wrapped(c):
        return (0, c[0]) if isinstance(c, _Tag) else (1, key(c))

    e = Echelon(wrapped)
    kernel = []
    for i, col in enumerate(columns):
        row = {c: v for c, v in col.items() if v}
        tag = _Tag((i,))
        row[tag] = Fraction(1)
        prim, _ = to_primitive(row)
        rem, _, _ = e._reduce_int(prim, None)
        p = e._pivot(rem)
        if isinstance(p, _Tag):
            lead = rem[tag]
            kernel.append({c[0]: Fraction(v, lead) for c, v in rem.items()})
        else:
            if rem[p] < 0:
                rem = {c: -v for c, v in rem.items()}
            e.rows[p] = rem
    return kernel


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Exact solution of a square nonsingular system (None if singular)."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def matvec(matrix: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> List[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, x)), Fraction(0)) for row in matrix]

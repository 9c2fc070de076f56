"""Sparse exact-rational matrices: rank, solve, nullspace and a unitriangularity test.

Rows are stored as ``{col: value}`` dicts. Elimination pivots on the first
nonzero column of each row (no magnitude pivoting), so results are
deterministic and never rounded.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import UsageError
from .poly import Rational, as_rational


class RationalMatrix:
    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, entries: Mapping[tuple[int, int], Rational] | None = None):
        if n_rows < 0 or n_cols < 0:
            raise UsageError("matrix dimensions must be nonnegative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows: list[dict[int, Rational]] = [{} for _ in range(n_rows)]
        for (r, c), v in (entries or {}).items():
            self[r, c] = v

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, Rational]], n_cols: int) -> "RationalMatrix":
        rows = list(rows)
        m = cls(len(rows), n_cols)
        for r, row in enumerate(rows):
            for c, v in row.items():
                m[r, c] = v
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Rational]]) -> "RationalMatrix":
        n_cols = len(data[0]) if data else 0
        if any(len(row) != n_cols for row in data):
            raise UsageError("ragged dense matrix")
        return cls.from_rows(({c: v for c, v in enumerate(row) if v} for row in data), n_cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows(({i: 1} for i in range(n)), n)

    def _check(self, r: int, c: int) -> None:
        if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
            raise UsageError(f"index ({r}, {c}) outside {self.n_rows}x{self.n_cols}")

    def __getitem__(self, rc: tuple[int, int]) -> Rational:
        r, c = rc
        self._check(r, c)
        return self.rows[r].get(c, 0)

    def __setitem__(self, rc: tuple[int, int], value: Rational) -> None:
        r, c = rc
        self._check(r, c)
        value = as_rational(value)
        if value:
            self.rows[r][c] = value
        else:
            self.rows[r].pop(c, None)

    @property
    def entries(self) -> dict[tuple[int, int], Rational]:
        return {(r, c): v for r, row in enumerate(self.rows) for c, v in row.items()}

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def transpose(self) -> "RationalMatrix":
        t = RationalMatrix(self.n_cols, self.n_rows)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                t.rows[c][r] = v
        return t

    def matvec(self, x: Sequence[Rational]) -> list[Rational]:
        if len(x) != self.n_cols:
            raise UsageError("vector length does not match column count")
        return [as_rational(sum(v * x[c] for c, v in row.items())) for row in self.rows]

    def to_dense(self) -> list[list[Rational]]:
        return [[row.get(c, 0) for c in range(self.n_cols)] for row in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"RationalMatrix({self.n_rows}x{self.n_cols}, nnz={sum(map(len, self.rows))})"


def _reduce_into(pivots: dict[int, dict[int, Fraction]], row: Mapping, limit: float = float("inf")) -> dict:
    """Eliminate known pivot columns from ``row`` until its lead column (below ``limit``) is new."""
    row = dict(row)
    while True:
        lead = min((k for k in row if k < limit), default=None)
        if lead is None or lead not in pivots:
            return row
        f = row[lead]
        for k, v in pivots[lead].items():
            nv = row.get(k, 0) - f * v
            if nv:
                row[k] = nv
            else:
                del row[k]


def _echelon(rows: Iterable[Mapping[int, Rational]], limit: float = float("inf")):
    """Forward elimination; returns the pivot table and rows that reduced to nothing in ``[0, limit)``."""
    pivots: dict[int, dict[int, Fraction]] = {}
    leftovers = []
    for row in rows:
        r = _reduce_into(pivots, row, limit)
        c = min((k for k in r if k < limit), default=None)
        if c is None:
            leftovers.append(r)
            continue
        inv = 1 / Fraction(r[c])
        pivots[c] = {k: v * inv for k, v in r.items()}
    return pivots, leftovers


def row_basis(m: RationalMatrix) -> list[dict[int, Rational]]:
    """Echelon basis of the row space, ordered by lead column."""
    pivots, _ = _echelon(m.rows)
    return [{k: as_rational(v) for k, v in pivots[c].items()} for c in sorted(pivots)]


def rank(m: RationalMatrix) -> int:
    pivots, _ = _echelon(m.rows)
    return len(pivots)


def solve(m: RationalMatrix, rhs: Sequence[Rational]) -> list[Rational] | None:
    """Unique exact solution of ``m x = rhs`` for square nonsingular ``m``; None otherwise."""
    if len(rhs) != m.n_rows:
        raise UsageError(f"rhs has length {len(rhs)}, matrix has {m.n_rows} rows")
    if m.n_rows != m.n_cols:
        raise UsageError("solve needs a square matrix")
    n = m.n_cols
    aug = []
    for row, b in zip(m.rows, rhs):
        r = dict(row)
        b = as_rational(b)
        if b:
            r[n] = b
        aug.append(r)
    pivots, leftovers = _echelon(aug, limit=n)
    if any(leftovers) or len(pivots) < n:
        return None
    x: list[Rational] = [0] * n
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        val = row.get(n, 0)
        for k, v in row.items():
            if k != c and k != n:
                val -= v * x[k]
        x[c] = as_rational(val)
    return x


def nullspace(m: RationalMatrix) -> list[list[Rational]]:
    """Basis of ``{x : m x = 0}`` from the reduced row echelon form."""
    pivots, _ = _echelon(m.rows)
    # back-reduce to RREF
    cols = sorted(pivots)
    for c in reversed(cols):
        for d in cols:
            if d < c and c in pivots[d]:
                f = pivots[d][c]
                for k, v in pivots[c].items():
                    nv = pivots[d].get(k, 0) - f * v
                    if nv:
                        pivots[d][k] = nv
                    else:
                        pivots[d].pop(k, None)
    free = [c for c in range(m.n_cols) if c not in pivots]
    basis = []
    for fcol in free:
        vec: list[Rational] = [0] * m.n_cols
        vec[fcol] = 1
        for c in cols:
            v = pivots[c].get(fcol, 0)
            if v:
                vec[c] = as_rational(-v)
        basis.append(vec)
    return basis


def is_unitriangular(m: RationalMatrix, order: Sequence[int]) -> bool:
    """True iff, listing rows and columns in ``order`` (index ``order[k]`` at position ``k``),
    the diagonal is 1 and nothing sits right of it.

    Row ``i`` is paired with column ``i``; with positions sorted greatest
    word first, a nonzero right of the diagonal would be a greater word.
    """
    if m.n_rows != m.n_cols:
        raise UsageError("unitriangularity needs a square matrix")
    if sorted(order) != list(range(m.n_rows)):
        raise UsageError("order is not a permutation of the row indices")
    position = {idx: k for k, idx in enumerate(order)}
    for r, row in enumerate(m.rows):
        if row.get(r, 0) != 1:
            return False
        pr = position[r]
        for c in row:
            if c != r and position[c] < pr:
                return False
    return True

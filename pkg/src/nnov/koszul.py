"""The Koszul dual operad with operations -| and |- : relations, and dimensions by exact rank.

Monomials are planar binary trees with leaves ``x1 .. xn`` in fixed order,
so a monomial is determined by its shape and node labels. Relations in arity
``n`` are obtained from arity ``n - 1`` by substituting a binary generator
into a leaf, or by grafting the relation under a binary generator on either side.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from math import comb
from typing import NamedTuple, Union

from . import linalg
from .errors import UsageError
from .poly import LinearCombination


class DualOp(str, enum.Enum):
    LEFT = "-|"   # ⊣
    RIGHT = "|-"  # ⊢

    @property
    def symbol(self) -> str:
        return "⊣" if self is DualOp.LEFT else "⊢"


class DualLeaf(NamedTuple):
    pass


class DualNode(NamedTuple):
    op: DualOp
    left: "DualMon"
    right: "DualMon"


DualMon = Union[DualLeaf, DualNode]
LEAF = DualLeaf()
L, R = DualOp.LEFT, DualOp.RIGHT


def _size(t: DualMon) -> int:
    return 1 if isinstance(t, DualLeaf) else _size(t.left) + _size(t.right)


def format_dual(t: DualMon, unicode: bool = False) -> str:
    counter = iter(range(1, _size(t) + 1))

    def go(s):
        if isinstance(s, DualLeaf):
            return f"x{next(counter)}"
        op = s.op.symbol if unicode else s.op.value
        return f"({go(s.left)} {op} {go(s.right)})"

    return go(t)


def _dual_sort_key(t: DualMon) -> str:
    return format_dual(t)


class RelationVector(LinearCombination[DualMon]):
    __slots__ = ()
    sort_key = staticmethod(_dual_sort_key)

    @property
    def arity(self) -> int:
        return _size(next(iter(self._terms))) if self._terms else 0


@lru_cache(maxsize=None)
def enumerate_dual(n: int) -> tuple[DualMon, ...]:
    """All ``Catalan(n-1) * 2^(n-1)`` labeled planar trees of arity ``n``; left subtree size ascending."""
    if n < 1:
        raise UsageError("arity must be at least 1")
    if n == 1:
        return (LEAF,)
    out = []
    for k in range(1, n):
        for a in enumerate_dual(k):
            for b in enumerate_dual(n - k):
                for op in (L, R):
                    out.append(DualNode(op, a, b))
    return tuple(out)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _n(op, a, b):
    return DualNode(op, a, b)


def base_relations() -> list[RelationVector]:
    x = LEAF

    def right_comb(o1, o2):  # x1 o1 (x2 o2 x3)
        return _n(o1, x, _n(o2, x, x))

    def left_comb(o1, o2):  # (x1 o1 x2) o2 x3
        return _n(o2, _n(o1, x, x), x)

    chain_anchor = right_comb(L, R)                      # x1 -| (x2 |- x3)
    chain = [right_comb(R, R), left_comb(L, L), left_comb(L, R)]
    rels = [
        RelationVector({right_comb(L, L): 1}),
        RelationVector({left_comb(R, R): 1}),
        RelationVector({right_comb(R, L): 1, left_comb(R, L): -1}),
    ]
    rels += [RelationVector({chain_anchor: 1, other: -1}) for other in chain]
    return rels


def _substitutions(t: DualMon):
    """Every tree obtained by replacing one leaf of ``t`` with a binary generator."""
    if isinstance(t, DualLeaf):
        for op in (L, R):
            yield DualNode(op, LEAF, LEAF)
        return
    for s in _substitutions(t.left):
        yield DualNode(t.op, s, t.right)
    for s in _substitutions(t.right):
        yield DualNode(t.op, t.left, s)


def extend_relation(rel: RelationVector) -> list[RelationVector]:
    """Arity ``n + 1`` consequences of an arity ``n`` relation."""
    out = []
    n_leaves = rel.arity
    expanded = {t: list(_substitutions(t)) for t in rel._terms}
    for k in range(2 * n_leaves):
        out.append(RelationVector({expanded[t][k]: c for t, c in rel._terms.items()}))
    for op in (L, R):
        out.append(rel.map_atoms(lambda t: DualNode(op, t, LEAF)))
        out.append(rel.map_atoms(lambda t: DualNode(op, LEAF, t)))
    return out


def _matrix(rels: list[RelationVector], n: int) -> linalg.RationalMatrix:
    index = {t: i for i, t in enumerate(enumerate_dual(n))}
    return linalg.RationalMatrix.from_rows(({index[t]: c for t, c in r._terms.items()} for r in rels), len(index))


@lru_cache(maxsize=None)
def _reduced_relations(n: int) -> tuple[RelationVector, ...]:
    """A basis of the arity-``n`` relation space, used as the seed for arity ``n + 1``."""
    rels = dual_relations(n)
    mons = enumerate_dual(n)
    rows = linalg.row_basis(_matrix(rels, n))
    return tuple(RelationVector({mons[c]: v for c, v in row.items()}) for row in rows)


def dual_relations(n: int) -> list[RelationVector]:
    """Spanning set of the arity-``n`` component of the relation ideal (``n >= 3``)."""
    if n < 3:
        raise UsageError("relations start in arity 3")
    if n == 3:
        return base_relations()
    seed = base_relations() if n == 4 else _reduced_relations(n - 1)
    return [r for rel in seed for r in extend_relation(rel) if r]


def dual_dim(n: int) -> int:
    if n < 1:
        raise UsageError("arity must be at least 1")
    if n < 3:
        return len(enumerate_dual(n))
    return len(enumerate_dual(n)) - linalg.rank(_matrix(dual_relations(n), n))


def quotient_functionals(n: int) -> list[dict[DualMon, object]]:
    """Basis of linear functionals on arity-``n`` monomials that vanish on every relation."""
    mons = enumerate_dual(n)
    if n < 3:
        return [{t: 1} for t in mons]
    kernel = linalg.nullspace(_matrix(dual_relations(n), n))
    return [{mons[i]: v for i, v in enumerate(vec) if v} for vec in kernel]

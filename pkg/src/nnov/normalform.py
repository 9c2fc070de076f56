"""The embedding tau into the differential associative algebra, normal forms, and the Novikov products.

``tau(a < b) = a d(b)`` and ``tau(a > b) = d(a) b``. Its image on trees with
``n`` leaves is the weight -1 component of degree ``n``, and
``tau([u]) = u + (smaller words)``, so a weight -1 polynomial is normalized by
repeatedly cancelling its greatest monomial.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from functools import lru_cache

from . import linalg
from .bracketing import (
    Op, TreeMon, Leaf, Node, bracket_skeleton, enumerate_skeletons, leaf_gens, relabel,
    shape_of, skeleton_key, word_key,
)
from .errors import DomainError, InvariantViolation, UsageError, VerificationFailure
from .poly import DiffPoly, LinearCombination, Rational, as_rational, concat, derive
from .terms import DiffLetter, DiffWord

SOLVE_MAX_DEGREE = 10


@lru_cache(maxsize=None)
def _tree_sort_key(t: TreeMon) -> tuple:
    expansion = tau_skeleton(shape_of(t))
    lead = min(expansion, key=skeleton_key)
    return (skeleton_key(lead), leaf_gens(t), repr(t))


class TreePoly(LinearCombination[TreeMon]):
    """Element of the free noncommutative Novikov algebra as a combination of tree monomials.

    Terms are listed greatest first, ranking each tree by the leading word of its tau-image.
    """

    __slots__ = ()
    sort_key = staticmethod(_tree_sort_key)

    def __lshift__(self, other):
        # a << b is a < b; Python comparison operators are kept for equality semantics
        if isinstance(other, TreePoly):
            return nov_product(self, other, Op.PREC)
        return NotImplemented

    def __rshift__(self, other):
        if isinstance(other, TreePoly):
            return nov_product(self, other, Op.SUCC)
        return NotImplemented


# --- tau ---------------------------------------------------------------------


def _derive_counts(p: dict[tuple, int]) -> dict[tuple, int]:
    out: dict[tuple, int] = defaultdict(int)
    for w, c in p.items():
        for j in range(len(w)):
            out[w[:j] + (w[j] + 1,) + w[j + 1:]] += c
    return out


def _concat_counts(p: dict[tuple, int], q: dict[tuple, int]) -> dict[tuple, int]:
    out: dict[tuple, int] = defaultdict(int)
    for u, a in p.items():
        for v, b in q.items():
            out[u + v] += a * b
    return out


@lru_cache(maxsize=None)
def tau_skeleton(shape: TreeMon) -> dict[tuple[int, ...], int]:
    """tau of an unlabeled tree as ``{orders: positive int}``. Do not mutate the result."""
    if isinstance(shape, Leaf):
        return {(0,): 1}
    a, b = tau_skeleton(shape.left), tau_skeleton(shape.right)
    if shape.op is Op.PREC:
        return dict(_concat_counts(a, _derive_counts(b)))
    return dict(_concat_counts(_derive_counts(a), b))


def _label(orders: tuple[int, ...], gens: tuple[str, ...]) -> DiffWord:
    return DiffWord._trusted(tuple(map(DiffLetter, gens, orders)))


def tau(t: TreeMon | TreePoly) -> DiffPoly:
    if isinstance(t, TreePoly):
        out: dict = defaultdict(int)
        for tree, c in t._terms.items():
            for w, m in tau(tree)._terms.items():
                out[w] += c * m
        return DiffPoly._from_clean({k: as_rational(v) for k, v in out.items() if v})
    gens = leaf_gens(t)
    return DiffPoly._from_clean({_label(o, gens): c for o, c in tau_skeleton(shape_of(t)).items()})


# --- normal forms --------------------------------------------------------------


def _classes(p: DiffPoly) -> dict[tuple[str, ...], dict[tuple[int, ...], Rational]]:
    """Split by generator sequence (which also fixes the degree); tau never mixes classes."""
    out: dict = defaultdict(dict)
    for u, c in p._terms.items():
        if u.weight != -1:
            raise DomainError(f"monomial {u!r} has weight {u.weight}, expected -1")
        out[u.gens][u.orders] = c
    return out


def _eliminate(rem: dict[tuple[int, ...], Rational], check: bool = True) -> dict[tuple[int, ...], Rational]:
    """Greedy leading-term elimination on one class; returns ``{skeleton: coeff}`` of basis trees."""
    rem = dict(rem)
    out: dict = {}
    heap = [(skeleton_key(o), o) for o in rem]
    heapq.heapify(heap)
    while heap:
        key, o = heapq.heappop(heap)
        c = rem.pop(o, 0)
        if not c:
            continue
        expansion = tau_skeleton(bracket_skeleton(o))
        if expansion.get(o) != 1:
            raise InvariantViolation(f"tau([u]) does not contain u = {o} with coefficient 1")
        for w, e in expansion.items():
            if w == o:
                continue
            wkey = skeleton_key(w)
            if check and not wkey > key:
                raise InvariantViolation(f"tau([{o}]) contains {w}, which is not smaller")
            old = rem.get(w)
            new = (old or 0) - c * e
            if new:
                if old is None:
                    heapq.heappush(heap, (wkey, w))
                rem[w] = as_rational(new)
            elif old is not None:
                del rem[w]
        out[o] = c
    return out


def normalize_greedy(p: DiffPoly) -> TreePoly:
    """Express a weight -1 polynomial in the standard-bracket basis by leading-term elimination."""
    result: dict = {}
    for gens, rem in _classes(p).items():
        for o, c in _eliminate(rem).items():
            result[relabel(bracket_skeleton(o), gens)] = c
    return TreePoly._from_clean(result)


@lru_cache(maxsize=None)
def tau_matrix(n: int) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int], linalg.RationalMatrix]:
    """Skeletons of degree ``n``, their index map, and the matrix ``M[word, tree] = coeff of word in tau(tree)``.

    Columns are the standard brackets of the same skeletons, in the same order.
    """
    skels = enumerate_skeletons(n)
    index = {s: i for i, s in enumerate(skels)}
    m = linalg.RationalMatrix(len(skels), len(skels))
    for j, s in enumerate(skels):
        for w, c in tau_skeleton(bracket_skeleton(s)).items():
            m.rows[index[w]][j] = c
    return skels, index, m


def normalize_solve(p: DiffPoly) -> TreePoly:
    """Same contract as :func:`normalize_greedy`, via exact linear solve over the whole basis.

    Uses general Gaussian elimination, so the answer does not depend on the
    monomial order being triangular.
    """
    result: dict = {}
    for gens, rem in _classes(p).items():
        n = len(gens)
        if n > SOLVE_MAX_DEGREE:
            raise UsageError(f"normalize_solve is capped at degree {SOLVE_MAX_DEGREE}")
        skels, index, m = tau_matrix(n)
        rhs: list[Rational] = [0] * len(skels)
        for o, c in rem.items():
            rhs[index[o]] = c
        x = linalg.solve(m, rhs)
        if x is None:
            raise VerificationFailure(f"tau matrix in degree {n} is singular")
        for s, c in zip(skels, x):
            if c:
                result[relabel(bracket_skeleton(s), gens)] = c
    return TreePoly._from_clean(result)


def as_treepoly(t: TreeMon | TreePoly) -> TreePoly:
    return t if isinstance(t, TreePoly) else TreePoly.monomial(t)


def nov_product(a: TreeMon | TreePoly, b: TreeMon | TreePoly, op: Op | str) -> TreePoly:
    """``a < b`` or ``a > b`` computed through tau and returned in normal form."""
    op = Op(op)
    ta, tb = tau(as_treepoly(a)), tau(as_treepoly(b))
    if op is Op.PREC:
        image = concat(ta, derive(tb))
    else:
        image = concat(derive(ta), tb)
    return normalize_greedy(image)


def normal_form(t: TreeMon | TreePoly) -> TreePoly:
    """Rewrite an arbitrary combination of trees in the standard-bracket basis."""
    return normalize_greedy(tau(as_treepoly(t)))

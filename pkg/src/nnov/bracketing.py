"""Standard bracketing of weight -1 differential words, head/position data, and the monomial order.

The hot path works on *skeletons*: tuples of derivation orders with the
generator labels stripped. Bracketing, factorization and the order never look
at labels, so every skeleton-level result is memoized once and relabeled on
demand.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import DomainError, InvariantViolation, UsageError
from .terms import DEFAULT_GENERATOR, DiffLetter, DiffWord, compositions, intern_generator


class Op(str, enum.Enum):
    PREC = "<"
    SUCC = ">"

    @property
    def symbol(self) -> str:
        return "≺" if self is Op.PREC else "≻"


class Leaf(NamedTuple):
    gen: str = DEFAULT_GENERATOR

    @property
    def size(self) -> int:
        return 1

    def leaves(self) -> Iterator[str]:
        yield self.gen


class Node(NamedTuple):
    op: Op
    left: "TreeMon"
    right: "TreeMon"

    @property
    def size(self) -> int:
        return _size(self)

    def leaves(self) -> Iterator[str]:
        yield from self.left.leaves()
        yield from self.right.leaves()


TreeMon = Union[Leaf, Node]

LEAF_X = Leaf(DEFAULT_GENERATOR)


def prec(a: TreeMon, b: TreeMon) -> Node:
    return Node(Op.PREC, a, b)


def succ(a: TreeMon, b: TreeMon) -> Node:
    return Node(Op.SUCC, a, b)


@lru_cache(maxsize=None)
def _size(t: TreeMon) -> int:
    if isinstance(t, Leaf):
        return 1
    return _size(t.left) + _size(t.right)


def leaf_count(t: TreeMon) -> int:
    return _size(t)


def leaf_gens(t: TreeMon) -> tuple[str, ...]:
    return tuple(t.leaves())


def relabel(shape: TreeMon, gens: Sequence[str]) -> TreeMon:
    """Replace leaf labels left to right by ``gens``."""
    if all(g == DEFAULT_GENERATOR for g in gens) and all(g == DEFAULT_GENERATOR for g in shape.leaves()):
        return shape
    it = iter(gens)

    def go(t):
        if isinstance(t, Leaf):
            return Leaf(next(it))
        return Node(t.op, go(t.left), go(t.right))

    out = go(shape)
    if next(it, None) is not None:
        raise UsageError("more labels than leaves")
    return out


@lru_cache(maxsize=None)
def shape_of(t: TreeMon) -> TreeMon:
    """The tree with every leaf relabeled to the default generator."""
    if isinstance(t, Leaf):
        return LEAF_X
    return Node(t.op, shape_of(t.left), shape_of(t.right))


def _check_weight(u: DiffWord) -> None:
    if u.weight != -1:
        raise DomainError(f"word has weight {u.weight}, expected -1")


# --- skeleton kernels -------------------------------------------------------


def _shortest_block(orders: tuple[int, ...]) -> tuple[int, int] | None:
    # among proper weight -1 factors of length > 1: earliest end, then shortest
    n = len(orders)
    prefix = [0]
    for o in orders:
        prefix.append(prefix[-1] + o - 1)
    for end in range(2, n + 1):
        for start in range(end - 2, -1, -1):
            if end - start == n:
                break
            if prefix[end] - prefix[start] == -1:
                return start, end - start
    return None


def _substitute(tree: TreeMon, position: int, sub: TreeMon) -> TreeMon:
    if isinstance(tree, Leaf):
        if position != 0:
            raise InvariantViolation("substitution position out of range")
        return sub
    left_size = _size(tree.left)
    if position < left_size:
        return Node(tree.op, _substitute(tree.left, position, sub), tree.right)
    return Node(tree.op, tree.left, _substitute(tree.right, position - left_size, sub))


def _base_bracket(orders: tuple[int, ...]) -> TreeMon:
    n = len(orders)
    if n == 1:
        return LEAF_X
    heads = [i for i, o in enumerate(orders) if o]
    if len(heads) != 1:
        raise InvariantViolation(f"no proper weight -1 block in non-base word {orders}")
    p = heads[0]
    tree: TreeMon = LEAF_X
    for _ in range(n - 1 - p):
        tree = Node(Op.SUCC, tree, LEAF_X)
    for _ in range(p):
        tree = Node(Op.PREC, LEAF_X, tree)
    return tree


@lru_cache(maxsize=None)
def bracket_skeleton(orders: tuple[int, ...]) -> TreeMon:
    """Standard bracketing of a weight -1 skeleton, all leaves labeled ``x``."""
    block = _shortest_block(orders)
    if block is None:
        return _base_bracket(orders)
    start, length = block
    v = orders[start:start + length]
    w = orders[:start] + (0,) + orders[start + length:]
    return _substitute(bracket_skeleton(w), start, bracket_skeleton(v))


class _SkelFactor(NamedTuple):
    prefix: tuple[tuple[int, ...], ...]
    head_pos: int
    head_order: int
    suffix: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _factor_skeleton(orders: tuple[int, ...]) -> _SkelFactor:
    tree = bracket_skeleton(orders)
    prefix_sizes = []
    while isinstance(tree, Node) and tree.op is Op.PREC:
        prefix_sizes.append(_size(tree.left))
        tree = tree.right
    suffix_sizes = []
    while isinstance(tree, Node) and tree.op is Op.SUCC:
        suffix_sizes.append(_size(tree.right))
        tree = tree.left
    if not isinstance(tree, Leaf):
        raise InvariantViolation(f"bracketing of {orders} has no head leaf")
    suffix_sizes.reverse()

    pos = 0
    prefix = []
    for s in prefix_sizes:
        prefix.append(orders[pos:pos + s])
        pos += s
    head = pos
    pos += 1
    suffix = []
    for s in suffix_sizes:
        suffix.append(orders[pos:pos + s])
        pos += s
    return _SkelFactor(tuple(prefix), head + 1, orders[head], tuple(suffix))


@lru_cache(maxsize=None)
def skeleton_key(orders: tuple[int, ...]) -> tuple:
    """Sort key: ascending key order is *descending* monomial order.

    Layout ``(-degree, rho, -head_order, block keys)``. Two keys of equal
    degree, rho and head order carry block tuples of the same length, so
    plain tuple comparison reproduces the recursive lexicographic rule.
    """
    f = _factor_skeleton(orders)
    blocks = f.prefix + f.suffix
    return (-len(orders), f.head_pos, -f.head_order, tuple(skeleton_key(b) for b in blocks))


def word_key(u: DiffWord) -> tuple:
    """Sort key for weight -1 words; sorting ascending lists greatest words first."""
    return (skeleton_key(u.orders), u.gens)


# --- public operations ------------------------------------------------------


def shortest_leftmost_block(u: DiffWord) -> tuple[int, int] | None:
    """``(start, length)`` of the block collapsed first by the standard bracketing.

    Among proper factors of length > 1 and weight -1, take the one whose last
    letter is leftmost, and among those the shortest. ``start`` is 1-based.
    Returns None for base words ``x^p x^(k) x^(k-p)``.
    """
    _check_weight(u)
    block = _shortest_block(u.orders)
    if block is None:
        if sum(1 for o in u.orders if o) > 1:
            raise InvariantViolation(f"no proper weight -1 block in non-base word {u!r}")
        return None
    return block[0] + 1, block[1]


def standard_bracket(u: DiffWord) -> TreeMon:
    _check_weight(u)
    return relabel(bracket_skeleton(u.orders), u.gens)


@dataclass(frozen=True)
class Factorization:
    """Block decomposition ``u_1 ... u_t x^(t+l) u_{t+1} ... u_{t+l}`` of a weight -1 word."""

    prefix_blocks: tuple[DiffWord, ...]
    head_pos: int
    head_order: int
    suffix_blocks: tuple[DiffWord, ...]

    @property
    def rho(self) -> int:
        return self.head_pos

    @property
    def t(self) -> int:
        return len(self.prefix_blocks)

    @property
    def l(self) -> int:
        return len(self.suffix_blocks)

    @property
    def blocks(self) -> tuple[DiffWord, ...]:
        return self.prefix_blocks + self.suffix_blocks


def factorize(u: DiffWord) -> Factorization:
    _check_weight(u)
    f = _factor_skeleton(u.orders)
    pos = 0

    def cut(skels):
        nonlocal pos
        out = []
        for s in skels:
            out.append(u[pos:pos + len(s)])
            pos += len(s)
        return tuple(out)

    prefix = cut(f.prefix)
    pos += 1
    suffix = cut(f.suffix)
    return Factorization(prefix, f.head_pos, f.head_order, suffix)


class Ordering(enum.Enum):
    GREATER = 1
    LESS = -1

    def __neg__(self) -> "Ordering":
        return Ordering.LESS if self is Ordering.GREATER else Ordering.GREATER


def _cmp_skel(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    # 1 if a > b, -1 if a < b, 0 if a == b
    if a == b:
        return 0
    if len(a) != len(b):
        return 1 if len(a) > len(b) else -1
    fa, fb = _factor_skeleton(a), _factor_skeleton(b)
    if fa.head_pos != fb.head_pos:
        return 1 if fa.head_pos < fb.head_pos else -1
    if fa.head_order != fb.head_order:
        return 1 if fa.head_order > fb.head_order else -1
    for x, y in zip(fa.prefix + fa.suffix, fb.prefix + fb.suffix):
        c = _cmp_skel(x, y)
        if c:
            return c
    raise InvariantViolation(f"distinct words {a} and {b} are incomparable")


def compare(u: DiffWord, v: DiffWord) -> Ordering:
    """Monomial order on weight -1 words.

    Smaller head position wins, then larger head order, then the block
    sequences are compared left to right with the same rule. Words of
    different degree compare degree-first; words with the same order
    skeleton fall back to their generator sequences (smaller sequence wins).
    """
    if u == v:
        raise UsageError("compare needs two distinct words")
    _check_weight(u)
    _check_weight(v)
    c = _cmp_skel(u.orders, v.orders)
    if c == 0:
        c = 1 if u.gens < v.gens else -1
    return Ordering.GREATER if c > 0 else Ordering.LESS


class Mode(str, enum.Enum):
    SINGLE = "single"
    MULTILINEAR = "multilinear"


def _labelings(n: int, alphabet: Sequence[str], mode: Mode) -> list[tuple[str, ...]]:
    alphabet = tuple(intern_generator(g) for g in alphabet)
    if not alphabet or len(set(alphabet)) != len(alphabet):
        raise UsageError("alphabet must be a nonempty list of distinct generators")
    if mode is Mode.MULTILINEAR:
        if len(alphabet) != n:
            raise UsageError(f"multilinear mode needs exactly {n} generators, got {len(alphabet)}")
        return list(itertools.permutations(alphabet))
    return list(itertools.product(alphabet, repeat=n))


def enumerate_skeletons(n: int) -> list[tuple[int, ...]]:
    """All weight -1 skeletons of degree ``n``, greatest first."""
    if n < 1:
        raise UsageError("degree must be at least 1")
    return sorted(compositions(n - 1, n), key=skeleton_key)


def enumerate_words(n: int, alphabet: Sequence[str] = (DEFAULT_GENERATOR,),
                    mode: Mode | str = Mode.SINGLE) -> list[DiffWord]:
    """Weight -1 words of degree ``n``, sorted descending by :func:`compare`.

    SINGLE labels leaves with every sequence over ``alphabet`` (one letter
    gives the classic ``U_n``); MULTILINEAR uses each of ``n`` distinct
    letters exactly once.
    """
    if not isinstance(n, int) or n < 1:
        raise UsageError("degree must be a positive integer")
    mode = Mode(mode)
    labelings = sorted(_labelings(n, alphabet, mode))
    words = []
    for skel in enumerate_skeletons(n):
        for gens in labelings:
            words.append(DiffWord._trusted(tuple(DiffLetter(g, o) for g, o in zip(gens, skel))))
    return words


def enumerate_basis(n: int, alphabet: Sequence[str] = (DEFAULT_GENERATOR,),
                    mode: Mode | str = Mode.SINGLE) -> list[TreeMon]:
    return [standard_bracket(u) for u in enumerate_words(n, alphabet, mode)]


def count_formula(n: int, mode: Mode | str = Mode.SINGLE, alphabet_size: int = 1) -> int:
    """Closed-form size of the degree-``n`` basis: ``C(2n-2, n-1)`` times the labelings."""
    base = comb(2 * n - 2, n - 1)
    if Mode(mode) is Mode.MULTILINEAR:
        return factorial(n) * base
    return alphabet_size ** n * base

import itertools
import random
from math import comb, factorial

import pytest
from hypothesis import given, settings

from nnov.bracketing import (
    LEAF_X, Leaf, Mode, Ordering, compare, enumerate_basis, enumerate_words, factorize, leaf_count,
    leaf_gens, prec, relabel, shortest_leftmost_block, standard_bracket, succ, word_key,
)
from nnov.errors import DomainError, UsageError
from nnov.terms import DiffWord
from nnov.textio import format_tree, parse_tree

from conftest import weight_minus_one_words
from oracles import all_weight_minus_one

x = LEAF_X
EXAMPLE = DiffWord.from_orders((0, 1, 2, 1, 2, 0, 0))
U3 = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
BRACKETS_U3 = ["((x > x) > x)", "(x < (x > x))", "(x < (x < x))", "(x > (x > x))",
               "((x > x) < x)", "((x < x) < x)"]
CHAIN_U3 = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 2), (1, 0, 1), (0, 1, 1)]


def W(*orders):
    return DiffWord.from_orders(orders)


@pytest.mark.parametrize("orders, expected", [
    ((0, 1, 2, 1, 2, 0, 0), (1, 2)),
    ((0, 2, 1, 2, 0, 0), (4, 3)),
    ((0, 2, 0), None),
])
def test_shortest_leftmost_block(orders, expected):
    assert shortest_leftmost_block(W(*orders)) == expected


def test_block_needs_weight_minus_one():
    with pytest.raises(DomainError):
        shortest_leftmost_block(W(1, 1))


def test_worked_example():
    assert standard_bracket(EXAMPLE) == prec(prec(x, x), succ(x, succ(x, succ(succ(x, x), x))))


@pytest.mark.parametrize("orders, tree", [
    ((0, 2, 0), "(x < (x > x))"),
    ((1, 0, 1), "((x > x) < x)"),
    ((0,), "x"),
] + list(zip(U3, BRACKETS_U3)))
def test_standard_bracket(orders, tree):
    assert format_tree(standard_bracket(W(*orders))) == tree


def test_bracket_needs_weight_minus_one():
    with pytest.raises(DomainError):
        standard_bracket(W(0, 0))


@pytest.mark.parametrize("n", range(1, 7))
def test_bracket_preserves_leaves(n):
    for u in enumerate_words(n):
        t = standard_bracket(u)
        assert leaf_count(t) == n
        assert leaf_gens(t) == u.gens


@pytest.mark.parametrize("orders, rho, h, prefix, suffix", [
    ((2, 0, 0), 1, 2, [], [(0,), (0,)]),
    ((0, 1, 2, 1, 2, 0, 0), 3, 2, [(0, 1)], [(1, 2, 0, 0)]),
    ((1, 0, 1), 3, 1, [(1, 0)], []),
])
def test_factorize_examples(orders, rho, h, prefix, suffix):
    f = factorize(W(*orders))
    assert (f.rho, f.head_order) == (rho, h)
    assert [b.orders for b in f.prefix_blocks] == prefix
    assert [b.orders for b in f.suffix_blocks] == suffix
    assert (f.t, f.l) == (len(prefix), len(suffix))


@pytest.mark.parametrize("n", range(1, 8))
def test_factorize_invariants(n):
    for u in enumerate_words(n):
        f = factorize(u)
        assert f.head_order == f.t + f.l
        assert f.head_pos == 1 + sum(len(b) for b in f.prefix_blocks)
        assert all(b.weight == -1 for b in f.blocks)
        rebuilt = tuple(itertools.chain(*f.prefix_blocks, (u[f.head_pos - 1],), *f.suffix_blocks))
        assert rebuilt == tuple(u)
        assert u[f.head_pos - 1].order == f.head_order


@pytest.mark.parametrize("n", range(1, 7))
def test_blocks_carry_their_own_brackets(n):
    # each block subtree of [u] is the standard bracketing of the block word
    for u in enumerate_words(n):
        t = standard_bracket(u)
        f = factorize(u)
        subtrees = []
        node = t
        while not isinstance(node, Leaf) and node.op.value == "<":
            subtrees.append(node.left)
            node = node.right
        tail = []
        while not isinstance(node, Leaf):
            tail.append(node.right)
            node = node.left
        subtrees += reversed(tail)
        assert subtrees == [standard_bracket(b) for b in f.blocks]


@pytest.mark.parametrize("u, v", [
    ((2, 0, 0), (0, 2, 0)),
    ((2, 0, 0), (1, 1, 0)),
    ((1, 0, 1), (0, 1, 1)),
])
def test_compare_examples(u, v):
    assert compare(W(*u), W(*v)) is Ordering.GREATER
    assert compare(W(*v), W(*u)) is Ordering.LESS


def test_degree_three_chain():
    assert [u.orders for u in enumerate_words(3)] == CHAIN_U3
    for a, b in itertools.combinations(CHAIN_U3, 2):
        assert compare(W(*a), W(*b)) is Ordering.GREATER


def test_compare_equal_words_is_usage_error():
    with pytest.raises(UsageError):
        compare(W(2, 0, 0), W(2, 0, 0))


def test_compare_degree_first():
    assert compare(W(0, 1, 1), W(1, 0)) is Ordering.GREATER


@pytest.mark.parametrize("n", range(1, 7))
def test_compare_total_and_matches_key(n):
    words = enumerate_words(n)
    for i, j in itertools.combinations(range(len(words)), 2):
        assert compare(words[i], words[j]) is Ordering.GREATER
        assert compare(words[j], words[i]) is Ordering.LESS
        assert word_key(words[i]) < word_key(words[j])


def test_compare_transitive_on_samples():
    rng = random.Random(1)
    words = enumerate_words(7)
    for _ in range(10_000):
        a, b, c = rng.sample(words, 3)
        ab, bc = compare(a, b), compare(b, c)
        if ab is bc:
            assert compare(a, c) is ab


def test_enumerate_words_u3_set():
    assert {u.orders for u in enumerate_words(3)} == set(U3)
    assert [u.orders for u in enumerate_words(1)] == [(0,)]


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_words_against_brute_force(n):
    assert sorted(u.orders for u in enumerate_words(n)) == sorted(all_weight_minus_one(n))


@pytest.mark.parametrize("n", range(1, 11))
def test_single_counts(n):
    assert len(enumerate_words(n)) == comb(2 * n - 2, n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_multilinear_counts(n):
    alphabet = [f"x{i}" for i in range(n)]
    words = enumerate_words(n, alphabet, Mode.MULTILINEAR)
    assert len(words) == len(set(words)) == factorial(n) * comb(2 * n - 2, n - 1)


def test_enumerate_usage_errors():
    with pytest.raises(UsageError):
        enumerate_words(0)
    with pytest.raises(UsageError):
        enumerate_words(3, ["a", "b"], Mode.MULTILINEAR)
    with pytest.raises(UsageError):
        enumerate_words(2, ["a", "a"])


def test_enumerate_basis():
    got = [format_tree(t) for t in enumerate_basis(3)]
    assert set(got) == set(BRACKETS_U3)
    assert got == [BRACKETS_U3[U3.index(o)] for o in CHAIN_U3]
    assert [format_tree(t) for t in enumerate_basis(2)] == ["(x > x)", "(x < x)"]
    assert len(enumerate_basis(4)) == 20


def test_multi_generator_words_tie_break_on_labels():
    a = DiffWord.from_orders((1, 0), ("a", "b"))
    b = DiffWord.from_orders((1, 0), ("b", "a"))
    assert compare(a, b) is Ordering.GREATER


@settings(max_examples=200)
@given(weight_minus_one_words(max_n=8, alphabet=("a", "b", "c")))
def test_bracketing_ignores_labels(u):
    skeleton = DiffWord.from_orders(u.orders)
    assert standard_bracket(u) == relabel(standard_bracket(skeleton), u.gens)


def test_relabel_round_trip():
    t = parse_tree("((a < b) > c)")
    assert relabel(relabel(t, "xxx"), "abc") == t

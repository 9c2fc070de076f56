import random
from fractions import Fraction

import pytest

from nnov.bracketing import (
    LEAF_X, Leaf, Op, Ordering, compare, enumerate_basis, enumerate_words, factorize, leaf_count,
    prec, standard_bracket, succ,
)
from nnov.errors import DomainError
from nnov.normalform import (
    TreePoly, normal_form, normalize_greedy, normalize_solve, nov_product, tau,
)
from nnov.poly import DiffPoly
from nnov.terms import DiffWord
from nnov.textio import parse_poly, parse_tree

from oracles import tau_brute

x = LEAF_X
EXAMPLE_TREE = prec(prec(x, x), succ(x, succ(x, succ(succ(x, x), x))))


def W(*orders, gens="x"):
    return DiffWord.from_orders(orders, gens)


def D(*pairs):
    return DiffPoly([(W(*o), c) for o, c in pairs])


def T(*pairs):
    return TreePoly([(parse_tree(s), c) for s, c in pairs])


@pytest.mark.parametrize("tree, expected", [
    (prec(x, x), D(((0, 1), 1))),
    (succ(succ(x, x), x), D(((2, 0, 0), 1), ((1, 1, 0), 1))),
    (prec(x, succ(x, x)), D(((0, 2, 0), 1), ((0, 1, 1), 1))),
    (x, D(((0,), 1))),
])
def test_tau_examples(tree, expected):
    assert tau(tree) == expected


def _random_tree(rng, n, alphabet="xyz"):
    if n == 1:
        return Leaf(rng.choice(alphabet))
    k = rng.randint(1, n - 1)
    return (prec if rng.random() < 0.5 else succ)(_random_tree(rng, k, alphabet), _random_tree(rng, n - k, alphabet))


@pytest.mark.parametrize("seed", range(60))
def test_tau_against_brute_force(seed):
    rng = random.Random(seed)
    t = _random_tree(rng, rng.randint(1, 7))
    got = {tuple(u): c for u, c in tau(t).terms.items()}
    assert got == dict(tau_brute(t))
    for u, c in tau(t).terms.items():
        assert u.weight == -1 and len(u) == leaf_count(t) and u.gens == tuple(t.leaves())
        assert isinstance(c, int) and c > 0


def test_tau_is_linear():
    a, b = parse_tree("((x > x) > x)"), parse_tree("(x < (x < x))")
    p = TreePoly([(a, 2), (b, Fraction(-1, 3))])
    assert tau(p) == tau(a).scale(2) + tau(b).scale(Fraction(-1, 3))


@pytest.mark.parametrize("normalize", [normalize_greedy, normalize_solve])
def test_normalize_examples(normalize):
    assert normalize(D(((0, 1), 1))) == TreePoly.monomial(prec(x, x))
    assert normalize(D(((2, 0, 0), 1))) == T(("((x > x) > x)", 1), ("(x > (x > x))", -1))
    assert normalize(tau(EXAMPLE_TREE)) == TreePoly.monomial(EXAMPLE_TREE)
    assert normalize(DiffPoly()) == TreePoly()


@pytest.mark.parametrize("normalize", [normalize_greedy, normalize_solve])
def test_normalize_rejects_wrong_weight(normalize):
    with pytest.raises(DomainError):
        normalize(D(((1, 1), 1)))


@pytest.mark.parametrize("n", range(1, 8))
def test_triangularity_exhaustive(n):
    for u in enumerate_words(n):
        image = tau(standard_bracket(u))
        assert image.coefficient(u) == 1
        fu = factorize(u)
        for v in image.terms:
            if v == u:
                continue
            assert compare(u, v) is Ordering.GREATER
            fv = factorize(v)
            assert fv.rho > fu.rho or (fv.rho == fu.rho and fv.head_order <= fu.head_order)


@pytest.mark.parametrize("n", range(1, 6))
def test_round_trip_exhaustive(n):
    for t in enumerate_basis(n):
        p = tau(t)
        assert normalize_greedy(p) == TreePoly.monomial(t)
        assert normalize_solve(p) == TreePoly.monomial(t)


def _random_treepoly(rng, n, alphabet="x"):
    words = enumerate_words(n)
    terms = []
    for _ in range(rng.randint(1, 6)):
        u = DiffWord.from_orders(rng.choice(words).orders, [rng.choice(alphabet) for _ in range(n)])
        terms.append((standard_bracket(u), Fraction(rng.randint(-9, 9), rng.randint(1, 5))))
    return TreePoly(terms)


@pytest.mark.parametrize("n", [6, 7])
def test_round_trip_random(n):
    rng = random.Random(n)
    for _ in range(100):
        q = _random_treepoly(rng, n, alphabet="xy")
        p = tau(q)
        assert normalize_greedy(p) == q
        assert normalize_solve(p) == q


@pytest.mark.parametrize("seed", range(40))
def test_arbitrary_trees_agree(seed):
    rng = random.Random(1000 + seed)
    t = _random_tree(rng, rng.randint(1, 7), "xy")
    g = normal_form(t)
    assert g == normalize_solve(tau(t))
    assert tau(g) == tau(t)


def test_mixed_classes_split():
    p = D(((0, 1), 1), ((2, 0, 0), 3)) + DiffPoly.monomial(W(1, 0, gens=("a", "b")))
    assert normalize_greedy(p) == normalize_solve(p)
    assert tau(normalize_greedy(p)) == p


def test_products_examples():
    X = TreePoly.monomial(x)
    assert nov_product(X, X, Op.PREC) == TreePoly.monomial(prec(x, x))
    assert nov_product(succ(x, x), x, "<") == TreePoly.monomial(prec(succ(x, x), x))
    assert nov_product(x, prec(x, x), Op.SUCC) == TreePoly.monomial(prec(succ(x, x), x))
    assert (X << X) == TreePoly.monomial(prec(x, x))


def test_parse_poly_word_example_equals_tau():
    assert parse_poly("x'' x x + x' x' x") == tau(succ(succ(x, x), x))


@pytest.mark.parametrize("n", range(1, 8))
def test_tau_basis_rank_full(n):
    from nnov import linalg
    words = enumerate_words(n)
    index = {u: i for i, u in enumerate(words)}
    rows = [{index[w]: c for w, c in tau(standard_bracket(u)).terms.items()} for u in words]
    assert linalg.rank(linalg.RationalMatrix.from_rows(rows, len(words))) == len(words)

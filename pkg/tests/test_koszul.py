import sympy
import pytest

from nnov import linalg
from nnov.koszul import (
    DualOp, LEAF, base_relations, catalan, dual_dim, dual_relations, enumerate_dual, extend_relation,
    format_dual, quotient_functionals, _matrix, _reduced_relations,
)
from nnov.errors import UsageError


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 8), (4, 40), (5, 224)])
def test_enumerate_dual(n, count):
    mons = enumerate_dual(n)
    assert len(mons) == len(set(mons)) == count == catalan(n - 1) * 2 ** (n - 1)


def test_arity_two_monomials():
    assert [format_dual(t) for t in enumerate_dual(2)] == ["(x1 -| x2)", "(x1 |- x2)"]


def test_base_relations_transcription():
    rels = base_relations()
    assert len(rels) == 6
    first = rels[0]
    assert [(format_dual(t), c) for t, c in first.items()] == [("(x1 -| (x2 -| x3))", 1)]
    touched = {t for r in rels for t in r.terms}
    assert touched == set(enumerate_dual(3))


def test_dual_dim_three_by_hand_matrix():
    # the six relations over the eight arity-3 monomials, written out directly:
    # columns: LL_r, LR_r, RL_r, RR_r (x1 o (x2 o x3)), then LL_l, LR_l, RL_l, RR_l ((x1 o x2) o x3)
    rows = [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0, -1, 0],
        [0, 1, 0, -1, 0, 0, 0, 0],
        [0, 1, 0, 0, -1, 0, 0, 0],
        [0, 1, 0, 0, 0, -1, 0, 0],
    ]
    assert 8 - sympy.Matrix(rows).rank() == 2
    assert dual_dim(3) == 2


@pytest.mark.parametrize("n, dim", [(1, 1), (2, 2), (3, 2), (4, 0), (5, 0), (6, 0)])
def test_dual_dims(n, dim):
    assert dual_dim(n) == dim


def test_arity_four_rank_is_forty():
    rels = dual_relations(4)
    assert linalg.rank(_matrix(rels, 4)) == 40


def test_relations_need_arity_three():
    with pytest.raises(UsageError):
        dual_relations(2)


def test_surviving_arity_three_classes():
    fs = quotient_functionals(3)
    supports = sorted(sorted(format_dual(t) for t in f) for f in fs)
    assert supports == sorted([
        ["((x1 |- x2) -| x3)", "(x1 |- (x2 -| x3))"],
        ["((x1 -| x2) -| x3)", "((x1 -| x2) |- x3)", "(x1 -| (x2 |- x3))", "(x1 |- (x2 |- x3))"],
    ])
    for f in fs:
        assert len(set(f.values())) == 1


def test_generation_is_consistent():
    # extending a reduced basis spans the same arity-4 space as extending the raw relations
    raw = _matrix(dual_relations(4), 4)
    reduced = _matrix([r for rel in _reduced_relations(3) for r in extend_relation(rel)], 4)
    both = linalg.RationalMatrix.from_rows(raw.rows + reduced.rows, 40)
    assert linalg.rank(raw) == linalg.rank(reduced) == linalg.rank(both)


def test_unicode_format():
    t = enumerate_dual(2)[0]
    assert format_dual(t, unicode=True) == "(x1 ⊣ x2)"
    assert DualOp.RIGHT.symbol == "⊢"

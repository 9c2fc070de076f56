"""Exact-rational linear combinations and the free differential associative algebra.

Coefficients are ``int`` or :class:`fractions.Fraction`; integral fractions are
stored as plain ints so the common case (tau-expansions) stays in fast integer
arithmetic.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Callable, Generic, Hashable, Iterable, Iterator, Mapping, Sequence, TypeVar, Union

from .bracketing import word_key
from .errors import UsageError
from .terms import DiffLetter, DiffWord

Rational = Union[int, Fraction]
K = TypeVar("K", bound=Hashable)


def as_rational(c) -> Rational:
    if isinstance(c, bool) or not isinstance(c, _RationalABC):
        raise UsageError(f"coefficient {c!r} is not an exact rational")
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LinearCombination(Generic[K]):
    """Immutable finite map atom -> nonzero rational, with vector-space operators."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, Rational] | Iterable[tuple[K, Rational]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, 0) + as_rational(c)
        self._terms = {k: as_rational(c) for k, c in acc.items() if c}

    @classmethod
    def _from_clean(cls, terms: dict):
        # terms already pruned and coerced
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def monomial(cls, atom: K, coeff: Rational = 1):
        return cls({atom: coeff})

    @staticmethod
    def sort_key(atom) -> tuple:
        raise NotImplementedError

    @property
    def terms(self) -> Mapping[K, Rational]:
        return dict(self._terms)

    def items(self) -> list[tuple[K, Rational]]:
        """Terms in canonical order (greatest atom first)."""
        return sorted(self._terms.items(), key=lambda kv: self.sort_key(kv[0]))

    def atoms(self) -> list[K]:
        return [k for k, _ in self.items()]

    def coefficient(self, atom: K) -> Rational:
        return self._terms.get(atom, 0)

    def __iter__(self) -> Iterator[K]:
        return iter(self.atoms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, atom) -> bool:
        return atom in self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, LinearCombination):
            return type(self) is type(other) and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _combine(self, other, sign: int):
        if not isinstance(other, type(self)):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + sign * c
            if v:
                out[k] = as_rational(v)
            else:
                out.pop(k, None)
        return self._from_clean(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def scale(self, c: Rational):
        c = as_rational(c)
        if not c:
            return self._from_clean({})
        return self._from_clean({k: as_rational(v * c) for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def map_atoms(self, fn: Callable[[K], K]):
        out: dict = defaultdict(int)
        for k, c in self._terms.items():
            out[fn(k)] += c
        return self._from_clean({k: as_rational(c) for k, c in out.items() if c})

    def __repr__(self) -> str:
        inner = ", ".join(f"{k!r}: {c}" for k, c in self.items())
        return f"{type(self).__name__}({{{inner}}})"


def diffword_sort_key(u: DiffWord) -> tuple:
    """Greatest first: degree descending, then the monomial order on weight -1 words."""
    w = u.weight
    if w == -1:
        return (-len(u), 0, word_key(u))
    # words outside the weight -1 component only show up in user input and d(...)
    return (-len(u), 1, (-w, tuple(-o for o in u.orders), u.gens))


class DiffPoly(LinearCombination[DiffWord]):
    """Element of the free associative algebra with derivation."""

    __slots__ = ()
    sort_key = staticmethod(diffword_sort_key)

    def derive(self) -> "DiffPoly":
        return derive(self)

    def __matmul__(self, other):
        if isinstance(other, DiffPoly):
            return concat(self, other)
        return NotImplemented

    def weights(self) -> set[int]:
        return {u.weight for u in self._terms}

    def degrees(self) -> set[int]:
        return {len(u) for u in self._terms}


def linear_combine(scalars: Sequence[Rational], polys: Sequence[LinearCombination]):
    if len(scalars) != len(polys):
        raise UsageError(f"{len(scalars)} scalars for {len(polys)} polynomials")
    if not polys:
        return DiffPoly()
    out = polys[0].scale(scalars[0])
    for s, p in zip(scalars[1:], polys[1:]):
        out = out + p.scale(s)
    return out


def derive_word(u: DiffWord) -> dict[DiffWord, int]:
    out: dict[DiffWord, int] = defaultdict(int)
    for j in range(len(u)):
        out[u.with_order(j, u[j].order + 1)] += 1
    return out


def derive(p: DiffPoly) -> DiffPoly:
    """Leibniz extension of d: each summand raises exactly one letter's order."""
    out: dict = defaultdict(int)
    for u, c in p._terms.items():
        for v, m in derive_word(u).items():
            out[v] += m * c
    return DiffPoly._from_clean({k: as_rational(c) for k, c in out.items() if c})


def concat(p: DiffPoly, q: DiffPoly) -> DiffPoly:
    out: dict = defaultdict(int)
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            out[u + v] += a * b
    return DiffPoly._from_clean({k: as_rational(c) for k, c in out.items() if c})


def word(*letters: tuple[str, int] | DiffLetter) -> DiffPoly:
    return DiffPoly.monomial(DiffWord(letters))

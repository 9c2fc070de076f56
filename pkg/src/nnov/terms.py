"""Differential letters and words of the free associative algebra with derivation.

A letter ``x^(n)`` is a generator name together with its derivation order.
Generators are plain interned strings, so equality is cheap and the default
alphabet is just ``("x",)``.

Weights follow ``wt(x) = -1``, ``wt(d(u)) = wt(u) + 1``, ``wt(uv) = wt(u) + wt(v)``,
hence ``weight(u) = sum(orders) - degree(u)``.
"""

from __future__ import annotations

import sys
from typing import Iterable, NamedTuple

DEFAULT_GENERATOR = "x"


def intern_generator(name: str) -> str:
    return sys.intern(name)


class DiffLetter(NamedTuple):
    gen: str
    order: int

    def derived(self, times: int = 1) -> "DiffLetter":
        return DiffLetter(self.gen, self.order + times)

    def __repr__(self) -> str:
        return f"{self.gen}^({self.order})"


class DiffWord(tuple):
    """Nonempty immutable sequence of :class:`DiffLetter`.

    Subclassing ``tuple`` gives structural equality and hashing at C speed,
    which matters because words key every polynomial map.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[DiffLetter | tuple[str, int]]):
        letters = tuple(
            l if isinstance(l, DiffLetter) else DiffLetter(intern_generator(l[0]), int(l[1]))
            for l in letters
        )
        if not letters:
            raise ValueError("a DiffWord needs at least one letter")
        for l in letters:
            if l.order < 0:
                raise ValueError(f"negative derivation order in {l!r}")
        return super().__new__(cls, letters)

    @classmethod
    def from_orders(cls, orders: Iterable[int], gens: Iterable[str] | str = DEFAULT_GENERATOR) -> "DiffWord":
        orders = tuple(orders)
        if isinstance(gens, str):
            gens = (gens,) * len(orders)
        else:
            gens = tuple(gens)
            if len(gens) != len(orders):
                raise ValueError("gens and orders differ in length")
        return cls(DiffLetter(intern_generator(g), o) for g, o in zip(gens, orders))

    @classmethod
    def _trusted(cls, letters: tuple) -> "DiffWord":
        # skips validation; callers guarantee a nonempty tuple of DiffLetter
        return tuple.__new__(cls, letters)

    @property
    def letters(self) -> tuple[DiffLetter, ...]:
        return tuple(self)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(l.order for l in self)

    @property
    def gens(self) -> tuple[str, ...]:
        return tuple(l.gen for l in self)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(l.order for l in self) - len(self)

    def __add__(self, other):
        if isinstance(other, DiffWord):
            return DiffWord._trusted(tuple.__add__(self, other))
        return NotImplemented

    def __getitem__(self, item):
        got = tuple.__getitem__(self, item)
        if isinstance(item, slice):
            return DiffWord._trusted(got) if got else got
        return got

    def with_order(self, position: int, order: int) -> "DiffWord":
        l = self[position]
        return DiffWord._trusted(
            tuple.__getitem__(self, slice(None, position))
            + (DiffLetter(l.gen, order),)
            + tuple.__getitem__(self, slice(position + 1, None))
        )

    def __repr__(self) -> str:
        return "DiffWord(" + " ".join(map(repr, self)) + ")"


def word_weight(u: DiffWord) -> int:
    return u.weight


def word_degree(u: DiffWord) -> int:
    return len(u)


def compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative ints summing to ``total`` (lex descending)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest

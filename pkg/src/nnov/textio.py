"""Text grammar and JSON schema for words, trees and polynomials.

Grammar::

    word   := letter (WS letter)*
    letter := IDENT "'"* | IDENT "^(" UINT ")"
    tree   := IDENT | "(" tree op tree ")"          op := "<" | ">" | "≺" | "≻"
    poly   := [sign] term (sign term)*             term := [coef "*"] atom
    coef   := UINT | UINT "/" UINT

IDENT is ``[a-z][a-zA-Z0-9_]*``. Whitespace around tree and poly tokens is
optional. The empty string and ``0`` denote the zero polynomial. Error
positions are byte offsets into the UTF-8 encoded input.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable, Union

from .bracketing import Leaf, Node, Op, TreeMon, leaf_count
from .errors import ParseError, UsageError
from .normalform import TreePoly
from .poly import DiffPoly, LinearCombination, Rational, as_rational
from .terms import DiffLetter, DiffWord, intern_generator

PRIME_LIMIT = 3
_OPS = {"<": Op.PREC, ">": Op.SUCC, "≺": Op.PREC, "≻": Op.SUCC}

Value = Union[DiffWord, TreeMon, DiffPoly, TreePoly]


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def skip_ws(self) -> bool:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.pos > start

    def error(self, expected: str, at: int | None = None) -> ParseError:
        at = self.pos if at is None else at
        found = repr(self.text[at]) if at < len(self.text) else "end of input"
        return ParseError(self.text, len(self.text[:at].encode("utf-8")), expected, found)

    def expect(self, token: str) -> None:
        if not self.text.startswith(token, self.pos):
            raise self.error(repr(token))
        self.pos += len(token)

    def ident(self) -> str:
        c = self.peek()
        if not ("a" <= c <= "z"):
            raise self.error("generator name")
        start = self.pos
        self.pos += 1
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c.isascii() and (c.isalnum() or c == "_"):
                self.pos += 1
            else:
                break
        return intern_generator(self.text[start:self.pos])

    def uint(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            raise self.error("unsigned integer")
        return int(self.text[start:self.pos])

    def finish(self) -> None:
        self.skip_ws()
        if not self.at_end():
            raise self.error("end of input")


# --- words ---------------------------------------------------------------------


def _letter(cur: _Cursor) -> DiffLetter:
    gen = cur.ident()
    if cur.text.startswith("^(", cur.pos):
        cur.pos += 2
        order = cur.uint()
        cur.expect(")")
        return DiffLetter(gen, order)
    order = 0
    while cur.peek() == "'":
        order += 1
        cur.pos += 1
    return DiffLetter(gen, order)


def _word(cur: _Cursor, stop: str = "") -> DiffWord:
    letters = [_letter(cur)]
    while True:
        mark = cur.pos
        had_ws = cur.skip_ws()
        c = cur.peek()
        if not c or c in stop:
            cur.pos = mark
            break
        if not had_ws:
            raise cur.error("whitespace between letters")
        letters.append(_letter(cur))
    return DiffWord._trusted(tuple(letters))


def parse_word(text: str) -> DiffWord:
    cur = _Cursor(text)
    cur.skip_ws()
    w = _word(cur)
    cur.finish()
    return w


def format_letter(l: DiffLetter) -> str:
    if l.order <= PRIME_LIMIT:
        return l.gen + "'" * l.order
    return f"{l.gen}^({l.order})"


def format_word(w: DiffWord) -> str:
    return " ".join(map(format_letter, w))


# --- trees -----------------------------------------------------------------------


def _tree(cur: _Cursor) -> TreeMon:
    if cur.peek() != "(":
        if "a" <= cur.peek() <= "z":
            return Leaf(cur.ident())
        raise cur.error("'(' or generator name")
    cur.pos += 1
    cur.skip_ws()
    left = _tree(cur)
    cur.skip_ws()
    op = _OPS.get(cur.peek())
    if op is None:
        raise cur.error("operation '<' or '>'")
    cur.pos += 1
    cur.skip_ws()
    right = _tree(cur)
    cur.skip_ws()
    cur.expect(")")
    return Node(op, left, right)


def parse_tree(text: str) -> TreeMon:
    cur = _Cursor(text)
    cur.skip_ws()
    t = _tree(cur)
    cur.finish()
    return t


def format_tree(t: TreeMon, unicode: bool = False) -> str:
    if isinstance(t, Leaf):
        return t.gen
    op = t.op.symbol if unicode else t.op.value
    return f"({format_tree(t.left, unicode)} {op} {format_tree(t.right, unicode)})"


# --- polynomials -------------------------------------------------------------------


def parse_poly(text: str, kind: str = "word") -> DiffPoly | TreePoly:
    """Parse a signed sum of terms; ``kind`` is ``"word"`` (DiffPoly) or ``"tree"`` (TreePoly)."""
    if kind not in ("word", "tree"):
        raise UsageError(f"unknown polynomial kind {kind!r}")
    cls = DiffPoly if kind == "word" else TreePoly
    if text.strip() in ("", "0"):
        return cls()
    cur = _Cursor(text)
    terms: list[tuple[Any, Rational]] = []
    cur.skip_ws()
    sign = 1
    if cur.peek() in "+-":
        sign = -1 if cur.peek() == "-" else 1
        cur.pos += 1
        cur.skip_ws()
    while True:
        coeff: Rational = 1
        if cur.peek().isdigit():
            num = cur.uint()
            coeff = num
            if cur.peek() == "/":
                slash = cur.pos
                cur.pos += 1
                den = cur.uint()
                if den == 0:
                    raise cur.error("nonzero denominator", at=slash + 1)
                coeff = Fraction(num, den)
            cur.skip_ws()
            cur.expect("*")
            cur.skip_ws()
        atom = _word(cur, stop="+-") if kind == "word" else _tree(cur)
        terms.append((atom, sign * coeff))
        cur.skip_ws()
        if cur.at_end():
            break
        if cur.peek() not in "+-":
            raise cur.error("'+', '-' or end of input")
        sign = -1 if cur.peek() == "-" else 1
        cur.pos += 1
        cur.skip_ws()
    return cls(terms)


def format_coeff(c: Rational) -> str:
    """Exact ``p/q`` string; the JSON form."""
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _format_magnitude(c: Rational) -> str:
    c = as_rational(c)
    return str(c)


def format_poly(p: LinearCombination, unicode: bool = False) -> str:
    fmt = _atom_formatter(p, unicode)
    parts = []
    for i, (atom, c) in enumerate(p.items()):
        mag = abs(c)
        body = fmt(atom) if mag == 1 else f"{_format_magnitude(mag)} * {fmt(atom)}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _atom_formatter(p: LinearCombination, unicode: bool) -> Callable[[Any], str]:
    if isinstance(p, DiffPoly):
        return format_word
    if isinstance(p, TreePoly):
        return lambda t: format_tree(t, unicode)
    raise UsageError(f"cannot format {type(p).__name__}")


def format_value(v: Value, unicode: bool = False) -> str:
    if isinstance(v, DiffWord):
        return format_word(v)
    if isinstance(v, (Leaf, Node)):
        return format_tree(v, unicode)
    return format_poly(v, unicode)


# --- JSON ----------------------------------------------------------------------------


def _degree(atoms, size) -> int | None:
    degrees = {size(a) for a in atoms}
    return degrees.pop() if len(degrees) == 1 else None


def to_json_obj(v: Value) -> dict:
    """``{"kind", "degree", "terms": [{"coeff": "p/q", "atom": text}]}``; coefficients are always strings."""
    if isinstance(v, DiffWord):
        return {"kind": "word", "degree": len(v), "terms": [{"coeff": "1/1", "atom": format_word(v)}]}
    if isinstance(v, (Leaf, Node)):
        return {"kind": "tree", "degree": leaf_count(v), "terms": [{"coeff": "1/1", "atom": format_tree(v)}]}
    if isinstance(v, DiffPoly):
        kind, fmt, size = "diffpoly", format_word, len
    elif isinstance(v, TreePoly):
        kind, fmt, size = "treepoly", format_tree, leaf_count
    else:
        raise UsageError(f"cannot serialize {type(v).__name__}")
    items = v.items()
    return {
        "kind": kind,
        "degree": _degree([a for a, _ in items], size),
        "terms": [{"coeff": format_coeff(c), "atom": fmt(a)} for a, c in items],
    }


def parse_coeff(s: str) -> Rational:
    try:
        return as_rational(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(s, 0, "coefficient p/q", repr(s)) from exc


def from_json_obj(obj: dict) -> Value:
    kind = obj.get("kind")
    terms = obj.get("terms", [])
    if kind == "word":
        return parse_word(terms[0]["atom"])
    if kind == "tree":
        return parse_tree(terms[0]["atom"])
    if kind == "diffpoly":
        return DiffPoly([(parse_word(t["atom"]), parse_coeff(t["coeff"])) for t in terms])
    if kind == "treepoly":
        return TreePoly([(parse_tree(t["atom"]), parse_coeff(t["coeff"])) for t in terms])
    raise UsageError(f"unknown JSON kind {kind!r}")


def dumps(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True)

"""Verification suites producing deterministic pass/fail reports.

Each suite walks a finite, deterministic list of items. With ``jobs > 1``
items go through an order-preserving process pool, so the report is the same
for every parallelism width. Randomized suites seed each item from
``(seed, item index)``.
"""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, Sequence

from . import koszul, linalg
from .bracketing import (
    Mode, Op, Ordering, TreeMon, bracket_skeleton, compare, count_formula, enumerate_skeletons,
    enumerate_words, factorize, relabel, standard_bracket,
)
from .errors import NovError, UsageError
from .normalform import TreePoly, nov_product, tau, tau_skeleton
from .poly import DiffPoly
from .terms import DiffWord
from .textio import format_tree, format_word

log = logging.getLogger(__name__)

EXHAUSTIVE_DEGREE = 7
MAX_DEGREE = 10
JOBS_ENV = "NNOV_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class Report:
    suite: str
    params: dict[str, Any]
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    millis: float | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self, timing: bool = False) -> dict[str, Any]:
        # wall time is left out unless asked for, so reports stay byte-identical
        return {
            "kind": "report",
            "degree": self.params.get("degree"),
            "terms": [],
            "suite": self.suite,
            "params": self.params,
            "checked": self.checked,
            "failures": self.failures,
            "passed": self.passed,
            "details": self.details,
            "millis": round(self.millis, 3) if timing and self.millis is not None else None,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{status} {self.suite} ({params}): {self.checked} checked, {len(self.failures)} failures"


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def _check_degree(n: int, warn: bool = True) -> None:
    if not isinstance(n, int) or n < 1:
        raise UsageError("degree must be a positive integer")
    if n > MAX_DEGREE:
        raise UsageError(f"degree {n} exceeds the hard cap of {MAX_DEGREE}")
    if warn and n > EXHAUSTIVE_DEGREE:
        log.warning("degree %d is beyond the exhaustive range; expect heavy memory use", n)


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.millis = (time.perf_counter() - start) * 1000
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# --- triangularity ---------------------------------------------------------------


def _triangularity_item(skel: tuple[int, ...]) -> list[dict]:
    u = DiffWord.from_orders(skel)
    fu = factorize(u)
    expansion = tau(standard_bracket(u))
    failures = []
    if expansion.coefficient(u) != 1:
        failures.append({"input": format_word(u), "reason": f"coefficient of u is {expansion.coefficient(u)}"})
    for v, c in expansion.items():
        if v == u:
            continue
        if compare(u, v) is not Ordering.GREATER:
            failures.append({"input": format_word(u), "witness": format_word(v), "reason": "not smaller than u"})
            continue
        fv = factorize(v)
        if not (fv.rho > fu.rho or (fv.rho == fu.rho and fv.head_order <= fu.head_order)):
            failures.append({"input": format_word(u), "witness": format_word(v), "reason": "head position form"})
    return failures


@_timed
def check_triangularity(n: int, jobs: int = 1) -> Report:
    """tau([u]) = u + (strictly smaller words) for every u of degree n, with the head-position form."""
    _check_degree(n)
    skels = enumerate_skeletons(n)
    report = Report("triangularity", {"degree": n}, checked=len(skels))
    for fails in _pmap(_triangularity_item, skels, jobs):
        report.failures.extend(fails)
    return report


# --- basis rank ----------------------------------------------------------------------


@_timed
def check_basis_rank(n: int, jobs: int = 1) -> Report:
    """The tau matrix over U_n is unitriangular in the monomial order and has full rank."""
    _check_degree(n)
    words = enumerate_words(n)
    index = {w: i for i, w in enumerate(words)}
    rows = [{index[w]: c for w, c in tau(standard_bracket(u)).terms.items()} for u in words]
    m = linalg.RationalMatrix.from_rows(rows, len(words))
    r = linalg.rank(m)
    tri = linalg.is_unitriangular(m, list(range(len(words))))
    report = Report("basis-rank", {"degree": n}, checked=len(words), details={"rank": r, "size": len(words),
                                                                                "unitriangular": tri})
    if r != len(words):
        report.failures.append({"input": str(n), "reason": f"rank {r} < {len(words)}"})
    if not tri:
        report.failures.append({"input": str(n), "reason": "tau matrix is not unitriangular in compare order"})
    return report


# --- dimensions ------------------------------------------------------------------------


@_timed
def check_dims(max_n: int, mode: Mode | str = Mode.SINGLE) -> Report:
    """Basis counts against C(2n-2, n-1), or n! C(2n-2, n-1) for multilinear words."""
    _check_degree(max_n, warn=False)
    mode = Mode(mode)
    report = Report("dims", {"max_degree": max_n, "mode": mode.value})
    table = []
    for n in range(1, max_n + 1):
        alphabet = ("x",) if mode is Mode.SINGLE else tuple(f"x{i}" for i in range(1, n + 1))
        count = len(enumerate_words(n, alphabet, mode))
        formula = count_formula(n, mode)
        table.append({"n": n, "count": count, "formula": formula})
        report.checked += 1
        if count != formula:
            report.failures.append({"input": str(n), "reason": f"{count} words, formula says {formula}"})
    report.details["table"] = table
    return report


# --- identities ------------------------------------------------------------------------


def identity_sides(a, b, c, product: Callable) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
    """Both sides of ``a>(b<c) = (a>b)<c`` and ``(a<b)>c - a>(b>c) = a<(b>c) - (a<b)<c``."""
    P, S = Op.PREC, Op.SUCC
    a_prec_b = product(a, b, P)
    b_succ_c = product(b, c, S)
    eq1 = (product(a, product(b, c, P), S), product(product(a, b, S), c, P))
    eq2 = (
        product(a_prec_b, c, S) - product(a, b_succ_c, S),
        product(a, b_succ_c, P) - product(a_prec_b, c, P),
    )
    return eq1, eq2


def _tau_product(x: DiffPoly, y: DiffPoly, op: Op) -> DiffPoly:
    return x @ y.derive() if op is Op.PREC else x.derive() @ y


def symbolic_identities(gens: Sequence[str] = ("a", "b", "c")) -> dict[str, tuple[DiffPoly, DiffPoly]]:
    """Both identities on three distinct generators, expanded in the differential algebra."""
    a, b, c = (DiffPoly.monomial(DiffWord([(g, 0)])) for g in gens)
    eq1, eq2 = identity_sides(a, b, c, _tau_product)
    return {"eq1": eq1, "eq2": eq2}


@lru_cache(maxsize=None)
def _skeletons(d: int) -> tuple:
    return tuple(enumerate_skeletons(d))


def random_basis_tree(rng: random.Random, max_degree: int, alphabet: Sequence[str] = ("x",)) -> TreeMon:
    d = rng.randint(1, max_degree)
    skel = rng.choice(_skeletons(d))
    gens = [rng.choice(alphabet) for _ in range(d)]
    return relabel(bracket_skeleton(skel), gens)


def _identity_trial(args: tuple[int, int, int, tuple[str, ...]]) -> list[dict]:
    seed, index, n, alphabet = args
    rng = random.Random(f"identities:{seed}:{index}")
    trees = [random_basis_tree(rng, n, alphabet) for _ in range(3)]
    a, b, c = (TreePoly.monomial(t) for t in trees)
    failures = []
    for name, (lhs, rhs) in zip(("eq1", "eq2"), identity_sides(a, b, c, nov_product)):
        if lhs != rhs:
            failures.append({"input": [format_tree(t) for t in trees], "identity": name, "trial": index})
    return failures


@_timed
def check_identities(n: int, trials: int = 1000, seed: int = 42, jobs: int = 1,
                     alphabet: Sequence[str] = ("x",)) -> Report:
    """Both defining identities: symbolically through tau, then on random basis triples of degree <= n."""
    _check_degree(n)
    if trials < 1:
        raise UsageError("trials must be at least 1")
    alphabet = tuple(alphabet)
    report = Report("identities", {"degree": n, "trials": trials, "seed": seed})
    for name, (lhs, rhs) in symbolic_identities().items():
        report.checked += 1
        if lhs != rhs:
            report.failures.append({"input": ["a", "b", "c"], "identity": name, "reason": "symbolic expansion differs"})
    leaf_trees = [standard_bracket(DiffWord([(g, 0)])) for g in "abc"]
    leaves = [TreePoly.monomial(t) for t in leaf_trees]
    for name, (lhs, rhs) in zip(("eq1", "eq2"), identity_sides(*leaves, nov_product)):
        report.checked += 1
        if lhs != rhs:
            report.failures.append({"input": [format_tree(t) for t in leaf_trees], "identity": name,
                                    "reason": "normal forms differ"})
    items = [(seed, i, n, alphabet) for i in range(trials)]
    for fails in _pmap(_identity_trial, items, jobs):
        report.failures.extend(fails)
    report.checked += trials
    return report


# --- comparator ---------------------------------------------------------------------------


def _comparator_row(args: tuple[int, int]) -> list[dict]:
    n, i = args
    words = _words(n)
    u = words[i]
    failures = []
    for v in words[i + 1:]:
        try:
            forward, backward = compare(u, v), compare(v, u)
        except NovError as exc:
            failures.append({"input": [format_word(u), format_word(v)], "reason": str(exc)})
            continue
        if forward is backward:
            failures.append({"input": [format_word(u), format_word(v)], "reason": "not antisymmetric"})
        elif forward is not Ordering.GREATER:
            failures.append({"input": [format_word(u), format_word(v)], "reason": "disagrees with enumeration order"})
    return failures


@lru_cache(maxsize=None)
def _words(n: int) -> tuple[DiffWord, ...]:
    return tuple(enumerate_words(n))


@_timed
def check_comparator(n: int, samples: int = 10_000, seed: int = 0, jobs: int = 1) -> Report:
    """Trichotomy and antisymmetry on all pairs of U_n, transitivity on sampled triples."""
    _check_degree(n)
    words = _words(n)
    report = Report("comparator", {"degree": n, "samples": samples, "seed": seed}, checked=len(words))
    for fails in _pmap(_comparator_row, [(n, i) for i in range(len(words))], jobs):
        report.failures.extend(fails)
    rng = random.Random(f"comparator:{seed}")
    triples = 0
    if len(words) >= 3:
        for _ in range(samples):
            a, b, c = rng.sample(words, 3)
            if compare(a, b) is Ordering.LESS:
                a, b = b, a
            if compare(b, c) is Ordering.GREATER:
                triples += 1
                if compare(a, c) is not Ordering.GREATER:
                    report.failures.append({"input": [format_word(a), format_word(b), format_word(c)],
                                            "reason": "not transitive"})
    report.details = {"pairs": len(words) * (len(words) - 1) // 2, "transitivity_triples": triples,
                      "chain": [format_word(w) for w in words] if len(words) <= 20 else None}
    return report


# --- Koszul dual ------------------------------------------------------------------------------


@_timed
def check_koszul(max_n: int = 5) -> Report:
    """Dual dimensions for arities 1..max_n; every arity from 4 on must vanish."""
    if max_n < 3:
        raise UsageError("koszul-dual needs max degree >= 3")
    if max_n > 6:
        raise UsageError("the dual operad is only checked up to arity 6")
    report = Report("koszul-dual", {"max_degree": max_n})
    dims = {}
    for n in range(1, max_n + 1):
        dims[n] = koszul.dual_dim(n)
        report.checked += 1
        if n >= 4 and dims[n] != 0:
            report.failures.append({"input": str(n), "reason": f"dual dimension {dims[n]} != 0"})
    report.details["dims"] = {str(k): v for k, v in dims.items()}
    return report


SUITES = {
    "triangularity": check_triangularity,
    "basis-rank": check_basis_rank,
    "identities": check_identities,
    "comparator": check_comparator,
    "koszul-dual": check_koszul,
    "dims": check_dims,
}

"""Command-line interface.

Exit codes: 0 success, 1 verification failure (or normalizers disagreeing),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import verify
from .bracketing import Mode, compare, count_formula, enumerate_words, factorize, standard_bracket
from .errors import InvariantViolation, NovError, ParseError
from .normalform import normalize_greedy, normalize_solve, tau
from .textio import (
    dumps, format_poly, format_tree, format_word, parse_poly, parse_tree, parse_word, to_json_obj,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    p.add_argument("--unicode", action="store_true", help="print trees with ≺/≻ instead of </>")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="nnov", description="Free noncommutative Novikov algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="standard bracketing of a weight -1 word")
    p.add_argument("word")

    p = sub.add_parser("factor", parents=[common], help="head position, head order and blocks of a word")
    p.add_argument("word")

    p = sub.add_parser("expand", parents=[common], help="tau-image of a tree polynomial")
    p.add_argument("treepoly")

    p = sub.add_parser("normalize", parents=[common], help="rewrite a weight -1 polynomial in the basis")
    p.add_argument("diffpoly")
    p.add_argument("--method", choices=("greedy", "solve", "both"), default="greedy")

    p = sub.add_parser("basis", parents=[common], help="list U_n and [U_n]")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--alphabet", default="x", help="comma-separated generator names")
    p.add_argument("--multilinear", action="store_true")

    p = sub.add_parser("dims", parents=[common], help="basis sizes against the closed formula")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--multilinear", action="store_true")

    p = sub.add_parser("order", parents=[common], help="compare two weight -1 words")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--degree", "--max-degree", dest="degree", type=int, default=None)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes (default ${verify.JOBS_ENV} or 1)")
    p.add_argument("--multilinear", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON reports")
    return parser


def _emit(args, text: str, obj: dict) -> None:
    print(dumps(obj) if args.format == "json" else text)


def _tree_text(args, t) -> str:
    return format_tree(t, args.unicode)


def cmd_bracket(args) -> int:
    u = parse_word(args.word)
    t = standard_bracket(u)
    _emit(args, _tree_text(args, t), {**to_json_obj(t), "input": format_word(u)})
    return EXIT_OK


def cmd_factor(args) -> int:
    u = parse_word(args.word)
    f = factorize(u)
    lines = [f"rho = {f.rho}", f"head order = {f.head_order}",
             f"prefix blocks = {[format_word(b) for b in f.prefix_blocks]}",
             f"suffix blocks = {[format_word(b) for b in f.suffix_blocks]}"]
    obj = {"kind": "factorization", "degree": len(u), "terms": [], "input": format_word(u),
           "rho": f.rho, "head_order": f.head_order,
           "prefix_blocks": [format_word(b) for b in f.prefix_blocks],
           "suffix_blocks": [format_word(b) for b in f.suffix_blocks]}
    _emit(args, "\n".join(lines), obj)
    return EXIT_OK


def cmd_expand(args) -> int:
    p = tau(parse_poly(args.treepoly, "tree"))
    _emit(args, format_poly(p), to_json_obj(p))
    return EXIT_OK


def cmd_normalize(args) -> int:
    p = parse_poly(args.diffpoly, "word")
    if args.method == "greedy":
        q = normalize_greedy(p)
    elif args.method == "solve":
        q = normalize_solve(p)
    else:
        q, q2 = normalize_greedy(p), normalize_solve(p)
        if q != q2:
            text = f"greedy: {format_poly(q, args.unicode)}\nsolve:  {format_poly(q2, args.unicode)}"
            obj = {"kind": "disagreement", "degree": None, "terms": [],
                   "greedy": to_json_obj(q), "solve": to_json_obj(q2)}
            _emit(args, text, obj)
            return EXIT_FAIL
    _emit(args, format_poly(q, args.unicode), to_json_obj(q))
    return EXIT_OK


def cmd_basis(args) -> int:
    alphabet = [g.strip() for g in args.alphabet.split(",") if g.strip()]
    mode = Mode.MULTILINEAR if args.multilinear else Mode.SINGLE
    words = enumerate_words(args.degree, alphabet, mode)
    rows = [(u, standard_bracket(u)) for u in words]
    text = "\n".join(f"{format_word(u)}\t{_tree_text(args, t)}" for u, t in rows)
    obj = {"kind": "basis", "degree": args.degree,
           "terms": [{"coeff": "1/1", "atom": format_tree(t), "word": format_word(u)} for u, t in rows]}
    _emit(args, text, obj)
    return EXIT_OK


def cmd_dims(args) -> int:
    report = verify.check_dims(args.max_degree, Mode.MULTILINEAR if args.multilinear else Mode.SINGLE)
    lines = ["n\tcount\tformula"] + [f"{r['n']}\t{r['count']}\t{r['formula']}" for r in report.details["table"]]
    _emit(args, "\n".join(lines), report.to_json_obj())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_order(args) -> int:
    u, v = parse_word(args.left), parse_word(args.right)
    result = compare(u, v)
    sym = ">" if result.value > 0 else "<"
    obj = {"kind": "order", "degree": len(u) if len(u) == len(v) else None, "terms": [],
           "left": format_word(u), "right": format_word(v), "result": result.name}
    _emit(args, f"{format_word(u)} {sym} {format_word(v)}", obj)
    return EXIT_OK


_DEFAULT_DEGREE = {"triangularity": 7, "basis-rank": 7, "identities": 4, "comparator": 6,
                   "koszul-dual": 5, "dims": 10}


def cmd_verify(args) -> int:
    jobs = args.jobs if args.jobs is not None else verify.default_jobs()
    n = args.degree if args.degree is not None else _DEFAULT_DEGREE[args.suite]
    if args.suite == "triangularity":
        report = verify.check_triangularity(n, jobs=jobs)
    elif args.suite == "basis-rank":
        report = verify.check_basis_rank(n, jobs=jobs)
    elif args.suite == "identities":
        report = verify.check_identities(n, trials=args.trials, seed=args.seed, jobs=jobs)
    elif args.suite == "comparator":
        report = verify.check_comparator(n, seed=args.seed, jobs=jobs)
    elif args.suite == "koszul-dual":
        report = verify.check_koszul(n)
    else:
        report = verify.check_dims(n, Mode.MULTILINEAR if args.multilinear else Mode.SINGLE)
    if args.format == "json":
        print(dumps(report.to_json_obj(timing=args.timing)))
    else:
        lines = []
        if args.suite == "dims":
            lines += [f"{r['n']}\t{r['count']}\t{r['formula']}" for r in report.details["table"]]
        elif args.suite == "koszul-dual":
            lines += [f"{k}\t{v}" for k, v in report.details["dims"].items()]
        lines += [f"  {f}" for f in report.failures[:20]]
        lines.append(report.summary())
        print("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "bracket": cmd_bracket, "factor": cmd_factor, "expand": cmd_expand, "normalize": cmd_normalize,
    "basis": cmd_basis, "dims": cmd_dims, "order": cmd_order, "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        print(f"  {exc.text}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except NovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line entry point: ``leafine <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 a resource cap was hit.  Diagnostics go to stderr as
``error:<Name>: message``; data goes to stdout only.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from mpmath import mp

from . import asymptotics as asy
from .codes import CodeTable
from .distinct import DEFAULT_CAP, distinct_codes, distinct_ids, root_containing_codes
from .errors import LeafineError, PrecisionInsufficient, ResourceCapError
from .fibtrees import knuth_fibonacci, leaf_fibonacci
from .induce import DEFAULT_BUDGET, count_labeled, enumerate_bruteforce, induced_code_ids
from .recurrence import DEFAULT_DIGITS_CAP, check_bounds, n_sequence
from .trees import read_trees, serialize

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

PRECISION_ENV = "LEAFINE_PRECISION_BITS"

# Exact A_n is computed for relative-error reports up to this many digits.
_EXACT_DIGITS_LIMIT = 10**5


class UsageError(LeafineError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _int_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return a, b


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _precision(value: int | None) -> int:
    if value is None:
        env = os.environ.get(PRECISION_ENV)
        if env:
            try:
                value = int(env)
            except ValueError:
                raise UsageError(f"{PRECISION_ENV}={env!r} is not an integer") from None
        else:
            value = asy.DEFAULT_PRECISION
    if value < 64:
        raise UsageError("precision must be at least 64 bits")
    return value


def _digits(x, precision: int) -> str:
    return mp.nstr(x, max(15, int(precision * 0.30103) - 2))


# -- commands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    build = leaf_fibonacci if args.family == "fib-leaf" else knuth_fibonacci
    _emit(serialize(build(args.n), canonical=args.canonical))
    return EXIT_OK


def _count_one(tree, method: str, budget: int, cap: int) -> tuple[str, int]:
    if method == "auto":
        method = "brute" if count_labeled(tree) <= budget else "dp"
    table = CodeTable()
    if method == "brute":
        return method, len(set(induced_code_ids(tree, table, budget)))
    every, _ = distinct_ids(tree, table, cap)
    return method, len(every)


def cmd_count(args) -> int:
    trees = read_trees(args.input)
    if not trees:
        raise UsageError("no tree in input")
    multi = len(trees) > 1
    for index, (lineno, tree) in enumerate(trees):
        start = time.perf_counter()
        method, count = _count_one(tree, args.method, args.budget, args.cap)
        elapsed = (time.perf_counter() - start) * 1000
        if args.json:
            _emit(json.dumps({
                "input_index": index,
                "line": lineno,
                "leaf_count": tree.n_leaves,
                "method": method,
                "count": count,
                "elapsed_ms": round(elapsed, 3),
            }))
        elif multi:
            _emit(f"{lineno}: {count}")
        else:
            _emit(str(count))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    trees = read_trees(args.input)
    if not trees:
        raise UsageError("no tree in input")
    for lineno, tree in trees:
        if args.method == "brute":
            codes = enumerate_bruteforce(tree, args.budget)
        else:
            codes = distinct_codes(tree, args.cap)
        if len(trees) > 1:
            _emit(f"# line {lineno}")
        _emit(f"count={len(codes)}")
        for code in sorted(codes):
            _emit(code)
    return EXIT_OK


def cmd_seq(args) -> int:
    for value in n_sequence(args.n_max, args.digits_cap):
        _emit(str(value))
    return EXIT_OK


def cmd_constants(args) -> int:
    prec = _precision(args.precision)
    lo, hi = args.table_n
    lo = max(lo, 2)
    consts = asy.compute_constants(prec, args.terms, k1_index=max(hi, 2))
    k2 = consts.k2
    seq = n_sequence(hi, digits_cap=None) if hi >= 2 else n_sequence(2)
    with mp.workprec(prec):
        _emit(f"precision_bits={prec}")
        _emit(f"terms_requested={args.terms}")
        _emit(f"terms_used={k2.terms_used}")
        _emit(f"lambda1={_digits(consts.lambda1, prec)}")
        _emit(f"lambda2={_digits(consts.lambda2, prec)}")
        _emit(f"K2={_digits(k2.value, prec)} +/- {mp.nstr(k2.error, 3)}")
        _emit(f"K2_tail_bound={mp.nstr(k2.tail_bound, 3)}")
        _emit(f"K2_published={asy.PUBLISHED_K2}")
        _emit(f"K2_minus_published={mp.nstr(k2.value - mp.mpf(asy.PUBLISHED_K2), 3)}")
        _emit(f"K1_published={asy.PUBLISHED_K1}")
        _emit("K1_limit_of_defining_sum=1 (inner sum tends to 0; see C_n column)")
        _emit("n\tK1_truncated(n)\tC_n\tC_n_error\tC_n-K1_published")
        published = mp.mpf(asy.PUBLISHED_K1)
        for n in range(lo, hi + 1):
            k1 = asy.compute_k1_truncated(n, seq, prec)
            c = asy.prefactor_empirical(n, k2, seq, prec)
            _emit(
                f"{n}\t{mp.nstr(k1.value, 20)}\t{mp.nstr(c.value, 20)}"
                f"\t{mp.nstr(c.error, 3)}\t{mp.nstr(c.value - published, 6)}"
            )
    return EXIT_OK


def cmd_predict(args) -> int:
    prec = _precision(args.precision)
    consts = asy.compute_constants(prec, args.terms, k1_index=2)
    estimate = asy.predict(args.n, consts, args.k1, args.by_leaves)
    with mp.workprec(prec):
        _emit(f"n={args.n}")
        _emit(f"exponent={'leaf-count' if args.by_leaves else 'lambda2^n'}")
        _emit(f"k1={args.k1}")
        _emit(f"estimate={mp.nstr(estimate, 25)}")
        if asy.estimated_digits(args.n) <= _EXACT_DIGITS_LIMIT:
            exact = n_sequence(args.n)[args.n]
            _emit(f"exact={exact}")
            _emit(f"relative_error={mp.nstr(estimate / exact - 1, 6)}")
    return EXIT_OK


def _multi_leaf(codes: set[str]) -> set[str]:
    return {c for c in codes if c != "L"}


def cmd_verify(args) -> int:
    seq = n_sequence(max(args.n_max, 3), args.digits_cap)
    ok = True
    rows = 0
    bounds = check_bounds(seq)
    _emit(f"bounds(n<={len(seq) - 1})={'pass' if bounds else 'FAIL'}")
    ok &= bounds
    previous: set[str] | None = None
    for n in range(args.n_max + 1):
        tree = leaf_fibonacci(n)
        expected = seq[n]
        fields = [f"n={n}", f"leaves={tree.n_leaves}", f"recurrence={expected}"]
        row_ok = True
        brute = dp = None
        if count_labeled(tree) <= args.budget:
            brute = enumerate_bruteforce(tree, args.budget)
            fields.append(f"brute={len(brute)}")
            row_ok &= len(brute) == expected
        else:
            fields.append("brute=skipped")
        if expected <= args.cap:
            try:
                dp = distinct_codes(tree, args.cap)
            except ResourceCapError:
                fields.append("dp=overflow")
            else:
                fields.append(f"dp={len(dp)}")
                row_ok &= len(dp) == expected
        else:
            fields.append("dp=skipped")
        if brute is not None and dp is not None:
            same = brute == dp
            fields.append(f"sets={'equal' if same else 'DIFFER'}")
            row_ok &= same
        codes = brute if brute is not None else dp
        if n >= 2 and codes is not None:
            roots = root_containing_codes(tree, args.cap)
            rootset = _multi_leaf(codes) == roots and len(codes) == len(roots) + 1
            fields.append(f"rootset={'pass' if rootset else 'FAIL'}")
            row_ok &= rootset
        if previous is not None and dp is not None:
            nested = previous <= dp
            fields.append(f"nesting={'pass' if nested else 'FAIL'}")
            row_ok &= nested
        previous = dp
        fields.append("PASS" if row_ok else "FAIL")
        _emit(" ".join(fields))
        ok &= row_ok
        rows += 1
    _emit(f"verify: {'PASS' if ok else 'FAIL'} ({rows} rows)")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leafine", description="Nonisomorphic leaf-induced subtrees and leaf-Fibonacci asymptotics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="print a Fibonacci tree")
    g.add_argument("family", choices=["fib-leaf", "fib-knuth"])
    g.add_argument("n", type=_nonneg)
    g.add_argument("--canonical", action="store_true", help="print the canonical code")
    g.set_defaults(func=cmd_gen)

    def add_limits(q):
        q.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max subsets for brute force")
        q.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max distinct codes for the DP")

    c = sub.add_parser("count", help="count nonisomorphic leaf-induced subtrees")
    c.add_argument("--method", choices=["brute", "dp", "auto"], default="auto")
    c.add_argument("--json", action="store_true", help="one JSON object per tree")
    add_limits(c)
    c.add_argument("input", nargs="?", default="-", help="tree file, or - for stdin")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="list canonical codes of leaf-induced subtrees")
    e.add_argument("--method", choices=["brute", "dp"], default="dp")
    add_limits(e)
    e.add_argument("input", nargs="?", default="-")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("seq", help="print A_0..A_n_max")
    s.add_argument("n_max", type=_nonneg)
    s.add_argument("--digits-cap", type=int, default=DEFAULT_DIGITS_CAP)
    s.set_defaults(func=cmd_seq)

    k = sub.add_parser("constants", help="asymptotic constants and prefactor table")
    k.add_argument("--precision", type=int, default=None, help=f"bits (default ${PRECISION_ENV} or {asy.DEFAULT_PRECISION})")
    k.add_argument("--terms", type=int, default=asy.DEFAULT_TERMS)
    k.add_argument("--table-n", type=_int_range, default=(2, 16), metavar="A..B")
    k.set_defaults(func=cmd_constants)

    r = sub.add_parser("predict", help="asymptotic estimate of A_n")
    r.add_argument("n", type=_nonneg)
    r.add_argument("--k1", choices=["paper", "unity"], default="paper")
    r.add_argument("--by-leaves", action="store_true", help="use the leaf-count exponent")
    r.add_argument("--precision", type=int, default=None)
    r.add_argument("--terms", type=int, default=asy.DEFAULT_TERMS)
    r.set_defaults(func=cmd_predict)

    v = sub.add_parser("verify", help="cross-check brute force, DP and recurrence on f_0..f_n_max")
    v.add_argument("n_max", type=_nonneg)
    add_limits(v)
    v.add_argument("--digits-cap", type=int, default=DEFAULT_DIGITS_CAP)
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "terms", 2) < 2:
            raise UsageError("--terms must be at least 2")
        return args.func(args)
    except (ResourceCapError, PrecisionInsufficient) as exc:
        return _fail(exc, EXIT_CAP)
    except (LeafineError, OSError) as exc:
        return _fail(exc, EXIT_USAGE)


def _fail(exc: BaseException, code: int) -> int:
    sys.stdout.flush()
    sys.stderr.write(f"error:{type(exc).__name__}: {exc}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

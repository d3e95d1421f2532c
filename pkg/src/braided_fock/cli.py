"""Command-line front end.

Subcommands: ``check`` (hecke, ybe, pybe, unitarity, moderel, modeind),
``nf`` (normal forms), ``heisenberg``, ``lemma33``, ``dims`` and ``bench``.
Exit codes: 0 pass, 1 mathematical failure, 2 usage or parse error,
3 rewrite budget exceeded.  The environment variable BRAIDED_FOCK_BUDGET
overrides the default rewrite budget.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from .coeff import LaurentPoly
from .tensor import TensorOp
from .rmatrix import (
    HeckeData,
    admissible_samples,
    check_braid,
    check_hecke,
    check_pybe,
    check_unitarity,
    standard_sln_R,
)
from .wedge import degree_rank, derive_wedge_rules
from .modealg import (
    BudgetExceededError,
    ExchangeRules,
    ModeElement,
    check_modeind,
    check_moderel,
    normal_form,
    resolve_budget,
    standard_rules,
)
from . import fock

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_TOKEN = re.compile(r"^t\[(-?\d+)\]_(\d+)$|^t(\d+)$")


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(message)
        self.position = position


def parse_word(text: str):
    """Parse 't[2]_1 t[0]_2' or the single-mode shorthand 't2 t1'."""
    word = []
    pos = 0
    for token in text.split():
        start = text.index(token, pos)
        m = _TOKEN.match(token)
        if not m:
            raise ParseError("cannot parse token %r" % token, start)
        if m.group(3) is not None:
            word.append((0, int(m.group(3))))
        else:
            word.append((int(m.group(1)), int(m.group(2))))
        pos = start + len(token)
    return tuple(word)


def _load_hecke(args) -> HeckeData:
    if getattr(args, "matrix", None):
        with open(args.matrix) as fh:
            obj = json.load(fh)
        op = TensorOp.from_json(obj)
        return HeckeData(n=op.n, R=op)
    return standard_sln_R(args.n)


def _emit(args, report: dict, text_lines):
    if args.output == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_check(args) -> int:
    data = _load_hecke(args)
    kind = args.kind
    if kind == "hecke":
        res = check_hecke(data)
    elif kind == "ybe":
        res = check_braid(data)
    elif kind == "pybe":
        res = check_pybe(data)
    elif kind == "unitarity":
        samples = admissible_samples(5, args.seed)
        res = check_unitarity(data, samples)
    elif kind in ("moderel", "modeind"):
        if args.i is None or args.j is None:
            print("check %s needs --i and --j" % kind, file=sys.stderr)
            return EXIT_USAGE
        rules = standard_rules(data.n, args.rules) if not getattr(args, "matrix", None) \
            else ExchangeRules(data, args.rules)
        try:
            if kind == "moderel":
                ok = check_moderel(args.i, args.j, data.n, rules)
            else:
                ok = check_modeind(args.i, args.j, data.n, rules)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_USAGE
        report = {"check": kind, "n": data.n, "i": args.i, "j": args.j, "pass": ok,
                  "witness": None, "degrees": {}}
        _emit(args, report, ["%s i=%d j=%d n=%d: %s" % (kind, args.i, args.j, data.n,
                                                        "pass" if ok else "FAIL")])
        return EXIT_PASS if ok else EXIT_FAIL
    else:
        print("unknown check kind %r" % kind, file=sys.stderr)
        return EXIT_USAGE
    report = res.to_json()
    lines = ["%s n=%d: %s" % (res.check, res.n, "pass" if res.passed else "FAIL")]
    if not res.passed and res.witness:
        lines.append("witness: %s" % (res.witness,))
    _emit(args, report, lines)
    return EXIT_PASS if res.passed else EXIT_FAIL


def cmd_nf(args) -> int:
    try:
        word = parse_word(args.expr)
    except ParseError as exc:
        print("parse error at position %d: %s" % (exc.position, exc), file=sys.stderr)
        return EXIT_USAGE
    for _, a in word:
        if not 1 <= a <= args.n:
            print("index out of range 1..%d in %r" % (args.n, args.expr), file=sys.stderr)
            return EXIT_USAGE
    rules = standard_rules(args.n, args.rules)
    elem = ModeElement.from_word(args.n, word)
    try:
        out = normal_form(elem, rules, budget=resolve_budget(args.budget))
    except BudgetExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    report = {"command": "nf", "n": args.n, "rules": args.rules, "input": args.expr,
              "normal_form": out.to_json()}
    _emit(args, report, [repr(out)])
    return EXIT_PASS


def cmd_heisenberg(args) -> int:
    i, j, n = args.i, args.j, args.n
    if not (1 <= i <= 3 and 1 <= j <= 3):
        print("supported shift range is 1..3", file=sys.stderr)
        return EXIT_USAGE
    log = [] if args.log_pruned else None
    try:
        scalar, state = fock.commutator_on_vacuum(i, j, n, budget=resolve_budget(args.budget),
                                                  log_pruned=log)
    except BudgetExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    extrapolation = i == 3 or j == 3
    if scalar is None:
        report = {"check": "heisenberg", "i": i, "j": j, "n": n, "pass": False,
                  "engine": None, "state": state.to_json(), "extrapolation": extrapolation}
        _emit(args, report, ["[b_%d, b_-%d] on the vacuum is not scalar: FAIL" % (i, j)])
        return EXIT_FAIL
    ok = fock.heisenberg_matches(scalar, i, j, n)
    one = LaurentPoly.one()
    cleared_lhs = scalar * (one - LaurentPoly.q_power(-2 * i))
    cleared_rhs = (one - LaurentPoly.q_power(-2 * n * i)) * i if i == j else LaurentPoly.zero()
    report = {
        "check": "heisenberg", "i": i, "j": j, "n": n, "pass": ok,
        "engine": scalar.to_json(),
        "cleared_lhs": cleared_lhs.to_json(),
        "cleared_rhs": cleared_rhs.to_json(),
        "extrapolation": extrapolation,
    }
    if log is not None:
        report["pruned"] = log
    lines = [
        "[b_%d, b_-%d] omega = (%s) omega   n=%d%s" % (
            i, j, scalar, n, "   [extrapolation]" if extrapolation else ""),
        "cleared: (%s) * (1 - q^-%d) = %s: %s" % (
            scalar, 2 * i, cleared_rhs, "pass" if ok else "FAIL"),
    ]
    if log is not None:
        lines.append("pruned %d slot terms" % len(log))
    _emit(args, report, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_lemma33(args) -> int:
    n = args.n
    try:
        engine = fock.lemma33_coefficient(n)
        second = fock.lemma33_second_term(n)
    except BudgetExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    closed = fock.lemma33_closed_form(n)
    second_expected = fock.lemma33_second_term_expected(n)
    ok = engine == closed and second == second_expected
    report = {
        "check": "lemma33", "n": n, "pass": ok,
        "engine": engine.to_json(), "closed_form": closed.to_json(),
        "second_term": second.to_json(), "second_term_expected": second_expected.to_json(),
    }
    _emit(args, report, [
        "column-0 piece: %s" % engine,
        "closed form:    %s" % closed,
        "column-1 piece: %s (expected %s)" % (second, second_expected),
        "lemma33 n=%d: %s" % (n, "pass" if ok else "FAIL"),
    ])
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_dims(args) -> int:
    data = _load_hecke(args)
    table = derive_wedge_rules(data)
    from math import comb

    rows = []
    ok = True
    for m in range(data.n + 1):
        rank = degree_rank(data.n, m, table)
        expected = comb(data.n, m)
        ok = ok and rank == expected
        rows.append({"degree": m, "rank": rank, "binomial": expected})
    report = {"check": "dims", "n": data.n, "pass": ok, "rows": rows}
    lines = ["degree %d: rank %d, C(%d, %d) = %d" % (r["degree"], r["rank"], data.n,
                                                     r["degree"], r["binomial"]) for r in rows]
    lines.append("dims n=%d: %s" % (data.n, "pass" if ok else "FAIL"))
    _emit(args, report, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_bench(args) -> int:
    timings = {}
    t0 = time.perf_counter()
    check_hecke(standard_sln_R(3))
    timings["hecke_n3"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    check_pybe(standard_sln_R(2))
    timings["pybe_n2"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    fock.commutator_on_vacuum(1, 1, 2)
    timings["heisenberg_11_n2"] = time.perf_counter() - t0
    report = {"command": "bench", "seconds": {k: round(v, 4) for k, v in timings.items()}}
    _emit(args, report, ["%s: %.4f s" % (k, v) for k, v in timings.items()])
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braided-fock",
                                 description="exact checks for Hecke R-matrix exchange algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_rules=True):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=None)
        if with_rules:
            p.add_argument("--rules", choices=("theorem21", "gerv"), default="theorem21")

    p = sub.add_parser("check", help="run one identity check")
    p.add_argument("kind", choices=("hecke", "ybe", "pybe", "unitarity", "moderel", "modeind"))
    p.add_argument("--matrix", help="JSON operator file with a user-supplied R")
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("nf", help="normal form of a word")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=cmd_nf)

    p = sub.add_parser("heisenberg", help="commutator [b_i, b_-j] on the vacuum")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--log-pruned", action="store_true")
    common(p, with_rules=False)
    p.set_defaults(fn=cmd_heisenberg)

    p = sub.add_parser("lemma33", help="column pieces of [b_2, b_-2] against closed forms")
    common(p, with_rules=False)
    p.set_defaults(fn=cmd_lemma33)

    p = sub.add_parser("dims", help="wedge dimensions against binomials")
    p.add_argument("--matrix", help="JSON operator file with a user-supplied R")
    common(p, with_rules=False)
    p.set_defaults(fn=cmd_dims)

    p = sub.add_parser("bench", help="time a few standard workloads")
    common(p, with_rules=False)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except BudgetExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

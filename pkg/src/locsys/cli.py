"""Command-line front end.

Subcommands: a-symbolic, pgn, qgn, euler, d-count, eval, verify.  Exit codes:
0 success, 1 theorem-level assertion failure, 2 usage error, 3 numeric
precision exhaustion.  All output is deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify as verify_mod
from .counting import (
    ATable,
    CTable,
    EntryMissing,
    a_from_c,
    c_from_a,
    euler_characteristic,
    inertial_class_count,
    pic_quotient,
)
from .laurent import (
    CurveInput,
    DivisibilityError,
    LaurentPoly,
    PrecisionError,
    evaluate_at_curve,
    pic_polynomial,
)


class CheckFailure(RuntimeError):
    pass


def _print(args, obj, text):
    if args.json:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


def cmd_a_symbolic(args):
    poly = a_from_c(args.n, None, CTable.symbolic())
    _print(args, {"n": args.n, "polynomial": poly.render()},
           f"A[{args.n}] = {poly.render()}")
    return 0


def _build_pipeline(n, g, a_table_path):
    if n >= 2:
        if a_table_path is None:
            raise CheckFailure("ranks >= 2 need --a-table with the bundle counts")
        with open(a_table_path, "r", encoding="utf-8") as fh:
            atable = ATable.from_json(fh.read(), g)
        table = c_from_a(n, g, atable)
    else:
        table = CTable.concrete(g, {1: pic_polynomial(g)})
    return table


def _pgn_report(n, g, p):
    report = {}
    report["weil_invariant"] = p.is_weil_invariant()
    report["positivity"] = p.satisfies_positivity()
    w, tops = p.weight()
    expected_top = (g - 1) * n * n + 1
    report["dominant_term"] = (
        w == 2 * expected_top
        and tops == [(expected_top, (0,) * g, 0)]
        and p.terms[tops[0]] == 1
    )
    try:
        q = pic_quotient(p, g)
        report["pic_divisible"] = True
    except DivisibilityError:
        q = None
        report["pic_divisible"] = False
    if q is not None:
        chi = euler_characteristic(n, g) if g >= 2 else 1
        report["euler_value"] = str(q.substitute(1, [1] * g, g - 1))
        report["euler_matches"] = q.substitute(1, [1] * g, g - 1) == chi
    else:
        report["euler_matches"] = False
    return report, q


def _run_pgn(args, want_quotient):
    n, g = args.n, args.g
    if n < 1 or g < 2 and not (g == 1 and n == 1):
        raise CheckFailure("need g >= 2 (or g = 1 with n = 1)")
    table = _build_pipeline(n, g, args.a_table)
    if args.emit_ctable:
        with open(args.emit_ctable, "w", encoding="utf-8") as fh:
            json.dump(table.to_obj(), fh, sort_keys=True, separators=(",", ":"))
    p = table.entry(n, 1)
    report, q = _pgn_report(n, g, p)
    out_poly = q if want_quotient else p
    label = "Q" if want_quotient else "P"
    if want_quotient and q is None:
        raise CheckFailure("quotient unavailable: Picard divisibility failed")
    obj = {"n": n, "g": g, label: out_poly.to_obj(), "report": report}
    lines = [f"{label}[g={g},n={n}] = {out_poly.render()}"]
    for key in sorted(report):
        lines.append(f"  {key}: {report[key]}")
    _print(args, obj, "\n".join(lines))
    if not all(report[k] for k in
               ("weil_invariant", "positivity", "dominant_term", "pic_divisible", "euler_matches")):
        raise CheckFailure("pipeline report contains failing checks")
    return 0


def cmd_pgn(args):
    return _run_pgn(args, want_quotient=False)


def cmd_qgn(args):
    return _run_pgn(args, want_quotient=True)


def cmd_euler(args):
    value = euler_characteristic(args.n, args.g)
    _print(args, {"n": args.n, "g": args.g, "euler": value},
           f"euler[g={args.g},n={args.n}] = {value}")
    return 0


def cmd_d_count(args):
    poly = inertial_class_count(args.n, args.d, CTable.symbolic())
    _print(args, {"n": args.n, "d": args.d, "polynomial": poly.render()},
           f"D[{args.n}]({args.d}) = {poly.render()}")
    return 0


def cmd_eval(args):
    with open(args.curve, "r", encoding="utf-8") as fh:
        curve = CurveInput.from_obj(json.load(fh))
    if args.n == 1:
        poly = pic_polynomial(curve.g)
    else:
        if args.pgn is None:
            raise CheckFailure("ranks >= 2 need --pgn with the count polynomial")
        with open(args.pgn, "r", encoding="utf-8") as fh:
            poly = LaurentPoly.from_json(fh.read())
    value = evaluate_at_curve(poly, curve, args.k, curve.g - 1)
    _print(args, {"n": args.n, "k": args.k, "count": value},
           f"count[n={args.n},k={args.k}] = {value}")
    return 0


def cmd_verify(args):
    if args.replay:
        with open(args.replay, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        result = verify_mod.replay(payload)
        _print(args, result, f"replay {payload['suite']}: {'PASS' if result['passed'] else 'FAIL'}")
        return 0 if result["passed"] else 1
    names = verify_mod.SUITES.keys() if args.suite == "all" else [args.suite]
    reports = []
    failed = False
    for name in names:
        report = verify_mod.run_suite(name, seed=args.seed,
                                      iterations=args.iterations, jobs=args.jobs)
        reports.append(report)
        failed = failed or not report["passed"]
    obj = {"seed": args.seed, "iterations": args.iterations, "suites": reports}
    lines = []
    for report in reports:
        status = "PASS" if report["passed"] else "FAIL"
        lines.append(f"{report['suite']}: {status} ({report['checks']} checks)")
        if not report["passed"] and report.get("counterexample") is not None:
            lines.append(f"  counterexample: {json.dumps(report['counterexample'], sort_keys=True)}")
    _print(args, obj, "\n".join(lines))
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="locsys",
        description="Count Frobenius-fixed irreducible local systems on curves.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "a-symbolic",
        help="rank-n bundle count in C-symbols (any degree coprime to n; "
             "the count is degree-independent)",
    )
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_a_symbolic)

    for name, fn in (("pgn", cmd_pgn), ("qgn", cmd_qgn)):
        p = sub.add_parser(name, help=f"build {name[0].upper()}-polynomial from a fixture")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--g", type=int, required=True)
        p.add_argument("--a-table", type=str, default=None)
        p.add_argument("--emit-ctable", type=str, default=None,
                       help="write the recovered count table as JSON")
        p.set_defaults(func=fn)

    p = sub.add_parser("euler", help="Euler characteristic of the rank-n stratum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("d-count", help="inertial classes with fixator order d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_d_count)

    p = sub.add_parser("eval", help="integer count on a concrete curve")
    p.add_argument("--curve", type=str, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pgn", type=str, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(verify_mod.SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1,
                   help="run work items in parallel; reports are identical")
    p.add_argument("--replay", type=str, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionError as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return 3
    except (CheckFailure, DivisibilityError, EntryMissing) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

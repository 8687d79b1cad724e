"""Command-line entry point: ``dlspringer <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import combinatorics as comb
from .flags import KINDS, BudgetExceeded, DEFAULT_BUDGET, VarietySpec, count_points
from .gf import FieldError, make_field, prime_power
from .harness import (
    generic_relpos_histogram,
    partition_sum_check,
    reproduce_examples,
    verify_all,
    verify_dimensions,
    verify_theorem_a,
    verify_theorem_b,
)
from .linalg import format_matrix, parse_matrix
from .normal_forms import beta_of_unipotent, jordan_type, weyr_conjugator, weyr_matrix
from .padic import lefschetz_count, parse_series


def _field(text: str):
    p, m, k = (int(t) for t in text.split(","))
    return make_field(p, m, k)


def _read_matrix(path: str):
    return parse_matrix(Path(path).read_text())


def _unipotent(args, n: int, p: int, m: int):
    if getattr(args, "matrix", None):
        u = _read_matrix(args.matrix)
        if (u.spec.p, u.spec.m) != (p, m):
            raise SystemExit("matrix field does not match --q")
        return u
    if getattr(args, "partition", None):
        parts = comb.parse_partition(args.partition)
        if sum(parts) != n:
            raise SystemExit("--partition must be a partition of --n")
        return weyr_matrix(parts, make_field(p, m, 1))
    return None


def _variety(args) -> VarietySpec:
    p, m = prime_power(args.q)
    u = _unipotent(args, args.n, p, m)
    w = comb.parse_perm(args.w) if args.w else None
    P = comb.parse_tableau(args.tableau) if args.tableau else None
    if args.kind == "dl" and w is None and args.partition:
        w = comb.beta_word(comb.parse_partition(args.partition))
    if args.kind == "intersection" and w is None and u is not None:
        w = beta_of_unipotent(u)
    if args.kind in ("dl", "full"):
        u = None
    return VarietySpec(args.kind, args.n, p, m, u=u, w=w, P=P)


def _emit(reports, as_text: bool) -> int:
    failed = 0
    for r in reports:
        print(r.line() if as_text else r.to_json())
        failed += not r.passed
    return 1 if failed else 0


def cmd_weyr(args):
    W = weyr_matrix(comb.parse_partition(args.partition), _field(args.field))
    sys.stdout.write(format_matrix(W))


def cmd_jordan(args):
    print(comb.format_partition(jordan_type(_read_matrix(args.matrix))))


def cmd_beta(args):
    print(comb.format_perm(beta_of_unipotent(_read_matrix(args.matrix))))


def cmd_conjugator(args):
    sys.stdout.write(format_matrix(weyr_conjugator(_read_matrix(args.matrix))))


def cmd_rs(args):
    if args.perm:
        P, Q = comb.rs_insert(comb.parse_perm(args.perm))
        print(comb.format_tableau(P), comb.format_tableau(Q))
    else:
        print(comb.format_perm(comb.rs_extract(comb.parse_tableau(args.P), comb.parse_tableau(args.Q))))


def cmd_count(args):
    print(count_points(_variety(args), args.k, args.budget, args.workers))


def cmd_enumerate(args):
    vs = _variety(args)
    out = open(args.emit, "w") if args.emit else sys.stdout
    try:
        for f in vs.points(args.k, args.budget):
            out.write(f.to_json() + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_lefschetz(args):
    p, m = prime_power(args.q)
    g = parse_series(Path(args.g).read_text(), make_field(p, m, 1))
    if (g.d, g.r) != (args.d, args.r):
        raise SystemExit(f"g has (d, r) = {(g.d, g.r)}, expected {(args.d, args.r)}")
    parts = (args.r,) * args.d
    print(lefschetz_count(parts, comb.parse_perm(args.w), g, args.k, args.budget))


def cmd_verify(args):
    if args.claim == "thm-a":
        reports = verify_theorem_a(comb.parse_partition(args.partition), args.q, args.kmax, args.seed, args.budget)
    elif args.claim == "thm-b":
        reports = verify_theorem_b(comb.parse_partition(args.blocks), args.q, args.kmax, args.budget)
    elif args.claim == "dims":
        reports = verify_dimensions(args.n_max, args.q, args.seed)
    elif args.claim == "partition":
        reports = [r for k in range(1, args.kmax + 1) for r in partition_sum_check(args.n, args.q, k, args.budget)]
    elif args.claim == "relpos":
        parts = comb.parse_partition(args.partition)
        reports = [generic_relpos_histogram(parts, comb.parse_tableau(args.P), comb.parse_tableau(args.Q),
                                            args.q, args.kmax, args.budget)]
    else:
        reports = verify_all(args.n_max, args.q, args.kmax, args.budget)
    return _emit(reports, args.text)


def cmd_examples(args):
    return _emit(reproduce_examples(args.q, args.kmax, budget=args.budget), args.text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dlspringer", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("weyr", help="print the Weyr matrix of a partition")
    s.add_argument("--partition", required=True)
    s.add_argument("--field", default="2,1,1", help="p,m,k")
    s.set_defaults(func=cmd_weyr)

    for name, fn in (("jordan", cmd_jordan), ("beta", cmd_beta), ("conjugator", cmd_conjugator)):
        s = sub.add_parser(name)
        s.add_argument("--matrix", required=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("rs", help="Robinson-Schensted in either direction")
    s.add_argument("--perm")
    s.add_argument("--P")
    s.add_argument("--Q")
    s.set_defaults(func=cmd_rs)

    for name, fn in (("count", cmd_count), ("enumerate", cmd_enumerate)):
        s = sub.add_parser(name)
        s.add_argument("--kind", choices=KINDS, default="full")
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--q", type=int, required=True)
        s.add_argument("--k", type=int, default=1)
        s.add_argument("--w")
        s.add_argument("--partition")
        s.add_argument("--matrix")
        s.add_argument("--tableau")
        s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "count":
            s.add_argument("--workers", type=int, default=1)
        else:
            s.add_argument("--emit", help="write JSON lines here instead of stdout")
        s.set_defaults(func=fn)

    s = sub.add_parser("lefschetz", help="fixed points of g o F^k on B_{W(u),w}")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--w", required=True)
    s.add_argument("--g", required=True, help="truncated series matrix file")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_lefschetz)

    s = sub.add_parser("verify", help="run verification claims")
    s.add_argument("claim", choices=["thm-a", "thm-b", "dims", "partition", "relpos", "all"])
    s.add_argument("--partition", default="2,2")
    s.add_argument("--blocks", default="2,2")
    s.add_argument("--P", default="1,3;2,4")
    s.add_argument("--Q", default="1,3;2,4")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--n-max", dest="n_max", type=int, default=4)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--kmax", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--json", action="store_true", help="JSON lines (the default)")
    s.add_argument("--text", action="store_true", help="one PASS/FAIL line per report instead of JSON")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("examples", help="reproduce the worked examples")
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--kmax", type=int, default=3)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--json", action="store_true", help="JSON lines (the default)")
    s.add_argument("--text", action="store_true", help="one PASS/FAIL line per report instead of JSON")
    s.set_defaults(func=cmd_examples)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except (BudgetExceeded, FieldError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

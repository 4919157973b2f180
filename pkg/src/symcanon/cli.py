"""Command-line entry point.

Commands: classify, rank, canon, orbit, decompose, stabilizer,
verify-paper, stats.  Tensor literals are base-p digits in flatten
order (length 8 or 16), or compact literals `c:` + k+1 digits.

Exit codes: 0 success; 1 verify-paper found a MISMATCH; 2 invalid
arguments, parse or symmetry failure, or missing fixture; 3 code-set
budget exceeded; 4 the queried tensor has no symmetric decomposition.

Environment: SYMCANON_BUDGET overrides the default code-set ceiling and
SYMCANON_FIXTURES the fixture directory; explicit flags win.
"""

import argparse
import os
import sys

from . import report as report_mod
from .classify import classify
from .errors import (
    AsymmetricTensorError,
    BudgetExceededError,
    MissingFixtureError,
    UndecomposableError,
)
from .gfp import FieldSpec, is_prime
from .group_action import group_order, orbit, stabilizer_size
from .rank_strata import (
    DEFAULT_BUDGET,
    decompose,
    symmetric_rank,
    symmetric_rank_strata,
)
from .tensor import (
    SUPPORTED_ORDERS,
    SymTensor,
    format_literal,
    is_symmetric,
    parse_literal,
    symmetric_outer_power,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_UNDECOMPOSABLE = 4

QUERY_COMMANDS = ("rank", "canon", "orbit", "decompose", "stabilizer")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="symcanon",
        description="Classify 2x2x2 and 2x2x2x2 symmetric tensors over prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tensor=False, p_required=True):
        p.add_argument("--p", type=int, required=p_required, help="prime modulus")
        p.add_argument("--order", type=int, help="tensor order, 3 or 4")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--budget", type=int, default=None,
                       help="code-set ceiling (default %d)" % DEFAULT_BUDGET)
        if tensor:
            p.add_argument("--tensor", required=True, help="tensor literal")

    c = sub.add_parser("classify", help="full orbit classification")
    common(c)
    c.add_argument("--format", default="structured",
                   choices=["structured", "tabular", "markdown", "md", "latex"])
    c.add_argument("--out", help="write the report here instead of stdout")
    c.add_argument("--with-timing", action="store_true",
                   help="include wall time in structured output")

    for name, help_text in [
        ("rank", "symmetric rank of a tensor"),
        ("canon", "canonical form of a tensor"),
        ("orbit", "orbit size of a tensor"),
        ("decompose", "witness vectors summing to a tensor"),
        ("stabilizer", "stabilizer size of a tensor"),
    ]:
        q = sub.add_parser(name, help=help_text)
        common(q, tensor=True)

    v = sub.add_parser("verify-paper", help="diff computed orbits against a stored table")
    common(v, p_required=False)
    v.add_argument("--fixtures", help="fixture directory")
    v.add_argument("--all", action="store_true",
                   help="audit every stored table (ignores --p/--order)")

    s = sub.add_parser("stats", help="stratum counts and percentages")
    common(s)
    return parser


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("SYMCANON_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _field(args):
    if not is_prime(args.p):
        raise ValueError(f"p must be prime, got {args.p}")
    return FieldSpec(args.p)


def _order(args, inferred=None):
    k = args.order if args.order is not None else inferred
    if k is None:
        raise ValueError("--order is required (3 or 4)")
    if k not in SUPPORTED_ORDERS:
        raise ValueError(f"order must be one of {SUPPORTED_ORDERS}, got {k}")
    return k


def _query_tensor(args, field):
    X = parse_literal(args.tensor, field, args.order)
    _order(args, inferred=X.order)
    if not is_symmetric(X):
        raise AsymmetricTensorError(
            "tensor literal is not symmetric; queries act on symmetric tensors"
        )
    return SymTensor(field, X.entries)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _dispatch(args)
    except (BudgetExceededError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UndecomposableError as exc:
        print(f"error: no symmetric decomposition ({exc})", file=sys.stderr)
        return EXIT_UNDECOMPOSABLE
    except MissingFixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, AsymmetricTensorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args):
    if args.command == "classify":
        field = _field(args)
        k = _order(args)
        rep = classify(field, k, threads=args.threads, budget=_budget(args))
        text = report_mod.emit(rep, args.format, include_timing=args.with_timing)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command in QUERY_COMMANDS:
        return _run_query(args)

    if args.command == "verify-paper":
        return _run_verify(args)

    if args.command == "stats":
        field = _field(args)
        k = _order(args)
        strata = symmetric_rank_strata(field, k, _budget(args))
        space = field.p ** (k + 1)
        counts = strata.stratum_sizes()
        print(f"p={field.p} k={k} group_order={group_order(field)} "
              f"symmetric_tensors={space}")
        print(f"max_symmetric_rank={strata.max_rank}")
        print("rank,count,percent")
        for r, c in enumerate(counts):
            print(f"{r},{c},{round(100.0 * c / space, 2):.2f}")
        print(f"undecomposable,{strata.undecomposable.size},"
              f"{round(100.0 * strata.undecomposable.size / space, 2):.2f}")
        return EXIT_OK

    raise ValueError(f"unknown command {args.command!r}")


def _run_query(args):
    field = _field(args)
    X = _query_tensor(args, field)
    k = X.order

    if args.command == "canon":
        from .group_action import canonical_form

        print(format_literal(canonical_form(X, threads=args.threads)))
        return EXIT_OK
    if args.command == "orbit":
        print(orbit(X, threads=args.threads).size)
        return EXIT_OK
    if args.command == "stabilizer":
        print(stabilizer_size(X, threads=args.threads))
        return EXIT_OK

    strata = symmetric_rank_strata(field, k, _budget(args))
    if args.command == "rank":
        r = symmetric_rank(X, strata)
        if r is None:
            raise UndecomposableError(format_literal(X))
        print(r)
        return EXIT_OK

    witness = decompose(X, strata)  # raises UndecomposableError when undefined
    for v in witness.vectors:
        print(f"{v[0]},{v[1]}")
    total = [0] * (1 << k)
    for v in witness.vectors:
        term = symmetric_outer_power(v, k, field)
        total = [(a + b) % field.p for a, b in zip(total, term.entries)]
    ok = tuple(total) == X.entries
    print(f"re-evaluated sum of {len(witness.vectors)} outer powers: "
          f"{'matches input' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def _run_verify(args):
    threads = args.threads
    budget = _budget(args)
    if args.all:
        pairs = report_mod.list_fixtures(args.fixtures)
        if not pairs:
            raise MissingFixtureError("no stored tables found")
    else:
        if args.p is None:
            raise ValueError("--p is required unless --all is given")
        pairs = [(args.p, _order(args))]
    worst = EXIT_OK
    for p, k in pairs:
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        fixture = report_mod.load_fixture(p, k, args.fixtures)
        rep = classify(FieldSpec(p), k, threads=threads, budget=budget)
        discrepancies = report_mod.diff(rep, fixture)
        if not discrepancies:
            print(f"p={p} k={k}: table reproduced exactly")
        for d in discrepancies:
            print(d.line())
            if d.classification == report_mod.MISMATCH:
                worst = EXIT_MISMATCH
    return worst


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

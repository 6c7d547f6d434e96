"""Command-line entry point: ``primroots <subcommand> [flags]``.

Exit status is 0 on success, 1 on a usage error and 2 when a resource,
range or contract check fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import use_factor_cache
from .densities import DEFAULT_CUTOFF
from .errors import ContractError, RangeError, ResourceError
from .experiments import (
    SAMPLE_SEED,
    cmd_constants,
    cmd_correlation,
    cmd_count,
    cmd_exponent_experiment,
    cmd_families,
    cmd_least_prime,
    cmd_oracle_check,
    cmd_scan_runs,
    cmd_summatory,
)
from .specs import RESTRICTIONS, TupleSpec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _number(text: str) -> int:
    """Integers, also written as 1e6 or 10**6."""
    try:
        if "**" in text:
            base, exp = text.split("**")
            return int(base) ** int(exp)
        if "e" in text.lower():
            return int(float(text))
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pmin", type=_number)
    common.add_argument("--pmax", type=_number)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--cache", metavar="PATH", help="factorization cache file")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument("--cutoff", type=_number, default=DEFAULT_CUTOFF, metavar="Q")
    common.add_argument("--seed", type=int, default=SAMPLE_SEED)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="primroots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("scan-runs", "maximal runs of consecutive primitive roots")
    p.add_argument("range", nargs="*", type=_number, metavar="PMIN PMAX")

    p = add("least-prime", "least prime whose maximal run is exactly k, k = 1..kmax")
    p.add_argument("kmax", type=_number)
    p.add_argument("ceiling", type=_number)

    p = add("count", "configuration counts against the predicted main term")
    p.add_argument("--offsets", type=_int_list)
    p.add_argument("--a", type=int, help="shorthand for --offsets 0,A")
    p.add_argument("--restrict", choices=RESTRICTIONS, default="none")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--no-wrap", action="store_true", help="members must lie in 1..p-1 without reduction")
    p.add_argument("--subset-interval", metavar="M", help="restrict n to [1, M]; 'auto' uses ceil(p^0.8)")
    p.add_argument("--sample", type=int, help="draw this many primes from the range")

    p = add("exponent-experiment", "pairs coprime to q against totient-ratio exponents 1 and 2")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    add("constants", "the five named Euler-product constants")

    p = add("summatory", "summatory sums of mu^2, mu_s and omega")
    p.add_argument("--x", type=_int_list, required=True, help="comma-separated x values")
    p.add_argument("--kind", choices=("squarefree", "spowerfree", "progression", "coprime", "omega"), default="squarefree")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--a", type=int, default=0)

    p = add("correlation", "correlation sums of mu_s over shifted tuples")
    p.add_argument("--x", type=_int_list, required=True)
    p.add_argument("--offsets", type=_int_list, default=[0, 1])
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--q", type=int, help="also require coprimality to q (conjecture test)")

    add("families", "prime families, omega(p-1) and predicted run class")
    add("oracle-check", "order test against generator powers")
    return parser


def _range(args, default=None) -> tuple[int, int]:
    pmin, pmax = args.pmin, args.pmax
    positional = getattr(args, "range", None) or []
    if positional:
        if len(positional) != 2:
            raise UsageError("expected PMIN PMAX")
        pmin, pmax = positional
    if pmin is None or pmax is None:
        if default is None:
            raise UsageError("--pmin and --pmax are required")
        pmin, pmax = default
    if pmin > pmax:
        raise UsageError(f"empty range: pmin={pmin} > pmax={pmax}")
    return pmin, pmax


def _spec(args) -> TupleSpec:
    if args.offsets is not None and args.a is not None:
        raise UsageError("give either --offsets or --a")
    offsets = args.offsets if args.offsets is not None else [0, args.a if args.a is not None else 1]
    if args.restrict in ("coprime", "squarefree_coprime") and args.q < 2:
        raise UsageError("--restrict coprime needs --q >= 2")
    try:
        return TupleSpec(tuple(offsets), args.restrict, s=args.s, q=args.q, wraparound=not args.no_wrap)
    except ValueError as exc:
        raise UsageError(str(exc))


def _subset(value):
    if value is None or value == "auto":
        return value
    try:
        m = int(value)
    except ValueError:
        raise UsageError(f"--subset-interval takes an integer or 'auto', got {value!r}")
    if m < 1:
        raise UsageError("--subset-interval must be >= 1")
    return m


def run(args) -> str:
    cmd = args.command
    if cmd == "scan-runs":
        return cmd_scan_runs(*_range(args), threads=args.threads).render(args.format)
    if cmd == "least-prime":
        if args.kmax < 1:
            raise UsageError("kmax must be >= 1")
        return cmd_least_prime(args.kmax, args.ceiling).render(args.format)
    if cmd == "count":
        return cmd_count(
            _spec(args), *_range(args), cutoff=args.cutoff, subset_interval=_subset(args.subset_interval),
            sample=args.sample, seed=args.seed, threads=args.threads,
        ).render(args.format)
    if cmd == "exponent-experiment":
        return cmd_exponent_experiment(args.q, args.a, *_range(args), threads=args.threads).render(args.format)
    if cmd == "constants":
        if args.cutoff < 2:
            raise UsageError("--cutoff must be >= 2")
        return json.dumps(cmd_constants(args.cutoff), indent=2)
    if cmd == "summatory":
        return cmd_summatory(args.x, args.kind, args.s, args.q, args.a, args.cutoff).render(args.format)
    if cmd == "correlation":
        return cmd_correlation(args.x, args.offsets, args.s, args.q, args.cutoff).render(args.format)
    if cmd == "families":
        return cmd_families(*_range(args), threads=args.threads).render(args.format)
    if cmd == "oracle-check":
        return cmd_oracle_check(*_range(args, default=(2, 2000)), threads=args.threads).render(args.format)
    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.cache:
        use_factor_cache(args.cache)
    try:
        text = run(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ResourceError, RangeError, ContractError) as exc:
        print(f"primroots: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        parser.error(str(exc))
    finally:
        if args.cache:
            use_factor_cache(None)
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

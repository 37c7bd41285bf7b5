"""Command-line front end.

Matrices travel in the text format of :mod:`kidempotent.matrix01` and
decompositions in the serialization of :mod:`kidempotent.structure`;
both are read from a file argument or standard input, so commands can be
piped into each other. Exit codes: 0 for success, 1 for a mathematically
meaningful "no" (a rejected matrix, a failed theorem check, invalid
block parameters), 2 for usage or format errors. Malformed input never
exits 1, and identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from .extremal import construct_extremal, extremal_families, family_line, gamma
from .matrix01 import Matrix01, MatrixFormatError, from_text, permute, to_text
from .oracle import FREE_ORDER_LIMIT, ORDER_LIMIT, census, serialize_census
from .structure import (
    CycleLengthInvalid,
    DecompositionFormatError,
    ProductNotZeroOne,
    StructureError,
    _compose_rows,
    decompose,
    idempotency_index,
    parse_decomposition,
    power_failure,
    serialize_decomposition,
)

__all__ = ["entrypoint", "main"]


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as handle:
        return handle.read()


def _load_matrix(path: str | None) -> Matrix01:
    return from_text(_read_input(path))


def _usage_error(message: str) -> int:
    print(message, file=sys.stderr)
    return 2


def _require_k_arg(k: int) -> bool:
    return isinstance(k, int) and k >= 2


def cmd_check(args) -> int:
    if not _require_k_arg(args.k):
        return _usage_error("--k must be at least 2")
    matrix = _load_matrix(args.file)
    failure = power_failure(matrix, args.k)
    if failure is None:
        print("k-idempotent")
        return 0
    i, j = failure.witness
    print(f"not k-idempotent: witness ({i},{j})")
    return 1


def cmd_decompose(args) -> int:
    if not _require_k_arg(args.k):
        return _usage_error("--k must be at least 2")
    matrix = _load_matrix(args.file)
    result = decompose(matrix, args.k)
    if isinstance(result, StructureError):
        i, j = result.witness
        print(f"error={result.kind.value}")
        print(f"witness={i},{j}")
        return 1
    print(serialize_decomposition(result), end="")
    return 0


def cmd_compose(args) -> int:
    d = parse_decomposition(_read_input(args.file))
    k = args.k if args.k is not None else d.k
    if not _require_k_arg(k):
        return _usage_error("--k must be at least 2")
    try:
        canonical = _compose_rows(
            d.source_count,
            d.cycle_lengths,
            d.sink_count,
            d.source_to_cycle,
            d.cycle_to_sink,
            k,
        )
    except CycleLengthInvalid as exc:
        print("error=CycleLengthInvalid")
        print(f"detail={exc}")
        return 1
    except ProductNotZeroOne as exc:
        i, j = exc.witness
        print("error=ProductNotZeroOne")
        print(f"witness={i},{j}")
        return 1
    print(to_text(permute(canonical, d.sigma)), end="")
    return 0


def cmd_gamma(args) -> int:
    if args.n < 1:
        return _usage_error("--n must be at least 1")
    print(gamma(args.n))
    return 0


def cmd_extremal(args) -> int:
    if args.n < 1:
        return _usage_error("--n must be at least 1")
    if not _require_k_arg(args.k):
        return _usage_error("--k must be at least 2")
    families = extremal_families(args.n, args.k)
    blocks = []
    for params in families:
        matrix = construct_extremal(args.n, args.k, params)
        blocks.append(family_line(args.n, args.k, params) + "\n" + to_text(matrix))
    print("\n".join(blocks), end="")
    return 0


def cmd_census(args) -> int:
    if args.n < 1:
        return _usage_error("--n must be at least 1")
    if args.n > ORDER_LIMIT:
        return _usage_error(f"--n must be at most {ORDER_LIMIT}")
    if args.n > FREE_ORDER_LIMIT and not args.max_order_5:
        return _usage_error("order 5 requires --max-order-5")
    if not _require_k_arg(args.k):
        return _usage_error("--k must be at least 2")
    report = census(args.n, args.k, allow_order_5=args.max_order_5)
    print(serialize_census(report), end="")
    ok = report.characterization_ok and report.upper_triangular_ok and report.max_density_ok
    return 0 if ok else 1


def cmd_index(args) -> int:
    matrix = _load_matrix(args.file)
    value = idempotency_index(matrix)
    if value is None:
        print("none")
        return 1
    print(value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kidempotent",
        description="Analyze, decompose, build and verify k-idempotent 0-1 matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test whether A^k = A")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("file", nargs="?", help="matrix file (default: stdin)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="recover the canonical block data")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compose", help="rebuild a matrix from block data")
    p.add_argument("--k", type=int, default=None, help="override the serialized k")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("gamma", help="print the density ceiling gamma(n)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("extremal", help="list maximum-density families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("census", help="exhaustively verify one (n, k) pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-order-5", action="store_true", dest="max_order_5")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("index", help="print the minimal k with A^k = A")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_index)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MatrixFormatError, DecompositionFormatError) as exc:
        return _usage_error(f"format error: {exc}")
    except OSError as exc:
        return _usage_error(f"cannot read input: {exc}")


def entrypoint() -> None:
    sys.exit(main())

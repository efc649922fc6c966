"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error (range, capacity,
malformed input), 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .bench import asymptotics_report, asymptotics_to_csv, records_to_csv, sweep
from .combinadics import DEFAULT_LUT_CAP, build_pascal_table
from .errors import OfdmImError
from .mapper import (
    BACKENDS,
    OfdmImConfig,
    demap_symbol,
    format_bits,
    format_symbol,
    make_selector,
    map_symbol,
    parse_symbol,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INTERNAL = 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _backend_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [b for b in names if b not in BACKENDS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"backends must be drawn from {','.join(BACKENDS)}, got {text!r}")
    return names


def _add_cfg_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="number of subcarriers")
    p.add_argument("--k", type=int, required=True, help="number of active subcarriers")
    p.add_argument("--m-ary", type=int, default=2, help="constellation order M (default 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ofdmim", description="OFDM-IM mapper tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map", help="map a bit word to one OFDM-IM symbol")
    _add_cfg_args(p)
    p.add_argument("--backend", choices=BACKENDS, default="pt")
    p.add_argument("--bits", required=True, help="p1 + p2 bits, MSB first")
    p.add_argument("--lut-cap", type=int, default=DEFAULT_LUT_CAP)

    p = sub.add_parser("demap", help="recover the bit word from a symbol line")
    _add_cfg_args(p)
    p.add_argument("--symbol", help="symbol line as printed by map (default: read stdin)")

    p = sub.add_parser("table", help="print Pascal table rows")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--row", type=int, help="print only row c")

    p = sub.add_parser("bench", help="runtime/throughput sweep as CSV (k = n/2)")
    p.add_argument("--n-list", type=_int_list, default=[8, 16, 32, 64])
    p.add_argument("--backends", type=_backend_list, default=list(BACKENDS))
    p.add_argument("--m-ary-list", type=_int_list, default=[2])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--warmup", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lut-cap", type=int, default=DEFAULT_LUT_CAP, help="max full-LUT entries")
    p.add_argument(
        "--pt-mem-cap",
        type=int,
        default=None,
        help="max Pascal table bytes (default: half of available memory)",
    )

    p = sub.add_parser("asymptotics", help="exact p1 vs n - log2(sqrt(n)) for k = n/2")
    p.add_argument("--n-list", type=_int_list, required=True)
    return parser


def _run_map(args) -> int:
    cfg = OfdmImConfig(args.n, args.k, args.m_ary)
    selector = make_selector(cfg, args.backend, lut_cap=args.lut_cap)
    print(format_symbol(map_symbol(args.bits, cfg, selector)))
    return EXIT_OK


def _run_demap(args) -> int:
    cfg = OfdmImConfig(args.n, args.k, args.m_ary)
    line = args.symbol if args.symbol is not None else sys.stdin.readline()
    print(format_bits(demap_symbol(parse_symbol(line), cfg)))
    return EXIT_OK


def _run_table(args) -> int:
    table = build_pascal_table(args.n, args.k)
    rows = range(table.n_rows) if args.row is None else [args.row]
    for c in rows:
        if not 0 <= c < table.n_rows:
            raise OfdmImError(f"row {c} outside 0..{table.n_rows - 1}")
        print(",".join(str(v) for v in table.row(c)))
    return EXIT_OK


def _run_bench(args) -> int:
    if args.trials < 1 or args.warmup < 0:
        raise OfdmImError("need --trials >= 1 and --warmup >= 0")
    records = sweep(
        args.n_list,
        args.m_ary_list,
        args.backends,
        args.trials,
        args.warmup,
        args.seed,
        lut_cap=args.lut_cap,
        pt_max_bytes=args.pt_mem_cap,
    )
    records_to_csv(records, sys.stdout)
    return EXIT_OK


def _run_asymptotics(args) -> int:
    sys.stdout.write(asymptotics_to_csv(asymptotics_report(args.n_list)))
    return EXIT_OK


COMMANDS = {
    "map": _run_map,
    "demap": _run_demap,
    "table": _run_table,
    "bench": _run_bench,
    "asymptotics": _run_asymptotics,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except OfdmImError as exc:
        print(f"ofdmim {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except AssertionError as exc:
        print(f"ofdmim {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

"""Command-line surface.

Exit codes: 0 success, 1 usage error, 2 data/validation failure,
3 oracle-equivalence failure.
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from . import fileio, oracle
from .builder import build_mdag, compact_mdag, stats
from .occurrence import as_bytes
from .query import (
    McsNotFoundError,
    annotate_counts,
    count,
    enumerate_mcs,
    rank,
    search_prefix,
    select,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_MISMATCH = 3

VERIFY_CAP = 100_000


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_input(value: str) -> bytes:
    """Literal string, or @file holding raw bytes (trailing newline stripped)."""
    if value.startswith("@"):
        with open(value[1:], "rb") as fh:
            data = fh.read()
        if data.endswith(b"\n"):
            data = data[:-1]
        if data.endswith(b"\r"):
            data = data[:-1]
        return data
    return as_bytes(value)


def _print_bytes(s: bytes) -> None:
    sys.stdout.write(s.decode("latin-1") + "\n")


def _verify(g, limit: int = VERIFY_CAP) -> int:
    """Run is_maximal over enumerated strings; count of violations."""
    bad = 0

    def check(s: bytes):
        nonlocal bad
        if not oracle.is_maximal(s, g.x, g.y):
            bad += 1
            print(f"verify: non-maximal output {s!r}", file=sys.stderr)

    enumerate_mcs(g, on_emit=check, limit=limit)
    return bad


def _print_stats(g) -> None:
    report = stats(g)
    for key in (
        "nodes",
        "edges",
        "max_out_degree",
        "depth",
        "max_lm_multiplicity",
        "antichain_violations",
    ):
        print(f"{key}: {report[key]}")


def cmd_build(args) -> int:
    x = _read_input(args.x)
    y = _read_input(args.y)
    g = build_mdag(x, y)
    if not args.no_compact:
        compact_mdag(g)
    verified = False
    if args.verify:
        if _verify(g):
            return EXIT_DATA
        verified = True
    g.verified = verified
    fileio.save(g, args.out)
    if args.stats:
        _print_stats(g)
    return EXIT_OK


def _load(path):
    return fileio.load(path)


def cmd_count(args) -> int:
    print(count(_load(args.graph)))
    return EXIT_OK


def cmd_list(args) -> int:
    g = _load(args.graph)
    if args.prefix is not None and not args.compressed:
        search_prefix(g, as_bytes(args.prefix), on_emit=_print_bytes)
        return EXIT_OK

    def emit(item):
        if args.compressed:
            keep, suffix = item
            sys.stdout.write(f"{keep},{suffix.decode('latin-1')}\n")
        else:
            _print_bytes(item)

    mode = "compressed" if args.compressed else "full"
    if args.prefix is not None:
        # Compressed listing of a prefix subset: filter the full stream.
        prefix = as_bytes(args.prefix)
        emitted = [0]
        prev = [b""]

        def emit_filtered(s: bytes):
            if not s.startswith(prefix):
                return
            keep = 0
            for a, b in zip(prev[0], s):
                if a != b:
                    break
                keep += 1
            sys.stdout.write(f"{keep},{s[keep:].decode('latin-1')}\n")
            prev[0] = s
            emitted[0] += 1

        enumerate_mcs(g, on_emit=emit_filtered, limit=args.limit)
        return EXIT_OK
    enumerate_mcs(g, on_emit=emit, mode=mode, limit=args.limit)
    return EXIT_OK


def cmd_select(args) -> int:
    g = _load(args.graph)
    try:
        _print_bytes(select(g, args.index))
    except IndexError as exc:
        print(f"select: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_rank(args) -> int:
    g = _load(args.graph)
    try:
        print(rank(g, as_bytes(args.string)))
    except McsNotFoundError as exc:
        print(f"rank: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_search(args) -> int:
    g = _load(args.graph)
    search_prefix(g, as_bytes(args.prefix), on_emit=_print_bytes)
    return EXIT_OK


def cmd_stats(args) -> int:
    _print_stats(_load(args.graph))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    sys.stdout.write(fileio.export_dot(_load(args.graph)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    x = _read_input(args.x)
    y = _read_input(args.y)
    try:
        result = oracle.brute_force_mcs(x, y)
    except ValueError as exc:
        print(f"oracle: {exc}", file=sys.stderr)
        return EXIT_DATA
    for s in result.strings:
        _print_bytes(s)
    return EXIT_OK


def cmd_check(args) -> int:
    x = _read_input(args.x)
    y = _read_input(args.y)
    try:
        expected = oracle.brute_force_mcs(x, y).strings
    except ValueError as exc:
        print(f"check: {exc}", file=sys.stderr)
        return EXIT_DATA
    g = build_mdag(x, y)
    compact_mdag(g)
    got: list[bytes] = []
    enumerate_mcs(g, on_emit=got.append)
    ok = got == expected and count(g) == len(expected)
    print(f"mdag: {len(got)} strings, oracle: {len(expected)} strings")
    if not ok:
        missing = sorted(set(expected) - set(got))
        spurious = sorted(set(got) - set(expected))
        for s in missing[:20]:
            print(f"missing: {s!r}", file=sys.stderr)
        for s in spurious[:20]:
            print(f"spurious: {s!r}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_bench(args) -> int:
    lengths = [int(part) for part in args.lengths.split(",") if part]
    try:
        bench_mod.run_bench(lengths, args.sigma, args.seed, plot_dir=args.plot_dir)
    except AssertionError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mcsdag",
        description="Index, count, enumerate, and search all maximal common "
        "subsequences of two strings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an MDAG and save it")
    p.add_argument("-x", required=True, help="first string, or @file")
    p.add_argument("-y", required=True, help="second string, or @file")
    p.add_argument("-o", "--out", required=True, help="output .mdag path")
    p.add_argument("--no-compact", action="store_true")
    p.add_argument("--verify", action="store_true",
                   help="check maximality of every enumerated output")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("count", help="print |MCS(X,Y)|")
    p.add_argument("-g", "--graph", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("list", help="enumerate strings in lexicographic order")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--prefix", default=None)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--compressed", action="store_true",
                   help="emit keep-count,suffix deltas")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("select", help="print the i-th string (1-based)")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-i", "--index", type=int, required=True)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("rank", help="print the 1-based rank of a member string")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-s", "--string", required=True)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("search", help="list all members with a given prefix")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-p", "--prefix", required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("stats", help="print structural statistics")
    p.add_argument("-g", "--graph", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export-dot", help="print the graph in DOT format")
    p.add_argument("-g", "--graph", required=True)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("oracle", help="brute-force MCS set (size-capped)")
    p.add_argument("-x", required=True)
    p.add_argument("-y", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", help="build + oracle + assert language equality")
    p.add_argument("-x", required=True)
    p.add_argument("-y", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="random-instance benchmark, CSV to stdout")
    p.add_argument("--lengths", default="50,100,200")
    p.add_argument("--sigma", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot-dir", default=None,
                   help="also render matplotlib figures into this directory")
    p.set_defaults(func=cmd_bench)

    return parser


def cli(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except fileio.MdagFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    raise SystemExit(cli())


if __name__ == "__main__":
    main()

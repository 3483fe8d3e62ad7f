"""Command-line entry point: ``hodgespec <command> [options]`` (or ``python -m hodgespec``)."""

from __future__ import annotations

import argparse
import json
import sys

from .runner import EXIT_INPUT, RunManifest, run


def _source_args(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", help="complex file in .cplx format")
    src.add_argument("--generate", help='generator spec, e.g. "octahedron" or "linial-meshulam n=8 p=0.5"')


def _common_args(p):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output_format", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--csv", dest="output_format", action="store_const", const="csv", help="CSV eigenvalue table")
    p.add_argument("--out", help="also write the output to this file (atomically)")
    p.add_argument("--seed", type=int, default=0, help="seed for random generators (default 0)")
    p.add_argument("--tolerance", type=float, help="relative tolerance for inequality checks")
    p.set_defaults(output_format="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodgespec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="Laplace spectra split into trivial / nontrivial / colored parts")
    _source_args(p)
    p.add_argument("--dim", type=int, help="only this dimension (default: all)")
    _common_args(p)

    p = sub.add_parser("cheeger", help="Cheeger-type inequality for vertex partitions")
    _source_args(p)
    p.add_argument("--sets", help='partition "A;B;C", e.g. "0 3;1 4;2 5"')
    p.add_argument("--all-partitions", action="store_true", help="check every partition into three blocks")
    p.add_argument("--theta", type=float, help="also compute h_theta for this theta")
    _common_args(p)

    p = sub.add_parser("mixing", help="2-gallery mixing bound on a regular tripartite complex")
    _source_args(p)
    p.add_argument("--sets", help='"A;B;C;D" with A u D, B, C in different blocks')
    p.add_argument("--all-partitions", action="store_true", help="check every legal placement")
    _common_args(p)

    p = sub.add_parser("gallery", help="rainbow / path / gallery counts")
    _source_args(p)
    p.add_argument("--queries", help='JSON file with [{"op": ..., "sets": [[...], ...], "j": ...}]')
    p.add_argument("--sets", help="semicolon-separated vertex sets for a single query")
    p.add_argument("--op", choices=["rainbow", "paths", "galleries", "spectral"], help="single-query operation")
    p.add_argument("-j", type=int, help="cell dimension for rainbow / galleries")
    _common_args(p)

    p = sub.add_parser("satake", help="explicit operators and eigenvalues for Satake parameters")
    p.add_argument("--z", nargs=3, metavar="Z", help='three parameters as "re,im" or "a+bi"')
    p.add_argument("--pattern", help='e.g. "trivial", "steinberg", "type-c c=0.6+0.8i q=4"')
    p.add_argument("--q", type=int, help="residue field size")
    _common_args(p)

    p = sub.add_parser("chromatic", help="weak chromatic number (exhaustive)")
    _source_args(p)
    _common_args(p)

    p = sub.add_parser("check-all", help="run the invariant battery on a corpus")
    p.add_argument("--corpus", default="default")
    _common_args(p)
    return parser


_OPTION_KEYS = ("dim", "sets", "all_partitions", "theta", "queries", "op", "j", "z", "pattern", "q", "corpus")


def manifest_from_args(args) -> RunManifest:
    options = {}
    for k in _OPTION_KEYS:
        v = getattr(args, k, None)
        if v is not None and v is not False:  # keep 0, e.g. --dim 0
            options[k] = v
    return RunManifest(
        command=args.command,
        input=getattr(args, "input", None),
        generate=getattr(args, "generate", None),
        options=options,
        tolerance=args.tolerance,
        output_format=args.output_format,
        out=args.out,
        seed=args.seed,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    result = run(manifest_from_args(args))
    if result.code >= EXIT_INPUT:
        sys.stderr.write(json.dumps(result.payload) + "\n")
    else:
        sys.stdout.write(result.text)
    return result.code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: morph, verify, gen, export."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import export, io
from .errors import MorphError
from .instances import drawing_pair
from .morph import AnyDirection, Direction, count_steps
from .pseudomorph import BuildStats, build_pseudo_morph
from .reinsert import convert
from .verify import Violation, sample_oracle, verify_morph

EXIT_OK, EXIT_PARSE, EXIT_BUILD, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("unimorph")


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _direction_text(d) -> str:
    if isinstance(d, AnyDirection):
        return "any"
    if isinstance(d, Direction):
        return f"({d.vector[0]}, {d.vector[1]})"
    return f"not unidirectional: vertices {d.u} and {d.v} move in different directions"


def cmd_morph(args) -> int:
    try:
        d1, d2 = io.load_pair(_read(args.input))
    except (io.ParseError, MorphError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    stats = BuildStats()
    try:
        pm = build_pseudo_morph(d1, d2, stats)
        m = convert(pm, d1, max_retries=args.max_retries)
    except MorphError as exc:
        print(f"build failed ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_BUILD
    text = io.dump_morph(m, preview=args.preview)
    # verify what will actually be written
    report = verify_morph(io.load_morph(text), audit=args.audit)
    if not report.certified or m.steps != count_steps(pm).total:
        i, failure = report.failures[0] if report.failures else (0, None)
        print(f"internal error: built morph failed verification at step {i}: "
              f"{failure.describe() if failure else 'step count mismatch'}", file=sys.stderr)
        return EXIT_VERIFY
    _write(args.output, text)
    print(f"Certified: {m.steps} steps ({stats.direct} direct contractions, "
          f"{stats.retargeted} retargeted)", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        m = io.load_morph(_read(args.morph))
    except (io.ParseError, MorphError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read morph: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = verify_morph(m, audit=args.audit)
    lines = [f"status: {report.status}", f"k: {report.k}"]
    for i, d in enumerate(report.directions):
        lines.append(f"step {i}: {_direction_text(d)}")
    for i, f in report.failures:
        lines.append(f"failure at step {i}: {f.describe()}")
    disagreements = []
    if args.oracle_samples:
        failing = {i for i, _ in report.failures}
        for i in range(m.steps):
            verdict = sample_oracle(m.drawing(i), m.drawing(i + 1), args.oracle_samples)
            if isinstance(verdict, Violation) and i not in failing:
                disagreements.append((i, verdict))
        lines.append(f"oracle: {args.oracle_samples} samples per step, "
                     f"{len(disagreements)} disagreements")
    print("\n".join(lines))
    if disagreements:
        i, v = disagreements[0]
        print(f"internal error: sampling found a violation at step {i} (t = {v.time}: {v.detail}) "
              "that the exact check missed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK if report.certified else EXIT_VERIFY


def cmd_gen(args) -> int:
    if args.n < 3:
        print("n must be at least 3", file=sys.stderr)
        return EXIT_PARSE
    d1, d2 = drawing_pair(args.n, args.seed, flips=args.flips)
    _write(args.output, io.dump_pair(d1, d2))
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        m = io.load_morph(_read(args.morph))
    except (io.ParseError, MorphError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read morph: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = export.to_svg(m) if args.format == "svg" else export.to_csv(m)
    _write(args.output, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unimorph", description="Unidirectional morphs of planar triangulations.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("morph", help="compute a certified morph between two drawings")
    m.add_argument("input", help="drawing-pair JSON file ('-' for stdin)")
    m.add_argument("output", help="morph JSON file ('-' for stdout)")
    m.add_argument("--max-retries", type=int, default=64, help="sector radius halvings allowed")
    m.add_argument("--audit", action="store_true", help="also run the quadratic segment check")
    m.add_argument("--preview", action="store_true", help="add float coordinates to the output")
    m.set_defaults(func=cmd_morph)

    v = sub.add_parser("verify", help="check a morph file exactly")
    v.add_argument("morph")
    v.add_argument("--oracle-samples", type=int, default=0, metavar="N")
    v.add_argument("--audit", action="store_true")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="generate a random drawing pair")
    g.add_argument("n", type=int)
    g.add_argument("output")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--flips", type=int, default=0, help="random edge flips after generation")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("export", help="render a morph as SVG or CSV")
    e.add_argument("morph")
    e.add_argument("output")
    e.add_argument("--format", choices=("svg", "csv"), default="svg")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

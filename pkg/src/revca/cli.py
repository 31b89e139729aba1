"""Command-line front end: pattern generation, rule induction, verification,
exhaustive enumeration, and simulation.

Exit codes: 0 success (and "injective" for verify), 2 usage or malformed
input, 3 validation failure such as an independence violation, 4 internal
invariant breach.  Stdout is byte-deterministic for fixed inputs; progress and
summaries go to stderr, timestamps only into catalog files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog, engine, injectivity, patterns, rules

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("REVCA_THREADS", "1")))
    except ValueError:
        return 1


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _rule_payload(rt: rules.RuleTable, provenance: tuple[str, ...],
                  verified_debruijn: bool = False,
                  verified_periodic_to: int = 0) -> dict:
    payload = rules.rule_to_json(rt, provenance)
    payload["trivial"] = str(rules.classify_trivial(rt))
    payload["balanced"] = rules.is_balanced(rt)
    payload["verified_debruijn"] = verified_debruijn
    payload["verified_periodic_to"] = verified_periodic_to
    return payload


# ---------------------------------------------------------------------------
# Handlers

def _cmd_gen_patterns(args: argparse.Namespace) -> int:
    if args.diameter is not None and (args.left is not None or args.right is not None):
        print("error: give either --diameter or --left/--right, not both", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.diameter is not None:
            found = patterns.generate_all_patterns(args.diameter)
        elif args.left is not None and args.right is not None:
            found = patterns.generate_injective_patterns(args.left, args.right)
        else:
            print("error: need --diameter or both --left and --right", file=sys.stderr)
            return EXIT_USAGE
    except patterns.PatternError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for p in found:
        print(p)
    print(f"count: {len(found)}", file=sys.stderr)
    return EXIT_OK


def _cmd_gen_extended(args: argparse.Namespace) -> int:
    try:
        found = patterns.enumerate_extended(args.diameter)
    except patterns.PatternError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for p in found:
        print(p)
    print(f"count: {len(found)}", file=sys.stderr)
    return EXIT_OK


def _cmd_counts(args: argparse.Namespace) -> int:
    if not 3 <= args.max_diameter <= 12:
        print("error: --max-diameter must be between 3 and 12", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    for n in range(3, args.max_diameter + 1):
        rows.append({
            "diameter": n,
            "injective_patterns": len(patterns.generate_all_patterns(n)),
            "extended_patterns": len(patterns.enumerate_extended(n)),
        })
    if args.json:
        _emit({"rows": rows})
    else:
        print(f"{'N':>3} {'injective':>10} {'extended':>10}")
        for r in rows:
            print(f"{r['diameter']:>3} {r['injective_patterns']:>10} "
                  f"{r['extended_patterns']:>10}")
    return EXIT_OK


def _read_pattern_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _induce_one(texts: list[str], args: argparse.Namespace) -> int:
    mixture = patterns.build_mixture(texts)
    rt = rules.induce(mixture)
    verified_db = False
    verified_to = 0
    if args.verify:
        verdict = injectivity.debruijn_injective(rt)
        periodic_ok = all(
            injectivity.periodic_bijective(rt, n) for n in range(1, args.max_period + 1))
        if not verdict.injective or not periodic_ok:
            print(f"INTERNAL ERROR: induced rule for {texts} failed verification "
                  f"(debruijn={verdict.injective}, periodic={periodic_ok}); "
                  "this indicates a bug, please report it", file=sys.stderr)
            return EXIT_INTERNAL
        verified_db = True
        verified_to = args.max_period
    provenance = tuple(str(m) for m in mixture.members)
    _emit(_rule_payload(rt, provenance, verified_db, verified_to))
    if args.catalog:
        catalog.append_entries(args.catalog, [catalog.entry_for_rule(
            rt, provenance, verified_db, verified_to)])
    return EXIT_OK


def _cmd_induce(args: argparse.Namespace) -> int:
    groups: list[list[str]] = []
    if args.stdin:
        # each input line is induced on its own (pipe-friendly)
        groups = [[t] for t in _read_pattern_lines(sys.stdin.read())]
    elif args.mixture_file:
        try:
            text = Path(args.mixture_file).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        groups = [_read_pattern_lines(text)]
    if args.pattern:
        groups.append(list(args.pattern))
    if not groups or not any(groups):
        print("error: no patterns given", file=sys.stderr)
        return EXIT_USAGE
    for texts in groups:
        try:
            code = _induce_one(texts, args)
        except patterns.MixtureError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        except patterns.PatternError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except rules.FlipCollisionError as exc:
            print(f"INTERNAL ERROR: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        if code != EXIT_OK:
            return code
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        w = int(args.wolfram, 0)
        rt = rules.from_wolfram(args.diameter, w)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    verdict = injectivity.debruijn_injective(rt)
    print("Injective" if verdict.injective else "NotInjective")
    if verdict.witness:
        print(f"witness: {verdict.witness[0]} {verdict.witness[1]}")
    print(f"trivial: {rules.classify_trivial(rt)}")
    print(f"balanced: {str(rules.is_balanced(rt)).lower()}")
    if args.max_period:
        ok = all(injectivity.periodic_bijective(rt, n)
                 for n in range(1, args.max_period + 1))
        print(f"periodic_bijective_to_{args.max_period}: {str(ok).lower()}")
    return EXIT_OK if verdict.injective else 1


def _sweep_units(diameter: int):
    """(scan callable, unit list) for the checkpointable sweep of a diameter."""
    import functools

    if diameter < injectivity.LONG_SWEEP_DIAMETER:
        units = injectivity.sweep_chunks(diameter)
    else:
        units = injectivity.balanced_sweep_blocks(diameter)
    return functools.partial(injectivity.scan_unit, diameter), units


def _cmd_enumerate(args: argparse.Namespace) -> int:
    d = args.diameter
    if d > injectivity.MAX_SWEEP_DIAMETER:
        print(f"error: enumerate refuses diameter {d} (search space 2^(2^{d}))",
              file=sys.stderr)
        return EXIT_USAGE
    if d >= injectivity.LONG_SWEEP_DIAMETER and not args.allow_long:
        print(f"error: diameter {d} sweep is long-running; pass --allow-long",
              file=sys.stderr)
        return EXIT_USAGE
    skip = frozenset(
        rules.to_wolfram(t) for t in rules.trivial_tables(d)) if args.exclude_trivial \
        else frozenset()

    scan, units = _sweep_units(d)
    start = 0
    if args.checkpoint:
        cp = catalog.load_checkpoint(args.checkpoint)
        if cp is not None:
            if cp.diameter != d or cp.exclude_trivial != args.exclude_trivial:
                print("error: checkpoint was written for different sweep parameters",
                      file=sys.stderr)
                return EXIT_USAGE
            start = cp.next_unit
        else:
            catalog.save_checkpoint(args.checkpoint, catalog.SweepCheckpoint(
                d, args.exclude_trivial, 0, len(units)))

    def handle(found: list[int], unit_index: int) -> None:
        entries = []
        for w in found:
            if w in skip:
                continue
            rt = rules.from_wolfram(d, w)
            entry = catalog.entry_for_rule(rt, (), verified_debruijn=True,
                                           timestamp=bool(args.catalog))
            print(json.dumps(catalog.entry_to_dict(entry, with_timestamp=False),
                             sort_keys=True))
            entries.append(entry)
        if args.catalog and entries:
            catalog.append_entries(args.catalog, entries)
        if args.checkpoint:
            catalog.save_checkpoint(args.checkpoint, catalog.SweepCheckpoint(
                d, args.exclude_trivial, unit_index + 1, len(units)))

    pending = list(range(start, len(units)))
    workers = _workers()
    if workers > 1 and len(pending) > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            for i, found in zip(pending, pool.imap(scan, [units[i] for i in pending],
                                                   chunksize=1)):
                handle(found, i)
    else:
        for i in pending:
            handle(scan(units[i]), i)
    if start >= len(units):
        print("sweep already complete per checkpoint; results are in the catalog",
              file=sys.stderr)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    try:
        if args.pattern:
            mixture = patterns.build_mixture(list(args.pattern))
            if args.diameter is not None and args.diameter != mixture.diameter:
                print("error: --diameter disagrees with the patterns", file=sys.stderr)
                return EXIT_USAGE
            rt = rules.induce(mixture)
        elif args.wolfram is not None:
            if args.diameter is None:
                print("error: --wolfram needs --diameter", file=sys.stderr)
                return EXIT_USAGE
            rt = rules.from_wolfram(args.diameter, int(args.wolfram, 0), args.anchor)
        else:
            print("error: need --pattern or --wolfram", file=sys.stderr)
            return EXIT_USAGE
        rows = engine.space_time(rt, args.init, args.steps)
    except patterns.MixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, patterns.PatternError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.pbm:
        raster = f"P1\n{len(args.init)} {len(rows)}\n" + "\n".join(rows) + "\n"
        Path(args.pbm).write_text(raster, encoding="ascii")
        print(f"wrote {args.pbm}", file=sys.stderr)
    else:
        for row in rows:
            print(row)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revca",
        description="Generate reversible 1D binary CA rules from stability "
                    "patterns and verify them independently.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-patterns", help="enumerate injective pattern cores")
    p.add_argument("--diameter", "-d", type=int, default=None)
    p.add_argument("--left", type=int, default=None, help="left radius")
    p.add_argument("--right", type=int, default=None, help="right radius")
    p.set_defaults(handler=_cmd_gen_patterns)

    p = sub.add_parser("gen-extended", help="enumerate wildcard-extended patterns")
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.set_defaults(handler=_cmd_gen_extended)

    p = sub.add_parser("counts", help="pattern counts per diameter")
    p.add_argument("--max-diameter", "-n", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_counts)

    p = sub.add_parser("induce", help="induce a rule from patterns or a mixture file")
    p.add_argument("pattern", nargs="*", help="pattern texts forming one mixture")
    p.add_argument("--mixture-file", default=None,
                   help="file with one pattern per line forming one mixture")
    p.add_argument("--stdin", action="store_true",
                   help="read patterns from stdin, one singleton rule per line")
    p.add_argument("--verify", action="store_true",
                   help="run the injectivity decision and periodic checks")
    p.add_argument("--max-period", type=int, default=12)
    p.add_argument("--catalog", default=None, help="append entries to this JSONL file")
    p.set_defaults(handler=_cmd_induce)

    p = sub.add_parser("verify", help="decide injectivity of one rule")
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.add_argument("--wolfram", "-w", required=True)
    p.add_argument("--max-period", type=int, default=0,
                   help="also run periodic permutation checks up to this length")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("enumerate", help="exhaustively enumerate injective rules")
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.add_argument("--exclude-trivial", action="store_true")
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--catalog", default=None)
    p.add_argument("--checkpoint", default=None)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("simulate", help="run a rule on a periodic configuration")
    p.add_argument("--diameter", "-d", type=int, default=None)
    p.add_argument("--wolfram", "-w", default=None)
    p.add_argument("--anchor", type=int, default=None)
    p.add_argument("--pattern", nargs="+", default=None,
                   help="induce the simulated rule from these patterns")
    p.add_argument("--init", required=True, help="initial binary word")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--pbm", default=None, help="write a P1 space-time raster here")
    p.set_defaults(handler=_cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())

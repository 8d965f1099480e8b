"""``ncm`` command line: validate, simulate, enumerate, analyze, export.

Results go to stdout, diagnostics and errors to stderr. Exit status is 0 on
success, 1 for domain errors (unreadable/invalid maps, unknown ids) and 2
for usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import (
    MAX_ENUMERATION_CONCEPTS,
    TooManyScenarios,
    enumerate_scenarios,
    group_by_attractor,
    indeterminate_edges,
    influence_profiles,
    strongest_edges,
)
from .dsl import MapDocument, MapSyntaxError, read_map_document
from .formats import dump_json, export_dot, render_matrix, write_report
from .inference import (
    Outcome,
    SimulationConfig,
    find_hidden_pattern,
    format_raw,
    format_state,
    make_state,
)
from .model import NCMError, build_adjacency, weight_text


class DomainError(Exception):
    """Reported on stderr with exit status 1."""


def _ids(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(s < 0 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be non-negative")
    return sizes


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _load(path: str) -> MapDocument:
    """Read and fully validate a map file, or raise DomainError."""
    try:
        doc = read_map_document(path)
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror or exc}")
    except MapSyntaxError as exc:
        raise DomainError("\n".join(f"{path}:{e}" for e in exc.errors))
    errors = [(line, col, d) for line, col, d in doc.diagnostics() if d.is_error]
    if errors:
        raise DomainError("\n".join(f"{path}:{line}:{col} {d.code} {d.message}" for line, col, d in errors))
    return doc


def cmd_validate(args, out) -> int:
    try:
        doc = read_map_document(args.path)
    except OSError as exc:
        raise DomainError(f"{args.path}: {exc.strerror or exc}")
    except MapSyntaxError as exc:
        for e in exc.errors:
            print(str(e), file=sys.stderr)
        return 1
    failed = False
    for line, col, d in doc.diagnostics():
        print(f"{line}:{col} {d.code} {d.message}", file=sys.stderr)
        failed = failed or d.is_error
    return 1 if failed else 0


def cmd_simulate(args, out) -> int:
    cmap = _load(args.path).map
    on = _ids(args.on)
    clamp = None if args.clamp is None else frozenset(_ids(args.clamp))
    k = cmap.default_threshold if args.threshold is None else args.threshold
    config = SimulationConfig(threshold=k, max_steps=args.max_steps, clamp=clamp,
                              record_trace=args.trace or args.json)
    initial = make_state(cmap, on=on)
    result = find_hidden_pattern(cmap, initial, config)

    if args.json:
        out.write(dump_json(write_report(result, cmap, config, initial)))
        return 0

    print("concepts: " + " ".join(cmap.ids), file=out)
    print(f"initial: {format_state(initial)}", file=out)
    if args.trace:
        for n, (raw, state) in enumerate(result.trace, start=1):
            print(f"step {n}: raw {format_raw(raw)} -> {format_state(state)}", file=out)
    if result.outcome is Outcome.FIXED_POINT:
        print(f"fixed point after {result.steps_taken} steps", file=out)
        print(f"final: {format_state(result.state)}", file=out)
    elif result.outcome is Outcome.LIMIT_CYCLE:
        print(f"limit cycle of period {result.period} after {result.steps_taken} steps", file=out)
        for s in result.states:
            print(f"cycle: {format_state(s)}", file=out)
    else:
        print(f"step limit of {result.steps_taken} reached without repetition", file=out)
    return 0


def _scenario_json(row) -> dict:
    r = row.result
    d = {"on": list(row.on_set), "kind": r.outcome.value,
         "states": [[str(x) for x in s] for s in r.states]}
    if r.outcome is Outcome.LIMIT_CYCLE:
        d["period"] = r.period
    d["steps_taken"] = r.steps_taken
    return d


def cmd_enumerate(args, out) -> int:
    cmap = _load(args.path).map
    sizes = None if args.all or args.sizes is None else args.sizes
    config = SimulationConfig(threshold=cmap.default_threshold if args.threshold is None else args.threshold)
    try:
        rows = enumerate_scenarios(cmap, config, sizes, force=args.force)
    except TooManyScenarios as exc:
        raise DomainError(f"{exc} (pass --force to run anyway)")
    groups = group_by_attractor(rows)

    if args.json:
        doc = {
            "map": cmap.name,
            "concepts": list(cmap.ids),
            "scenarios": [_scenario_json(r) for r in rows],
            "attractors": [
                {"kind": g.outcome.value, "states": [[str(x) for x in s] for s in g.states],
                 "members": [list(m) for m in g.members]}
                for g in groups
            ],
        }
        out.write(dump_json(doc))
        return 0

    print("concepts: " + " ".join(cmap.ids), file=out)
    for row in rows:
        r = row.result
        states = " | ".join(format_state(s) for s in r.states) or "-"
        print(f"{{{','.join(row.on_set)}}}  {r.outcome.value}  {states}  steps={r.steps_taken}", file=out)
    print(f"attractors: {len(groups)}", file=out)
    for g in groups:
        states = " | ".join(format_state(s) for s in g.states) or "-"
        print(f"  {len(g.members):4d}  {g.outcome.value}  {states}", file=out)
    return 0


def cmd_analyze(args, out) -> int:
    cmap = _load(args.path).map
    profiles = influence_profiles(cmap)
    strongest = strongest_edges(cmap, args.top)
    indet = indeterminate_edges(cmap)

    if args.json:
        pair = lambda p: {"concept": p[0], "weight": weight_text(p[1])}
        edge = lambda e: {"from": e.source, "to": e.target, "weight": weight_text(e.weight)}
        doc = {
            "map": cmap.name,
            "profiles": [
                {"concept": p.concept, "in_degree": p.in_degree, "out_degree": p.out_degree,
                 "incoming": [pair(x) for x in p.incoming], "outgoing": [pair(x) for x in p.outgoing]}
                for p in profiles
            ],
            "strongest": [edge(e) for e in strongest],
            "indeterminate": [edge(e) for e in indet],
        }
        out.write(dump_json(doc))
        return 0

    width = max([len(c) for c in cmap.ids] + [7])
    print(f"{'concept'.ljust(width)}  in  out  incoming", file=out)
    for p in profiles:
        inc = ", ".join(f"{src}:{weight_text(w)}" for src, w in p.incoming) or "-"
        print(f"{p.concept.ljust(width)}  {p.in_degree:2d}  {p.out_degree:3d}  {inc}", file=out)
    print(f"strongest {args.top}:", file=out)
    for e in strongest:
        print(f"  {e.source} -> {e.target}  {weight_text(e.weight)}", file=out)
    print(f"indeterminate: {len(indet)}", file=out)
    for e in indet:
        print(f"  {e.source} -> {e.target}  I", file=out)
    return 0


def cmd_export(args, out) -> int:
    cmap = _load(args.path).map
    if args.format == "dot":
        text = export_dot(cmap)
    else:
        text = render_matrix(build_adjacency(cmap), cmap.ids)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise DomainError(f"{args.output}: {exc.strerror or exc}")
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncm", description="Neutrosophic cognitive map toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a map file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simulate", help="find the hidden pattern for an on-set")
    p.add_argument("path")
    p.add_argument("--on", default="", help="comma-separated concept ids switched on")
    p.add_argument("--threshold", type=float, help="threshold k (default: the map's, usually 0.5)")
    p.add_argument("--max-steps", type=_positive, default=1000)
    p.add_argument("--clamp", help="comma-separated ids held On (default: the --on set; '' for none)")
    p.add_argument("--trace", action="store_true", help="print every raw activation and state")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("enumerate", help="run every on-set of the given sizes")
    p.add_argument("path")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--sizes", type=_sizes, help="comma-separated on-set sizes, e.g. 1,2")
    group.add_argument("--all", action="store_true", help="all non-empty on-sets (default)")
    p.add_argument("--threshold", type=float)
    p.add_argument("--force", action="store_true",
                   help=f"allow --all on maps with more than {MAX_ENUMERATION_CONCEPTS} concepts")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("analyze", help="degrees, strongest and indeterminate edges")
    p.add_argument("path")
    p.add_argument("--top", type=_positive, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export", help="render a map as DOT or a matrix table")
    p.add_argument("path")
    p.add_argument("--format", required=True, choices=["dot", "matrix"])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except (DomainError, NCMError, ValueError) as exc:
        print(f"ncm: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

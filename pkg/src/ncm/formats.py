"""Renderings of maps and simulation results: DOT, matrix tables, JSON reports."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any, Sequence

from .inference import Outcome, SimulationConfig, SimulationResult, StateVector, resolve_clamp
from .model import AdjacencyMatrix, CognitiveMap, DimensionMismatch, weight_text
from .neutro import format_real


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(cmap: CognitiveMap) -> str:
    """Graphviz digraph; indeterminate edges are drawn dotted and labelled I."""
    lines = [f"digraph {_dot_id(cmap.name)} {{"]
    for c in cmap.concepts:
        lines.append(f"  {_dot_id(c.id)} [label={_dot_id(c.label)}];")
    index = {c.id: i for i, c in enumerate(cmap.concepts)}
    for e in sorted(cmap.edges, key=lambda e: (index[e.source], index[e.target])):
        attrs = f"label={_dot_id(weight_text(e.weight))}"
        if e.is_indeterminate:
            attrs += ", style=dotted"
        lines.append(f"  {_dot_id(e.source)} -> {_dot_id(e.target)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_matrix(matrix: AdjacencyMatrix, ids: Sequence[str]) -> str:
    """Aligned text table of N(E) with concept ids on both axes."""
    if len(ids) != matrix.n:
        raise DimensionMismatch(f"{len(ids)} ids for a {matrix.n}x{matrix.n} matrix")
    body = [[str(v) for v in row] for row in matrix.cells()]
    header = [""] + list(ids)
    rows = [header] + [[cid] + row for cid, row in zip(ids, body)]
    widths = [max(len(r[j]) for r in rows) for j in range(len(header))]
    out = []
    for r in rows:
        first = r[0].ljust(widths[0])
        rest = [cell.rjust(w) for cell, w in zip(r[1:], widths[1:])]
        out.append("  ".join([first] + rest).rstrip())
    return "\n".join(out) + "\n"


def _state(state: StateVector) -> list[str]:
    return [str(s) for s in state]


def write_report(result: SimulationResult, cmap: CognitiveMap, config: SimulationConfig,
                 initial: StateVector | None = None) -> dict[str, Any]:
    """Build the JSON-ready report for one simulation.

    ``initial`` is only needed to spell out the default clamp set.
    """
    if config.clamp is not None:
        clamp_ids = [cid for cid in cmap.ids if cid in config.clamp]
    elif initial is not None:
        idx = resolve_clamp(cmap, initial, config)
        clamp_ids = [cid for i, cid in enumerate(cmap.ids) if i in idx]
    else:
        clamp_ids = None

    trace = None
    if result.trace is not None:
        trace = [
            {"step": n, "raw": [str(v) for v in raw], "state": _state(state)}
            for n, (raw, state) in enumerate(result.trace, start=1)
        ]

    outcome: dict[str, Any] = {"kind": result.outcome.value}
    if result.outcome is not Outcome.STEP_LIMIT:
        outcome["states"] = [_state(s) for s in result.states]
    if result.outcome is Outcome.LIMIT_CYCLE:
        outcome["period"] = result.period
    outcome["steps_taken"] = result.steps_taken

    return {
        "map": cmap.name,
        "concepts": list(cmap.ids),
        "config": {
            "threshold": number(config.threshold),
            "clamp": clamp_ids,
            "max_steps": config.max_steps,
        },
        "trace": trace,
        "outcome": outcome,
    }


def dump_json(doc: Any) -> str:
    """Deterministic JSON text (insertion key order, 2-space indent)."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def report_schema() -> dict[str, Any]:
    """JSON Schema for :func:`write_report` documents."""
    text = resources.files("ncm").joinpath("assets", "report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def number(x: float) -> float | int:
    """JSON number with at most 9 decimals (ints stay ints)."""
    s = format_real(x)
    return int(s) if "." not in s else float(s)

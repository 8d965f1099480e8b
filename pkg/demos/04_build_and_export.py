"""Build a small map in code, check it, save it and render it.

    python demos/04_build_and_export.py [outdir]
"""

import sys
from pathlib import Path

from ncm import (
    CognitiveMap,
    build_adjacency,
    export_dot,
    find_hidden_pattern,
    format_state,
    influence_profiles,
    make_state,
    parse_map,
    serialize_map,
    strongest_edges,
    validate,
)

cmap = CognitiveMap.from_edges(
    "project risk",
    [("budget", "Budget pressure"), ("scope", "Scope creep"), ("quality", "Delivered quality"),
     ("morale", "Team morale")],
    [
        ("budget", "quality", -0.6),
        ("scope", "budget", 0.7),
        ("scope", "morale", "I"),   # experts could not agree on the direction
        ("morale", "quality", 0.8),
        ("quality", "morale", 0.4),
    ],
)
print("diagnostics:", validate(cmap))

for p in influence_profiles(cmap):
    print(f"{p.concept:8s} in={p.in_degree} out={p.out_degree}")
print("strongest:", [str(e) for e in strongest_edges(cmap, 2)])

r = find_hidden_pattern(cmap, make_state(cmap, on=["scope"]))
print("scope creep on ->", r.outcome.value, format_state(r.state), "   ", " ".join(cmap.ids))

text = serialize_map(cmap)
# serialization orders edges canonically; the matrix is what must survive
assert build_adjacency(parse_map(text).map).allclose(build_adjacency(cmap))
outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
(outdir / "project_risk.ncm").write_text(text, encoding="utf-8")
(outdir / "project_risk.dot").write_text(export_dot(cmap), encoding="utf-8")
print(f"wrote {outdir / 'project_risk.ncm'} and {outdir / 'project_risk.dot'}")

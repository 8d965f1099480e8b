"""Hidden patterns of the bundled EIS success map.

Switch on one or more success factors, push the state through N(E), threshold
at k = 0.5 and repeat until the state vector stops changing.

    python demos/01_eis_hidden_patterns.py
"""

from ncm import (
    SimulationConfig,
    build_adjacency,
    find_hidden_pattern,
    format_raw,
    format_state,
    load_eis_map,
    make_state,
    render_matrix,
)

eis = load_eis_map()
print(eis.name)
for c in eis.concepts:
    print(f"  {c.id}: {c.label}")

# %% The adjacency matrix; the two I cells are the indeterminate relations.
print()
print(render_matrix(build_adjacency(eis), eis.ids))

# %% Users' involvement alone, then together with top management support.
config = SimulationConfig(threshold=0.5, record_trace=True)
for on in (["x1"], ["x1", "x3"]):
    result = find_hidden_pattern(eis, make_state(eis, on=on), config)
    print(f"on = {on}")
    for n, (raw, state) in enumerate(result.trace, start=1):
        print(f"  A{n} N(E) = {format_raw(raw)}  ->  {format_state(state)}")
    print(f"  {result.outcome.value} after {result.steps_taken} steps: {format_state(result.state)}")

# Both on-sets end with x2 and x9 On; the only difference is x3, which the
# second run holds On itself.

# %% A flexible system on its own: the indeterminate edge x4 -> x9 leaves
# change management in the indeterminate state, and x1 sees 0.1 + 0.8*I,
# which reduces to 0.1 and stays Off.
result = find_hidden_pattern(eis, make_state(eis, on=["x4"]), config)
print("on = ['x4']")
for raw, state in result.trace:
    print(f"  {format_raw(raw)}  ->  {format_state(state)}")

"""Every non-empty on-set of the EIS map, grouped by the pattern it reaches.

    python demos/03_what_if_enumeration.py
"""

from collections import Counter

from ncm import enumerate_scenarios, format_state, group_by_attractor, load_eis_map

eis = load_eis_map()
rows = enumerate_scenarios(eis)
print(f"{len(rows)} scenarios,", Counter(r.result.outcome.value for r in rows))
print("longest run:", max(r.result.steps_taken for r in rows), "steps")

groups = group_by_attractor(rows)
print(f"{len(groups)} distinct hidden patterns; the largest basins:")
for g in groups[:8]:
    example = ",".join(g.members[0])
    print(f"  {len(g.members):3d}  {format_state(g.states[0])}   e.g. {{{example}}}")

# Which factors end up On most often?
on_counts = Counter()
for r in rows:
    for cid, s in zip(eis.ids, r.result.state):
        if str(s) == "1":
            on_counts[cid] += 1
print("times On at equilibrium:", dict(sorted(on_counts.items())))

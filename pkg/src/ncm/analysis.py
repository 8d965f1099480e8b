"""Structural statistics and exhaustive what-if enumeration over a map."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .inference import (
    Outcome,
    SimulationConfig,
    SimulationResult,
    StateVector,
    find_hidden_pattern,
)
from .model import CognitiveMap, Edge, NCMError, build_adjacency
from .neutro import NeutroValue, TriState

MAX_ENUMERATION_CONCEPTS = 20


class TooManyScenarios(NCMError):
    pass


@dataclass(frozen=True)
class InfluenceProfile:
    concept: str
    incoming: tuple[tuple[str, NeutroValue], ...]
    outgoing: tuple[tuple[str, NeutroValue], ...]

    @property
    def in_degree(self) -> int:
        return len(self.incoming)

    @property
    def out_degree(self) -> int:
        return len(self.outgoing)


def _by_strength(pairs: list[tuple[str, NeutroValue]], order: dict[str, int]):
    # real weights by descending value, indeterminate ones last
    return tuple(sorted(pairs, key=lambda p: (p[1].is_pure_indeterminate, -p[1].det, order[p[0]])))


def influence_profiles(cmap: CognitiveMap) -> list[InfluenceProfile]:
    order = {cid: i for i, cid in enumerate(cmap.ids)}
    incoming: dict[str, list] = {cid: [] for cid in cmap.ids}
    outgoing: dict[str, list] = {cid: [] for cid in cmap.ids}
    for e in cmap.edges:
        incoming[e.target].append((e.source, e.weight))
        outgoing[e.source].append((e.target, e.weight))
    return [
        InfluenceProfile(cid, _by_strength(incoming[cid], order), _by_strength(outgoing[cid], order))
        for cid in cmap.ids
    ]


def _edge_order(cmap: CognitiveMap):
    order = {cid: i for i, cid in enumerate(cmap.ids)}
    return lambda e: (order[e.source], order[e.target])


def strongest_edges(cmap: CognitiveMap, top_n: int = 3) -> list[Edge]:
    """Real-weighted edges by descending ``|weight|``; ties in declaration order."""
    if top_n < 1:
        raise ValueError(f"top_n must be >= 1, got {top_n}")
    pos = _edge_order(cmap)
    real = [e for e in cmap.edges if not e.is_indeterminate]
    real.sort(key=lambda e: (-abs(e.weight.det), pos(e)))
    return real[:top_n]


def indeterminate_edges(cmap: CognitiveMap) -> list[Edge]:
    return sorted((e for e in cmap.edges if e.is_indeterminate), key=_edge_order(cmap))


@dataclass(frozen=True)
class ScenarioRow:
    on_set: tuple[str, ...]
    result: SimulationResult


def on_sets(n: int, sizes: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Index tuples of the requested sizes (all non-empty ones if None), lexicographic."""
    sizes = range(1, n + 1) if sizes is None else sorted(set(sizes))
    combos = itertools.chain.from_iterable(
        itertools.combinations(range(n), k) for k in sizes if 0 <= k <= n
    )
    return sorted(combos)


def enumerate_scenarios(
    cmap: CognitiveMap,
    config: SimulationConfig | None = None,
    sizes: Iterable[int] | None = None,
    force: bool = False,
) -> list[ScenarioRow]:
    """Run every on-set of the given sizes; ``sizes=None`` means all non-empty ones.

    Each on-set is switched on (and, unless ``config.clamp`` says otherwise,
    clamped) with every other concept Off.
    """
    config = config or SimulationConfig()
    n = len(cmap.concepts)
    if sizes is None and n > MAX_ENUMERATION_CONCEPTS and not force:
        raise TooManyScenarios(
            f"{n} concepts would give {2**n - 1} scenarios; limit is {MAX_ENUMERATION_CONCEPTS} concepts without force"
        )
    matrix = build_adjacency(cmap)
    ids = cmap.ids
    rows = []
    for combo in on_sets(n, sizes):
        initial = tuple(TriState.ON if i in combo else TriState.OFF for i in range(n))
        result = find_hidden_pattern(cmap, initial, config, matrix=matrix)
        rows.append(ScenarioRow(tuple(ids[i] for i in combo), result))
    return rows


@dataclass(frozen=True)
class AttractorGroup:
    outcome: Outcome
    states: tuple[StateVector, ...]
    members: tuple[tuple[str, ...], ...]


def _state_key(state: StateVector) -> tuple[int, ...]:
    return tuple(s.rank for s in state)


def canonical_cycle(states: Sequence[StateVector]) -> tuple[StateVector, ...]:
    """Rotate a cycle so its smallest state (OFF < ON < IND, positionwise) leads."""
    if not states:
        return ()
    start = min(range(len(states)), key=lambda i: _state_key(states[i]))
    return tuple(states[start:]) + tuple(states[:start])


def group_by_attractor(rows: Sequence[ScenarioRow]) -> list[AttractorGroup]:
    groups: dict[tuple, list] = {}
    for row in rows:
        r = row.result
        key = (r.outcome, canonical_cycle(r.states))
        groups.setdefault(key, []).append(row.on_set)
    out = [AttractorGroup(outcome, states, tuple(members)) for (outcome, states), members in groups.items()]
    # stable: equal-sized groups keep first-seen order
    out.sort(key=lambda g: -len(g.members))
    return out

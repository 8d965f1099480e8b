"""Hidden-pattern search: propagate through N(E), threshold, clamp, repeat."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .model import AdjacencyMatrix, CognitiveMap, DimensionMismatch, build_adjacency, concept_index
from .neutro import DEFAULT_THRESHOLD, NeutroValue, TriState, threshold

StateVector = tuple[TriState, ...]
RawActivation = tuple[NeutroValue, ...]


class Outcome(str, enum.Enum):
    FIXED_POINT = "fixed_point"
    LIMIT_CYCLE = "limit_cycle"
    STEP_LIMIT = "step_limit"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SimulationConfig:
    """Parameters of a hidden-pattern search.

    ``clamp=None`` means "clamp the concepts that are On in the initial
    state"; pass an explicit (possibly empty) set of ids to override.
    """

    threshold: float = DEFAULT_THRESHOLD
    max_steps: int = 1000
    clamp: frozenset[str] | None = None
    record_trace: bool = False

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.clamp is not None:
            object.__setattr__(self, "clamp", frozenset(self.clamp))


@dataclass(frozen=True)
class SimulationResult:
    outcome: Outcome
    states: tuple[StateVector, ...]
    steps_taken: int
    trace: tuple[tuple[RawActivation, StateVector], ...] | None = None

    @property
    def period(self) -> int | None:
        return len(self.states) if self.outcome is Outcome.LIMIT_CYCLE else None

    @property
    def state(self) -> StateVector:
        """The fixed point (or first cycle state)."""
        if not self.states:
            raise ValueError("step-limit result has no final state")
        return self.states[0]

    @property
    def is_fixed_point(self) -> bool:
        return self.outcome is Outcome.FIXED_POINT


def make_state(cmap: CognitiveMap, on: Iterable[str] = (), indeterminate: Iterable[str] = ()) -> StateVector:
    """State vector with the given concepts On / Indeterminate, the rest Off."""
    state = [TriState.OFF] * len(cmap.concepts)
    for cid in indeterminate:
        state[concept_index(cmap, cid)] = TriState.IND
    for cid in on:
        state[concept_index(cmap, cid)] = TriState.ON
    return tuple(state)


def parse_state(text: str) -> StateVector:
    """``"1 0 I"`` or ``"(1, 0, I)"`` -> state vector."""
    tokens = text.replace("(", " ").replace(")", " ").replace(",", " ").split()
    return tuple(TriState.parse(t) for t in tokens)


def format_state(state: Sequence[TriState]) -> str:
    return " ".join(str(s) for s in state)


def format_raw(raw: Sequence[NeutroValue]) -> str:
    return "(" + ", ".join(str(v) for v in raw) + ")"


def _embed_arrays(state: Sequence[TriState]) -> tuple[np.ndarray, np.ndarray]:
    det = np.array([s is TriState.ON for s in state], dtype=float)
    ind = np.array([s is TriState.IND for s in state], dtype=float)
    return det, ind


def propagate(matrix: AdjacencyMatrix, state: Sequence[TriState]) -> RawActivation:
    """Vector-matrix product ``state @ N(E)`` over ``b + c*I`` numbers."""
    if len(state) != matrix.n:
        raise DimensionMismatch(f"state has {len(state)} entries, matrix is {matrix.n}x{matrix.n}")
    s_det, s_ind = _embed_arrays(state)
    det = s_det @ matrix.det
    # I-coefficient of sum_i (a_i + b_i I)(w_i + v_i I) with I*I = I
    ind = s_det @ matrix.ind + s_ind @ matrix.det + s_ind @ matrix.ind
    return tuple(NeutroValue(d, c) for d, c in zip(det.tolist(), ind.tolist()))


def step(
    matrix: AdjacencyMatrix,
    state: Sequence[TriState],
    k: float = DEFAULT_THRESHOLD,
    clamp: Iterable[int] = (),
) -> tuple[RawActivation, StateVector]:
    """One synchronous update; ``clamp`` holds concept indices forced On."""
    raw = propagate(matrix, state)
    nxt = [threshold(v, k) for v in raw]
    for i in clamp:
        nxt[i] = TriState.ON
    return raw, tuple(nxt)


def resolve_clamp(cmap: CognitiveMap, initial: Sequence[TriState], config: SimulationConfig) -> frozenset[int]:
    if config.clamp is None:
        return frozenset(i for i, s in enumerate(initial) if s is TriState.ON)
    return frozenset(concept_index(cmap, cid) for cid in config.clamp)


def iterate(
    matrix: AdjacencyMatrix,
    initial: Sequence[TriState],
    k: float = DEFAULT_THRESHOLD,
    clamp: Iterable[int] = (),
    max_steps: int = 1000,
    record_trace: bool = False,
) -> SimulationResult:
    """Iterate :func:`step` from ``initial`` until a state repeats.

    Works on a bare matrix; :func:`find_hidden_pattern` is the map-level
    entry point.
    """
    if len(initial) != matrix.n:
        raise DimensionMismatch(f"state has {len(initial)} entries, matrix is {matrix.n}x{matrix.n}")
    clamp = frozenset(clamp)
    current = list(initial)
    for i in clamp:
        current[i] = TriState.ON
    current = tuple(current)

    seen = {current: 0}
    history = [current]
    trace = [] if record_trace else None
    for steps in range(1, max_steps + 1):
        raw, nxt = step(matrix, current, k, clamp)
        if trace is not None:
            trace.append((raw, nxt))
        if nxt == current:
            return SimulationResult(Outcome.FIXED_POINT, (nxt,), steps, _freeze(trace))
        if nxt in seen:
            cycle = tuple(history[seen[nxt]:])
            return SimulationResult(Outcome.LIMIT_CYCLE, cycle, steps, _freeze(trace))
        seen[nxt] = len(history)
        history.append(nxt)
        current = nxt
    return SimulationResult(Outcome.STEP_LIMIT, (), max_steps, _freeze(trace))


def _freeze(trace):
    return None if trace is None else tuple(trace)


def find_hidden_pattern(
    cmap: CognitiveMap,
    initial: Sequence[TriState],
    config: SimulationConfig | None = None,
    matrix: AdjacencyMatrix | None = None,
) -> SimulationResult:
    """Run the map from ``initial`` to a fixed point or limit cycle.

    >>> from ncm import load_eis_map, make_state
    >>> eis = load_eis_map()
    >>> r = find_hidden_pattern(eis, make_state(eis, on=["x1"]))
    >>> r.outcome.value, format_state(r.state), r.steps_taken
    ('fixed_point', '1 1 0 0 0 0 0 0 1', 2)

    Pass a prebuilt ``matrix`` to skip re-validating the map.
    """
    config = config or SimulationConfig()
    if len(initial) != len(cmap.concepts):
        raise DimensionMismatch(f"state has {len(initial)} entries, map has {len(cmap.concepts)} concepts")
    clamp = resolve_clamp(cmap, initial, config)
    if matrix is None:
        matrix = build_adjacency(cmap)
    return iterate(matrix, initial, config.threshold, clamp, config.max_steps, config.record_trace)

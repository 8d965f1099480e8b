"""Cognitive map data model: concepts, weighted edges, validation and N(E)."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .neutro import DEFAULT_THRESHOLD, INDET, NeutroValue, format_real

ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class NCMError(Exception):
    """Base class for domain errors."""


class UnknownConcept(NCMError, KeyError):
    def __init__(self, concept_id: str):
        super().__init__(concept_id)
        self.concept_id = concept_id

    def __str__(self) -> str:
        return f"unknown concept {self.concept_id!r}"


class DimensionMismatch(NCMError, ValueError):
    pass


class ValidationFailed(NCMError, ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        lines = "; ".join(f"{d.code} at {d.location}: {d.message}" for d in diagnostics)
        super().__init__(f"invalid cognitive map: {lines}")


@dataclass(frozen=True)
class Concept:
    id: str
    label: str
    description: str | None = None


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    weight: NeutroValue

    @property
    def is_indeterminate(self) -> bool:
        return self.weight.is_pure_indeterminate

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} ({self.weight})"


def edge_weight(value: float | str | NeutroValue) -> NeutroValue:
    """Coerce ``0.8``, ``"I"`` or a NeutroValue into an edge weight value."""
    if isinstance(value, NeutroValue):
        return value
    if isinstance(value, str):
        if value == "I":
            return INDET
        return NeutroValue(float(value))
    return NeutroValue(float(value))


def is_legal_weight(w: NeutroValue) -> bool:
    if w.ind == 0.0:
        return -1.0 <= w.det <= 1.0
    return w.det == 0.0 and w.ind == 1.0


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    location: str
    message: str

    @property
    def is_error(self) -> bool:
        return self.severity == "error"


@dataclass(frozen=True)
class CognitiveMap:
    """An immutable neutrosophic cognitive map.

    Concepts are indexed by declaration order. Construction does not
    enforce the invariants; call :func:`validate` (or :func:`build_adjacency`,
    which validates) to check them.
    """

    name: str
    concepts: tuple[Concept, ...] = ()
    edges: tuple[Edge, ...] = ()
    default_threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(self.concepts))
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def from_edges(
        cls,
        name: str,
        concepts: Iterable[Concept | str | tuple[str, str]],
        edges: Iterable[tuple[str, str, float | str | NeutroValue]] = (),
        default_threshold: float = DEFAULT_THRESHOLD,
    ) -> CognitiveMap:
        """Convenience constructor.

        ``concepts`` may be Concept objects, bare ids (label = id) or
        ``(id, label)`` pairs; edge weights may be floats or ``"I"``.
        """
        cs = []
        for c in concepts:
            if isinstance(c, Concept):
                cs.append(c)
            elif isinstance(c, str):
                cs.append(Concept(c, c))
            else:
                cs.append(Concept(*c))
        es = [Edge(s, t, edge_weight(w)) for s, t, w in edges]
        return cls(name, tuple(cs), tuple(es), default_threshold)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.concepts)

    def __len__(self) -> int:
        return len(self.concepts)

    def concept(self, concept_id: str) -> Concept:
        return self.concepts[concept_index(self, concept_id)]


def concept_index(cmap: CognitiveMap, concept_id: str) -> int:
    """Zero-based declaration position of ``concept_id``."""
    for i, c in enumerate(cmap.concepts):
        if c.id == concept_id:
            return i
    raise UnknownConcept(concept_id)


def edge_location(i: int, edge: Edge) -> str:
    return f"edge[{i}] {edge.source}->{edge.target}"


def concept_location(c: Concept) -> str:
    return f"concept {c.id}"


def validate(cmap: CognitiveMap) -> list[Diagnostic]:
    """Check map invariants; an empty list means the map is valid."""
    diags: list[Diagnostic] = []

    def err(code, loc, msg):
        diags.append(Diagnostic("error", code, loc, msg))

    if not math.isfinite(cmap.default_threshold):
        err("THRESHOLD", "map", f"threshold must be finite, got {cmap.default_threshold}")

    seen_ids: set[str] = set()
    for c in cmap.concepts:
        loc = concept_location(c)
        if not ID_RE.match(c.id):
            err("BAD_ID", loc, f"invalid concept id {c.id!r}")
        if c.id in seen_ids:
            err("DUPLICATE_CONCEPT", loc, f"concept {c.id!r} declared more than once")
        seen_ids.add(c.id)
        if not c.label:
            err("EMPTY_LABEL", loc, f"concept {c.id!r} has an empty label")

    seen_pairs: set[tuple[str, str]] = set()
    touched: set[str] = set()
    for i, e in enumerate(cmap.edges):
        loc = edge_location(i, e)
        for end in (e.source, e.target):
            if end not in seen_ids:
                err("UNKNOWN_CONCEPT", loc, f"edge endpoint {end!r} is not a declared concept")
        if e.source == e.target:
            err("SELF_LOOP", loc, f"self-loop on {e.source!r}")
        pair = (e.source, e.target)
        if pair in seen_pairs:
            err("DUPLICATE_EDGE", loc, f"more than one edge {e.source} -> {e.target}")
        seen_pairs.add(pair)
        if e.weight.is_zero:
            err("ZERO_WEIGHT", loc, "weight 0 means no edge; omit the edge instead")
        elif not is_legal_weight(e.weight):
            err("WEIGHT_RANGE", loc, f"weight {e.weight} is neither in [-1, 1] nor I")
        touched.update(pair)

    for c in cmap.concepts:
        if c.id not in touched:
            diags.append(
                Diagnostic("warning", "ISOLATED_CONCEPT", concept_location(c),
                           f"concept {c.id!r} has no incoming or outgoing edges")
            )
    return diags


@dataclass(frozen=True)
class AdjacencyMatrix:
    """N(E) split into determinate and indeterminate coefficient arrays.

    Row is the source concept, column the target.
    """

    det: np.ndarray
    ind: np.ndarray = field(default=None)

    def __post_init__(self):
        det = np.array(self.det, dtype=float)
        ind = np.zeros_like(det) if self.ind is None else np.array(self.ind, dtype=float)
        if det.ndim != 2 or det.shape[0] != det.shape[1] or det.shape != ind.shape:
            raise DimensionMismatch(f"adjacency arrays must be square and equal-shaped, got {det.shape} and {ind.shape}")
        det.setflags(write=False)
        ind.setflags(write=False)
        object.__setattr__(self, "det", det)
        object.__setattr__(self, "ind", ind)

    @property
    def n(self) -> int:
        return self.det.shape[0]

    def cell(self, i: int, j: int) -> NeutroValue:
        return NeutroValue(self.det[i, j], self.ind[i, j])

    def cells(self) -> list[list[NeutroValue]]:
        return [[self.cell(i, j) for j in range(self.n)] for i in range(self.n)]

    def nonzero(self) -> list[tuple[int, int, NeutroValue]]:
        """Nonzero cells in row-major order."""
        rows, cols = np.nonzero((self.det != 0) | (self.ind != 0))
        return [(int(i), int(j), self.cell(i, j)) for i, j in zip(rows, cols)]

    def allclose(self, other: AdjacencyMatrix, atol: float = 1e-9) -> bool:
        return (
            self.det.shape == other.det.shape
            and np.allclose(self.det, other.det, rtol=0, atol=atol)
            and np.allclose(self.ind, other.ind, rtol=0, atol=atol)
        )

    def __repr__(self) -> str:
        rows = [" ".join(str(v) for v in row) for row in self.cells()]
        return "AdjacencyMatrix(\n  " + "\n  ".join(rows) + "\n)"


def build_adjacency(cmap: CognitiveMap) -> AdjacencyMatrix:
    """Adjacency matrix of a valid map, indexed by declaration order."""
    errors = [d for d in validate(cmap) if d.is_error]
    if errors:
        raise ValidationFailed(errors)
    n = len(cmap.concepts)
    index = {c.id: i for i, c in enumerate(cmap.concepts)}
    det = np.zeros((n, n))
    ind = np.zeros((n, n))
    for e in cmap.edges:
        i, j = index[e.source], index[e.target]
        det[i, j] = e.weight.det
        ind[i, j] = e.weight.ind
    return AdjacencyMatrix(det, ind)


def edges_from_matrix(matrix: AdjacencyMatrix, ids: Sequence[str]) -> list[Edge]:
    """Inverse of :func:`build_adjacency` on the edge set (row-major order)."""
    if len(ids) != matrix.n:
        raise DimensionMismatch(f"{len(ids)} ids for a {matrix.n}x{matrix.n} matrix")
    return [Edge(ids[i], ids[j], w) for i, j, w in matrix.nonzero()]


def weight_text(w: NeutroValue) -> str:
    """DSL/DOT spelling of an edge weight: ``I`` or a minimal decimal."""
    return "I" if w == INDET else format_real(w.det)

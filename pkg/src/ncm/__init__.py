"""Neutrosophic cognitive maps: fuzzy causal graphs with an indeterminacy symbol I."""

from .analysis import (
    AttractorGroup,
    InfluenceProfile,
    ScenarioRow,
    TooManyScenarios,
    enumerate_scenarios,
    group_by_attractor,
    indeterminate_edges,
    influence_profiles,
    strongest_edges,
)
from .dsl import (
    MapDocument,
    MapSyntaxError,
    ParseError,
    load_eis_map,
    load_map,
    parse_map,
    read_map_document,
    serialize_map,
)
from .formats import dump_json, export_dot, render_matrix, report_schema, write_report
from .inference import (
    Outcome,
    SimulationConfig,
    SimulationResult,
    find_hidden_pattern,
    format_raw,
    format_state,
    iterate,
    make_state,
    parse_state,
    propagate,
    step,
)
from .model import (
    AdjacencyMatrix,
    CognitiveMap,
    Concept,
    Diagnostic,
    DimensionMismatch,
    Edge,
    NCMError,
    UnknownConcept,
    ValidationFailed,
    build_adjacency,
    concept_index,
    validate,
)
from .neutro import (
    INDET,
    ONE,
    ZERO,
    NeutroValue,
    TriState,
    embed,
    nv_add,
    nv_mul,
    render_value,
    threshold,
)

__version__ = "0.1.0"

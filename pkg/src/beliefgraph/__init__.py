"""Toolkit for parsing, validating, scoring and decoding explanation graphs."""

from .assignment import hungarian
from .decoder import DecodedGraph, EdgeProbTensor, check_connectivity_flow, decode
from .ged import ged, ged_raw
from .graph import Concept, Edge, ExplanationGraph, parse_graph, serialize_graph
from .metrics import (
    EvalConfig,
    MetricReport,
    Prediction,
    Sample,
    ea,
    evaluate_corpus,
    evaluate_sample,
    gbs,
    seca,
)
from .ordering import linearize, reorder_graph
from .perturb import perturb
from .scorers import (
    LexicalOverlapStanceScorer,
    NegationHeuristicClassifier,
    TokenF1Scorer,
    token_f1,
)
from .sidecar import SidecarClient
from .structure import (
    GraphStats,
    NodeOrigin,
    ValidationReport,
    classify_origins,
    compute_stats,
    validate,
)
from .vocab import Relation, RelationVocabulary

__version__ = "0.1.0"

__all__ = [
    "Concept", "Edge", "ExplanationGraph", "parse_graph", "serialize_graph",
    "Relation", "RelationVocabulary",
    "NodeOrigin", "ValidationReport", "GraphStats",
    "classify_origins", "validate", "compute_stats",
    "linearize", "reorder_graph", "perturb",
    "ged", "ged_raw", "hungarian", "gbs", "ea", "seca",
    "Sample", "Prediction", "MetricReport", "EvalConfig",
    "evaluate_sample", "evaluate_corpus",
    "EdgeProbTensor", "DecodedGraph", "decode", "check_connectivity_flow",
    "TokenF1Scorer", "LexicalOverlapStanceScorer", "NegationHeuristicClassifier",
    "token_f1", "SidecarClient",
]

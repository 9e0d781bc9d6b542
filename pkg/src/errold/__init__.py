"""Toolkit for detection systems on graphs, centred on error-correcting
open-locating-dominating sets: verification, existence, exact minimisation,
extremal enumeration, a 3-SAT hardness transformation, and periodic-pattern
certification on infinite grids."""

from .graph import Graph, GraphError, ParseError, parse_edge_list, serialize_edge_list
from .detection import (
    OLD, RED_OLD, DET_OLD, ERR_OLD, ALL_KINDS,
    DetectionKind, Verdict, ExistenceResult,
    dominators, distinguishing_value, verify, verify_red_old_by_removal,
    exists_err_old, forced_detectors,
)

__all__ = [
    "Graph", "GraphError", "ParseError", "parse_edge_list", "serialize_edge_list",
    "OLD", "RED_OLD", "DET_OLD", "ERR_OLD", "ALL_KINDS",
    "DetectionKind", "Verdict", "ExistenceResult",
    "dominators", "distinguishing_value", "verify", "verify_red_old_by_removal",
    "exists_err_old", "forced_detectors",
]

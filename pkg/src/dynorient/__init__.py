"""Exact fully dynamic minimum max-out-degree edge orientation."""
from .dynsolvers import (
    Backend,
    ImprovedDynOpt,
    InvariantViolation,
    Maintainer,
    NaiveDynOpt,
    StrongDynOpt,
    make_maintainer,
)
from .graph import DynOrientedGraph, EdgeRef
from .oracle import pseudoarboricity_bruteforce
from .pathfind import SearchStats, VisitMarker
from .static import venkateswaran_solve

__all__ = [
    "Backend",
    "DynOrientedGraph",
    "EdgeRef",
    "ImprovedDynOpt",
    "InvariantViolation",
    "Maintainer",
    "NaiveDynOpt",
    "SearchStats",
    "StrongDynOpt",
    "VisitMarker",
    "make_maintainer",
    "pseudoarboricity_bruteforce",
    "venkateswaran_solve",
]

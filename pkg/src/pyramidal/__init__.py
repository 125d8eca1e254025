"""Exact tools for the pyramidal routing problem: solvers, tree routings and
domination certificates on outerplanar graphs."""
from .cycle import CycleCoordinates, PiecewiseLinearFn, dominate_on_cycle, reflect_segment, smooth
from .dominate import Dominator, DominationError, dominate, dominate_on_ladder
from .graph import Graph, MinorOp, apply_minor_op, blocks, enumerate_simple_paths
from .ladder import LowestCycleFrame, classify_pattern
from .minors import project_certificate_through_minor
from .outerplanar import LadderModel, classify, embed_in_ladder, is_outerplanar, ladder_model
from .routing import (Certificate, Instance, Routing, n_vector, routing_cost, tree_routing,
                      verify_certificate, y_vector)
from .solvers import (PRPolyhedronModel, SearchReport, check_conjecture, enumerate_routings,
                      find_dominating_combination, is_extremal, optimal_routing,
                      optimal_tree_routing)
from .taming import canonicalize, tame

__all__ = [
    "Certificate",
    "CycleCoordinates",
    "DominationError",
    "Dominator",
    "Graph",
    "Instance",
    "LadderModel",
    "LowestCycleFrame",
    "MinorOp",
    "PRPolyhedronModel",
    "PiecewiseLinearFn",
    "Routing",
    "SearchReport",
    "apply_minor_op",
    "blocks",
    "canonicalize",
    "check_conjecture",
    "classify",
    "classify_pattern",
    "dominate",
    "dominate_on_cycle",
    "dominate_on_ladder",
    "embed_in_ladder",
    "enumerate_routings",
    "enumerate_simple_paths",
    "find_dominating_combination",
    "is_extremal",
    "is_outerplanar",
    "ladder_model",
    "n_vector",
    "optimal_routing",
    "optimal_tree_routing",
    "project_certificate_through_minor",
    "reflect_segment",
    "routing_cost",
    "smooth",
    "tame",
    "tree_routing",
    "verify_certificate",
    "y_vector",
]

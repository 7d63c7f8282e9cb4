"""Training-free MaxCut by batched projected gradient ascent.

The solvers work on the box relaxation ``x^T L x`` (pQUCO), its lifted
matrix form ``tr(X^T L X)`` (pLUCO) and an alternation of the two (pDECO).
"""

from importlib.metadata import PackageNotFoundError, version

from ._backend import BACKEND
from .errors import (ConfigError, GraphBoundsError, GraphParseError, GraphValidationError,
                     NumericOverflowError, OracleSizeError, QuadcutError, ShapeError)
from .evo import Candidate, SearchConfig, evolve
from .graph import (Graph, connected_components, degree_stats, generate_er, laplacian_apply,
                    parse_edge_list, read_graph, write_graph)
from .initialization import InitConfig, InitMethod
from .objectives import CutSolution, cut_value, luco_objective, quco_objective
from .oracle import brute_force_maxcut, enumerate_lifted_fixed_points
from .pga import AscentParams, ascend, run_ascent
from .solvers import Algorithm, SolverConfig, pdeco, pluco, pquco, solve, solve_per_component

try:
    __version__ = version("quadcut")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

__all__ = [
    "BACKEND", "Algorithm", "AscentParams", "Candidate", "ConfigError", "CutSolution", "Graph",
    "GraphBoundsError", "GraphParseError", "GraphValidationError", "InitConfig", "InitMethod",
    "NumericOverflowError", "OracleSizeError", "QuadcutError", "SearchConfig", "ShapeError",
    "SolverConfig", "ascend", "brute_force_maxcut", "connected_components", "cut_value",
    "degree_stats", "enumerate_lifted_fixed_points", "evolve", "generate_er", "laplacian_apply",
    "luco_objective", "parse_edge_list", "pdeco", "pluco", "pquco", "quco_objective",
    "read_graph", "run_ascent", "solve", "solve_per_component", "write_graph",
]

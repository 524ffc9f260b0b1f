"""Secluded path and secluded Steiner tree solvers.

Given a graph with vertex costs and terminals S, find a connected vertex set
T containing S whose closed neighborhood N[T] is small (the exposure) and
cheap (the cost).
"""

from .connected_sets import enumerate_connected_sets, solve_secluded_steiner
from .errors import EngineMismatch, InstanceError, OracleScaleExceeded, ParseError
from .exact import solve_exact, solve_exact_path, solve_exact_steiner
from .graph import (SecludedInstance, Solution, VertexWeightedGraph, closed_neighborhood,
                    exposure_and_cost, open_neighborhood, verify)
from .io import parse_instance, read_instance, solution_to_dict, write_instance
from .kernel import kernelize
from .oracle import brute_force_solve
from .paths import enumerate_secluded_paths, solve_path_above_guarantee, solve_secluded_path
from .separation import SeparationConfig, separation_budget, solve_above_guarantee
from .steiner import dreyfus_wagner
from .treewidth import solve_treewidth

__version__ = "0.1.0"

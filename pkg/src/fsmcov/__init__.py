"""Coverage criteria over finite state machine graphs.

Builds test requirements for the usual graph criteria, checks suites against
them, generates and minimizes suites, and runs randomized experiments on how
the criteria relate to each other.
"""

from .coverage import CoverageReport, check, check_all
from .criteria import Criterion, parse_criterion
from .errors import FsmCovError
from .generator import GenConfig, generate, minimize
from .graph import Edge, FsmGraph, parse_graph_dot, parse_graph_json
from .paths import TestSuite, parse_suite_json
from .requirements import requirements_for

__version__ = "0.1.0"

__all__ = [
    "CoverageReport", "Criterion", "Edge", "FsmCovError", "FsmGraph", "GenConfig",
    "TestSuite", "check", "check_all", "generate", "minimize", "parse_criterion",
    "parse_graph_dot", "parse_graph_json", "parse_suite_json", "requirements_for",
]

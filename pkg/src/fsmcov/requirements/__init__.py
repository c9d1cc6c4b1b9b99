"""Per-criterion requirement sets."""

from __future__ import annotations

from ..criteria import Criterion
from ..errors import CriterionInapplicableError, CyclicGraphError, ModelError
from ..graph import FsmGraph
from .base import RequirementSet
from .basis import RankTracker, basis_paths, cyclomatic_number, path_vector
from .boundary import boundary_interior_classes, collapse_loops
from .prime import elementary_cycle_count, prime_paths, round_trip_requirements
from .structural import (all_path_requirements, branch_points, branch_requirements,
                         edge_pair_requirements, edge_requirements, n_switch_requirements,
                         node_requirements, specified_path_requirements)
from .wmethod import (characterization_set, observe, testing_tree, transition_cover,
                      w_method_test_set)

__all__ = [
    "RequirementSet", "RankTracker", "all_path_requirements", "basis_paths",
    "boundary_interior_classes", "branch_points", "branch_requirements",
    "characterization_set", "collapse_loops", "cyclomatic_number",
    "edge_pair_requirements", "edge_requirements", "elementary_cycle_count",
    "n_switch_requirements", "node_requirements", "observe", "path_vector",
    "prime_paths", "requirements_for", "round_trip_requirements",
    "specified_path_requirements", "testing_tree", "transition_cover",
    "w_method_test_set",
]


def requirements_for(g: FsmGraph, c: Criterion) -> RequirementSet:
    """Dispatch to the requirement builder for ``c``.

    Raises CriterionInapplicableError when ``c`` cannot apply to ``g``
    (all paths on a cyclic graph, W-method without labels, basis paths
    without usable end vertices).
    """
    k = c.kind
    if k == "NC":
        return node_requirements(g)
    if k == "EC":
        return edge_requirements(g)
    if k == "BC":
        return branch_requirements(g)
    if k == "EPC":
        return edge_pair_requirements(g)
    if k == "NSC":
        return n_switch_requirements(g, c.param)
    if k == "PPC":
        return prime_paths(g)
    if k == "SRTC":
        return round_trip_requirements(g, "simple")
    if k == "CRTC":
        return round_trip_requirements(g, "complete")
    if k == "SPC":
        return specified_path_requirements(g, c.specified)
    if k == "BIC":
        return boundary_interior_classes(g, c.depth_bound)
    if k == "APC":
        try:
            return all_path_requirements(g)
        except CyclicGraphError as exc:
            raise CriterionInapplicableError(str(exc)) from exc
    if k == "BPC":
        try:
            return basis_paths(g)
        except ModelError as exc:
            raise CriterionInapplicableError(str(exc)) from exc
    if k == "WMC":
        return w_method_test_set(g)
    raise ValueError(f"unhandled criterion {k}")

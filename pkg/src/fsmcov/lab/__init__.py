"""Relation matrix, random graph sampling and the verification harness."""

from .randgraph import RandomGraphSpec, attach_labels, random_graph, random_mealy
from .table import ORDER, TABLE, cells, expected_relation
from .verify import (RelationVerdict, Witness, open_questions, recheck_witness,
                     run_table_verification, satisfies, search_counterexample,
                     verify_cell, verify_subsumes)

__all__ = [
    "ORDER", "RandomGraphSpec", "RelationVerdict", "TABLE", "Witness", "attach_labels",
    "cells", "expected_relation", "open_questions", "random_graph", "random_mealy",
    "recheck_witness", "run_table_verification", "satisfies", "search_counterexample",
    "verify_cell", "verify_subsumes",
]

"""String matching in labeled graphs and the orthogonal-vectors reductions behind its indexing lower bounds."""

from .editdist import edit_distance, substring_ed_bruteforce, substring_edit_distance
from .lic import IndexScheme, LicReduction, compose, identity_reduction, matcher_scheme, ov_to_smlg_reduction, transfer_index
from .matcher import find_match_path, match_bruteforce, match_online, verify_witness
from .model import (
    LabeledGraph,
    OvInstance,
    Pattern,
    is_deterministic,
    max_degree_sum,
    parse_graph,
    parse_ov,
    parse_pattern,
    serialize_graph,
    serialize_ov,
    serialize_pattern,
    validate_graph,
)
from .ov import PlanReport, SplitPlan, ceil_power_bound_check, partition_and_solve, solve_ov_bruteforce, split_plan, verify_plan
from .reduction import Variant, assemble_graph, build_pattern, build_universal_component, build_w_component
from .sic import build_sic_graph, sic_query

__version__ = "0.1.0"

"""Exact combinatorics of the golden-mean random Cantor set with overlaps."""
from .classes import (
    ClassRecord,
    MultiplicityHistogram,
    check_prop2,
    class_members_oracle,
    histogram,
    multiplicity,
)
from .expected import (
    check_recursion_bounds,
    dimension_estimate,
    dimension_formula,
    dimension_formula_osc,
    expected_count_paper,
    expected_count_tree,
)
from .golden import GoldenInt, GoldenRational, gr_cmp
from .intervals import (
    PhiInterval,
    distinct_intervals,
    intersection_length,
    interval_of,
    verify_intersection_spectrum,
)
from .simulate import extinction_by_level, monte_carlo, run_trial
from .words import (
    enumerate_greedy,
    fibonacci,
    is_greedy,
    iter_greedy,
    normalize_to_greedy,
    suffix_class,
    value_of,
)

__version__ = "0.1.0"

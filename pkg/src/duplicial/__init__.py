"""Planar binary trees, tree-expanded series and their algebraic structures."""
from .coeffs import W, Poly
from .tree import (LEAF, VERTEX, ResourceLimitError, Tree, TreeParseError, enumerate_trees,
                   graft, left_comb, over, parse_tree, right_comb, under)
from .operad import ArityError, mu
from .series import (TreeSeries, project, series_compose, series_compose_inverse,
                     series_inverse_over, series_inverse_under, series_over, series_under,
                     suspension)
from .catalog import CATALOG, check_identity

__all__ = [
    "W", "Poly", "LEAF", "VERTEX", "ResourceLimitError", "Tree", "TreeParseError",
    "enumerate_trees", "graft", "left_comb", "over", "parse_tree", "right_comb", "under",
    "ArityError", "mu", "TreeSeries", "project", "series_compose", "series_compose_inverse",
    "series_inverse_over", "series_inverse_under", "series_over", "series_under",
    "suspension", "CATALOG", "check_identity",
]

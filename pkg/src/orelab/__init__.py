"""Ore-type theorems for intervals of finite groups, checked by exhaustive computation."""

__version__ = "0.1.0"

from .permgroup import Group, Permutation, Subgroup, group_from_generators, subgroup_generated
from .catalog import builtin, builtin_catalog, catalog_hash, parse_catalog
from .latticekit import FiniteLattice, is_boolean, is_distributive
from .sublattice import all_subgroups, interval, interval_equivalent
from .chartable import (character_table, is_linearly_primitive_group, is_linearly_primitive_interval,
                        min_faithful_components)
from .ore import (classify_interval, coatom_index_sum, check_upper_bound, dual_ore_check, is_cyclic_interval,
                  is_H_cyclic, ore_witness_distributive)
from .boxmodel import QuadScalar, TwoBox, is_biprojection, is_w_cyclic_model
from .fusionring import FusionRing, fusion_ring_from_matrices, fp_dimensions, proper_fusion_subrings

__all__ = [
    "Group", "Permutation", "Subgroup", "group_from_generators", "subgroup_generated",
    "builtin", "builtin_catalog", "catalog_hash", "parse_catalog",
    "FiniteLattice", "is_boolean", "is_distributive",
    "all_subgroups", "interval", "interval_equivalent",
    "character_table", "is_linearly_primitive_group", "is_linearly_primitive_interval",
    "min_faithful_components",
    "classify_interval", "coatom_index_sum", "check_upper_bound", "dual_ore_check", "is_cyclic_interval",
    "is_H_cyclic", "ore_witness_distributive",
    "QuadScalar", "TwoBox", "is_biprojection", "is_w_cyclic_model",
    "FusionRing", "fusion_ring_from_matrices", "fp_dimensions", "proper_fusion_subrings",
]

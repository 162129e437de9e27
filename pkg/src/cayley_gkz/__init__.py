"""Exact GKZ systems, non-resonance, holonomic rank and Frobenius series for nef-partitions."""

from .cohomology import CohomRing, build_ring, mori_cone
from .fan import Fan, mpcp_fan
from .frobenius import assemble_B, coefficient_O, extract_solutions, verify_annihilation
from .gkz import (GkzSystem, build_cayley_gkz, holonomic_rank, non_resonance_check,
                  verify_union_cones)
from .instances import builtin_instance, load_instance
from .nef import NefPartitionData, dual_nef_partition, from_nabla_parts, validate_nef_partition
from .polytope import LatticePolytope, dual_polytope, normalized_volume

__all__ = [
    "CohomRing", "Fan", "GkzSystem", "LatticePolytope", "NefPartitionData", "assemble_B",
    "build_cayley_gkz", "build_ring", "builtin_instance", "coefficient_O", "dual_nef_partition",
    "dual_polytope", "extract_solutions", "from_nabla_parts", "holonomic_rank", "load_instance",
    "mori_cone", "mpcp_fan", "non_resonance_check", "normalized_volume", "validate_nef_partition",
    "verify_annihilation", "verify_union_cones",
]

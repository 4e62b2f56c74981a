"""Exact-arithmetic toric geometry: Hilbert bases, G-stable cones and fans,
combinatorial desingularization, and normalized Nash blowups in arbitrary
characteristic, together with the barycentric-hull construction for smooth
lattice polytopes.

Everything runs over the integers and rationals; no floating point anywhere.
"""

from .cones import Cone, Lattice, triangulate_cone
from .config import DEFAULT_LIMITS, Limits
from .desing import DesingularizationError, g_desingularize, is_moderate_resolution
from .errors import KernelInvariantError, ResourceCapExceeded
from .fans import (
    Fan,
    fan_from_cone,
    fan_hilbert_union,
    is_refinement,
    measure_M,
    star_subdivision,
)
from .gstable import gamma_plus, is_g_stable, is_g_stable_fan, supporting_form
from .hilbert import hilbert_elements
from .nash import (
    compare_characteristics,
    log_jacobian_points,
    nash_blowup_fan,
    nash_iterate,
    newton_polyhedron,
    relevant_primes,
)
from .polyhedra import RationalPolyhedron, convex_hull, minkowski_polyhedron
from .polytopes import (
    LatticePolytope,
    barycentric_hull,
    is_g_flat,
    is_smooth,
    one_step_resolution,
    verify_baryhull_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "DEFAULT_LIMITS",
    "DesingularizationError",
    "Fan",
    "KernelInvariantError",
    "Lattice",
    "LatticePolytope",
    "Limits",
    "RationalPolyhedron",
    "ResourceCapExceeded",
    "barycentric_hull",
    "compare_characteristics",
    "convex_hull",
    "fan_from_cone",
    "fan_hilbert_union",
    "g_desingularize",
    "gamma_plus",
    "hilbert_elements",
    "is_g_flat",
    "is_g_stable",
    "is_g_stable_fan",
    "is_moderate_resolution",
    "is_refinement",
    "is_smooth",
    "log_jacobian_points",
    "measure_M",
    "minkowski_polyhedron",
    "nash_blowup_fan",
    "nash_iterate",
    "newton_polyhedron",
    "one_step_resolution",
    "relevant_primes",
    "star_subdivision",
    "supporting_form",
    "triangulate_cone",
    "verify_baryhull_theorem",
]

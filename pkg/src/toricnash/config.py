"""Desk-scale resource limits.

All caps are advisory guard rails: hitting one raises
:class:`toricnash.errors.ResourceCapExceeded` with a message naming the limit,
instead of letting an enumeration run away. The defaults are tuned so that
every bundled corpus input runs in well under a second each.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # Total half-open parallelepiped lattice points tolerated while computing
    # one Hilbert basis (sum of |det| over the simplicial pieces).
    parallelepiped_points: int = 1_000_000
    # Hilbert basis size above which the subset scan of the restriction
    # condition refuses to run in dimension >= 3 (2D collapses to pairs and
    # is exempt).
    subset_scan_basis: int = 16
    # Star-subdivision steps before the desingularization loop gives up.
    desing_steps: int = 10_000
    # d-tuples enumerated while building a log-Jacobian set: C(#basis, d).
    log_jacobian_tuples: int = 1_000_000
    # Lattice-point count and simplex count caps for barycentric hulls.
    baryhull_points: int = 40
    baryhull_simplices: int = 1_000_000
    # Lattice points enumerated in one bounded region.
    enumeration_points: int = 5_000_000
    # Product-of-simplices generator: m*n cap.
    simplex_product_size: int = 20


DEFAULT_LIMITS = Limits()

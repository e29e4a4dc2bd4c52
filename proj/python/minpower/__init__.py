"""Exact quadratic min-power centre of planar point sets.

The centre minimises sum(|s - x|^alpha) + max(|s - x|^alpha) over the plane.
For alpha = 2 the solution is combinatorial (a face of the farthest-point
Voronoi diagram hosts it); other exponents in (1, 64] are solved numerically
with a duality certificate.
"""

from ._minpower import (
    alpha_sweep,
    approx_ratio,
    convex_hull,
    generate_target,
    min_enclosing_circle,
    power,
    render_svg,
    solve,
    structures_json,
    transform,
    two_centroids,
    validate,
)

__version__ = "1.0.0"

__all__ = [
    "alpha_sweep",
    "approx_ratio",
    "convex_hull",
    "generate_target",
    "min_enclosing_circle",
    "power",
    "render_svg",
    "solve",
    "structures_json",
    "transform",
    "two_centroids",
    "validate",
    "__version__",
]

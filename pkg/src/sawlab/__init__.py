"""Lattice self-avoiding walk laboratory.

Exact enumeration of square-lattice walks, polygons and crossing paths,
growth-constant estimation, the honeycomb parafermionic observable,
rectangle hitting ratios, pulled-polymer and adsorption thermodynamics,
and a pivot-algorithm sampler.
"""

__version__ = "0.1.0"

from .enumerate import (CountTable, JointCountTable, SearchPlan, count_crossing,  # noqa: E402
                        count_half_plane, count_interacting_pulled, count_polygons, count_saws)
from .lattice import Domain, Polygon, Walk  # noqa: E402

__all__ = [
    "CountTable", "JointCountTable", "SearchPlan", "count_crossing", "count_half_plane",
    "count_interacting_pulled", "count_polygons", "count_saws", "Domain", "Polygon", "Walk",
    "__version__",
]

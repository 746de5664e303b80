"""Published reference values used by ``--check`` and the acceptance suite.

Each entry stores the value as printed (a string, so no digits are lost),
the relative tolerance used for a pass, and a short citation quoting how
the value is stated in the literature the package reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath


@dataclass(frozen=True)
class Golden:
    name: str
    reference: str
    rel_tol: float
    citation: str

    @property
    def value(self) -> float:
        return float(self.reference)


_ENTRIES = [
    Golden("c_2", "12", 0.0, "square-lattice walk counts: c_2 = 12"),
    Golden("c_3", "36", 0.0, "square-lattice walk counts: c_3 = 36"),
    Golden("c_4", "100", 0.0, "square-lattice walk counts: c_4 = 100"),
    Golden("mu_square", "2.6381585303", 5e-3, "square-lattice connective constant mu = 2.63815853031..."),
    Golden("p_4", "1", 0.0, "one polygon of perimeter 4"),
    Golden("p_6", "2", 0.0, "two polygons of perimeter 6"),
    Golden("p_8", "7", 0.0, "seven polygons of perimeter 8"),
    Golden("p_8_area3", "6", 0.0, "perimeter-8 polygons: six of area 3"),
    Golden("p_8_area4", "1", 0.0, "perimeter-8 polygons: one of area 4"),
    Golden("crossing_L1", "2", 0.0, "crossing paths of the 1 x 1 square"),
    Golden("crossing_L2", "12", 0.0, "crossing paths of the 2 x 2 square"),
    Golden("crossing_L3", "184", 0.0, "crossing paths of the 3 x 3 square"),
    Golden("crossing_L4", "8512", 0.0, "crossing paths of the 4 x 4 square"),
    Golden("crossing_L19",
           "1523344971704879993080742810319229690899454255323294555776029866737355060592877569255844",
           0.0, "crossing paths of the 19 x 19 square (not desk-reproducible)"),
    Golden("lambda_crossing", "1.744550", 0.02 / 1.744550, "crossing growth constant lambda = 1.744550 +- 0.000005"),
    Golden("alpha_r10", "1.00000120561454706472212", 1e-18, "alpha(10) = 1.00000120561454706472212"),
    Golden("alpha_minus_one_r10", "1.20561454706472212e-6", 1e-6, "alpha(10) = 1.00000120561454706472212"),
    Golden("brownian_r10", "3.8375894519594e-7", 5e-13, "R(alpha, 1) at r = 10: 3.8375894519594... x 10^-7"),
    Golden("trefethen_pe", "0.000000383758797925", 1e-11, "p_e for the 10 x 1 rectangle"),
    Golden("trefethen_ratio", "0.00000038375894519599411176841999126970034234598936", 1e-13,
           "p_e / (1 - p_e) printed to 50 digits"),
    Golden("saw_ratio_r10", "6.682989935e-5", 5e-9, "R(10, 5/8) ~ 6.682989935 x 10^-5 by quadrature"),
    Golden("asymptotic_prefactor", "1.2263431442", 1e-10, "R(r, 5/8) ~ 1.2263431442 e^(-5 pi r / 16)"),
    Golden("asymptotic_r10", "6.6824528e-5", 1e-7, "leading asymptotics give 6.6824528 x 10^-5 at r = 10"),
    Golden("refined_r10", "0.00006682989679", 2e-10, "Mellin two-term expansion: 0.00006682989679"),
    Golden("x_c_honeycomb", "0.5411961001461970", 1e-15, "x_c = 1 / sqrt(2 + sqrt 2)"),
    Golden("y_star", "2.414213562373095", 1e-15, "critical surface fugacity y* = 1 + sqrt 2"),
    Golden("nu", "0.75", 0.04, "nu = 3/4 for two-dimensional lattices"),
]

GOLDEN: dict[str, Golden] = {g.name: g for g in _ENTRIES}


def rel_err(computed, reference) -> float:
    """|computed - reference| / |reference| evaluated at 60 digits."""
    with mpmath.workdps(60):
        c = mpmath.mpf(computed if not isinstance(computed, float) else repr(computed))
        r = mpmath.mpf(reference if not isinstance(reference, float) else repr(reference))
        if r == 0:
            return float(abs(c))
        return float(abs(c - r) / abs(r))


def check(name: str, computed) -> dict:
    """Comparison record ``{name, computed, reference, rel_err, citation, passed}``."""
    g = GOLDEN[name]
    e = rel_err(computed, g.reference)
    return {"name": name, "computed": _serial(computed), "reference": g.reference,
            "rel_err": e, "citation": g.citation, "passed": e <= g.rel_tol}


def _serial(v):
    if isinstance(v, int):
        return str(v)
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 30)
    return float(v)

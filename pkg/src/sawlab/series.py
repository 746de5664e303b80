"""Growth constants, rigorous-bound checks and weighted observables from exact series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .enumerate import CountTable, JointCountTable
from .errors import AbsentPerimeterError, InsufficientDataError

MU_SQUARE = 2.6381585303
LAMBDA_CROSSING = 1.744550
LAMBDA_BOUNDS = (1.628, 1.782)


@dataclass
class GrowthEstimate:
    """Finite-size estimates ``(n, value)`` and one extrapolated value."""

    point_estimates: list[tuple[int, float]]
    extrapolated: float
    method: str

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.point_estimates])

    def to_dict(self) -> dict:
        return {"method": self.method, "extrapolated": self.extrapolated,
                "point_estimates": [[n, v] for n, v in self.point_estimates]}


def log_int(c: int) -> float:
    """Natural log of a (possibly huge) positive integer."""
    return math.log(c)


def aitken(seq: Sequence[float]) -> list[float]:
    """Aitken delta-squared transform; a flat stretch is passed through unchanged."""
    out = []
    for i in range(2, len(seq)):
        a, b, c = seq[i - 2], seq[i - 1], seq[i]
        den = c - 2 * b + a
        if den == 0 or not math.isfinite(den):
            out.append(c)
        else:
            out.append(c - (c - b) ** 2 / den)
    return out


def _ratios(counts: Sequence[int], start: int = 1) -> list[tuple[int, float]]:
    return [(n, float(Fraction(counts[n], counts[n - 1])))
            for n in range(max(start, 1), len(counts)) if counts[n - 1] > 0]


def estimate_mu(table: CountTable | Sequence[int], method: str = "aitken_ratio") -> GrowthEstimate:
    """Connective-constant estimate from c_0..c_N.

    ``raw_root``: c_n^(1/n); ``ratio``: c_n / c_{n-1}; ``aitken_ratio``:
    the ratios are turned into linear intercepts n r_n - (n-1) r_{n-1},
    which removes the 1/n correction, and then Aitken-transformed, which
    removes the odd/even oscillation of the square lattice.
    """
    counts = list(table)
    if len(counts) - 1 < 10:
        raise InsufficientDataError("need counts up to at least n = 10")
    if method == "raw_root":
        pts = [(n, math.exp(log_int(c) / n)) for n, c in enumerate(counts) if n >= 1]
        return GrowthEstimate(pts, pts[-1][1], method)
    ratios = _ratios(counts)
    if method == "ratio":
        return GrowthEstimate(ratios, ratios[-1][1], method)
    if method != "aitken_ratio":
        raise ValueError(f"unknown method {method!r}")
    r = dict(ratios)
    lin = [(n, n * r[n] - (n - 1) * r[n - 1]) for n in sorted(r) if n - 1 in r]
    acc = aitken([v for _, v in lin])
    pts = list(zip([n for n, _ in lin[2:]], acc))
    return GrowthEstimate(pts, pts[-1][1], method)


@dataclass
class SeriesBoundsReport:
    violations: list[tuple[int, int]]
    min_scaled: float
    argmin_scaled: int
    hw_diagnostic: list[tuple[int, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and self.min_scaled >= 1.0

    def to_dict(self) -> dict:
        return {"violations": [list(v) for v in self.violations],
                "min_scaled": self.min_scaled, "argmin_scaled": self.argmin_scaled,
                "hw_diagnostic": [[n, s] for n, s in self.hw_diagnostic]}


def validate_series_bounds(table: CountTable | Sequence[int], mu_ref: float) -> SeriesBoundsReport:
    """Check sub-multiplicativity and the lower bound c_n >= mu^n.

    ``hw_diagnostic`` holds log(c_n / mu_ref^n) / sqrt(n), whose
    boundedness is what the Hammersley-Welsh upper bound asserts.
    """
    if mu_ref <= 0:
        raise ValueError("mu_ref must be positive")
    c = list(table)
    N = len(c) - 1
    violations = [(n, m) for n in range(1, N + 1) for m in range(n, N + 1 - n)
                  if c[n + m] > c[n] * c[m]]
    log_mu = math.log(mu_ref)
    scaled = [(n, log_int(c[n]) - n * log_mu) for n in range(N + 1) if c[n] > 0]
    n_min, s_min = min(scaled, key=lambda t: t[1])
    hw = [(n, s / math.sqrt(n)) for n, s in scaled if n >= 1]
    return SeriesBoundsReport(violations, math.exp(s_min), n_min, hw)


def estimate_lambda(crossing_totals: Mapping[int, int]) -> GrowthEstimate:
    """lambda = lim total(L)^(1/L^2), from exact path totals per side L.

    The extrapolation solves log total = L^2 log(lambda) + b L + c exactly
    through the three largest L.
    """
    Ls = sorted(L for L, t in crossing_totals.items() if t > 0)
    if len(Ls) < 4 or Ls[:4] != [1, 2, 3, 4]:
        raise InsufficientDataError("need totals for at least L = 1..4")
    pts = [(L, math.exp(log_int(crossing_totals[L]) / L ** 2)) for L in Ls]
    last = Ls[-3:]
    A = np.array([[L * L, L, 1.0] for L in last])
    y = np.array([log_int(crossing_totals[L]) for L in last])
    log_lam = np.linalg.solve(A, y)[0]
    return GrowthEstimate(pts, float(math.exp(log_lam)), "quadratic_fit")


def _log_terms(table: CountTable, x: float) -> tuple[np.ndarray, np.ndarray]:
    ns = np.array([n for n, c in table.items() if c > 0], dtype=float)
    logs = np.array([log_int(c) for c in table.counts if c > 0]) + ns * math.log(x)
    return ns, logs


def mean_crossing_length(table: CountTable, x: float) -> float:
    """Weighted mean length sum n c_n x^n / sum c_n x^n, in rescaled log space."""
    if x <= 0:
        raise ValueError("x must be positive")
    if not any(table.counts):
        raise ValueError("empty table")
    ns, logs = _log_terms(table, x)
    w = np.exp(logs - logs.max())
    return float((ns * w).sum() / w.sum())


@dataclass
class FreeEnergyCurve:
    """kappa_m(q) = (1/m) log sum_n p_{m,n} q^n on a grid of q."""

    m: int
    q: np.ndarray
    kappa: np.ndarray

    def second_differences_log_q(self) -> np.ndarray:
        """Second divided differences of kappa in log q (non-uniform grid)."""
        t = np.log(self.q)
        k = self.kappa
        d1 = np.diff(k) / np.diff(t)
        return 2 * np.diff(d1) / (t[2:] - t[:-2])

    def is_log_convex(self, tol: float = 1e-10) -> bool:
        return bool(np.all(self.second_differences_log_q() >= -tol))


def log_poly(coeffs: Mapping[int, int], z: float) -> float:
    """log of sum_k coeffs[k] z^k, evaluated exactly in rationals before the log."""
    zq = Fraction(z)
    total = sum((Fraction(c) * zq ** k for k, c in coeffs.items()), Fraction(0))
    if total <= 0:
        raise ValueError("polynomial is not positive at this argument")
    return math.log(total.numerator) - math.log(total.denominator)


def free_energy_curve(table: JointCountTable, m: int, q_grid: Sequence[float]) -> FreeEnergyCurve:
    """Finite-perimeter free energy of polygons weighted by q^area."""
    row = table.row(m)
    if not row:
        raise AbsentPerimeterError(f"perimeter {m} not in table")
    q = np.asarray(q_grid, dtype=float)
    if np.any(q <= 0) or np.any(q > 1):
        raise ValueError("q must lie in (0, 1]")
    kappa = np.array([log_poly(row, float(qi)) / m for qi in q])
    return FreeEnergyCurve(m, q, kappa)


def estimate_area_growth(area_table: CountTable | Sequence[int]) -> GrowthEstimate:
    """Ratio estimates a_n / a_{n-1} of the polygon area growth constant.

    Extrapolation uses the same intercept-plus-Aitken scheme as
    :func:`estimate_mu`; there is no reference value to compare against.
    """
    a = list(area_table)
    if len(a) - 1 < 8:
        raise InsufficientDataError("need area counts up to at least n = 8")
    ratios = _ratios(a, start=2)
    r = dict(ratios)
    lin = [n * r[n] - (n - 1) * r[n - 1] for n in sorted(r) if n - 1 in r]
    acc = aitken(lin)
    return GrowthEstimate(ratios, acc[-1] if acc else ratios[-1][1], "aitken_ratio")

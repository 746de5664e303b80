"""Thermodynamics of pulled interacting walks and of surface adsorption.

A pulled polymer is an N-step walk in the half-plane y >= 0 with its first
vertex on the wall.  Each non-bonded contact carries energy epsilon = -1,
so ``omega = e^(1/T)``, and the force F couples to the end abscissa x
through ``u = exp(sign * F / T)``.  With ``sign = +1`` a positive force
favours large x; ``sign = -1`` reproduces u = exp(-F/T) literally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .enumerate import JointCountTable, SearchPlan, count_interacting_pulled
from .errors import AbsentDisplacementError, AbsentLengthError, InsufficientDataError
from .series import MU_SQUARE, GrowthEstimate, aitken

DEFAULT_T_GRID = (0.2, 3.0, 0.05)


@dataclass(frozen=True)
class EnsembleWeights:
    """Boltzmann weights at temperature T and force F (k_B = 1, epsilon = -1)."""

    T: float
    F: float = 0.0
    y: float = 1.0
    sign: int = 1
    epsilon: float = -1.0

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("temperature must be positive")
        if not self.y > 0:
            raise ValueError("surface fugacity must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def log_omega(self) -> float:
        return -self.epsilon / self.T

    @property
    def log_u(self) -> float:
        return self.sign * self.F / self.T

    @property
    def omega(self) -> float:
        return math.exp(self.log_omega)

    @property
    def u(self) -> float:
        return math.exp(self.log_u)


def _arrays(table: JointCountTable):
    items = table.items()
    m = np.array([k[0] for k, _ in items], dtype=float)
    x = np.array([k[1] for k, _ in items], dtype=float)
    logc = np.array([math.log(c) for _, c in items])
    return m, x, logc


def _log_weights(table: JointCountTable, w: EnsembleWeights):
    m, x, logc = _arrays(table)
    lw = logc + m * w.log_omega + x * w.log_u
    top = lw.max()
    p = np.exp(lw - top)
    return m, x, p, top + math.log(p.sum())


def log_partition_force(table: JointCountTable, w: EnsembleWeights) -> float:
    """log Z_N(F, T) with the largest term factored out."""
    if not table.counts:
        raise ValueError("empty table")
    return float(_log_weights(table, w)[3])


def partition_force(table: JointCountTable, w: EnsembleWeights) -> float:
    """Z_N(F, T) = sum_{m,x} C(N, m, x) omega^m u^x."""
    return math.exp(log_partition_force(table, w))


def partition_distance(table: JointCountTable, x: int, w: EnsembleWeights) -> float:
    """Z_N(x, T) = sum_m C(N, m, x) omega^m at fixed end abscissa x."""
    terms = [(m, c) for (m, xx), c in table.items() if xx == x]
    if not terms:
        raise AbsentDisplacementError(f"no walk ends at x = {x}")
    lw = np.array([math.log(c) + m * w.log_omega for m, c in terms])
    top = lw.max()
    return float(math.exp(top) * np.exp(lw - top).sum())


def resummation_residual(table: JointCountTable, w: EnsembleWeights) -> float:
    """Relative gap between sum_x Z_N(x, T) u^x and Z_N(F, T)."""
    xs = sorted(table.marginal(axis=0))
    total = sum(partition_distance(table, x, w) * math.exp(x * w.log_u) for x in xs)
    z = partition_force(table, w)
    return abs(total - z) / z


@dataclass(frozen=True)
class Observables:
    mean_m: float
    mean_m2: float
    chi: float
    mean_x: float
    G: float

    def to_dict(self) -> dict:
        return {"mean_m": self.mean_m, "mean_m2": self.mean_m2, "chi": self.chi,
                "mean_x": self.mean_x, "G": self.G}


def observables(table: JointCountTable, w: EnsembleWeights) -> Observables:
    """Exact weighted moments of m and x, chi = <m^2> - <m>^2 and G = -T log Z.

    With this sign convention dG/dF = -sign * <x>.
    """
    m, x, p, logz = _log_weights(table, w)
    s = p.sum()
    mm = float((m * p).sum() / s)
    m2 = float((m * m * p).sum() / s)
    # central moment directly, so chi >= 0 holds without cancellation
    chi = float((((m - mm) ** 2) * p).sum() / s)
    mx = float((x * p).sum() / s)
    return Observables(mm, m2, chi, mx, -w.T * float(logz))


def parse_grid(spec: str | Sequence[float] | None) -> np.ndarray:
    """Linear grid from ``lo:hi:step`` (inclusive of hi) or an explicit sequence."""
    if spec is None:
        spec = DEFAULT_T_GRID
    if isinstance(spec, str):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError("grid must look like lo:hi:step")
        spec = tuple(float(p) for p in parts)
        lo, hi, step = spec
        if step <= 0 or hi < lo:
            raise ValueError("grid needs lo <= hi and step > 0")
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return lo + step * np.arange(n)
    if len(spec) == 3 and isinstance(spec, tuple):
        return parse_grid(":".join(repr(float(v)) for v in spec))
    return np.asarray(spec, dtype=float)


def find_peaks(values: np.ndarray, smooth: bool = False) -> list[int]:
    """Indices of interior points strictly above both neighbours.

    ``smooth`` first applies a 3-point moving average (ends kept).
    """
    v = np.asarray(values, dtype=float)
    if smooth and len(v) >= 3:
        s = v.copy()
        s[1:-1] = (v[:-2] + v[1:-1] + v[2:]) / 3
        v = s
    return [i for i in range(1, len(v) - 1) if v[i] > v[i - 1] and v[i] > v[i + 1]]


@dataclass
class ThermoCurve:
    """Observables along a grid of one control parameter."""

    control: str
    grid: np.ndarray
    N: int
    fixed: dict
    values: dict[str, np.ndarray]
    peaks: list[int] = field(default_factory=list)

    @property
    def peak_locations(self) -> list[float]:
        return [float(self.grid[i]) for i in self.peaks]

    def to_dict(self) -> dict:
        return {"control": self.control, "N": self.N, "fixed": self.fixed,
                "grid": [float(g) for g in self.grid],
                "values": {k: [float(v) for v in arr] for k, arr in self.values.items()},
                "peaks": self.peak_locations}


def _table_for(N: int | JointCountTable, plan: SearchPlan | None) -> tuple[int, JointCountTable]:
    if isinstance(N, JointCountTable):
        n = max(abs(x) for _, x in N.counts) if N.counts else 0
        return n, N
    if N < 1:
        raise ValueError("N must be at least 1")
    return N, count_interacting_pulled(N, plan)[N]


def fluctuation_scan(N: int | JointCountTable, F: float = 1.0, T_grid=None, smooth: bool = False,
                     sign: int = 1, plan: SearchPlan | None = None) -> ThermoCurve:
    """chi(T) and companions at fixed force, with local maxima of chi marked."""
    grid = parse_grid(T_grid)
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("temperature grid must be positive and increasing")
    n, table = _table_for(N, plan)
    obs = [observables(table, EnsembleWeights(float(T), F, sign=sign)) for T in grid]
    values = {k: np.array([getattr(o, k) for o in obs])
              for k in ("mean_m", "mean_m2", "chi", "mean_x", "G")}
    values["log_Z"] = -values["G"] / grid
    return ThermoCurve("T", grid, n, {"F": F, "sign": sign, "smooth": smooth}, values,
                       find_peaks(values["chi"], smooth))


def adsorption_partition(table: JointCountTable, n: int, y: float) -> float:
    """C_n^+(y) = sum_i c_n^+(i) y^i, exact in rationals before rounding."""
    if not y > 0:
        raise ValueError("y must be positive")
    row = table.row(n)
    if not row:
        raise AbsentLengthError(f"length {n} not in table")
    yq = Fraction(y)
    return float(sum((Fraction(c) * yq ** i for i, c in row.items()), Fraction(0)))


@dataclass
class AdsorptionReport:
    """Growth estimates of C_n^+(y) per y, and a finite-size y_c estimate."""

    estimates: dict[float, GrowthEstimate]
    mu_ref: float
    margin: float
    y_c: float | None

    def to_dict(self) -> dict:
        return {"mu_ref": self.mu_ref, "margin": self.margin, "y_c": self.y_c,
                "estimates": {repr(y): e.to_dict() for y, e in self.estimates.items()}}


def adsorption_growth(table: JointCountTable, y_grid: Sequence[float], mu_ref: float = MU_SQUARE,
                      margin: float = 0.02) -> AdsorptionReport:
    """Finite-n estimates C_n^+(y)^(1/n) and ratio extrapolations per y.

    ``y_c`` is the first y on the (sorted) grid whose extrapolated ratio
    exceeds ``mu_ref * (1 + margin)``, or None.
    """
    lengths = table.first_values()
    n_max = max(lengths, default=0)
    if n_max < 12:
        raise InsufficientDataError("need half-plane counts up to at least n = 12")
    est = {}
    y_c = None
    for y in sorted(float(v) for v in y_grid):
        C = [adsorption_partition(table, n, y) for n in range(n_max + 1)]
        pts = [(n, C[n] ** (1.0 / n)) for n in range(1, n_max + 1)]
        r = {n: C[n] / C[n - 1] for n in range(1, n_max + 1)}
        lin = [n * r[n] - (n - 1) * r[n - 1] for n in range(2, n_max + 1)]
        acc = aitken(lin)
        e = GrowthEstimate(pts, acc[-1], "aitken_ratio")
        est[y] = e
        if y_c is None and e.extrapolated > mu_ref * (1 + margin):
            y_c = y
    return AdsorptionReport(est, mu_ref, margin, y_c)


def log_partition_curve(table: JointCountTable, n: int, ys: Sequence[float]) -> np.ndarray:
    return np.array([math.log(adsorption_partition(table, n, y)) for y in ys])


def interacting_tables(N_max: int, plan: SearchPlan | None = None) -> Mapping[int, JointCountTable]:
    return count_interacting_pulled(N_max, plan)

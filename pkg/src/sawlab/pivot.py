"""Pivot-algorithm Monte Carlo for square-lattice self-avoiding walks.

A proposal picks a site k uniformly from 0..n-1 and one of the seven
non-identity point-group symmetries, applies it to the part of the walk
after k about site k, and accepts iff the result is self-avoiding.  The
uniform distribution on n-step walks is stationary.

Random numbers come from a Philox generator keyed by ``(seed, chain)``
and are drawn in fixed-size blocks, so the chain state after any number
of proposals depends only on the seed and the chain index.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .errors import ConvergenceError, InsufficientDataError
from .lattice import Walk

NU_EXACT = 0.75
_BLOCK = 1 << 18          # proposals drawn per RNG block
_N_BATCHES = 50           # batches for batch-means standard errors
MIN_SPAN = 8              # largest / smallest length required by estimate_nu


def _generator(seed: int, chain_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chain_index,))))


@dataclass
class PivotChain:
    """A single pivot chain started from the straight rod along the x axis."""

    n: int
    seed: int = 0
    chain_index: int = 0
    accepted: int = 0
    attempted: int = 0
    xs: np.ndarray = field(init=False, repr=False)
    ys: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("walk length must be positive")
        self.xs = np.arange(self.n + 1, dtype=np.int64)
        self.ys = np.zeros(self.n + 1, dtype=np.int64)
        self._rng = _generator(self.seed, self.chain_index)
        self._sites = np.empty(0, dtype=np.int64)
        self._ops = np.empty(0, dtype=np.int64)
        self._pos = 0

    @property
    def walk(self) -> Walk:
        return Walk(tuple(zip(self.xs.tolist(), self.ys.tolist())))

    @property
    def acceptance(self) -> float:
        return self.accepted / self.attempted if self.attempted else float("nan")

    def end_to_end_sq(self) -> int:
        dx = int(self.xs[-1] - self.xs[0])
        dy = int(self.ys[-1] - self.ys[0])
        return dx * dx + dy * dy

    def _draw(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        sites = []
        ops = []
        while count > 0:
            if self._pos == len(self._sites):
                self._sites = self._rng.integers(0, self.n, _BLOCK, dtype=np.int64)
                self._ops = self._rng.integers(1, 8, _BLOCK, dtype=np.int64)
                self._pos = 0
            take = min(count, len(self._sites) - self._pos)
            sites.append(self._sites[self._pos:self._pos + take])
            ops.append(self._ops[self._pos:self._pos + take])
            self._pos += take
            count -= take
        return np.concatenate(sites), np.concatenate(ops)

    def propose(self, site: int, op: int) -> bool:
        """Apply one explicit proposal; ``op`` 0 is the identity."""
        if not 0 <= site < self.n or not 0 <= op < 8:
            raise ValueError("site must be in [0, n) and op in [0, 8)")
        out = np.zeros(1, dtype=np.int64)
        acc = _kernels.pivot_run(self.xs, self.ys, np.array([site], dtype=np.int64),
                                 np.array([op], dtype=np.int64), 1, 1, out)
        self.attempted += 1
        self.accepted += acc
        return bool(acc)

    def sample(self, n_samples: int, thin: int) -> np.ndarray:
        """Run ``n_samples * thin`` random proposals, recording |w_n|^2 every ``thin``."""
        if thin < 1 or n_samples < 0:
            raise ValueError("thin must be positive and n_samples non-negative")
        out = np.zeros(n_samples, dtype=np.int64)
        per_call = max(1, _BLOCK // thin)
        done = 0
        while done < n_samples:
            k = min(per_call, n_samples - done)
            sites, ops = self._draw(k * thin)
            acc = _kernels.pivot_run(self.xs, self.ys, sites, ops, thin, k, out[done:done + k])
            self.attempted += k * thin
            self.accepted += acc
            done += k
        return out

    def advance(self, n_proposals: int) -> None:
        """Proposals without recording (warm-up)."""
        if n_proposals > 0:
            self.sample(1, n_proposals) if n_proposals <= _BLOCK else self._advance_blocks(n_proposals)

    def _advance_blocks(self, n_proposals: int) -> None:
        while n_proposals > 0:
            k = min(n_proposals, _BLOCK)
            self.sample(1, k)
            n_proposals -= k


def pivot_step(chain: PivotChain) -> bool:
    """One random pivot proposal; returns whether it was accepted."""
    before = chain.accepted
    chain.sample(1, 1)
    return chain.accepted > before


def batch_means(samples: np.ndarray, n_batches: int = _N_BATCHES) -> tuple[float, float]:
    """Mean and batch-means standard error."""
    x = np.asarray(samples, dtype=float)
    if len(x) < 2 * n_batches:
        n_batches = max(2, len(x) // 2)
    if len(x) < 4:
        raise InsufficientDataError("need at least 4 samples")
    usable = len(x) - len(x) % n_batches
    b = x[:usable].reshape(n_batches, -1).mean(axis=1)
    return float(x.mean()), float(b.std(ddof=1) / math.sqrt(n_batches))


@dataclass
class NuEstimate:
    """Per-n mean |w_n|^2 with standard errors and the log-log fit."""

    n_values: list[int]
    mean_r2: list[float]
    stderr: list[float]
    two_nu: float
    two_nu_err: float
    intercept: float
    residuals: list[float]
    acceptance: dict[int, float]
    exact: list[int] = field(default_factory=list)

    @property
    def nu(self) -> float:
        return self.two_nu / 2

    @property
    def nu_err(self) -> float:
        return self.two_nu_err / 2

    def predict(self, n) -> np.ndarray:
        return np.exp(self.intercept) * np.asarray(n, dtype=float) ** self.two_nu

    def to_dict(self) -> dict:
        return {"n": self.n_values, "mean_r2": self.mean_r2, "stderr": self.stderr,
                "two_nu": self.two_nu, "two_nu_err": self.two_nu_err, "nu": self.nu,
                "nu_err": self.nu_err, "intercept": self.intercept, "residuals": self.residuals,
                "acceptance": {str(k): v for k, v in self.acceptance.items()}, "exact": self.exact}


def fit_power_law(n_values, means, stderr) -> tuple[float, float, float, list[float]]:
    """Least squares of log mean on log n: (slope, slope error, intercept, residuals).

    The slope error combines the regression scatter with the propagated
    sampling errors of the means.
    """
    t = np.log(np.asarray(n_values, dtype=float))
    y = np.log(np.asarray(means, dtype=float))
    sy = np.asarray(stderr, dtype=float) / np.asarray(means, dtype=float)
    A = np.vstack([t, np.ones_like(t)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    slope, icpt = float(coef[0]), float(coef[1])
    resid = y - A @ coef
    tc = t - t.mean()
    sxx = float((tc ** 2).sum())
    dof = len(t) - 2
    scatter = float((resid ** 2).sum() / dof / sxx) if dof > 0 else 0.0
    propagated = float(((tc / sxx) ** 2 * sy ** 2).sum())
    return slope, math.sqrt(scatter + propagated), icpt, [float(r) for r in resid]


def _run_chain(n: int, samples: int, seed: int, index: int, warmup_factor: int,
               thin: int | None) -> tuple[np.ndarray, float]:
    chain = PivotChain(n, seed, index)
    chain._advance_blocks(warmup_factor * n)
    r2 = chain.sample(samples, thin or max(1, n // 2))
    return r2, chain.acceptance


def estimate_nu(n_values: Iterable[int], samples_per_n: int = 100_000, seed: int = 0,
                warmup_factor: int = 20, thin: int | None = None,
                exact: Mapping[int, float] | None = None, workers: int | None = None,
                min_acceptance: float = 0.01) -> NuEstimate:
    """Fit E|w_n|^2 ~ A n^(2 nu) from one pivot chain per length.

    ``exact`` maps extra lengths to exactly known means; they enter the
    table and the fit with zero sampling error.
    """
    ns = sorted(set(int(n) for n in n_values))
    exact = dict(exact or {})
    all_n = sorted(set(ns) | set(exact))
    if len(all_n) < 4 or all_n[-1] < MIN_SPAN * all_n[0]:
        raise InsufficientDataError(f"need at least 4 lengths spanning a factor of {MIN_SPAN}")
    workers = workers or int(os.environ.get("SAWLAB_THREADS", "1"))
    jobs = [(n, samples_per_n, seed, i, warmup_factor, thin) for i, n in enumerate(ns)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(lambda a: _run_chain(*a), jobs))
    else:
        results = [_run_chain(*a) for a in jobs]
    acc = {}
    stats = {}
    for n, (r2, a) in zip(ns, results):
        acc[n] = a
        if a < min_acceptance:
            raise ConvergenceError(f"acceptance {a:.4f} below {min_acceptance} at n = {n}")
        stats[n] = batch_means(r2)
    for n, v in exact.items():
        stats[n] = (float(v), 0.0)
    means = [stats[n][0] for n in all_n]
    errs = [stats[n][1] for n in all_n]
    slope, err, icpt, resid = fit_power_law(all_n, means, errs)
    return NuEstimate(all_n, means, errs, slope, err, icpt, resid, acc, sorted(exact))

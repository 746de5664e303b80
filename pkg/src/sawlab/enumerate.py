"""Exact enumeration of square-lattice walk families.

All counts are exact Python integers.  The search itself runs in compiled
kernels (:mod:`sawlab._kernels`); this module cuts the search tree into
prefixes, farms the prefixes out to worker threads and adds the results.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from . import _kernels
from .errors import BudgetError, CoverageError
from .lattice import FULL_PLANE, Domain

DEFAULT_MAX_NODES = 2e11

_DX = (1, 0, -1, 0)
_DY = (0, 1, 0, -1)


@dataclass
class CountTable:
    """Dense series ``counts[n]`` for ``0 <= n <= max_n``."""

    counts: list[int]
    label: str = "c"

    def __post_init__(self):
        self.counts = [int(c) for c in self.counts]
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], label: str = "c") -> "CountTable":
        n_max = max(mapping) if mapping else -1
        return cls([int(mapping.get(n, 0)) for n in range(n_max + 1)], label)

    @property
    def max_n(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def items(self) -> Iterator[tuple[int, int]]:
        return enumerate(self.counts)

    def to_dict(self) -> dict:
        return {"label": self.label, "counts": [str(c) for c in self.counts]}


@dataclass
class JointCountTable:
    """Sparse two-index table ``counts[(i, j)]`` with labelled axes."""

    counts: dict[tuple[int, int], int]
    axes: tuple[str, str] = ("i", "j")

    def __post_init__(self):
        self.counts = {(int(i), int(j)): int(c) for (i, j), c in self.counts.items() if c}
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be non-negative")

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.counts.get(key, 0)

    def __iter__(self):
        return iter(sorted(self.counts))

    def items(self):
        return sorted(self.counts.items())

    def first_values(self) -> list[int]:
        return sorted({i for i, _ in self.counts})

    def row(self, i: int) -> dict[int, int]:
        """Entries with first index ``i`` keyed by the second index."""
        return {j: c for (a, j), c in sorted(self.counts.items()) if a == i}

    def marginal(self, axis: int = 1) -> dict[int, int]:
        """Sum out ``axis``; returns a mapping keyed by the other index."""
        out: dict[int, int] = {}
        for key, c in self.counts.items():
            k = key[1 - axis]
            out[k] = out.get(k, 0) + c
        return dict(sorted(out.items()))

    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {"axes": list(self.axes),
                "counts": [[i, j, str(c)] for (i, j), c in self.items()]}


@dataclass(frozen=True)
class SearchPlan:
    """How an enumeration is split up.  Results never depend on it."""

    prefix_depth: int = 6
    worker_count: int = field(default_factory=lambda: int(os.environ.get("SAWLAB_THREADS", "1")))
    symmetry_mode: str = "octant"
    max_nodes: float = DEFAULT_MAX_NODES

    def __post_init__(self):
        if self.symmetry_mode not in ("none", "octant"):
            raise ValueError("symmetry_mode must be 'none' or 'octant'")
        if self.prefix_depth < 1 or self.worker_count < 1:
            raise ValueError("prefix_depth and worker_count must be positive")


def _check_budget(estimate: float, plan: SearchPlan, what: str) -> None:
    if estimate > plan.max_nodes:
        raise BudgetError(f"{what}: ~{estimate:.3g} search nodes exceeds ceiling {plan.max_nodes:.3g}")


def _prefixes(depth: int, allowed: Callable[[int, int, list], bool],
              first: Iterable[int] = range(4)) -> list[tuple[np.ndarray, np.ndarray]]:
    """All walks of exactly ``depth`` steps from the origin accepted by ``allowed``.

    ``allowed(x, y, path)`` sees the candidate site and the path so far.
    """
    found = []
    path = [(0, 0)]
    occupied = {(0, 0)}

    def rec(dirs):
        if len(path) - 1 == depth:
            found.append((np.array([p[0] for p in path], dtype=np.int64),
                          np.array([p[1] for p in path], dtype=np.int64)))
            return
        x, y = path[-1]
        for j in dirs:
            q = (x + _DX[j], y + _DY[j])
            if q in occupied or not allowed(q[0], q[1], path):
                continue
            path.append(q)
            occupied.add(q)
            rec(range(4))
            occupied.remove(q)
            path.pop()

    rec(first)
    return found


def _run(kernel: Callable, jobs: list, make_out: Callable[[], np.ndarray],
         plan: SearchPlan) -> np.ndarray:
    """Run ``kernel(*job, out)`` for every job and add the tallies."""
    if plan.worker_count == 1 or len(jobs) < 2:
        out = make_out()
        for job in jobs:
            kernel(*job, out)
        return out
    chunks = [jobs[i::plan.worker_count] for i in range(plan.worker_count)]

    def work(chunk):
        out = make_out()
        for job in chunk:
            kernel(*job, out)
        return out

    with ThreadPoolExecutor(plan.worker_count) as pool:
        parts = list(pool.map(work, chunks))
    total = parts[0]
    for p in parts[1:]:
        total += p
    return total


_ORIGIN = (np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64))


def count_saws(n_max: int, domain: Domain = FULL_PLANE, plan: SearchPlan | None = None) -> CountTable:
    """Number of n-step SAWs from the origin inside ``domain`` for n <= n_max."""
    plan = plan or SearchPlan()
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if domain.kind == "half":
        marg = count_half_plane(n_max, plan).marginal(axis=1)
        return CountTable.from_mapping({0: 1, **marg})
    if domain.kind != "full":
        return _count_saws_bounded(n_max, domain)
    sym = plan.symmetry_mode == "octant"
    _check_budget(2.64 ** n_max / (8 if sym else 1), plan, "count_saws")
    if n_max == 0:
        return CountTable([1])
    k = min(plan.prefix_depth, n_max)
    make = lambda: np.zeros(n_max + 1, dtype=np.int64)  # noqa: E731
    short = make()
    _kernels.saw_tail(*_ORIGIN, k, short)
    if not sym:
        jobs = [(px, py, n_max) for px, py in _prefixes(k, lambda x, y, p: True)]
        tail = _run(_kernels.saw_tail, jobs, make, plan)
        counts = short + tail
    else:
        # walks whose first step is E and whose first turn is N; the rest
        # follow by the eight lattice symmetries plus the four straight rods
        def bent(x, y, path):
            if len(path) == 1:
                return (x, y) == (1, 0)
            straight = all(py == 0 for _, py in path)
            return not straight or y == 0 or y == 1

        octant = make()
        jobs = []
        for px, py in _prefixes(k, bent, first=(0,)):
            if np.all(py == 0):
                for j in range(k, n_max):
                    ex = np.concatenate([np.arange(j + 1), [j]]).astype(np.int64)
                    ey = np.zeros(j + 2, dtype=np.int64)
                    ey[-1] = 1
                    octant[j + 1] += 1
                    jobs.append((ex, ey, n_max))
            else:
                jobs.append((px, py, n_max))
        octant += _run(_kernels.saw_tail, jobs, make, plan)
        counts = short.copy()
        for n in range(k + 1, n_max + 1):
            counts[n] = 8 * int(octant[n]) + 4
    counts[0] = 1
    return CountTable([int(c) for c in counts])


def _count_saws_bounded(n_max: int, domain: Domain) -> CountTable:
    # small rectangles only; plain recursion is adequate
    counts = [0] * (n_max + 1)
    counts[0] = 1
    seen = {(0, 0)}

    def rec(x, y, n):
        for j in range(4):
            q = (x + _DX[j], y + _DY[j])
            if q in seen or not domain.contains(q):
                continue
            counts[n + 1] += 1
            if n + 1 < n_max:
                seen.add(q)
                rec(q[0], q[1], n + 1)
                seen.discard(q)

    if n_max > 0:
        rec(0, 0, 0)
    return CountTable(counts)


def count_polygons(m_max: int, plan: SearchPlan | None = None) -> JointCountTable:
    """``counts[(m, n)]`` = number of polygons of perimeter m and area n."""
    plan = plan or SearchPlan()
    if m_max < 4:
        raise ValueError("m_max must be at least 4")
    _check_budget(2.64 ** m_max / (2 * m_max), plan, "count_polygons")
    area_max = (m_max // 4 + 1) ** 2
    make = lambda: np.zeros((m_max + 1, area_max + 1), dtype=np.int64)  # noqa: E731
    k = min(plan.prefix_depth, m_max - 2)

    def above(x, y, path):
        if len(path) == 1:
            return (x, y) == (1, 0)
        if (x, y) == (0, 1) or (0, 1) in path:
            return False
        return y > 0 or (y == 0 and x > 0)

    short = make()
    _kernels.polygon_tail(*_ORIGIN, k + 1, short)
    jobs = [(px, py, m_max) for px, py in _prefixes(k, above, first=(0,))]
    table = short + _run(_kernels.polygon_tail, jobs, make, plan)
    m_idx, a_idx = np.nonzero(table)
    return JointCountTable({(int(m), int(a)): int(table[m, a]) for m, a in zip(m_idx, a_idx)},
                           axes=("perimeter", "area"))


def polygon_counts(table: JointCountTable) -> CountTable:
    """Perimeter marginal p_m of a perimeter-by-area table."""
    marg = table.marginal(axis=1)
    return CountTable.from_mapping(marg, label="p")


def area_counts(table: JointCountTable, n_max: int, m_max: int | None = None) -> CountTable:
    """a_n = sum over perimeters of p_{m,n}, for n <= n_max.

    ``m_max`` is the largest perimeter the table was enumerated to; it
    defaults to the largest perimeter present.  Area n needs every
    perimeter up to 2n + 2.
    """
    if m_max is None:
        m_max = max(table.first_values(), default=0)
    if 2 * n_max + 2 > m_max:
        raise CoverageError(f"area {n_max} needs perimeters up to {2 * n_max + 2}, table stops at {m_max}")
    marg = table.marginal(axis=0)
    return CountTable([0] + [marg.get(n, 0) for n in range(1, n_max + 1)], label="a")


@lru_cache(maxsize=8)
def _half_plane_array(n_max: int, prefix_depth: int, workers: int) -> np.ndarray:
    plan = SearchPlan(prefix_depth=prefix_depth, worker_count=workers, symmetry_mode="none")
    make = lambda: np.zeros((n_max + 1, n_max + 1, n_max + 1, 2 * n_max + 1), dtype=np.int64)  # noqa: E731
    k = min(prefix_depth, n_max)
    short = make()
    _kernels.half_plane_tail(*_ORIGIN, k, short)
    jobs = [(px, py, n_max) for px, py in _prefixes(k, lambda x, y, p: y >= 0)]
    out = short + _run(_kernels.half_plane_tail, jobs, make, plan)
    out.setflags(write=False)
    return out


def _half_plane(n_max: int, plan: SearchPlan) -> np.ndarray:
    _check_budget(2.64 ** n_max, plan, "half-plane enumeration")
    return _half_plane_array(n_max, plan.prefix_depth, plan.worker_count)


def count_half_plane(n_max: int, plan: SearchPlan | None = None,
                     count_origin: bool = False) -> JointCountTable:
    """``counts[(n, i)]`` = half-plane walks of n steps with i surface vertices.

    The origin is excluded from i unless ``count_origin`` is set, which
    shifts every i by one.  The empty walk is included as (0, 0).
    """
    plan = plan or SearchPlan()
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    counts = {(0, 0): 1}
    if n_max > 0:
        arr = _half_plane(n_max, plan).sum(axis=(2, 3))
        for n, i in zip(*np.nonzero(arr)):
            counts[(int(n), int(i))] = int(arr[n, i])
    if count_origin:
        counts = {(n, i + 1): c for (n, i), c in counts.items()}
    return JointCountTable(counts, axes=("length", "surface_vertices"))


def count_interacting_pulled(N_max: int, plan: SearchPlan | None = None) -> dict[int, JointCountTable]:
    """Per length N, ``counts[(m, x)]`` = C(N, m, x) for walks tethered to the wall y = 0.

    m counts non-bonded nearest-neighbour contact pairs and x is the
    end-point abscissa relative to the tethered end.
    """
    plan = plan or SearchPlan()
    if N_max < 1:
        raise ValueError("N_max must be at least 1")
    arr = _half_plane(N_max, plan).sum(axis=1)
    out = {}
    for N in range(1, N_max + 1):
        sub = arr[N]
        out[N] = JointCountTable({(int(m), int(x) - N_max): int(sub[m, x])
                                  for m, x in zip(*np.nonzero(sub))},
                                 axes=("contacts", "displacement"))
    return out


def count_crossing(L: int, plan: SearchPlan | None = None) -> CountTable:
    """``counts[n]`` = n-step SAWs in [0, L]^2 from (0, 0) to (L, L)."""
    plan = plan or SearchPlan()
    if L < 1:
        raise ValueError("L must be at least 1")
    _check_budget(1.745 ** (L * L), plan, "count_crossing")
    n_max = (L + 1) ** 2 - 1
    make = lambda: np.zeros(n_max + 1, dtype=np.int64)  # noqa: E731
    k = min(plan.prefix_depth, 2 * L - 1)
    inside = lambda x, y, p: 0 <= x <= L and 0 <= y <= L and (x, y) != (L, L)  # noqa: E731
    sym = plan.symmetry_mode == "octant"
    # k < 2L, so no path is shorter than the prefixes
    prefixes = _prefixes(k, inside, first=(0,) if sym else range(4))
    jobs = [(px, py, L, n_max) for px, py in prefixes]
    kernel = _kernels.crossing_tail_bits if (L + 1) * (L + 2) <= 64 else _kernels.crossing_tail
    counts = _run(kernel, jobs, make, plan)
    if sym:
        # reflection in the diagonal swaps first steps E and N
        counts = 2 * counts
    return CountTable([int(c) for c in counts], label=f"c(L={L})")


# Exact path count for L = 19; far beyond desk-scale enumeration.
CROSSING_TOTAL_L19 = int(
    "1523344971704879993080742810319229690899454255323294555776029866737355060592877569255844")


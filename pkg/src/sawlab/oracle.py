"""Naive reference enumerations.

Plain recursive depth-first search with a Python ``set`` for occupancy: no
symmetry reduction, no prefix splitting, no compiled code.  Used only to
cross-check the fast engines on small sizes.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Iterator

from .lattice import Polygon, shoelace_area

_STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def walks(n: int, inside: Callable[[int, int], bool] = lambda x, y: True,
          start: tuple[int, int] = (0, 0)) -> Iterator[list[tuple[int, int]]]:
    """Yield every n-step SAW from ``start`` as a fresh vertex list."""
    path = [start]
    seen = {start}

    def rec():
        if len(path) == n + 1:
            yield list(path)
            return
        x, y = path[-1]
        for dx, dy in _STEPS:
            q = (x + dx, y + dy)
            if q in seen or not inside(*q):
                continue
            path.append(q)
            seen.add(q)
            yield from rec()
            seen.remove(q)
            path.pop()

    yield from rec()


def count_saws(n_max: int) -> list[int]:
    return [sum(1 for _ in walks(n)) for n in range(n_max + 1)]


def half_plane(n: int) -> Counter:
    """Counter over surface-vertex number i (origin excluded) of n-step walks in y >= 0."""
    return Counter(sum(1 for _, y in w[1:] if y == 0) for w in walks(n, lambda x, y: y >= 0))


def contacts(w: list[tuple[int, int]]) -> int:
    """Unordered non-consecutive vertex pairs at unit distance."""
    index = {p: i for i, p in enumerate(w)}
    m = 0
    for i, (x, y) in enumerate(w):
        for dx, dy in _STEPS:
            j = index.get((x + dx, y + dy))
            if j is not None and j > i + 1:
                m += 1
    return m


def interacting(N: int) -> Counter:
    """Counter over (contacts, end abscissa) of N-step walks tethered at y = 0."""
    return Counter((contacts(w), w[-1][0] - w[0][0]) for w in walks(N, lambda x, y: y >= 0))


def crossing(L: int) -> Counter:
    """Counter over length of SAWs in [0, L]^2 from (0, 0) to (L, L)."""
    out: Counter = Counter()
    target = (L, L)
    path = [(0, 0)]
    seen = {(0, 0)}

    def rec():
        x, y = path[-1]
        for dx, dy in _STEPS:
            q = (x + dx, y + dy)
            if q in seen or not (0 <= q[0] <= L and 0 <= q[1] <= L):
                continue
            if q == target:
                out[len(path)] += 1
                continue
            path.append(q)
            seen.add(q)
            rec()
            seen.remove(q)
            path.pop()

    rec()
    return out


def polygons(m_max: int) -> Counter:
    """Counter over (perimeter, area) of distinct polygons up to translation."""
    found = set()
    for n in range(3, m_max):
        for w in walks(n):
            x, y = w[-1]
            if abs(x) + abs(y) == 1:
                found.add(Polygon(tuple(w)).vertices)
    return Counter((len(vs), shoelace_area(vs)) for vs in found)


def mean_end_to_end_sq(n: int) -> float:
    """Exact average of |w_n|^2 over all n-step SAWs."""
    total = 0
    count = 0
    for w in walks(n):
        x, y = w[-1]
        total += x * x + y * y
        count += 1
    return total / count

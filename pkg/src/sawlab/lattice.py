"""Square-lattice walks, polygons, domains and occupancy bookkeeping."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NotClosableError, OccupiedError

Point = tuple[int, int]


class SquareStep(enum.Enum):
    """Unit step on the square lattice; value is the (dx, dy) displacement."""

    EAST = (1, 0)
    NORTH = (0, 1)
    WEST = (-1, 0)
    SOUTH = (0, -1)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]

    @classmethod
    def from_char(cls, c: str) -> "SquareStep":
        return _CHARS[c.upper()]

    @classmethod
    def between(cls, a: Point, b: Point) -> "SquareStep":
        try:
            return _BY_DELTA[(b[0] - a[0], b[1] - a[1])]
        except KeyError:
            raise ValueError(f"{a} and {b} are not nearest neighbours") from None


_CHARS = {"E": SquareStep.EAST, "N": SquareStep.NORTH,
          "W": SquareStep.WEST, "S": SquareStep.SOUTH}
_BY_DELTA = {s.value: s for s in SquareStep}

# Index order shared with the compiled kernels: E, N, W, S.
STEP_DX = np.array([1, 0, -1, 0], dtype=np.int64)
STEP_DY = np.array([0, 1, 0, -1], dtype=np.int64)


@dataclass(frozen=True)
class Domain:
    """Region of the square lattice that walks must stay inside.

    ``kind`` is one of ``"full"``, ``"half"`` (y >= 0), ``"square"``
    (0 <= x, y <= L) or ``"rectangle"`` (0 <= x <= width, 0 <= y <= height).
    """

    kind: str = "full"
    width: int = 0
    height: int = 0

    def __post_init__(self):
        if self.kind not in ("full", "half", "square", "rectangle"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind in ("square", "rectangle") and (self.width < 0 or self.height < 0):
            raise ValueError("negative domain size")

    @classmethod
    def full_plane(cls) -> "Domain":
        return cls("full")

    @classmethod
    def half_plane(cls) -> "Domain":
        return cls("half")

    @classmethod
    def square(cls, L: int) -> "Domain":
        return cls("square", L, L)

    @classmethod
    def rectangle(cls, width: int, height: int) -> "Domain":
        return cls("rectangle", width, height)

    def contains(self, p: Point) -> bool:
        x, y = p
        if self.kind == "full":
            return True
        if self.kind == "half":
            return y >= 0
        return 0 <= x <= self.width and 0 <= y <= self.height

    def n_vertices(self) -> int | None:
        if self.kind in ("full", "half"):
            return None
        return (self.width + 1) * (self.height + 1)


FULL_PLANE = Domain.full_plane()


@dataclass(frozen=True)
class Walk:
    """Self-avoiding walk anchored at ``vertices[0]`` (normally the origin)."""

    vertices: tuple[Point, ...] = ((0, 0),)
    domain: Domain = field(default=FULL_PLANE, compare=False)

    def __post_init__(self):
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ValueError("a walk has at least one vertex")
        if len(set(vs)) != len(vs):
            raise OccupiedError("walk revisits a vertex")
        for a, b in zip(vs, vs[1:]):
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                raise ValueError(f"{a} -> {b} is not a unit step")
        for v in vs:
            if not self.domain.contains(v):
                raise DomainError(f"vertex {v} outside {self.domain.kind} domain")

    @classmethod
    def from_steps(cls, steps: Iterable[SquareStep | str], domain: Domain = FULL_PLANE) -> "Walk":
        w = cls(domain=domain)
        for s in steps:
            w = extend(w, SquareStep.from_char(s) if isinstance(s, str) else s)
        return w

    def __len__(self) -> int:
        return len(self.vertices) - 1

    @property
    def end(self) -> Point:
        return self.vertices[-1]

    @property
    def steps(self) -> tuple[SquareStep, ...]:
        vs = self.vertices
        return tuple(SquareStep.between(a, b) for a, b in zip(vs, vs[1:]))

    def end_to_end_sq(self) -> int:
        (x0, y0), (x1, y1) = self.vertices[0], self.vertices[-1]
        return (x1 - x0) ** 2 + (y1 - y0) ** 2


def extend(walk: Walk, step: SquareStep) -> Walk:
    """Return ``walk`` with one more step; the input is left untouched."""
    x, y = walk.end
    target = (x + step.dx, y + step.dy)
    if target in walk.vertices:
        raise OccupiedError(f"{target} already visited")
    if not walk.domain.contains(target):
        raise DomainError(f"{target} outside {walk.domain.kind} domain")
    new = object.__new__(Walk)
    object.__setattr__(new, "vertices", walk.vertices + (target,))
    object.__setattr__(new, "domain", walk.domain)
    return new


def shoelace_area(vertices: Sequence[Point]) -> int:
    """Absolute enclosed area of a closed lattice circuit."""
    twice = 0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        twice += x0 * y1 - x1 * y0
    return abs(twice) // 2


def canonical_cycle(vertices: Sequence[Point]) -> tuple[Point, ...]:
    """Translate, rotate the starting point and fix orientation of a circuit.

    The least vertex (lexicographic in (x, y)) moves to the origin and
    becomes the first vertex; the second vertex is the smaller of its two
    cycle neighbours.
    """
    i0 = min(range(len(vertices)), key=lambda i: vertices[i])
    ox, oy = vertices[i0]
    shifted = [(x - ox, y - oy) for x, y in vertices]
    n = len(shifted)
    fwd = [shifted[(i0 + k) % n] for k in range(n)]
    bwd = [shifted[(i0 - k) % n] for k in range(n)]
    return tuple(min(fwd, bwd, key=lambda c: c[1]))


@dataclass(frozen=True)
class Polygon:
    """Self-avoiding polygon, counted up to translation."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = canonical_cycle(self.vertices)
        if len(vs) < 4 or len(set(vs)) != len(vs):
            raise ValueError("not a simple circuit")
        for a, b in zip(vs, vs[1:] + vs[:1]):
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                raise ValueError(f"{a} -> {b} is not a unit step")
        object.__setattr__(self, "vertices", vs)

    @property
    def perimeter(self) -> int:
        return len(self.vertices)

    @property
    def area(self) -> int:
        return shoelace_area(self.vertices)

    def translate(self, dx: int, dy: int) -> tuple[Point, ...]:
        return tuple((x + dx, y + dy) for x, y in self.vertices)


def close_polygon(walk: Walk) -> Polygon:
    """Join the end-point of ``walk`` back to its origin."""
    if len(walk) < 3:
        raise NotClosableError("a polygon needs a walk of at least 3 steps")
    (x0, y0), (x1, y1) = walk.vertices[0], walk.end
    if abs(x1 - x0) + abs(y1 - y0) != 1:
        raise NotClosableError(f"end-point {walk.end} is not adjacent to {walk.vertices[0]}")
    return Polygon(walk.vertices)


class OccupancySet:
    """Bitmap of visited sites over the window [-radius, radius]^2.

    Push/pop follow a depth-first search: ``pop`` removes the most recently
    pushed site.
    """

    def __init__(self, radius: int):
        self.radius = int(radius)
        side = 2 * self.radius + 1
        self._grid = np.zeros((side, side), dtype=np.bool_)
        self._stack: list[Point] = []

    def _index(self, p: Point) -> tuple[int, int]:
        x, y = p
        r = self.radius
        if not (-r <= x <= r and -r <= y <= r):
            raise DomainError(f"{p} outside occupancy window of radius {r}")
        return x + r, y + r

    def __contains__(self, p: Point) -> bool:
        x, y = p
        r = self.radius
        if not (-r <= x <= r and -r <= y <= r):
            return False
        return bool(self._grid[x + r, y + r])

    def __len__(self) -> int:
        return len(self._stack)

    def __iter__(self):
        return iter(self._stack)

    def push(self, p: Point) -> None:
        i = self._index(p)
        if self._grid[i]:
            raise OccupiedError(f"{p} already occupied")
        self._grid[i] = True
        self._stack.append(p)

    def pop(self) -> Point:
        p = self._stack.pop()
        self._grid[self._index(p)] = False
        return p

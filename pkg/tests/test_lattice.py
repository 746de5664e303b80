import pytest
from hypothesis import given, strategies as st

from sawlab.errors import DomainError, NotClosableError, OccupiedError
from sawlab.lattice import (Domain, OccupancySet, Polygon, SquareStep, Walk, canonical_cycle,
                            close_polygon, extend, shoelace_area)


def test_square_step_composition():
    assert len(SquareStep) == 4
    for a, b in ((SquareStep.EAST, SquareStep.WEST), (SquareStep.NORTH, SquareStep.SOUTH)):
        assert (a.dx + b.dx, a.dy + b.dy) == (0, 0)


def test_extend_examples():
    w = extend(Walk(((0, 0),)), SquareStep.EAST)
    assert len(w) == 1 and w.end == (1, 0)
    with pytest.raises(OccupiedError):
        extend(Walk.from_steps("ENW"), SquareStep.SOUTH)
    w3 = extend(Walk.from_steps("EN"), SquareStep.WEST)
    assert len(w3) == 3 and w3.end == (0, 1)


def test_extend_leaves_original_unchanged():
    w = Walk.from_steps("EN")
    extend(w, SquareStep.NORTH)
    assert len(w) == 2


def test_extend_domain_error():
    w = Walk(((0, 0),), Domain.half_plane())
    with pytest.raises(DomainError):
        extend(w, SquareStep.SOUTH)


def test_close_polygon_examples():
    p = close_polygon(Walk.from_steps("ENW"))
    assert (p.perimeter, p.area) == (4, 1)
    p = close_polygon(Walk.from_steps("EENWW"))
    assert (p.perimeter, p.area) == (6, 2)
    with pytest.raises(NotClosableError):
        close_polygon(Walk.from_steps("EN"))


def test_domains():
    assert Domain.half_plane().contains((0, 0))
    assert not Domain.half_plane().contains((0, -1))
    assert Domain.square(3).n_vertices() == 16
    assert sum(Domain.square(3).contains((x, y)) for x in range(-1, 5) for y in range(-1, 5)) == 16


def test_occupancy_set_push_pop():
    occ = OccupancySet(4)
    pts = [(0, 0), (1, 0), (1, 1)]
    for p in pts:
        occ.push(p)
    assert set(occ) == set(pts)
    with pytest.raises(OccupiedError):
        occ.push((1, 0))
    occ.pop()
    assert (1, 1) not in occ and (1, 0) in occ and len(occ) == 2


steps = st.lists(st.sampled_from("ENWS"), min_size=0, max_size=30)


@given(steps)
def test_random_step_sequences_are_valid_or_rejected(seq):
    occ = OccupancySet(31)
    occ.push((0, 0))
    path = [(0, 0)]
    for c in seq:
        s = SquareStep.from_char(c)
        q = (path[-1][0] + s.dx, path[-1][1] + s.dy)
        if q in occ:
            break
        occ.push(q)
        path.append(q)
    w = Walk(tuple(path))
    assert len(set(w.vertices)) == len(w.vertices)
    assert all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(w.vertices, w.vertices[1:]))
    assert set(occ) == set(path)


# rectangles as simple polygons with known area
rect = st.tuples(st.integers(1, 6), st.integers(1, 6), st.integers(-50, 50), st.integers(-50, 50))


def _rectangle(w, h):
    return ([(x, 0) for x in range(w)] + [(w, y) for y in range(h)]
            + [(x, h) for x in range(w, 0, -1)] + [(0, y) for y in range(h, 0, -1)])


@given(rect)
def test_canonicalization_translation_invariant(args):
    w, h, dx, dy = args
    cyc = _rectangle(w, h)
    p = Polygon(tuple(cyc))
    q = Polygon(tuple((x + dx, y + dy) for x, y in reversed(cyc)))
    assert p.vertices == q.vertices
    assert canonical_cycle(p.vertices) == p.vertices
    assert p.area == w * h and p.perimeter == 2 * (w + h)
    assert 1 <= p.area <= (p.perimeter / 4) ** 2
    assert p.perimeter % 2 == 0


def test_shoelace_unit_square():
    assert shoelace_area([(0, 0), (1, 0), (1, 1), (0, 1)]) == 1

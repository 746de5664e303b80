import cmath
import math

import numpy as np
import pytest

from sawlab.errors import BoundaryVertexError, BudgetError
from sawlab.honeycomb import (ALPHA_C, X_C, Y_STAR, adsorption_coefficient, adsorption_identity_residual,
                              boundary_generating_functions, boundary_sum, build_trapezoid,
                              domain_identity_residual, local_identity_residual, max_local_residual,
                              observable, trapezoid, walk_counts, walk_from_turns, walk_weight)

SIZES = [(1, 1), (2, 2), (3, 3), (2, 3), (3, 2)]


def test_structure_small():
    d = build_trapezoid(1, 1)
    assert max(d.degree_histogram()) <= 3
    d = build_trapezoid(2, 2)
    classes = set(d.boundary_class.values())
    assert classes == {"start", "left", "right", "top", "bottom"}
    boundary = {int(d.medge[v, s]) for v in range(d.n_vertices) for s in range(3) if d.nbr[v, s] < 0}
    assert boundary == set(d.boundary_class)


def test_edge_lengths_exact():
    d = build_trapezoid(3, 3)
    for v in range(d.n_vertices):
        for s in range(3):
            u = d.nbr[v, s]
            if u >= 0:
                assert abs(abs(d.vertices[u] - d.vertices[v]) - 1) < 1e-12
            assert abs(abs(d.midedges[d.medge[v, s]] - d.vertices[v]) - 0.5) < 1e-12


def test_t3_l3_fixture():
    # counted once by hand from the drawn 3 x 3 trapezoid
    d = build_trapezoid(3, 3)
    assert (d.n_vertices, d.n_edges(), d.n_midedges) == (39, 49, 68)
    assert d.degree_histogram() == {1: 2, 2: 15, 3: 22}
    assert {k: len(d.boundary(k)) for k in ("left", "right", "top", "bottom", "start")} == \
        {"left": 4, "right": 8, "top": 3, "bottom": 3, "start": 1}
    # handshake: 3V - 2E boundary half-edges
    assert 3 * d.n_vertices - 2 * d.n_edges() == len(d.boundary_class)


def test_start_on_left_side():
    for T, L in SIZES:
        d = trapezoid(T, L)
        a = d.midedges[d.start]
        left = [d.midedges[p].real for p in d.boundary("left")]
        assert len(left) == 2 * L - 2
        assert all(a.real <= x + 1e-12 for x in left)


def test_figure_walk_weight():
    d = build_trapezoid(6, 6)
    turns = "RLRRLLLRLLRRLLRLL"
    assert (turns.count("L"), turns.count("R"), len(turns)) == (10, 7, 17)
    path, end = walk_from_turns(d, turns)
    x, alpha = 0.47, 0.31
    assert walk_weight(d, path, end, x, alpha) == pytest.approx(x ** 17 * cmath.exp(3j * alpha), rel=1e-14)


def test_empty_walk_normalization():
    d = trapezoid(2, 2)
    tab = observable(d, 0.0)
    assert tab[d.start] == 1
    assert sum(abs(tab.values[p]) for p in range(d.n_midedges) if p != d.start) == 0


def test_x_zero_hand_residual():
    d = trapezoid(2, 2)
    tab = observable(d, 0.0)
    v = d.start_vertex
    # only the empty walk survives: (a - v) F(a) with a at the origin, v at 1/2
    assert local_identity_residual(tab, v) == pytest.approx(-0.5)
    others = [abs(local_identity_residual(tab, u)) for u in range(d.n_vertices) if u != v]
    assert max(others) == 0


def test_y_one_is_bitwise_bulk():
    bulk = trapezoid(2, 2)
    ads = trapezoid(2, 2, True)
    a = observable(bulk, X_C).values
    b = observable(ads, X_C, y=1.0).values
    assert np.array_equal(a, b)


@pytest.mark.parametrize("T,L", SIZES)
def test_local_identity_at_criticality(T, L):
    tab = observable(trapezoid(T, L), X_C, ALPHA_C)
    interior = [v for v in range(tab.domain.n_vertices) if (tab.domain.nbr[v] >= 0).all()]
    assert interior or (T, L) == (1, 1)
    assert max((abs(local_identity_residual(tab, v)) for v in interior), default=0.0) < 1e-12
    assert max_local_residual(tab) < 1e-12


def test_local_identity_fails_off_criticality():
    tab = observable(trapezoid(3, 3), 0.9 * X_C, ALPHA_C)
    assert max_local_residual(tab) > 1e-3


def test_wrong_alpha_sign_fails():
    tab = observable(trapezoid(3, 3), X_C, -ALPHA_C)
    assert max_local_residual(tab) > 1e-3


def test_boundary_vertex_error():
    tab = observable(trapezoid(1, 1), X_C)
    with pytest.raises(BoundaryVertexError):
        local_identity_residual(tab, tab.domain.n_vertices + 5)


def test_conjugation_symmetry():
    d = trapezoid(3, 2)
    a = observable(d, 0.6, 0.4).values
    b = observable(d, 0.6, -0.4).values
    assert np.allclose(a, np.conj(b), atol=1e-14)


def test_telescoping_sum():
    tab = observable(trapezoid(3, 3), 0.5, 0.7)
    total = sum(local_identity_residual(tab, v) for v in range(tab.domain.n_vertices))
    assert abs(total - boundary_sum(tab)) < 1e-12


def test_truncated_polynomial_in_x():
    d = trapezoid(2, 2)
    counts = walk_counts(d)
    k = 4
    xs = np.linspace(0.1, 0.9, k + 2)
    nV = d.n_vertices
    tv = np.exp(1j * ALPHA_C * np.arange(-nV, nV + 1))
    vals = [np.einsum("pvt,v,t->p", counts[:, :k + 1, :, 0].astype(float), x ** np.arange(k + 1), tv)
            for x in xs]
    diffs = np.diff(np.array(vals), n=k + 1, axis=0)
    assert np.abs(diffs).max() < 1e-10


@pytest.mark.parametrize("T,L", SIZES)
def test_domain_identity(T, L):
    assert domain_identity_residual(trapezoid(T, L), X_C) < 1e-12


def test_domain_identity_off_criticality():
    assert domain_identity_residual(trapezoid(2, 2), 0.8 * X_C) > 1e-3


@pytest.mark.parametrize("y", [0.5, 1.0, 2.0, Y_STAR])
@pytest.mark.parametrize("T,L", [(2, 2), (3, 3)])
def test_adsorption_identity(T, L, y):
    assert adsorption_identity_residual(trapezoid(T, L, True), X_C, y) < 1e-12


def test_adsorption_coefficient():
    assert adsorption_coefficient(1.0) == 1.0
    assert adsorption_coefficient(Y_STAR) == 0.0
    assert adsorption_coefficient(0.5) > 0 > adsorption_coefficient(3.0)


def test_adsorption_y_one_matches_bulk():
    d = trapezoid(3, 3, True)
    g1 = boundary_generating_functions(d, X_C, 1.0)
    g0 = boundary_generating_functions(trapezoid(3, 3), X_C)
    assert g1 == pytest.approx(g0, rel=1e-15)
    assert adsorption_identity_residual(d, X_C, 1.0) == pytest.approx(domain_identity_residual(trapezoid(3, 3)),
                                                                      abs=1e-14)
    assert math.cos(math.pi / 4) == pytest.approx(1 / math.sqrt(2))


def test_budget():
    with pytest.raises(BudgetError):
        walk_counts(build_trapezoid(6, 6))

import math
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sawlab import oracle
from sawlab.enumerate import count_half_plane, count_interacting_pulled
from sawlab.errors import AbsentDisplacementError, AbsentLengthError, InsufficientDataError
from sawlab.thermo import (EnsembleWeights, adsorption_growth, adsorption_partition, find_peaks,
                           fluctuation_scan, log_partition_curve, observables, parse_grid,
                           partition_distance, partition_force, resummation_residual)


@lru_cache(maxsize=None)
def tables(N_max=18):
    return count_interacting_pulled(N_max)


@lru_cache(maxsize=None)
def naive_walks(N):
    return [(oracle.contacts(w), w[-1][0]) for w in oracle.walks(N, lambda x, y: y >= 0)]


def test_weights():
    w = EnsembleWeights(T=2.0, F=1.0)
    assert w.omega == pytest.approx(math.exp(0.5)) and w.omega > 1
    assert w.u == pytest.approx(math.exp(0.5))
    assert EnsembleWeights(T=2.0, F=1.0, sign=-1).u == pytest.approx(math.exp(-0.5))
    with pytest.raises(ValueError):
        EnsembleWeights(T=0.0)


def test_n1_partition():
    t1 = tables()[1]
    assert partition_force(t1, EnsembleWeights(1.0, 0.0)) == pytest.approx(3.0)
    for T, F in ((0.5, 0.3), (2.0, -1.2)):
        u = math.exp(-F / T)
        z = partition_force(t1, EnsembleWeights(T, F, sign=-1))
        assert z == pytest.approx(1 + u + 1 / u, rel=1e-14)


def test_infinite_temperature_is_total():
    t = tables()[8]
    assert partition_force(t, EnsembleWeights(1e300, 0.0)) == pytest.approx(t.total(), rel=1e-12)


def test_partition_distance():
    t1 = tables()[1]
    assert partition_distance(t1, 1, EnsembleWeights(0.7)) == pytest.approx(1.0)
    with pytest.raises(AbsentDisplacementError):
        partition_distance(t1, 2, EnsembleWeights(0.7))


@pytest.mark.parametrize("N", [2, 6, 10, 12])
@pytest.mark.parametrize("T,F", [(0.3, 0.0), (1.0, 0.5), (2.5, -1.0)])
def test_resummation_identity(N, T, F):
    assert resummation_residual(tables()[N], EnsembleWeights(T, F)) < 1e-12


@pytest.mark.parametrize("N", [5, 9, 12])
def test_oracle_equivalence(N):
    walks = naive_walks(N)
    for T, F in ((0.5, 0.2), (1.0, 1.0), (3.0, -0.5)):
        w = EnsembleWeights(T, F)
        direct = math.fsum(w.omega ** m * w.u ** x for m, x in walks)
        assert partition_force(tables()[N], w) == pytest.approx(direct, rel=1e-12)
        zx = math.fsum(w.omega ** m for m, x in walks if x == 1)
        assert partition_distance(tables()[N], 1, w) == pytest.approx(zx, rel=1e-12)


def test_observables_n1():
    o = observables(tables()[1], EnsembleWeights(0.8, 0.4))
    assert o.mean_m == 0 and o.chi == 0


def test_infinite_temperature_mean_contacts():
    walks = naive_walks(9)
    o = observables(tables()[9], EnsembleWeights(1e300, 0.0))
    assert o.mean_m == pytest.approx(sum(m for m, _ in walks) / len(walks), rel=1e-12)


def test_force_derivative_identity():
    t = tables()[10]
    h = 1e-4
    G = lambda F: observables(t, EnsembleWeights(1.0, F)).G  # noqa: E731
    dG = (G(0.5 + h) - G(0.5 - h)) / (2 * h)
    mx = observables(t, EnsembleWeights(1.0, 0.5)).mean_x
    # G = -T log Z and u = e^(F/T): dG/dF = -<x>
    assert -dG == pytest.approx(mx, rel=1e-5)
    Gm = lambda F: observables(t, EnsembleWeights(1.0, F, sign=-1)).G  # noqa: E731
    dGm = (Gm(0.5 + h) - Gm(0.5 - h)) / (2 * h)
    assert dGm == pytest.approx(observables(t, EnsembleWeights(1.0, 0.5, sign=-1)).mean_x, rel=1e-5)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 14), st.floats(0.1, 5.0), st.floats(-3.0, 3.0))
def test_chi_non_negative(N, T, F):
    assert observables(tables()[N], EnsembleWeights(T, F)).chi >= 0


def test_log_convexity_in_force_and_inverse_temperature():
    t = tables()[12]
    Fs = np.linspace(-2, 2, 41)
    lz = np.array([math.log(partition_force(t, EnsembleWeights(1.0, F))) for F in Fs])
    assert np.all(np.diff(lz, 2) >= -1e-10)
    betas = np.linspace(0.3, 4, 41)
    # at F = 0, log Z is a positive-coefficient exponential sum in beta = 1/T
    lz = np.array([math.log(partition_force(t, EnsembleWeights(1 / b, 0.0))) for b in betas])
    assert np.all(np.diff(lz, 2) >= -1e-10)


def test_grid_parsing():
    g = parse_grid("0.2:3.0:0.05")
    assert len(g) == 57 and g[0] == 0.2 and g[-1] == pytest.approx(3.0)
    assert len(parse_grid(None)) == 57
    with pytest.raises(ValueError):
        parse_grid("1:0:0.1")


def test_find_peaks():
    assert find_peaks([0, 1, 0, 2, 0]) == [1, 3]
    assert find_peaks([0, 1, 1, 0]) == []
    assert find_peaks([0, 3, 0, 3, 0], smooth=True) == [2]


def test_fluctuation_scan_continuity():
    c = fluctuation_scan(tables()[6], 0.0)
    chi = c.values["chi"]
    assert np.all(chi >= 0) and np.all(np.isfinite(chi))
    assert np.max(np.abs(np.diff(chi))) < 0.5


def test_peak_count_trend():
    counts = [len(fluctuation_scan(tables()[N], 1.0).peaks) for N in (10, 14, 18)]
    assert counts == sorted(counts)


@pytest.mark.parametrize("N", [10, 14, 18])
def test_peaks_stable_under_refinement(N):
    coarse = fluctuation_scan(tables()[N], 1.0, "0.2:3.0:0.05").peak_locations
    fine = fluctuation_scan(tables()[N], 1.0, "0.2:3.0:0.025").peak_locations
    assert len(coarse) == len(fine)
    for a, b in zip(coarse, fine):
        assert abs(a - b) <= 0.05 + 1e-9


# ---- adsorption

@lru_cache(maxsize=None)
def halfplane(n=14):
    return count_half_plane(n)


def test_adsorption_examples():
    t = halfplane()
    for y in (0.3, 1.0, 2.5):
        assert adsorption_partition(t, 1, y) == pytest.approx(1 + 2 * y)
    assert adsorption_partition(t, 7, 1.0) == sum(t.row(7).values())
    never = sum(1 for w in oracle.walks(6, lambda x, y: y >= 0) if all(p[1] > 0 for p in w[1:]))
    assert adsorption_partition(t, 6, 1e-30) == pytest.approx(never)
    with pytest.raises(AbsentLengthError):
        adsorption_partition(t, 99, 1.0)


def test_adsorption_monotone_and_log_convex():
    t = halfplane()
    ys = np.exp(np.linspace(-2, 2, 33))
    for n in range(3, 15):
        v = log_partition_curve(t, n, ys)
        assert np.all(np.diff(v) > 0)
        assert np.all(np.diff(v, 2) >= -1e-10)


def test_adsorption_growth():
    t = halfplane()
    rep = adsorption_growth(t, [0.5, 1.0, 2.0, 4.0])
    for n, v in rep.estimates[4.0].point_estimates:
        if n >= 10:
            assert v > math.sqrt(4.0) - 0.1
    assert rep.y_c is not None and 1.0 < rep.y_c <= 4.0
    with pytest.raises(InsufficientDataError):
        adsorption_growth(count_half_plane(8), [1.0])

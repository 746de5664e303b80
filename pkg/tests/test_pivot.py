import numpy as np
import pytest

from sawlab import oracle
from sawlab.errors import ConvergenceError, InsufficientDataError
from sawlab.lattice import Walk
from sawlab.pivot import PivotChain, batch_means, estimate_nu, fit_power_law, pivot_step


def test_identity_pivot():
    c = PivotChain(10)
    before = c.walk
    assert c.propose(4, 0)
    assert c.walk == before


def test_rod_rotation_accepted():
    c = PivotChain(10)
    assert c.propose(5, 1)
    assert c.walk.end == (5, 5)
    assert isinstance(c.walk, Walk)


def test_rejected_move_leaves_walk():
    c = PivotChain(4)
    assert c.propose(1, 1)    # (0,0) (1,0) (1,1) (1,2) (1,3)
    before = c.walk
    # half turn about (1,1) sends (1,2) onto (1,0)
    assert not c.propose(2, 2)
    assert c.walk == before
    assert (c.accepted, c.attempted) == (1, 2)


def test_chain_stays_self_avoiding():
    c = PivotChain(30, seed=3)
    for _ in range(300):
        pivot_step(c)
        w = c.walk
        assert len(set(w.vertices)) == 31
    assert 0 < c.acceptance < 1


def test_reproducible_state():
    a = PivotChain(50, seed=11)
    b = PivotChain(50, seed=11)
    ra = a.sample(200, 7)
    rb = np.concatenate([b.sample(100, 7), b.sample(100, 7)])
    assert np.array_equal(ra, rb)
    assert np.array_equal(a.xs, b.xs) and np.array_equal(a.ys, b.ys)
    c = PivotChain(50, seed=12)
    assert not np.array_equal(ra, c.sample(200, 7))


def test_mean_matches_exact_enumeration():
    exact = oracle.mean_end_to_end_sq(12)
    c = PivotChain(12, seed=5)
    c.advance(20 * 12)
    r2 = c.sample(20_000, 6)
    mean, se = batch_means(r2)
    assert abs(mean - exact) < 3 * se


def test_short_run_from_rod_n20():
    c = PivotChain(20, seed=2)
    r2 = c.sample(10_000, 1)
    assert r2.min() >= 1 and r2.max() <= 400


def test_fit_exact_points():
    ns = [10, 20, 40, 80, 160]
    means = [3.0 * n ** 1.5 for n in ns]
    slope, err, icpt, resid = fit_power_law(ns, means, [0.0] * 5)
    assert slope == pytest.approx(1.5) and np.exp(icpt) == pytest.approx(3.0)
    assert max(abs(r) for r in resid) < 1e-12 and err < 1e-10


def test_estimate_nu_small_and_reproducible():
    kw = dict(n_values=[10, 20, 40, 100], samples_per_n=400, seed=9, warmup_factor=5)
    a = estimate_nu(**kw)
    b = estimate_nu(**kw)
    assert a.to_dict() == b.to_dict()
    assert all(s > 0 for s in a.stderr)
    assert len(a.residuals) == 4


def test_exact_data_inserted():
    exact = {n: oracle.mean_end_to_end_sq(n) for n in (4, 6, 8)}
    est = estimate_nu([20, 40], samples_per_n=200, seed=1, warmup_factor=2, exact=exact)
    for n, v in exact.items():
        assert est.mean_r2[est.n_values.index(n)] == v
        assert est.stderr[est.n_values.index(n)] == 0.0


def test_validation():
    with pytest.raises(InsufficientDataError):
        estimate_nu([10, 20, 30, 40], samples_per_n=10)
    with pytest.raises(ConvergenceError):
        estimate_nu([10, 20, 40, 100], samples_per_n=50, warmup_factor=1, min_acceptance=0.99)

import numpy as np
import pytest

from phasetv.cyclic import wrap
from phasetv.lifting import (
    ConvergenceCheck,
    check_convergence_conditions,
    d_inf_between,
    d_inf_neighbors,
    energy_2d_unwrapped,
    lift,
)
from phasetv.solver import Params1D, Params2D, energy_2d

PI = np.pi


def dense_image(rng, n, m, scale=0.3):
    # random dense image: cumulative small increments both ways, wrapped
    rows = np.cumsum(rng.uniform(-scale, scale, size=(n, 1)), axis=0)
    cols = np.cumsum(rng.uniform(-scale, scale, size=(1, m)), axis=1)
    bumps = rng.uniform(-0.05, 0.05, size=(n, m))
    return wrap(rows + cols + bumps)


def test_d_inf_neighbors_values():
    assert d_inf_neighbors(np.full((4, 5), 1.2)) == 0.0
    assert d_inf_neighbors(np.array([0.0, PI / 2])) == pytest.approx(PI / 2)
    ramp = wrap(0.1 * np.arange(100))
    assert d_inf_neighbors(ramp) == pytest.approx(0.1, abs=1e-12)
    assert d_inf_neighbors(np.array([0.7])) == 0.0


def test_d_inf_between_values():
    rng = np.random.default_rng(0)
    f = dense_image(rng, 10, 12)
    assert d_inf_between(f, f) == 0.0
    g = f.copy()
    g[3, 4] = wrap(g[3, 4] + PI)
    assert d_inf_between(g, f) == pytest.approx(PI, abs=1e-12)
    assert d_inf_between(wrap(f + 0.05), f) == pytest.approx(0.05, abs=1e-12)
    with pytest.raises(ValueError):
        d_inf_between(np.zeros((2, 2)), np.zeros((2, 3)))


def test_lift_constant_and_ramp():
    img = np.full((3, 4), -0.4)
    lifted = lift(img, anchor=2.0)
    assert np.allclose(lifted.values, 2.0)
    # wrapped 1-D ramp unwraps to the exact line
    x = wrap(0.3 * np.arange(50))
    lifted = lift(x, anchor=0.0)
    assert np.allclose(lifted.values, 0.3 * np.arange(50), atol=1e-12)


def test_lift_2x2_seam_crossing():
    # one seam crossing: lifted steps are geodesic, not raw differences
    img = np.array([[3.0, -3.0], [3.0, -3.0]])
    lifted = lift(img, anchor=3.0)
    step = 2 * PI - 6.0  # short way across the seam
    assert np.allclose(lifted.values, [[3.0, 3.0 + step], [3.0, 3.0 + step]])


def test_lift_round_trip_and_path_independence():
    rng = np.random.default_rng(1)
    for _ in range(25):
        img = dense_image(rng, 12, 15)
        anchor = rng.uniform(-10, 10)
        a = lift(img, anchor, order="rows")
        b = lift(img, anchor, order="columns")
        assert np.max(np.abs(a.values - b.values)) < 1e-12
        # round trip through the stored offset
        assert np.max(np.abs(wrap(a.values - a.offset) - img)) < 1e-12
        # neighbor distances become plain absolute differences
        assert d_inf_neighbors(img) == pytest.approx(
            max(
                np.abs(np.diff(a.values, axis=0)).max(),
                np.abs(np.diff(a.values, axis=1)).max(),
            ),
            abs=1e-12,
        )


def test_lift_rejects_sparse_data():
    img = np.array([[0.0, 2.0], [0.0, 0.0]])
    with pytest.raises(ValueError, match="pi/2"):
        lift(img)
    with pytest.raises(ValueError, match="samples"):
        lift(np.array([0.0, 2.0]))


def test_energy_transport():
    # cyclic energy of x equals the real energy of the lifts for x near f
    rng = np.random.default_rng(2)
    params = Params2D(alpha=(0.3, 0.2), beta=(0.15, 0.25), gamma=0.1)
    for _ in range(10):
        f = dense_image(rng, 10, 11, scale=0.12)
        assert d_inf_neighbors(f) < PI / 8
        x = wrap(f + rng.uniform(-PI / 8, PI / 8, size=f.shape))
        ft = lift(f, anchor=0.0)
        anchor_x = ft.values[0, 0] + float(wrap(x[0, 0] - f[0, 0]))
        xt = lift(x, anchor=anchor_x)
        assert abs(xt.values[0, 0] - ft.values[0, 0]) <= PI / 8
        e_cyc = energy_2d(x, f, params)
        e_real = energy_2d_unwrapped(xt.values, ft.values, params)
        assert e_cyc == pytest.approx(e_real, abs=1e-10)


def test_check_convergence_conditions_flags():
    # constant data, tiny weights, tiny lambda0: everything satisfied
    f = np.full((6, 6), 0.3)
    params = Params2D(alpha=(1e-6, 1e-6), beta=(1e-6, 1e-6), gamma=1e-6,
                      lambda0=1e-4, max_cycles=100)
    chk = check_convergence_conditions(f, params, epsilon=0.01)
    assert isinstance(chk, ConvergenceCheck)
    assert chk.c == 15 and chk.L == 4.0
    assert chk.cond_density and chk.cond_tv_budget and chk.cond_schedule
    assert chk.all_satisfied

    # an antipodal neighbor jump kills the density flag
    g = f.copy()
    g[2, 2] = wrap(f[2, 2] + PI)
    chk2 = check_convergence_conditions(g, params, epsilon=0.01)
    assert not chk2.cond_density

    # lambda0 = pi over 4000 cycles violates the schedule condition:
    # ||lam||_2^2 = pi^2 * sum_{k<=4000} k^-2
    params_big = Params2D(alpha=(1e-6, 1e-6), beta=(1e-6, 1e-6), gamma=1e-6,
                          lambda0=PI, max_cycles=4000)
    chk3 = check_convergence_conditions(f, params_big, epsilon=0.01)
    expected_l2sq = PI**2 * (1.0 / np.arange(1, 4001) ** 2).sum()
    assert chk3.lambda_l2**2 == pytest.approx(expected_l2sq, rel=1e-12)
    assert not chk3.cond_schedule


def test_minimizer_containment_under_tv_budget():
    # when the TV-budget condition holds with epsilon, the solver output
    # stays within geodesic distance epsilon of the data
    from phasetv.solver import cppa_denoise_2d

    rng = np.random.default_rng(5)
    f = dense_image(rng, 12, 12, scale=0.04)
    params = Params2D(alpha=(2e-4, 2e-4), beta=(1e-4, 1e-4), gamma=1e-4,
                      lambda0=0.05, max_cycles=400)
    chk = check_convergence_conditions(f, params, epsilon=0.12)
    assert chk.cond_density and chk.cond_tv_budget
    rep = cppa_denoise_2d(f, params)
    assert d_inf_between(rep.result, f) <= chk.epsilon + 1e-6


def test_check_convergence_1d_dispatch():
    f = wrap(0.01 * np.arange(50))
    params = Params1D(alpha=1e-5, beta=1e-5, lambda0=1e-4, max_cycles=50)
    chk = check_convergence_conditions(f, params, epsilon=0.05)
    assert chk.c == 6
    assert chk.cond_density
    with pytest.raises(ValueError):
        check_convergence_conditions(f, params, epsilon=0.0)
    with pytest.raises(ValueError):
        check_convergence_conditions(np.zeros((3, 3)), params)

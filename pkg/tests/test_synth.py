import numpy as np
import pytest

from phasetv.cyclic import TWO_PI, geodesic_distance, wrap
from phasetv.synth import (
    NoiseSpec,
    add_wrapped_gaussian,
    cmse,
    splitmix64,
    standard_normal_stream,
    synth_signal_1d,
    synth_surface_2d,
)

PI = np.pi


def test_signal_point_values():
    # values at x = 0, 1/4 (quadratic branch) and inside the first stair
    s = synth_signal_1d(33)  # x_i = i/32
    x = np.arange(33) / 32.0
    assert s[0] == pytest.approx(0.75 * PI, abs=1e-14)
    i_quarter = np.where(x == 0.25)[0][0]
    assert s[i_quarter] == pytest.approx(-0.75 * PI, abs=1e-12)
    i_stair = np.where(x == 17 / 32)[0][0]
    assert s[i_stair] == pytest.approx(-7 * PI / 8, abs=1e-14)


def test_signal_branches_continuity_and_stairs():
    n = 3201
    s = synth_signal_1d(n)
    x = np.arange(n) / (n - 1)
    steps = geodesic_distance(s[:-1], s[1:])
    grid = x[1] - x[0]
    # jump of pi/2 at x = 1/4, stairs step by pi/8, jump of ~pi/2 at 7/8
    big = np.where(steps > 0.1)[0]
    locs = x[big]
    assert np.any(np.isclose(locs, 0.25, atol=2 * grid))
    assert np.any(np.isclose(locs, 0.875, atol=2 * grid))
    # linear ramp and descent branches are continuous at 3/8 and 1/2
    for boundary in (0.375, 0.5):
        near = np.abs(x[:-1] - boundary) < 2 * grid
        assert steps[near].max() < 0.05
    # consecutive stairs differ by exactly pi/8 on the circle
    stair_mids = [(3 * j + 17.5) / 32.0 for j in range(4)]
    vals = [s[np.argmin(np.abs(x - sm))] for sm in stair_mids]
    for v, vn in zip(vals, vals[1:]):
        assert geodesic_distance(v, vn) == pytest.approx(PI / 8, abs=1e-12)
    # the -pi stair and the 7pi/8 stair sit across the seam
    assert vals[1] == pytest.approx(-PI, abs=1e-14)
    assert vals[2] == pytest.approx(7 * PI / 8, abs=1e-14)


def test_signal_canonical_and_dense():
    s = synth_signal_1d(500)
    assert np.all(s >= -PI) and np.all(s < PI)
    steps = geodesic_distance(s[:-1], s[1:])
    # smooth except at the few intended jumps
    assert (steps > PI / 8).sum() <= 3
    with pytest.raises(ValueError):
        synth_signal_1d(1)


def test_surface_values_and_consistency():
    wrapped, unwrapped = synth_surface_2d(128, 128)
    assert wrapped.shape == unwrapped.shape == (128, 128)
    # wrapped/unwrapped consistency
    assert np.allclose(wrapped, wrap(unwrapped), atol=0)
    # deep inside the upper plate (below the stairs quadrant, left of the
    # ellipse): unwrapped 2*pi, wrapped 0
    assert unwrapped[70, 10] == pytest.approx(TWO_PI)
    assert wrapped[70, 10] == pytest.approx(0.0, abs=1e-12)
    # lower plate likewise wraps to 0
    assert unwrapped[120, 120] == pytest.approx(-TWO_PI)
    assert wrapped[120, 120] == pytest.approx(0.0, abs=1e-12)
    # dent minimum is plate value - depth
    assert unwrapped.min() == pytest.approx(-TWO_PI - 4 * PI, abs=0.05)
    # stairs create five distinct levels in the upper-left quadrant
    quad = unwrapped[: 128 // 4, : 128 // 4]
    assert len(np.unique(np.round(quad, 10))) >= 4


def test_surface_rejects_tiny():
    with pytest.raises(ValueError):
        synth_surface_2d(1, 10)


def test_splitmix64_reference_values():
    # first outputs for seed 1234567: computed once from the scalar
    # reference implementation of splitmix64 and frozen here
    got = splitmix64(1234567, 3)
    ref = np.array(
        [6457827717110365317, 3203168211198807973, 9817491932198370423],
        dtype=np.uint64,
    )
    assert np.array_equal(got, ref)
    # the widely published first output for seed 0
    assert splitmix64(0, 1)[0] == np.uint64(16294208416658607535)


def test_noise_determinism_and_identity():
    x = synth_signal_1d(200)
    spec = NoiseSpec(sigma=0.2, seed=42)
    n1 = add_wrapped_gaussian(x, spec)
    n2 = add_wrapped_gaussian(x, spec)
    assert np.array_equal(n1, n2)
    assert not np.array_equal(n1, add_wrapped_gaussian(x, NoiseSpec(0.2, 43)))
    assert np.array_equal(add_wrapped_gaussian(x, NoiseSpec(0.0, 1)), x)
    with pytest.raises(ValueError):
        NoiseSpec(sigma=-0.1)


def test_noise_moments():
    z = standard_normal_stream(7, 200001)
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1.0) < 0.01
    # circular sample variance of wrapped noise close to sigma^2 at sigma=0.2
    x = np.zeros(100000)
    noisy = add_wrapped_gaussian(x, NoiseSpec(sigma=0.2, seed=3))
    assert np.var(noisy) == pytest.approx(0.04, rel=0.05)


def test_noise_2d_row_major_order():
    flat = np.zeros(12)
    img = np.zeros((3, 4))
    spec = NoiseSpec(sigma=0.5, seed=9)
    assert np.array_equal(
        add_wrapped_gaussian(img, spec).ravel(), add_wrapped_gaussian(flat, spec)
    )


def test_cmse():
    a = wrap(np.random.default_rng(0).uniform(-PI, PI, size=(20, 20)))
    assert cmse(a, a) == 0.0
    b = a.copy()
    b[0, 0] = wrap(b[0, 0] + PI)
    assert cmse(a, b) == pytest.approx(PI**2 / 400.0, abs=1e-12)
    assert cmse(a, wrap(a + 0.1)) == pytest.approx(0.01, abs=1e-12)
    with pytest.raises(ValueError):
        cmse(np.zeros(3), np.zeros((3, 1)))

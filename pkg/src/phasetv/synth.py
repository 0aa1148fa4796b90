"""Synthetic phase data, reproducible wrapped Gaussian noise and the
cyclic error metric.

The noise generator is fully specified so that runs are reproducible
from the seed alone: a splitmix64 counter stream feeds a Box-Muller
transform (see README for the exact byte-level definition).
"""

from dataclasses import dataclass

import numpy as np

from .cyclic import TWO_PI, _rewrap, wrap

_U64 = np.uint64
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)


@dataclass(frozen=True)
class NoiseSpec:
    """Wrapped Gaussian noise: std deviation before wrapping, plus seed."""

    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and self.sigma >= 0):
            raise ValueError("sigma must be finite and >= 0")


def splitmix64(seed, count):
    """The splitmix64 output stream: count words from the given seed."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = _U64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _GOLDEN
    z = (z ^ (z >> _U64(30))) * _MIX1
    z = (z ^ (z >> _U64(27))) * _MIX2
    return z ^ (z >> _U64(31))


def standard_normal_stream(seed, count):
    """Portable N(0, 1) draws: splitmix64 uniforms through Box-Muller."""
    n_pairs = (count + 1) // 2
    raw = splitmix64(seed, 2 * n_pairs)
    # u1 in (0, 1] keeps the log finite; u2 in [0, 1)
    u1 = ((raw[0::2] >> _U64(11)) + _U64(1)) * 2.0**-53
    u2 = (raw[1::2] >> _U64(11)) * 2.0**-53
    r = np.sqrt(-2.0 * np.log(u1))
    theta = TWO_PI * u2
    z = np.empty(2 * n_pairs)
    z[0::2] = r * np.cos(theta)
    z[1::2] = r * np.sin(theta)
    return z[:count]


def add_wrapped_gaussian(x, spec):
    """Add i.i.d. Gaussian noise (std ``spec.sigma``) and wrap back.

    Deterministic in (spec.sigma, spec.seed, x); entries are consumed in
    row-major order.
    """
    x = np.asarray(x, dtype=float)
    if spec.sigma == 0.0:
        return wrap(x)
    noise = spec.sigma * standard_normal_stream(spec.seed, x.size)
    return wrap(x + noise.reshape(x.shape))


def cmse(a, b):
    """Mean squared geodesic distance between two phase datasets."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("shape mismatch")
    return float(np.mean(_rewrap(wrap(b) - wrap(a)) ** 2))


def synth_signal_1d(n):
    """Benchmark signal on [0, 1] sampled at x_i = (i-1)/(n-1), i=1..n.

    Piecewise construction: a downward quadratic, a steep linear ramp
    that crosses the seam, a shallow linear descent, four constant
    stairs stepping by pi/8, and a tiny exponential bump; everything is
    wrapped to [-pi, pi).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    x = np.arange(n, dtype=float) / (n - 1)
    y = np.empty(n)

    m = x <= 0.25
    y[m] = -24.0 * np.pi * x[m] ** 2 + 0.75 * np.pi
    m = (x > 0.25) & (x <= 0.375)
    y[m] = 4.0 * np.pi * x[m] - 0.25 * np.pi
    m = (x > 0.375) & (x <= 0.5)
    y[m] = -np.pi * x[m] - 0.375 * np.pi
    for j in range(4):
        m = (x > (3 * j + 16) / 32.0) & (x <= (3 * j + 19) / 32.0)
        y[m] = -(j + 7) / 8.0 * np.pi
    m = x > 0.875
    t = 1.0 - x[m]
    bump = np.zeros(t.size)
    pos = t > 0
    bump[pos] = np.exp(-5.0 - 1.0 / t[pos])
    y[m] = 1.5 * np.pi * bump - 0.75 * np.pi

    return wrap(y)


# geometry of the benchmark surface (plot coordinates: x right, y up)
_STAIR_COUNT = 5
_STAIR_ANGLE = np.pi / 3
_ELLIPSE_CENTER = (0.45, 0.45)  # row/col (0.55, 0.45)
_ELLIPSE_AXES = (0.35, 0.15)
_ELLIPSE_ANGLE = np.pi / 6
_DENT_CENTER = (0.75, 0.25)  # row/col (0.75, 0.75)
_DENT_RADIUS = 9.0 / 50.0
_DENT_DEPTH = 4.0 * np.pi


def synth_surface_2d(n, m):
    """Benchmark surface on [0, 1]^2, returned as (wrapped, unwrapped).

    Two plates of height +-2*pi split along the plot diagonal (the
    matrix anti-diagonal), five stairs of height 2*pi/5 across the
    upper-left quadrant with risers normal to the pi/3 direction, an
    ellipse (semi-axes 0.35/0.15, major axis at pi/6) ramping linearly
    between the plate levels, and a spherical dent of radius 9/50 and
    depth 4*pi in the lower-right plate.  Row i, column j maps to the
    plot point (x, y) = (j/(m-1), 1 - i/(n-1)).
    """
    if n < 2 or m < 2:
        raise ValueError("surface needs n, m >= 2")
    u = (np.arange(n, dtype=float) / (n - 1))[:, None]  # row fraction, downwards
    v = (np.arange(m, dtype=float) / (m - 1))[None, :]  # column fraction
    px = v + np.zeros((n, m))  # plot x
    py = 1.0 - (u + np.zeros((n, m)))  # plot y

    surface = np.where(py > px, TWO_PI, -TWO_PI)

    # stairs across the upper-left quadrant
    quad = (px < 0.5) & (py > 0.5)
    t = np.cos(_STAIR_ANGLE) * px + np.sin(_STAIR_ANGLE) * py
    t_min = np.sin(_STAIR_ANGLE) * 0.5
    t_max = np.cos(_STAIR_ANGLE) * 0.5 + np.sin(_STAIR_ANGLE)
    step = np.clip(
        np.floor(_STAIR_COUNT * (t - t_min) / (t_max - t_min)), 0, _STAIR_COUNT - 1
    )
    surface = np.where(
        quad, TWO_PI - (step + 1.0) * TWO_PI / _STAIR_COUNT, surface
    )

    # elliptical ramp connecting the plates
    ex, ey = _ELLIPSE_CENTER
    a, b = _ELLIPSE_AXES
    ca, sa = np.cos(_ELLIPSE_ANGLE), np.sin(_ELLIPSE_ANGLE)
    xi = (px - ex) * ca + (py - ey) * sa
    eta = -(px - ex) * sa + (py - ey) * ca
    inside = (xi / a) ** 2 + (eta / b) ** 2 <= 1.0
    surface = np.where(inside, -TWO_PI * xi / a, surface)

    # spherical dent in the lower-right plate
    dx, dy = _DENT_CENTER
    rho2 = (px - dx) ** 2 + (py - dy) ** 2
    dent = rho2 <= _DENT_RADIUS**2
    cap = np.sqrt(np.clip(1.0 - rho2 / _DENT_RADIUS**2, 0.0, 1.0))
    surface = np.where(dent, -TWO_PI - _DENT_DEPTH * cap, surface)

    return wrap(surface), surface

"""Closed-form proximal mappings for cyclic-difference penalties.

The circle-valued mappings move the input along the weight direction by
an amount read off the wrapped difference, then wrap back to the
fundamental domain.  ``brute_force_prox`` is a grid-search oracle used
by the tests.

Convention note: the absolute penalty (p = 1) pairs with the halved data
term 0.5*sum d(f_j, x_j)^2, while the squared penalty (p = 2) pairs with
the unhalved data term sum d(f_j, x_j)^2.  The closed forms below and
:func:`cyclic_prox_objective` follow that pairing consistently.
"""

import math
from dataclasses import dataclass

import numpy as np

from .cyclic import (
    TWO_PI,
    _rewrap,
    _weight_vector,
    abs_cyclic_diff_general,
    named_weight,
    wrap,
)


@dataclass(frozen=True)
class ProxConfig:
    """Proximal step: weight ``lam`` > 0, exponent ``p`` in {1, 2}.

    ``seam_tolerance`` decides when the wrapped difference counts as
    exactly pi, which is the two-minimizer case.
    """

    lam: float
    p: int = 1
    seam_tolerance: float = 1e-9

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ValueError("lam must be positive")
        if self.p not in (1, 2):
            raise ValueError("p must be 1 or 2")


@dataclass(frozen=True)
class ProxResult:
    """Minimizer(s) of a cyclic proximal problem.

    ``secondary_minimizer`` is present only in the antipodal case, i.e.
    when the wrapped difference of the input equals pi (within the seam
    tolerance); both minimizers then attain the same value.
    """

    primary_minimizer: np.ndarray
    secondary_minimizer: np.ndarray | None
    minimum_value: float


def _checked_weight(w):
    wv = _weight_vector(w)
    if not np.any(wv):
        raise ValueError("weight vector must be nonzero")
    return wv


def prox_linear_abs_real(f, w, a, lam):
    """Minimize E(x) = 0.5*||f - x||^2 + lam*|<x, w> - a| over R^d.

    Returns (minimizer, minimum value).  The minimizer is a soft
    shrinkage of f along w with threshold lam.
    """
    if not lam > 0:
        raise ValueError("lam must be positive")
    f = np.asarray(f, dtype=float)
    wv = _checked_weight(w)
    if f.shape != wv.shape:
        raise ValueError("length mismatch between f and w")
    ip = float(f @ wv) - a
    wn2 = float(wv @ wv)
    s = np.sign(ip)
    mu = ip / wn2
    m = min(lam, abs(mu))
    xhat = f - s * m * wv
    if abs(mu) <= lam:
        emin = 0.5 * wn2 * mu * mu
    else:
        emin = wn2 * (0.5 * lam * lam + lam * (abs(mu) - lam))
    return xhat, float(emin)


def prox_linear_sq_real(f, w, a, lam):
    """Minimize E(x) = ||f - x||^2 + lam*(<x, w> - a)^2 over R^d.

    Returns (minimizer, minimum value); rank-one update of the identity,
    hence the single correction along w.
    """
    if not lam > 0:
        raise ValueError("lam must be positive")
    f = np.asarray(f, dtype=float)
    wv = _checked_weight(w)
    if f.shape != wv.shape:
        raise ValueError("length mismatch between f and w")
    ip = float(f @ wv) - a
    wn2 = float(wv @ wv)
    xhat = f - (lam * ip / (1.0 + lam * wn2)) * wv
    emin = lam * ip * ip / (1.0 + lam * wn2)
    return xhat, float(emin)


def cyclic_prox_objective(x, f, w, lam, p):
    """Energy minimized by :func:`prox_cyclic_diff` (batched over rows).

    p = 1: 0.5*sum_j d(f_j, x_j)^2 + lam * dcyc(x; w)
    p = 2:     sum_j d(f_j, x_j)^2 + lam * dcyc(x; w)^2

    where dcyc is the representation-independent cyclic difference.
    ``x`` may carry leading batch axes; ``f`` is a single vector.
    """
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    data = (_rewrap(x - f) ** 2).sum(axis=-1)
    reg = abs_cyclic_diff_general(x, w)
    if p == 1:
        out = 0.5 * data + lam * reg
    elif p == 2:
        out = data + lam * reg * reg
    else:
        raise ValueError("p must be 1 or 2")
    return out[()] if np.ndim(out) == 0 else out


def prox_cyclic_diff(f, w, cfg):
    """Proximal mapping of the cyclic difference penalty d(.; w)^p.

    ``w`` must be one of the named weights B1, B2, B11.  The input is a
    vector of canonical angles of matching length.  When the wrapped
    difference of f equals pi (within ``cfg.seam_tolerance``) there are
    two symmetric minimizers; the primary one always applies the
    regular-formula step, the secondary flips its sign.
    """
    named = named_weight(w)
    wv = named.vector
    f = np.asarray(f, dtype=float)
    if f.shape != wv.shape:
        raise ValueError("length mismatch between f and w")
    nu = float(wrap(f @ wv))
    wn2 = float(wv @ wv)
    if cfg.p == 1:
        m = min(cfg.lam, abs(nu) / wn2)
        step = np.sign(nu) * m * wv
    else:
        step = (cfg.lam * nu / (1.0 + cfg.lam * wn2)) * wv
    primary = wrap(f - step)
    secondary = None
    if np.pi - abs(nu) <= cfg.seam_tolerance:
        secondary = wrap(f + step)
    value = float(cyclic_prox_objective(primary, f, named, cfg.lam, cfg.p))
    return ProxResult(primary, secondary, value)


def prox_data_sq(g, f, lam):
    """Componentwise minimizer of d(g_j, x_j)^2 + lam*d(f_j, x_j)^2.

    Geodesic weighted averaging of the canonical vectors g and f: the
    result divides the shorter arc from g_j to f_j in ratio lam/(1+lam).
    Ties at distance exactly pi resolve to the direct (unshifted) branch.
    """
    if not lam > 0:
        raise ValueError("lam must be positive")
    g = np.asarray(g, dtype=float)
    f = np.asarray(f, dtype=float)
    if g.shape != f.shape:
        raise ValueError("length mismatch between g and f")
    diff = g - f
    v = np.where(np.abs(diff) > np.pi, np.sign(diff), 0.0)
    # subtractive form of (g + lam*f)/(1 + lam): exact at g == f
    c = lam / (1.0 + lam)
    out = _rewrap(g - c * diff + c * TWO_PI * v)
    return out[()] if np.ndim(out) == 0 else out


def _grid_axes(d, grid_step, center, halfwidth):
    if center is None:
        center = np.zeros(d)
    center = np.asarray(center, dtype=float)
    axes = []
    for j in range(d):
        lo = center[j] - halfwidth
        n = max(1, int(math.ceil(2.0 * halfwidth / grid_step)))
        axes.append(lo + grid_step * np.arange(n))
    return axes


def brute_force_prox(f, objective, grid_step, center=None, halfwidth=np.pi):
    """Exhaustive grid minimizer of ``objective`` (test oracle).

    Evaluates the batched callable ``objective`` on the uniform grid of
    spacing ``grid_step`` over the box ``center +- halfwidth`` (default
    [-pi, pi)^d) and returns the best grid point.  Dimension is capped
    at 4; the cost grows as (2*halfwidth/grid_step)^d.
    """
    f = np.asarray(f, dtype=float)
    d = f.size
    if d > 4:
        raise ValueError("grid oracle limited to d <= 4")
    if not grid_step > 0:
        raise ValueError("grid_step must be positive")
    axes = _grid_axes(d, grid_step, center, halfwidth)
    sizes = [len(ax) for ax in axes]

    if d == 1:
        vals = objective(axes[0][:, None])
        return axes[0][int(np.argmin(vals))] * np.ones(1)

    # tail grid shared across slabs of the first axis to bound memory
    tail = np.stack(
        [g.ravel() for g in np.meshgrid(*axes[1:], indexing="ij")], axis=-1
    )
    pts = np.empty((tail.shape[0], d))
    pts[:, 1:] = tail
    best_val = np.inf
    best_x = None
    for t in axes[0]:
        pts[:, 0] = t
        vals = objective(pts)
        j = int(np.argmin(vals))
        if vals[j] < best_val:
            best_val = float(vals[j])
            best_x = pts[j].copy()
    return best_x

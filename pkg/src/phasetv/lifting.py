"""Neighbor-distance diagnostics, unwrapping (lifting) and the
sufficient-condition checker for solver convergence.

Dense phase data (neighbor distances below pi/2) admits a unique
real-valued lift that turns every neighbor's geodesic distance into a
plain absolute difference; on such data the cyclic energy equals the
ordinary real-valued energy, which is what the convergence conditions
exploit.
"""

from dataclasses import dataclass

import numpy as np

from .cyclic import _rewrap
from .solver import Params1D, Params2D, tv_components_1d, tv_components_2d

PI = np.pi


def d_inf_neighbors(x):
    """Largest geodesic distance between adjacent samples / 4-neighbors."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("empty input")
    if x.ndim == 1:
        if x.size < 2:
            return 0.0
        return float(np.abs(_rewrap(x[1:] - x[:-1])).max())
    if x.ndim != 2:
        raise ValueError("expected 1-D or 2-D phase data")
    best = 0.0
    if x.shape[0] >= 2:
        best = max(best, float(np.abs(_rewrap(x[1:, :] - x[:-1, :])).max()))
    if x.shape[1] >= 2:
        best = max(best, float(np.abs(_rewrap(x[:, 1:] - x[:, :-1])).max()))
    return best


def d_inf_between(x, f):
    """Componentwise sup geodesic distance; x is in S(f, delta) iff <= delta."""
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    if x.shape != f.shape:
        raise ValueError("shape mismatch")
    return float(np.abs(_rewrap(x - f)).max())


@dataclass
class LiftedImage:
    """Real-valued unwrapping of a phase image.

    ``values[0, 0] == anchor`` and ``wrap(values - offset)`` reproduces
    the source image, where ``offset = anchor - source[0, 0]`` fixes the
    implicit base point.  Neighbor distances of the source equal plain
    absolute differences of ``values``.
    """

    values: np.ndarray
    anchor: float
    offset: float


def lift(x, anchor=0.0, order="rows"):
    """Unwrap dense phase data into real values, anchored at the first entry.

    Requires every neighbor distance below pi/2.  ``order`` selects the
    propagation path ("rows": first row, then down each column;
    "columns": first column, then along each row); by uniqueness both
    paths give the same grid, which the tests assert.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        return _lift_1d(x, anchor)
    if x.ndim != 2:
        raise ValueError("expected 1-D or 2-D phase data")
    _check_density(x)
    vals = np.empty_like(x)
    if order == "rows":
        row0 = np.concatenate(([0.0], np.cumsum(_rewrap(x[0, 1:] - x[0, :-1]))))
        vals[0, :] = anchor + row0
        if x.shape[0] > 1:
            steps = _rewrap(x[1:, :] - x[:-1, :])
            vals[1:, :] = vals[0, :][None, :] + np.cumsum(steps, axis=0)
    elif order == "columns":
        col0 = np.concatenate(([0.0], np.cumsum(_rewrap(x[1:, 0] - x[:-1, 0]))))
        vals[:, 0] = anchor + col0
        if x.shape[1] > 1:
            steps = _rewrap(x[:, 1:] - x[:, :-1])
            vals[:, 1:] = vals[:, 0][:, None] + np.cumsum(steps, axis=1)
    else:
        raise ValueError("order must be 'rows' or 'columns'")
    return LiftedImage(values=vals, anchor=float(anchor), offset=float(anchor - x.flat[0]))


def _lift_1d(x, anchor):
    d = d_inf_neighbors(x)
    if d >= PI / 2:
        i = int(np.argmax(np.abs(_rewrap(x[1:] - x[:-1]))))
        raise ValueError(
            f"neighbor distance {d:.4f} >= pi/2 between samples {i} and {i + 1}"
        )
    vals = anchor + np.concatenate(([0.0], np.cumsum(_rewrap(x[1:] - x[:-1]))))
    return LiftedImage(values=vals, anchor=float(anchor), offset=float(anchor - x[0]))


def _check_density(x):
    dv = np.abs(_rewrap(x[1:, :] - x[:-1, :])) if x.shape[0] > 1 else None
    dh = np.abs(_rewrap(x[:, 1:] - x[:, :-1])) if x.shape[1] > 1 else None
    worst = 0.0
    where = None
    if dv is not None and dv.size and dv.max() > worst:
        worst = float(dv.max())
        i, j = np.unravel_index(int(np.argmax(dv)), dv.shape)
        where = ((i, j), (i + 1, j))
    if dh is not None and dh.size and dh.max() > worst:
        worst = float(dh.max())
        i, j = np.unravel_index(int(np.argmax(dh)), dh.shape)
        where = ((i, j), (i, j + 1))
    if worst >= PI / 2:
        raise ValueError(
            f"neighbor distance {worst:.4f} >= pi/2 between pixels "
            f"{where[0]} and {where[1]}"
        )


def energy_2d_unwrapped(xt, ft, params):
    """Real-valued twin of the 2-D model energy (plain absolute differences)."""
    xt = np.asarray(xt, dtype=float)
    ft = np.asarray(ft, dtype=float)
    if xt.shape != ft.shape or xt.ndim != 2:
        raise ValueError("xt and ft must be 2-D arrays of equal shape")
    a1, a2 = params.alpha
    b1, b2 = params.beta
    e = 0.5 * float(((xt - ft) ** 2).sum())
    e += a1 * float(np.abs(xt[1:, :] - xt[:-1, :]).sum())
    e += a2 * float(np.abs(xt[:, 1:] - xt[:, :-1]).sum())
    if xt.shape[0] >= 3:
        e += b1 * float(np.abs(xt[:-2, :] - 2 * xt[1:-1, :] + xt[2:, :]).sum())
    if xt.shape[1] >= 3:
        e += b2 * float(np.abs(xt[:, :-2] - 2 * xt[:, 1:-1] + xt[:, 2:]).sum())
    e += params.gamma * float(
        np.abs(-xt[:-1, :-1] + xt[1:, :-1] + xt[:-1, 1:] - xt[1:, 1:]).sum()
    )
    return e


@dataclass
class ConvergenceCheck:
    """Scalar evidence and flags for the sufficient convergence conditions.

    cond_density:   neighbor distances of the data below pi/8
    cond_tv_budget: total unweighted TV of the data <= epsilon^2 / weight_max
    cond_schedule:  sqrt(eps^2 + 2*||lam||_2^2*L^2*c*(c+1)) + 2*||lam||_inf*c*L
                    < pi/16, with the step schedule truncated at max_cycles
                    (a lower bound on the untruncated left-hand side)
    """

    d_inf_f: float
    tv_budget: float
    weight_max: float
    epsilon: float
    lambda_l2: float
    lambda_inf: float
    L: float
    c: int
    cond_density: bool
    cond_tv_budget: bool
    cond_schedule: bool

    @property
    def all_satisfied(self):
        return self.cond_density and self.cond_tv_budget and self.cond_schedule


def check_convergence_conditions(f, params, lambda0=None, max_cycles=None, epsilon=0.1):
    """Evaluate the sufficient conditions for convergence to a global minimum.

    Works for 1-D data with Params1D (cycle length 6) and 2-D data with
    Params2D (cycle length 15).  ``lambda0``/``max_cycles`` default to
    the values in ``params``.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    f = np.asarray(f, dtype=float)
    lambda0 = params.lambda0 if lambda0 is None else lambda0
    max_cycles = params.max_cycles if max_cycles is None else max_cycles
    if isinstance(params, Params1D):
        if f.ndim != 1:
            raise ValueError("Params1D goes with 1-D data")
        c = 6
        weight_max = max(params.alpha, params.beta)
        tv_budget = sum(tv_components_1d(f))
    elif isinstance(params, Params2D):
        if f.ndim != 2:
            raise ValueError("Params2D goes with 2-D data")
        c = 15
        weight_max = max(*params.alpha, *params.beta, params.gamma)
        tv_budget = sum(tv_components_2d(f))
    else:
        raise ValueError("params must be Params1D or Params2D")

    L = 4.0
    lam = lambda0 / np.arange(1, max_cycles + 1, dtype=float)
    lam_l2 = float(np.sqrt((lam**2).sum()))
    lam_inf = float(lam[0])
    dinf = d_inf_neighbors(f)

    cond_a = dinf < PI / 8
    cond_b = tv_budget <= epsilon**2 / weight_max
    lhs = np.sqrt(epsilon**2 + 2.0 * lam_l2**2 * L**2 * c * (c + 1)) + 2.0 * lam_inf * c * L
    cond_c = bool(lhs < PI / 16)

    return ConvergenceCheck(
        d_inf_f=dinf,
        tv_budget=float(tv_budget),
        weight_max=float(weight_max),
        epsilon=float(epsilon),
        lambda_l2=lam_l2,
        lambda_inf=lam_inf,
        L=L,
        c=c,
        cond_density=bool(cond_a),
        cond_tv_budget=bool(cond_b),
        cond_schedule=cond_c,
    )

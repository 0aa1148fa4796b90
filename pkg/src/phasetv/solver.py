"""Cyclic proximal point solver for first/second order cyclic TV models.

The 1-D objective is

    J(x) = 0.5*sum_i d(f_i, x_i)^2 + alpha*TV1(x) + beta*TV2(x)

and the 2-D objective adds separate weights for vertical/horizontal
first and second differences plus a diagonal mixed second difference.
One cycle applies the proximal mapping of every summand of the phase
splitting in a fixed order (6 substeps in 1-D, 15 in 2-D) with step
size lambda0/k in cycle k.  Within a substep all blocks touch disjoint
entries and are updated simultaneously; across substeps the latest
iterate is used.
"""

from dataclasses import dataclass

import numpy as np

from .cyclic import TWO_PI, _fold_abs_diff, _rewrap

PI = np.pi


def _check_weights(*vals):
    for v in vals:
        if not (np.isfinite(v) and v >= 0):
            raise ValueError("regularization weights must be finite and >= 0")


@dataclass(frozen=True)
class Params1D:
    """Weights and schedule for the 1-D model."""

    alpha: float
    beta: float
    lambda0: float = PI
    max_cycles: int = 4000
    stop_tol: float | None = None  # optional early stop on cycle change

    def __post_init__(self):
        _check_weights(self.alpha, self.beta)
        if max(self.alpha, self.beta) == 0:
            raise ValueError("at least one of alpha, beta must be positive")
        if not self.lambda0 > 0:
            raise ValueError("lambda0 must be positive")
        if self.max_cycles < 1:
            raise ValueError("max_cycles must be >= 1")


@dataclass(frozen=True)
class Params2D:
    """Weights and schedule for the 2-D model.

    ``alpha`` weights vertical/horizontal first differences, ``beta``
    vertical/horizontal second differences, ``gamma`` the diagonal
    (mixed) second difference on 2x2 cells.
    """

    alpha: tuple = (0.0, 0.0)
    beta: tuple = (0.0, 0.0)
    gamma: float = 0.0
    lambda0: float = PI
    max_cycles: int = 4000
    stop_tol: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", (float(self.alpha[0]), float(self.alpha[1])))
        object.__setattr__(self, "beta", (float(self.beta[0]), float(self.beta[1])))
        _check_weights(*self.alpha, *self.beta, self.gamma)
        if max(*self.alpha, *self.beta, self.gamma) == 0:
            raise ValueError("at least one regularization weight must be positive")
        if not self.lambda0 > 0:
            raise ValueError("lambda0 must be positive")
        if self.max_cycles < 1:
            raise ValueError("max_cycles must be >= 1")


@dataclass
class SolveReport:
    """Denoised data plus per-cycle diagnostics."""

    result: np.ndarray
    energy_trace: np.ndarray  # J after each cycle
    change_trace: np.ndarray  # l2 norm of the geodesic cycle change
    dinf_trace: np.ndarray  # max geodesic distance to the input data
    cycles_run: int


# ---------------------------------------------------------------------------
# energies


def tv_components_1d(x):
    """Unweighted (TV1, TV2) of a canonical 1-D signal."""
    x = np.asarray(x, dtype=float)
    tv1 = float(np.abs(_rewrap(x[1:] - x[:-1])).sum()) if x.size >= 2 else 0.0
    tv2 = (
        float(_fold_abs_diff(x[:-2] - 2.0 * x[1:-1] + x[2:]).sum())
        if x.size >= 3
        else 0.0
    )
    return tv1, tv2


def tv_components_2d(x):
    """Unweighted (TV1_v, TV1_h, TV2_v, TV2_h, TV2_diag) of a canonical image."""
    x = np.asarray(x, dtype=float)
    n, m = x.shape
    tv1_v = float(np.abs(_rewrap(x[1:, :] - x[:-1, :])).sum()) if n >= 2 else 0.0
    tv1_h = float(np.abs(_rewrap(x[:, 1:] - x[:, :-1])).sum()) if m >= 2 else 0.0
    tv2_v = (
        float(_fold_abs_diff(x[:-2, :] - 2.0 * x[1:-1, :] + x[2:, :]).sum())
        if n >= 3
        else 0.0
    )
    tv2_h = (
        float(_fold_abs_diff(x[:, :-2] - 2.0 * x[:, 1:-1] + x[:, 2:]).sum())
        if m >= 3
        else 0.0
    )
    tv2_d = (
        float(
            _fold_abs_diff(
                -x[:-1, :-1] + x[1:, :-1] + x[:-1, 1:] - x[1:, 1:]
            ).sum()
        )
        if n >= 2 and m >= 2
        else 0.0
    )
    return tv1_v, tv1_h, tv2_v, tv2_h, tv2_d


def energy_1d(x, f, params):
    """J(x) = 0.5*sum d(f_i, x_i)^2 + alpha*TV1 + beta*TV2."""
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    if x.shape != f.shape or x.ndim != 1:
        raise ValueError("x and f must be 1-D arrays of equal length")
    tv1, tv2 = tv_components_1d(x)
    data = 0.5 * float((_rewrap(x - f) ** 2).sum())
    return data + params.alpha * tv1 + params.beta * tv2


def energy_2d(x, f, params):
    """Two-dimensional model energy (see module docstring)."""
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    if x.shape != f.shape or x.ndim != 2:
        raise ValueError("x and f must be 2-D arrays of equal shape")
    tv1_v, tv1_h, tv2_v, tv2_h, tv2_d = tv_components_2d(x)
    data = 0.5 * float((_rewrap(x - f) ** 2).sum())
    a1, a2 = params.alpha
    b1, b2 = params.beta
    return (
        data
        + a1 * tv1_v
        + a2 * tv1_h
        + b1 * tv2_v
        + b2 * tv2_h
        + params.gamma * tv2_d
    )


# ---------------------------------------------------------------------------
# splitting term evaluators (used by tests to pin the substep partition)


def split_terms_1d(x, f, params):
    """The six summands of the 1-D splitting; their sum equals energy_1d."""
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    n = x.size
    terms = [0.5 * float((_rewrap(x - f) ** 2).sum())]
    for start in (0, 1):
        d = np.abs(_rewrap(x[start + 1 :: 2][: (n - start) // 2]
                           - x[start::2][: (n - start) // 2]))
        terms.append(params.alpha * float(d.sum()))
    for start in (0, 1, 2):
        cnt = _triple_count(n, start)
        a = x[start::3][:cnt]
        b = x[start + 1 :: 3][:cnt]
        c = x[start + 2 :: 3][:cnt]
        terms.append(params.beta * float(_fold_abs_diff(a - 2.0 * b + c).sum()))
    return np.array(terms)


def split_terms_2d(x, f, params):
    """The fifteen summands of the 2-D splitting; sum equals energy_2d."""
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    n, m = x.shape
    a1, a2 = params.alpha
    b1, b2 = params.beta
    terms = [0.5 * float((_rewrap(x - f) ** 2).sum())]
    for start in (0, 1):  # vertical pairs
        cnt = _pair_count(n, start)
        d = np.abs(_rewrap(x[start + 1 : start + 2 * cnt : 2, :]
                           - x[start : start + 2 * cnt : 2, :]))
        terms.append(a1 * float(d.sum()))
    for start in (0, 1):  # horizontal pairs
        cnt = _pair_count(m, start)
        d = np.abs(_rewrap(x[:, start + 1 : start + 2 * cnt : 2]
                           - x[:, start : start + 2 * cnt : 2]))
        terms.append(a2 * float(d.sum()))
    for start in (0, 1, 2):  # vertical triples
        cnt = _triple_count(n, start)
        a = x[start : start + 3 * cnt : 3, :]
        b = x[start + 1 : start + 1 + 3 * cnt : 3, :]
        c = x[start + 2 : start + 2 + 3 * cnt : 3, :]
        terms.append(b1 * float(_fold_abs_diff(a - 2.0 * b + c).sum()))
    for start in (0, 1, 2):  # horizontal triples
        cnt = _triple_count(m, start)
        a = x[:, start : start + 3 * cnt : 3]
        b = x[:, start + 1 : start + 1 + 3 * cnt : 3]
        c = x[:, start + 2 : start + 2 + 3 * cnt : 3]
        terms.append(b2 * float(_fold_abs_diff(a - 2.0 * b + c).sum()))
    for mu, nu in ((0, 0), (1, 0), (0, 1), (1, 1)):  # diagonal cells
        p = x[mu : n - 1 : 2, nu : m - 1 : 2]
        q = x[mu + 1 : n : 2, nu : m - 1 : 2]
        r = x[mu : n - 1 : 2, nu + 1 : m : 2]
        s = x[mu + 1 : n : 2, nu + 1 : m : 2]
        terms.append(params.gamma * float(_fold_abs_diff(-p + q + r - s).sum()))
    return np.array(terms)


# ---------------------------------------------------------------------------
# vectorized proximal substeps


def _pair_count(n, start):
    return max(0, (n - start) // 2)


def _triple_count(n, start):
    return (n - start) // 3 if n - start >= 3 else 0


def _prox_data_step(x, f, lam):
    # subtractive form of the weighted average keeps x == f an exact
    # fixed point in floating point
    diff = x - f
    v = np.where(np.abs(diff) > PI, np.sign(diff), 0.0)
    c = lam / (1.0 + lam)
    return _rewrap(x - c * diff + c * TWO_PI * v)


def _prox_pair_step(a, b, lam):
    # shared prox of lam * d(a_i, b_i) over disjoint pairs
    diff = _rewrap(b - a)
    step = np.sign(diff) * np.minimum(lam, 0.5 * np.abs(diff))
    return _rewrap(a + step), _rewrap(b - step)


def _prox_triple_step(a, b, c, lam):
    # shared prox of lam * d2(a_i, b_i, c_i) over disjoint triples
    nu = _rewrap(a - 2.0 * b + c)
    sm = np.sign(nu) * np.minimum(lam, np.abs(nu) / 6.0)
    return _rewrap(a - sm), _rewrap(b + 2.0 * sm), _rewrap(c - sm)


def _prox_cell_step(p, q, r, s, lam):
    # shared prox of lam * d11(p_i, q_i, r_i, s_i) over disjoint cells
    nu = _rewrap(-p + q + r - s)
    sm = np.sign(nu) * np.minimum(lam, 0.25 * np.abs(nu))
    return _rewrap(p + sm), _rewrap(q - sm), _rewrap(r - sm), _rewrap(s + sm)


# ---------------------------------------------------------------------------
# solvers


def _finish_report(x, traces, cycles):
    energy, change, dinf = traces
    return SolveReport(
        result=x,
        energy_trace=np.array(energy),
        change_trace=np.array(change),
        dinf_trace=np.array(dinf),
        cycles_run=cycles,
    )


def cppa_denoise_1d(f, params):
    """Denoise a canonical 1-D phase signal; returns a SolveReport.

    Substep order per cycle: data term, first-difference pairs (even
    then odd), second-difference triples (phases 0, 1, 2).
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 1:
        raise ValueError("f must be a 1-D array")
    n = f.size
    if params.alpha > 0 and n < 2:
        raise ValueError("alpha > 0 needs at least 2 samples")
    if params.beta > 0 and n < 3:
        raise ValueError("beta > 0 needs at least 3 samples")

    x = f.copy()
    energy, change, dinf = [], [], []
    cycles = 0
    for k in range(1, params.max_cycles + 1):
        lam = params.lambda0 / k
        x_prev = x.copy()

        x = _prox_data_step(x, f, lam)
        if params.alpha > 0:
            la = lam * params.alpha
            for start in (0, 1):
                cnt = _pair_count(n, start)
                if cnt == 0:
                    continue
                a = x[start::2][:cnt]
                b = x[start + 1 :: 2][:cnt]
                a_new, b_new = _prox_pair_step(a, b, la)
                x[start::2][:cnt] = a_new
                x[start + 1 :: 2][:cnt] = b_new
        if params.beta > 0:
            lb = lam * params.beta
            for start in (0, 1, 2):
                cnt = _triple_count(n, start)
                if cnt == 0:
                    continue
                a = x[start::3][:cnt]
                b = x[start + 1 :: 3][:cnt]
                c = x[start + 2 :: 3][:cnt]
                a_new, b_new, c_new = _prox_triple_step(a, b, c, lb)
                x[start::3][:cnt] = a_new
                x[start + 1 :: 3][:cnt] = b_new
                x[start + 2 :: 3][:cnt] = c_new

        energy.append(energy_1d(x, f, params))
        step = np.abs(_rewrap(x - x_prev))
        change.append(float(np.sqrt((step**2).sum())))
        dinf.append(float(np.abs(_rewrap(x - f)).max()))
        cycles = k
        if params.stop_tol is not None and change[-1] < params.stop_tol:
            break
    return _finish_report(x, (energy, change, dinf), cycles)


def cppa_denoise_2d(f, params):
    """Denoise a canonical phase image; returns a SolveReport.

    Substep order per cycle: data term; vertical pairs (even, odd);
    horizontal pairs (even, odd); vertical triples (phases 0-2);
    horizontal triples (phases 0-2); diagonal cells in parity order
    (0,0), (1,0), (0,1), (1,1).
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 2:
        raise ValueError("f must be a 2-D array")
    n, m = f.shape
    a1, a2 = params.alpha
    b1, b2 = params.beta
    if (a1 > 0 and n < 2) or (a2 > 0 and m < 2):
        raise ValueError("first-difference weights need length >= 2 in their axis")
    if (b1 > 0 and n < 3) or (b2 > 0 and m < 3):
        raise ValueError("second-difference weights need length >= 3 in their axis")
    if params.gamma > 0 and (n < 2 or m < 2):
        raise ValueError("gamma > 0 needs at least 2 rows and 2 columns")

    x = f.copy()
    energy, change, dinf = [], [], []
    cycles = 0
    for k in range(1, params.max_cycles + 1):
        lam = params.lambda0 / k
        x_prev = x.copy()

        x = _prox_data_step(x, f, lam)
        if a1 > 0:
            la = lam * a1
            for start in (0, 1):
                cnt = _pair_count(n, start)
                if cnt == 0:
                    continue
                top = x[start : start + 2 * cnt : 2, :]
                bot = x[start + 1 : start + 1 + 2 * cnt : 2, :]
                t_new, b_new = _prox_pair_step(top, bot, la)
                x[start : start + 2 * cnt : 2, :] = t_new
                x[start + 1 : start + 1 + 2 * cnt : 2, :] = b_new
        if a2 > 0:
            la = lam * a2
            for start in (0, 1):
                cnt = _pair_count(m, start)
                if cnt == 0:
                    continue
                left = x[:, start : start + 2 * cnt : 2]
                right = x[:, start + 1 : start + 1 + 2 * cnt : 2]
                l_new, r_new = _prox_pair_step(left, right, la)
                x[:, start : start + 2 * cnt : 2] = l_new
                x[:, start + 1 : start + 1 + 2 * cnt : 2] = r_new
        if b1 > 0:
            lb = lam * b1
            for start in (0, 1, 2):
                cnt = _triple_count(n, start)
                if cnt == 0:
                    continue
                a = x[start : start + 3 * cnt : 3, :]
                b = x[start + 1 : start + 1 + 3 * cnt : 3, :]
                c = x[start + 2 : start + 2 + 3 * cnt : 3, :]
                a_new, b_new, c_new = _prox_triple_step(a, b, c, lb)
                x[start : start + 3 * cnt : 3, :] = a_new
                x[start + 1 : start + 1 + 3 * cnt : 3, :] = b_new
                x[start + 2 : start + 2 + 3 * cnt : 3, :] = c_new
        if b2 > 0:
            lb = lam * b2
            for start in (0, 1, 2):
                cnt = _triple_count(m, start)
                if cnt == 0:
                    continue
                a = x[:, start : start + 3 * cnt : 3]
                b = x[:, start + 1 : start + 1 + 3 * cnt : 3]
                c = x[:, start + 2 : start + 2 + 3 * cnt : 3]
                a_new, b_new, c_new = _prox_triple_step(a, b, c, lb)
                x[:, start : start + 3 * cnt : 3] = a_new
                x[:, start + 1 : start + 1 + 3 * cnt : 3] = b_new
                x[:, start + 2 : start + 2 + 3 * cnt : 3] = c_new
        if params.gamma > 0:
            lg = lam * params.gamma
            for mu, nu in ((0, 0), (1, 0), (0, 1), (1, 1)):
                p = x[mu : n - 1 : 2, nu : m - 1 : 2]
                if p.size == 0:
                    continue
                q = x[mu + 1 : n : 2, nu : m - 1 : 2]
                r = x[mu : n - 1 : 2, nu + 1 : m : 2]
                s = x[mu + 1 : n : 2, nu + 1 : m : 2]
                p_new, q_new, r_new, s_new = _prox_cell_step(p, q, r, s, lg)
                x[mu : n - 1 : 2, nu : m - 1 : 2] = p_new
                x[mu + 1 : n : 2, nu : m - 1 : 2] = q_new
                x[mu : n - 1 : 2, nu + 1 : m : 2] = r_new
                x[mu + 1 : n : 2, nu + 1 : m : 2] = s_new

        energy.append(energy_2d(x, f, params))
        step = np.abs(_rewrap(x - x_prev))
        change.append(float(np.sqrt((step**2).sum())))
        dinf.append(float(np.abs(_rewrap(x - f)).max()))
        cycles = k
        if params.stop_tol is not None and change[-1] < params.stop_tol:
            break
    return _finish_report(x, (energy, change, dinf), cycles)

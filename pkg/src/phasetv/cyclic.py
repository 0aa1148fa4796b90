"""Canonical angle arithmetic, finite differences and cyclic differences.

A point on the unit circle is represented by its canonical angle in
[-pi, pi).  The seam convention is half-open: odd multiples of pi map
to -pi.  All functions are pure and accept floats or numpy arrays;
anything documented as "canonical" assumes its input already lies in
the fundamental domain (use :func:`wrap` to get there).
"""

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

# component-sum tolerance for user supplied difference weights
WEIGHT_SUM_TOL = 1e-12


def _wrap(x):
    # remainder-based reduction; the final where() guards the half-open
    # interval against the subtraction rounding up to +pi
    y = np.remainder(x + np.pi, TWO_PI) - np.pi
    return np.where(y >= np.pi, -np.pi, y)


def _rewrap(y):
    """Cheap wrap for |y| < 4*pi (differences of canonical angles)."""
    y = np.where(y >= np.pi, y - TWO_PI, y)
    y = np.where(y < -np.pi, y + TWO_PI, y)
    # second pass finishes inputs beyond +-2*pi
    y = np.where(y >= np.pi, y - TWO_PI, y)
    return np.where(y < -np.pi, y + TWO_PI, y)


def wrap(x):
    """Map x to its representative in [-pi, pi), i.e. x - 2*pi*k.

    Odd multiples of pi map to -pi.  Raises ValueError for non-finite
    input.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("wrap: input must be finite")
    out = _wrap(x)
    return out[()] if out.ndim == 0 else out


def geodesic_distance(p, q):
    """Arc-length distance between circle points, in [0, pi]."""
    d = np.abs(wrap(np.asarray(q, dtype=float) - np.asarray(p, dtype=float)))
    return d[()] if np.ndim(d) == 0 else d


@dataclass(frozen=True)
class DifferenceWeight:
    """Finite-difference weight vector; the component sum must be zero.

    ``order`` tags the named instances: "first" (-1, 1), "second"
    (1, -2, 1), "mixed" (-1, 1, 1, -1); anything else is "general".
    """

    entries: tuple
    order: str = "general"

    def __post_init__(self):
        w = np.asarray(self.entries, dtype=float)
        if w.ndim != 1 or w.size < 2:
            raise ValueError("difference weight needs at least 2 entries")
        if not np.all(np.isfinite(w)):
            raise ValueError("difference weight entries must be finite")
        if abs(w.sum()) > WEIGHT_SUM_TOL:
            raise ValueError("difference weight components must sum to zero")
        if not np.any(w):
            raise ValueError("difference weight must be nonzero")
        object.__setattr__(self, "entries", tuple(float(v) for v in w))

    def __len__(self):
        return len(self.entries)

    @property
    def vector(self):
        return np.asarray(self.entries, dtype=float)


B1 = DifferenceWeight((-1.0, 1.0), "first")
B2 = DifferenceWeight((1.0, -2.0, 1.0), "second")
B11 = DifferenceWeight((-1.0, 1.0, 1.0, -1.0), "mixed")

# weights with a closed-form cyclic difference (and proximal mapping)
CLOSED_FORM_WEIGHTS = (B1, B2, B11)


def _weight_vector(w):
    if isinstance(w, DifferenceWeight):
        return w.vector
    return DifferenceWeight(tuple(np.asarray(w, dtype=float))).vector


def named_weight(w):
    """Return the matching named weight (B1/B2/B11) or raise ValueError."""
    if isinstance(w, DifferenceWeight):
        for named in CLOSED_FORM_WEIGHTS:
            if w == named:
                return named
        raise ValueError("closed form only exists for B1, B2 and B11")
    v = np.asarray(w, dtype=float)
    for named in CLOSED_FORM_WEIGHTS:
        if v.shape == (len(named),) and np.array_equal(v, named.vector):
            return named
    raise ValueError("closed form only exists for B1, B2 and B11")


def delta(x, w):
    """Finite difference <x, w>; translation invariant since sum(w) = 0.

    ``x`` may carry leading batch axes; the weight acts on the last one.
    """
    x = np.asarray(x, dtype=float)
    wv = _weight_vector(w)
    if x.shape[-1] != wv.size:
        raise ValueError(
            f"length mismatch: data has {x.shape[-1]} entries, weight {wv.size}"
        )
    out = x @ wv
    return out[()] if np.ndim(out) == 0 else out


def abs_cyclic_diff_general(x, w):
    """Representation-independent |difference| of circle-valued data.

    Minimum of |delta(., w)| over the d candidate unwrappings obtained by
    lifting the k smallest entries up by 2*pi, k = 0..d-1.  Entries are
    ordered by a stable sort, so equal angles are still treated as
    separate points.  Works for any zero-sum weight and any order; the
    result of the named first/second order weights lies in [0, pi].

    ``x`` may carry leading batch axes.
    """
    x = np.asarray(x, dtype=float)
    wv = _weight_vector(w)
    d = wv.size
    if x.shape[-1] != d:
        raise ValueError(
            f"length mismatch: data has {x.shape[-1]} entries, weight {d}"
        )
    flat = x.reshape(-1, d)
    order = np.argsort(flat, axis=1, kind="stable")
    ranks = np.argsort(order, axis=1)  # inverse permutation
    base = flat @ wv
    best = np.abs(base)
    for k in range(1, d):
        shift = TWO_PI * ((ranks < k) * wv).sum(axis=1)
        np.minimum(best, np.abs(base + shift), out=best)
    out = best.reshape(x.shape[:-1])
    return out[()] if out.ndim == 0 else out


def _fold_abs_diff(dval):
    """|difference| folded into [0, pi]; valid for |dval| < 4*pi."""
    a = np.abs(dval)
    return np.where(
        a <= np.pi,
        a,
        np.where(a <= TWO_PI, TWO_PI - a, np.where(a <= 3 * np.pi, a - TWO_PI, 2 * TWO_PI - a)),
    )


def abs_cyclic_diff_closed(x, w):
    """Closed-form cyclic difference for the named weights B1, B2, B11.

    Folds |delta(x, w)| back into [0, pi] by the sign-dependent 2*pi
    shifts; agrees with :func:`abs_cyclic_diff_general` on canonical
    input.  ``x`` may carry leading batch axes.
    """
    named = named_weight(w)
    dval = delta(x, named)
    out = _fold_abs_diff(np.asarray(dval))
    return out[()] if np.ndim(out) == 0 else out


def canonical_signal(values):
    """1-D float array of canonical angles (wraps on construction)."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("phase signal must be a nonempty 1-D array")
    return wrap(arr)


def canonical_image(values):
    """2-D row-major float array of canonical angles (wraps on construction)."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.size < 1:
        raise ValueError("phase image must be a nonempty 2-D array")
    return wrap(arr)

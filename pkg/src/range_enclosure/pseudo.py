"""The epsilon-pseudo enclosure and the resolvent bound.

|t(alpha, beta)(omega)| = |alpha - lambda - kappa beta| with
kappa = omega**2/(c - i d omega - omega**2) and lambda = omega**2, so the
smallest |t| over the box is a linear least squares problem with box
constraints.  Its minimizer is either on an alpha edge (with the best beta
clamped to the beta interval) or at a parameter pair that zeroes the real
part, which gives at most three candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from skimage import measure

from .axis import AxisStructure, axis_segments
from .core import OmegaBox, ProblemParams, near_pole, poles
from .errors import PoleEvaluation
from .membership import contains, contains_grid

BRANCHES = ("alpha_lo", "alpha_hi", "interior", "separable")


@dataclass(frozen=True)
class KappaLambda:
    """kappa = omega**2/(c - i d omega - omega**2) and lambda = omega**2."""

    kappa: complex
    lam: complex

    @classmethod
    def at(cls, omega: complex, params: ProblemParams) -> "KappaLambda":
        omega = complex(omega)
        if near_pole(omega, params):
            raise PoleEvaluation(f"kappa is undefined at the pole {omega}")
        kr, ki, lr, li = _kappa_lambda(np.array(omega.real), np.array(omega.imag), params)
        return cls(complex(kr, ki), complex(lr, li))


def _kappa_lambda(x, y, params: ProblemParams):
    """Real and imaginary parts of kappa and lambda, written so that the
    mirror omega -> -conj(omega) flips the imaginary parts exactly."""
    c, d = params.c, params.d
    x2 = x * x
    lr = x2 - y * y
    li = 2 * x * y
    u = c + d * y - x2 + y * y
    v = d + 2 * y
    n = u * u + x2 * v * v
    kr = (lr * u - 2 * x2 * y * v) / n
    ki = x * (lr * v + 2 * y * u) / n
    return kr, ki, lr, li


@dataclass(frozen=True)
class Epsilon0Result:
    """Minimum of |t| over the box.

    Attributes
    ----------
    value : float
        epsilon_0 >= 0; exactly 0 when the point is in the enclosure.
    alpha, beta : float
        A minimizing parameter pair.
    branch : str
        ``"alpha_lo"``, ``"alpha_hi"``, ``"interior"`` or ``"separable"``
        (the last when Re(kappa) = 0).
    """

    value: float
    alpha: float
    beta: float
    branch: str


def _clamp(v, lo, hi):
    with np.errstate(invalid="ignore"):
        return np.minimum(np.maximum(v, lo), hi)


def _mid(lo, hi):
    """Deterministic point of [lo, hi] for arrays with possibly infinite ends."""
    with np.errstate(invalid="ignore"):
        m = 0.5 * (lo + hi)
    m = np.where(np.isfinite(lo) & ~np.isfinite(hi), lo, m)
    m = np.where(~np.isfinite(lo) & np.isfinite(hi), hi, m)
    m = np.where(~np.isfinite(lo) & ~np.isfinite(hi), 0.0, m)
    return m


def _eps0_arrays(x, y, box: OmegaBox, params: ProblemParams):
    """Vectorized candidate evaluation.

    Returns value, alpha, beta and the branch index into ``BRANCHES``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    alo, ahi, blo, bhi = box.alpha_lo, box.alpha_hi, box.beta_lo, box.beta_hi
    with np.errstate(all="ignore"):
        kr, ki, lr, li = _kappa_lambda(x, y, params)
        k2 = kr * kr + ki * ki
        vals, As, Bs = [], [], []
        for a in (alo, ahi):
            if math.isfinite(a):
                b = _clamp(-(ki * li - kr * (a - lr)) / k2, blo, bhi)
                vals.append(np.hypot(ki * b + li, a - kr * b - lr))
                As.append(np.full(x.shape, a))
                Bs.append(b)
            else:
                vals.append(np.full(x.shape, np.inf))
                As.append(np.full(x.shape, a))
                Bs.append(np.full(x.shape, blo))
        # interior candidate: alpha = kr beta + lr inside the alpha interval
        e1 = (alo - lr) / kr
        e2 = (ahi - lr) / kr
        ilo = np.maximum(np.minimum(e1, e2), blo)
        ihi = np.minimum(np.maximum(e1, e2), bhi)
        feasible = (ilo <= ihi) & (kr != 0)
        target = np.where(ki != 0, -li / ki, np.nan)
        bop = np.where(ki != 0, _clamp(target, ilo, ihi), _mid(ilo, ihi))
        aop = _clamp(kr * bop + lr, alo, ahi)
        vop = np.where(feasible, np.hypot(ki * bop + li, aop - kr * bop - lr), np.inf)
        vals.append(vop)
        As.append(aop)
        Bs.append(bop)
        # separable case
        sep = kr == 0
        bs = np.where(ki != 0, _clamp(target, blo, bhi), _mid(np.full(x.shape, blo), np.full(x.shape, bhi)))
        as_ = _clamp(lr, alo, ahi)
        vs = np.where(sep, np.hypot(ki * bs + li, as_ - lr), np.inf)
        vals.append(vs)
        As.append(as_)
        Bs.append(bs)
        V = np.stack(vals)
        V = np.where(np.isnan(V), np.inf, V)
        # Re(kappa) = 0: only the separable value is exact
        V[:3] = np.where(sep, np.inf, V[:3])
        idx = np.argmin(V, axis=0)
        val = np.take_along_axis(V, idx[None], 0)[0]
        A = np.take_along_axis(np.stack(As), idx[None], 0)[0]
        B = np.take_along_axis(np.stack(Bs), idx[None], 0)[0]
    return val, A, B, idx


def epsilon0(omega: complex, box: OmegaBox, params: ProblemParams) -> Epsilon0Result:
    """Exact minimum of |t(alpha, beta)(omega)| over the box.

    omega lies in the epsilon-enclosure iff epsilon > value.

    Raises
    ------
    PoleEvaluation
        At the poles.
    """
    omega = complex(omega)
    if near_pole(omega, params):
        raise PoleEvaluation(f"epsilon0 is undefined at the pole {omega}")
    val, a, b, idx = _eps0_arrays(np.array([omega.real]), np.array([omega.imag]), box, params)
    v = float(val[0])
    if contains(omega, box, params).inside:
        v = 0.0
    return Epsilon0Result(v, float(a[0]), float(b[0]), BRANCHES[int(idx[0])])


def epsilon0_grid(omega, box: OmegaBox, params: ProblemParams, threads: int = 1) -> np.ndarray:
    """epsilon_0 over an array of points.

    Points of the enclosure get 0.  Pole nodes get 0 if the pole belongs to
    the enclosure and inf otherwise, so that contours stay away from them.
    """
    omega = np.asarray(omega, dtype=complex)
    val, _, _, _ = _eps0_arrays(omega.real, omega.imag, box, params)
    inside = contains_grid(omega, box, params, threads=threads)
    val = np.where(inside, 0.0, val)
    dp, dm, _ = poles(params)
    for p in (dp, dm):
        hit = np.abs(omega - p) <= 1e-12 * (1 + abs(p))
        if hit.any():
            val = np.where(hit, 0.0 if contains(p, box, params).inside else np.inf, val)
    return val


def resolvent_bound(omega: complex, box: OmegaBox, params: ProblemParams) -> float:
    """Upper bound 1/epsilon_0 on the resolvent norm; inf inside the enclosure."""
    e = epsilon0(omega, box, params).value
    return math.inf if e == 0.0 else 1.0 / e


# ---------------------------------------------------------------------------
# contours


def _grid(viewport, resolution):
    x0, x1, y0, y1 = viewport
    nx, ny = (resolution, resolution) if np.isscalar(resolution) else resolution
    xs = np.linspace(x0, x1, nx)
    if x0 == -x1:
        xs = 0.5 * (xs - xs[::-1])  # exact mirror symmetry
    ys = np.linspace(y0, y1, ny)
    return xs, ys


def pseudo_contour(box: OmegaBox, epsilon: float, viewport, resolution, params: ProblemParams,
                   threads: int = 1, polish: int = 60) -> list[np.ndarray]:
    """Polylines of the level set epsilon_0 = epsilon over the viewport.

    Marching squares runs on log(epsilon_0) so that interpolation is well
    conditioned near the zero set; every vertex is then moved by bisection
    along its grid edge onto the level set.

    Returns
    -------
    list of complex ndarray
        One array of points per polyline.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    xs, ys = _grid(viewport, resolution)
    W = xs[None, :] + 1j * ys[:, None]
    E = epsilon0_grid(W, box, params, threads=threads)
    L = np.log(np.minimum(E, 1e300) + 1e-300)
    lines = measure.find_contours(L, math.log(epsilon))
    out = []
    for ln in lines:
        r, c = ln[:, 0], ln[:, 1]
        on_row = np.abs(r - np.round(r)) <= 1e-9
        i0 = np.where(on_row, np.round(r), np.floor(r)).astype(int)
        j0 = np.where(on_row, np.floor(c), np.round(c)).astype(int)
        i1 = np.where(on_row, i0, np.minimum(i0 + 1, len(ys) - 1))
        j1 = np.where(on_row, np.minimum(j0 + 1, len(xs) - 1), j0)
        j0 = np.clip(j0, 0, len(xs) - 1)
        i0 = np.clip(i0, 0, len(ys) - 1)
        a = xs[j0] + 1j * ys[i0]
        b = xs[j1] + 1j * ys[i1]
        fa = E[i0, j0] - epsilon
        # initial guess from the interpolated position
        t = np.where(on_row, c - np.floor(c), r - np.floor(r))
        lo = np.zeros_like(t)
        hi = np.ones_like(t)
        for _ in range(polish):
            m = 0.5 * (lo + hi)
            fm = epsilon0_grid(a + m * (b - a), box, params) - epsilon
            same = np.sign(fm) == np.sign(fa)
            lo = np.where(same, m, lo)
            hi = np.where(same, hi, m)
        t = np.where(a == b, t, 0.5 * (lo + hi))
        out.append(a + t * (b - a))
    return out


def pseudo_axis_segments(box: OmegaBox, epsilon: float, params: ProblemParams) -> AxisStructure:
    """Closure of the epsilon-enclosure on the imaginary axis.

    Equal to the axis structure of the box whose alpha interval is widened
    by epsilon at both ends.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if epsilon == 0:
        return axis_segments(box, params)
    return axis_segments(box.inflate_alpha(epsilon), params)

"""Problem parameters, poles, the scalar functional t and the quartic root engine.

The scalar functional is

    t(alpha, beta, omega) = alpha - omega**2 - omega**2 * beta / (c - i d omega - omega**2)

and multiplying by the rational denominator gives the monic quartic

    p(omega) = omega**4 + i d omega**3 - (alpha + beta + c) omega**2
               - i alpha d omega + alpha c.

With omega = i z the quartic becomes z**4 + d z**3 + (alpha+beta+c) z**2
+ alpha d z + alpha c, which has real coefficients.  The root engine works on
that rotated polynomial, so roots on the imaginary axis come out exactly on
the axis and the root set is exactly symmetric under omega -> -conj(omega).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConvergenceFailure, PoleEvaluation

#: The point at infinity on the Riemann sphere.  Any complex value with an
#: infinite component is treated as this point; the finite component of such
#: a value only records the direction of approach.
INFINITY = complex(math.inf, 0.0)

CLUSTER_RTOL = 1e-7
RESIDUAL_RTOL = 1e-10
POLE_RTOL = 1e-12
DISK_RTOL = 1e-12
NEWTON_STEPS = 2
NEWTON_EXTRA_STEPS = 10


def is_infinite(z: complex) -> bool:
    """Return True if ``z`` represents the point at infinity."""
    return cmath.isinf(z)


# ---------------------------------------------------------------------------
# parameter types


@dataclass(frozen=True)
class ProblemParams:
    """The scalars c >= 0 and d > 0 of the rational coefficient.

    Parameters
    ----------
    c : float
        Non-negative constant term of the denominator.
    d : float
        Positive damping coefficient.  ``d = 0`` is rejected.
    """

    c: float
    d: float

    def __post_init__(self) -> None:
        c = float(self.c)
        d = float(self.d)
        if not (math.isfinite(c) and math.isfinite(d)):
            raise ValueError("c and d must be finite")
        if c < 0:
            raise ValueError(f"c must be non-negative, got {c}")
        if d <= 0:
            raise ValueError(f"d must be positive, got {d}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def theta(self) -> complex:
        # +0.0 imaginary part keeps the principal branch on the cut
        return cmath.sqrt(complex(self.c - self.d * self.d / 4.0, 0.0))

    @property
    def poles_coincide(self) -> bool:
        return self.c - self.d * self.d / 4.0 == 0.0

    @property
    def disk_center(self) -> complex:
        return complex(0.0, -self.c / self.d)

    @property
    def disk_radius(self) -> float:
        return self.c / self.d


def _as_ext(x: float | str) -> float:
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity", "+infinity"):
            return math.inf
        if s in ("-inf", "-infinity"):
            return -math.inf
        return float(s)
    return float(x)


@dataclass(frozen=True)
class OmegaBox:
    """The rectangle of admissible (alpha, beta) as extended-real intervals.

    Infinite endpoints are stored as ``math.inf`` / ``-math.inf``.  The lower
    beta endpoint must be finite.
    """

    alpha_lo: float
    alpha_hi: float
    beta_lo: float
    beta_hi: float

    def __post_init__(self) -> None:
        vals = [_as_ext(v) for v in (self.alpha_lo, self.alpha_hi, self.beta_lo, self.beta_hi)]
        if any(math.isnan(v) for v in vals):
            raise ValueError("box endpoints must not be NaN")
        alo, ahi, blo, bhi = vals
        if alo > ahi:
            raise ValueError(f"alpha_lo > alpha_hi ({alo} > {ahi})")
        if blo > bhi:
            raise ValueError(f"beta_lo > beta_hi ({blo} > {bhi})")
        if alo == math.inf or ahi == -math.inf:
            raise ValueError("alpha interval collapses to an infinite point")
        if not math.isfinite(blo):
            raise ValueError("beta_lo must be finite")
        if blo == 0.0 and bhi == 0.0:
            raise ValueError("beta interval {0} means B = 0, which is excluded")
        for name, v in zip(("alpha_lo", "alpha_hi", "beta_lo", "beta_hi"), vals):
            object.__setattr__(self, name, v)

    @property
    def alpha_bounded(self) -> bool:
        return math.isfinite(self.alpha_lo) and math.isfinite(self.alpha_hi)

    @property
    def beta_bounded(self) -> bool:
        return math.isfinite(self.beta_hi)

    def contains_alpha(self, a: float, rtol: float = 1e-12) -> bool:
        return in_closed(a, self.alpha_lo, self.alpha_hi, rtol)

    def contains_beta(self, b: float, rtol: float = 1e-12) -> bool:
        return in_closed(b, self.beta_lo, self.beta_hi, rtol)

    def corners(self) -> list[tuple[float, float]]:
        """Corners in the order (lo,lo), (hi,hi), (lo,hi), (hi,lo)."""
        return [
            (self.alpha_lo, self.beta_lo),
            (self.alpha_hi, self.beta_hi),
            (self.alpha_lo, self.beta_hi),
            (self.alpha_hi, self.beta_lo),
        ]

    def inflate_alpha(self, eps: float) -> "OmegaBox":
        if eps < 0:
            raise ValueError("inflation must be non-negative")
        return OmegaBox(self.alpha_lo - eps, self.alpha_hi + eps, self.beta_lo, self.beta_hi)


def endpoint_tol(e: float, rtol: float = 1e-12) -> float:
    return rtol * (1.0 + abs(e)) if math.isfinite(e) else 0.0


def in_closed(x: float, lo: float, hi: float, rtol: float = 1e-12) -> bool:
    """Closed-interval test with absolute tolerance rtol*(1+|endpoint|)."""
    return (lo - endpoint_tol(lo, rtol)) <= x <= (hi + endpoint_tol(hi, rtol))


def near_endpoint(x: float, lo: float, hi: float, rtol: float = 1e-12) -> bool:
    return any(math.isfinite(e) and abs(x - e) <= endpoint_tol(e, rtol) for e in (lo, hi))


# ---------------------------------------------------------------------------
# poles, t, p


def poles(params: ProblemParams) -> tuple[complex, complex, complex]:
    """Return ``(delta_plus, delta_minus, theta)``.

    theta is the principal square root of c - d**2/4 and the poles are
    +-theta - i d/2, the zeros of c - i d omega - omega**2.
    """
    th = params.theta
    half = complex(0.0, -params.d / 2.0)
    return th + half, -th + half, th


def near_pole(omega: complex, params: ProblemParams, rtol: float = POLE_RTOL) -> bool:
    if is_infinite(omega):
        return False
    dp, dm, _ = poles(params)
    return any(abs(omega - p) <= rtol * (1.0 + abs(p)) for p in (dp, dm))


def denominator(omega: complex, params: ProblemParams) -> complex:
    return params.c - 1j * params.d * omega - omega * omega


def eval_t(alpha: float, beta: float, omega: complex, params: ProblemParams) -> complex:
    """Evaluate t(alpha, beta, omega).

    Raises
    ------
    PoleEvaluation
        If ``omega`` is one of the poles (within a relative tolerance).
    """
    if near_pole(omega, params):
        raise PoleEvaluation(f"t evaluated at a pole: omega={omega!r}")
    w2 = omega * omega
    return alpha - w2 - w2 * beta / denominator(omega, params)


@dataclass(frozen=True)
class QuarticCoeffs:
    """Coefficients (highest degree first) of a monic quartic."""

    coeffs: tuple[complex, complex, complex, complex, complex]

    def __post_init__(self) -> None:
        cs = tuple(complex(x) for x in self.coeffs)
        if len(cs) != 5:
            raise ValueError("a quartic needs five coefficients")
        if cs[0] != 1:
            raise ValueError("leading coefficient must be exactly 1")
        object.__setattr__(self, "coeffs", cs)

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for a in self.coeffs:
            acc = acc * z + a
        return acc

    def rotated(self) -> np.ndarray | None:
        """Real coefficients of z -> p(i z) if they are real, else None."""
        a4, a3, a2, a1, a0 = self.coeffs
        b = (a3 * -1j, -a2, a1 * 1j, a0)
        if all(x.imag == 0.0 for x in b):
            return np.array([x.real for x in b])
        return None


def quartic_coeffs(alpha: float, beta: float, params: ProblemParams) -> QuarticCoeffs:
    """Monic expansion of (alpha - w**2)(c - i d w - w**2) - beta w**2."""
    c, d = params.c, params.d
    return QuarticCoeffs(
        (1.0, 1j * d, -(alpha + beta + c), -1j * alpha * d, alpha * c)
    )


# ---------------------------------------------------------------------------
# batched polynomial kernels


def _horner(coefs: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Value and derivative of rows of ``coefs`` (highest first) at ``z``."""
    val = np.broadcast_to(coefs[:, :1], z.shape).astype(complex)
    der = np.zeros_like(val)
    for j in range(1, coefs.shape[1]):
        der = der * z + val
        val = val * z + coefs[:, j : j + 1]
    return val, der


def _roundoff(coefs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Running-error style bound on the evaluation error of the polynomial."""
    az = np.abs(z)
    acc = np.broadcast_to(np.abs(coefs[:, :1]), z.shape).astype(float)
    for j in range(1, coefs.shape[1]):
        acc = acc * az + np.abs(coefs[:, j : j + 1])
    return 8.0 * np.finfo(float).eps * acc


def _newton(coefs: np.ndarray, z: np.ndarray, steps: int, mask: np.ndarray | None = None) -> np.ndarray:
    """Safeguarded Newton steps: a step is kept only if it lowers |p|."""
    z = z.copy()
    with np.errstate(all="ignore"):
        val, der = _horner(coefs, z)
        for _ in range(steps):
            trial = z - val / der
            tv, td = _horner(coefs, trial)
            ok = np.isfinite(trial) & (np.abs(tv) < np.abs(val))
            if mask is not None:
                ok &= mask
            if not ok.any():
                break
            z = np.where(ok, trial, z)
            val = np.where(ok, tv, val)
            der = np.where(ok, td, der)
    return z


def _quadratic(b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Roots of y**2 + b y + c, computed without cancellation."""
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    s = np.sqrt(b * b - 4 * c)
    # pick the sign that adds magnitudes
    s = np.where((np.conj(b) * s).real >= 0, s, -s)
    q = -(b + s) / 2
    with np.errstate(all="ignore"):
        other = np.where(q != 0, c / q, -b - q)
    return np.stack([q, other], axis=-1)


def solve_cubic_batch(a2, a1, a0, polish: int = NEWTON_STEPS) -> np.ndarray:
    """Roots of monic cubics z**3 + a2 z**2 + a1 z + a0 (Cardano, complex).

    Parameters
    ----------
    a2, a1, a0 : array_like
        Coefficients, broadcast against each other.

    Returns
    -------
    ndarray
        Complex array with a trailing axis of length 3.
    """
    a2, a1, a0 = np.broadcast_arrays(*(np.asarray(x, dtype=complex) for x in (a2, a1, a0)))
    shape = a2.shape
    a2, a1, a0 = a2.ravel(), a1.ravel(), a0.ravel()
    p = a1 - a2 * a2 / 3
    q = 2 * a2**3 / 27 - a2 * a1 / 3 + a0
    disc = np.sqrt(q * q / 4 + p**3 / 27)
    w1 = -q / 2 + disc
    w2 = -q / 2 - disc
    w = np.where(np.abs(w1) >= np.abs(w2), w1, w2)
    u = np.power(w, 1.0 / 3.0)
    with np.errstate(all="ignore"):
        v = np.where(u != 0, -p / (3 * u), 0)
    rot = np.exp(2j * np.pi / 3)
    t = np.stack([u + v, u * rot + v / rot, u / rot + v * rot], axis=-1)
    z = t - (a2 / 3)[:, None]
    if polish:
        coefs = np.stack([np.ones_like(a2), a2, a1, a0], axis=-1)
        z = _newton(coefs, z, polish)
    return z.reshape(shape + (3,))


def _ferrari(coefs: np.ndarray) -> np.ndarray:
    """Unpolished roots of monic quartics, rows ``[1, a3, a2, a1, a0]``."""
    a3, a2, a1, a0 = (coefs[:, k] for k in range(1, 5))
    shift = a3 / 4
    p = a2 - 3 * a3 * a3 / 8
    q = a1 - a3 * a2 / 2 + a3**3 / 8
    r = a0 - a3 * a1 / 4 + a3 * a3 * a2 / 16 - 3 * a3**4 / 256
    # resolvent cubic m^3 - (p/2) m^2 - r m + (4 p r - q^2)/8 = 0
    m = solve_cubic_batch(-p / 2, -r, (4 * p * r - q * q) / 8)
    u = 2 * m - p[:, None]
    pick = np.argmax(np.abs(u), axis=1)
    rows = np.arange(len(p))
    m = m[rows, pick]
    s = np.sqrt(u[rows, pick])
    scale = np.maximum.reduce([np.abs(p), np.sqrt(np.abs(r)), np.abs(q) ** (2.0 / 3.0), np.full(p.shape, 1e-300)])
    biq = np.abs(s) ** 2 <= 1e-14 * scale
    with np.errstate(all="ignore"):
        h = np.where(biq, 0, q / (2 * np.where(biq, 1, s)))
    y12 = _quadratic(-s, m + h)
    y34 = _quadratic(s, m - h)
    y = np.concatenate([y12, y34], axis=1)
    if biq.any():
        # y^4 + p y^2 + r = 0
        sq = _quadratic(p[biq], r[biq])
        ys = np.sqrt(sq)
        y[biq] = np.concatenate([ys, -ys], axis=1)
    return y - shift[:, None]


def _check_residual(coefs: np.ndarray, z: np.ndarray) -> np.ndarray:
    val, _ = _horner(coefs, z)
    res = np.abs(val)
    scale = np.maximum(1.0, np.abs(coefs).max(axis=1))[:, None]
    target = RESIDUAL_RTOL * scale
    bad = res > np.maximum(target, _roundoff(coefs, z))
    return res, bad


def solve_quartic_batch(coefs) -> np.ndarray:
    """Roots of monic complex quartics (Ferrari plus Newton polish).

    Parameters
    ----------
    coefs : array_like, shape (n, 5)
        Rows ``[1, a3, a2, a1, a0]``.

    Returns
    -------
    ndarray, shape (n, 4)

    Raises
    ------
    ConvergenceFailure
        If a root cannot be polished to the residual target.
    """
    coefs = np.atleast_2d(np.asarray(coefs, dtype=complex))
    z = _ferrari(coefs)
    z = _newton(coefs, z, NEWTON_STEPS)
    _, bad = _check_residual(coefs, z)
    if bad.any():
        z = _newton(coefs, z, NEWTON_EXTRA_STEPS, mask=bad)
        res, bad = _check_residual(coefs, z)
        if bad.any():
            raise ConvergenceFailure(f"quartic residual {res[bad].max():.3e} above target")
    return z


def _real_structure(z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Classify roots of real polynomials into real roots and conjugate pairs.

    Returns ``(real, upper, partner)`` where ``partner[n, i]`` is, for a
    lower-half root, the column of the upper-half root it mirrors (-1 else).
    """
    n, k = z.shape
    dist = np.abs(z[:, None, :] - np.conj(z)[:, :, None])  # |z_j - conj z_i|
    own = 2 * np.abs(z.imag)
    idx = np.arange(k)
    dist[:, idx, idx] = np.inf
    real = own <= dist.min(axis=2)
    # the number of non-real roots must be even
    odd = ((~real).sum(axis=1) % 2) == 1
    for row in np.flatnonzero(odd):
        cand = np.flatnonzero(~real[row])
        real[row, cand[np.argmin(np.abs(z[row, cand].imag))]] = True
    upper = ~real & (z.imag > 0)
    lower = ~real & (z.imag < 0)
    uneven = upper.sum(axis=1) != lower.sum(axis=1)
    for row in np.flatnonzero(uneven):
        cand = np.flatnonzero(~real[row])
        order = cand[np.argsort(z[row, cand].imag)]
        half = len(order) // 2
        upper[row] = False
        lower[row] = False
        upper[row, order[half:]] = True
        lower[row, order[:half]] = True
    partner = np.full((n, k), -1)
    if lower.any():
        d = np.abs(z[:, None, :] - np.conj(z)[:, :, None])
        d = np.where(upper[:, None, :], d, np.inf)
        best = np.argmin(d, axis=2)
        partner = np.where(lower, best, -1)
    return real, upper, partner


def real_poly_roots(b: np.ndarray) -> np.ndarray:
    """Roots of monic real quartics z**4 + b3 z**3 + b2 z**2 + b1 z + b0.

    Exact zero constant terms are deflated exactly.  Real roots are returned
    with zero imaginary part and complex roots as exact conjugate pairs.

    Parameters
    ----------
    b : array_like, shape (n, 4)
        Rows ``[b3, b2, b1, b0]``.
    """
    b = np.atleast_2d(np.asarray(b, dtype=float))
    n = b.shape[0]
    coefs = np.concatenate([np.ones((n, 1)), b], axis=1)
    z = np.zeros((n, 4), dtype=complex)
    z0 = b[:, 3] == 0
    z1 = z0 & (b[:, 2] == 0)
    g4 = ~z0
    g3 = z0 & ~z1
    if g4.any():
        z[g4] = _ferrari(coefs[g4].astype(complex))
    if g3.any():
        bb = b[g3]
        z[g3, :3] = solve_cubic_batch(bb[:, 0], bb[:, 1], bb[:, 2])
    if z1.any():
        bb = b[z1]
        z[z1, :2] = _quadratic(bb[:, 0], bb[:, 1])

    real, upper, partner = _real_structure(z)
    z = np.where(real, z.real + 0j, z)
    keep = real | upper
    z = _newton(coefs, z, NEWTON_STEPS, mask=keep)
    z = np.where(real, z.real + 0j, z)
    _, bad = _check_residual(coefs, z)
    bad &= keep
    if bad.any():
        z = _newton(coefs, z, NEWTON_EXTRA_STEPS, mask=bad)
        z = np.where(real, z.real + 0j, z)
        res, bad = _check_residual(coefs, z)
        bad &= keep
        if bad.any():
            raise ConvergenceFailure(f"quartic residual {res[bad].max():.3e} above target")
    rows = np.arange(n)[:, None]
    mirrored = np.conj(z[rows, np.maximum(partner, 0)])
    return np.where(partner >= 0, mirrored, z)


def rotate_to_omega(z: np.ndarray) -> np.ndarray:
    """Map z to omega = i z without rounding."""
    out = np.empty(z.shape, dtype=complex)
    out.real = -z.imag
    out.imag = z.real
    return out


def family_roots(alpha, beta, params: ProblemParams) -> np.ndarray:
    """Roots in omega of p for arrays of finite (alpha, beta).

    Returns
    -------
    ndarray, shape (n, 4)
    """
    alpha, beta = np.broadcast_arrays(np.atleast_1d(np.asarray(alpha, dtype=float)),
                                      np.atleast_1d(np.asarray(beta, dtype=float)))
    c, d = params.c, params.d
    b = np.stack(
        [np.full(alpha.shape, d), alpha + beta + c, alpha * d, alpha * c], axis=-1
    ).reshape(-1, 4)
    return rotate_to_omega(real_poly_roots(b)).reshape(alpha.shape + (4,))


# ---------------------------------------------------------------------------
# root multisets


def cluster_roots(roots: Iterable[complex], rtol: float = CLUSTER_RTOL) -> tuple[tuple[complex, int], ...]:
    """Group roots lying within ``rtol*(1+|r|)`` of each other.

    All infinite values form a single cluster represented by ``INFINITY``.
    Chains are merged transitively.
    """
    roots = list(roots)
    finite = [r for r in roots if not is_infinite(r)]
    n_inf = len(roots) - len(finite)
    parent = list(range(len(finite)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            scale = 1.0 + max(abs(finite[i]), abs(finite[j]))
            if abs(finite[i] - finite[j]) <= rtol * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i, r in enumerate(finite):
        groups.setdefault(find(i), []).append(r)
    out = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    if n_inf:
        out.append((INFINITY, n_inf))
    return tuple(out)


@dataclass(frozen=True)
class RootMultiset:
    """Four roots with residuals and multiplicity clusters."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    clusters: tuple[tuple[complex, int], ...]

    @classmethod
    def from_roots(cls, roots: Sequence[complex], residuals: Sequence[float] | None = None) -> "RootMultiset":
        roots = tuple(complex(r) for r in roots)
        if residuals is None:
            residuals = (0.0,) * len(roots)
        return cls(roots, tuple(float(x) for x in residuals), cluster_roots(roots))

    def multiplicity(self, z: complex, rtol: float = CLUSTER_RTOL) -> int:
        if is_infinite(z):
            return sum(m for r, m in self.clusters if is_infinite(r))
        return sum(
            m for r, m in self.clusters
            if not is_infinite(r) and abs(r - z) <= rtol * (1.0 + abs(z))
        )

    @property
    def finite_roots(self) -> tuple[complex, ...]:
        return tuple(r for r in self.roots if not is_infinite(r))


def solve_quartic(coeffs: QuarticCoeffs) -> RootMultiset:
    """Solve one monic quartic.

    Quartics of the family p (whose rotation p(i z) has real coefficients) go
    through the symmetric real path; anything else through plain Ferrari.
    """
    rot = coeffs.rotated()
    if rot is not None:
        roots = rotate_to_omega(real_poly_roots(rot[None, :]))[0]
    else:
        roots = solve_quartic_batch(np.array([coeffs.coeffs]))[0]
    res = [abs(coeffs(r)) for r in roots]
    return RootMultiset.from_roots(roots, res)


def roots(alpha: float, beta: float, params: ProblemParams) -> RootMultiset:
    """Root multiset of p for finite (alpha, beta)."""
    return solve_quartic(quartic_coeffs(alpha, beta, params))


def limit_roots(params: ProblemParams, alpha: float | None = None, beta: float | None = None) -> RootMultiset:
    """Root multiset in the limit of an infinite parameter.

    alpha = +-inf gives the poles plus a double root at infinity, approached
    along the real axis for +inf and along the imaginary axis for -inf.
    beta = +inf gives a double root at 0 and infinity approached along
    +-inf - i d/2.
    """
    a_inf = alpha is not None and math.isinf(alpha)
    b_inf = beta is not None and math.isinf(beta)
    if a_inf == b_inf:
        raise ValueError("exactly one of alpha, beta must be infinite")
    if a_inf:
        dp, dm, _ = poles(params)
        if alpha > 0:
            far = (complex(math.inf, 0.0), complex(-math.inf, 0.0))
        else:
            far = (complex(0.0, math.inf), complex(0.0, -math.inf))
        return RootMultiset.from_roots((dp, dm) + far)
    if beta < 0:
        raise ValueError("beta = -inf is out of scope")
    h = -params.d / 2.0
    return RootMultiset.from_roots((0j, 0j, complex(math.inf, h), complex(-math.inf, h)))


# ---------------------------------------------------------------------------
# the disk D


class DiskPosition(enum.Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


def disk_quantity(omega: complex, params: ProblemParams) -> float:
    """d|omega|**2 + 2 c Im(omega); negative inside D, zero on its boundary."""
    return params.d * abs(omega) ** 2 + 2.0 * params.c * omega.imag


def in_disk(omega: complex, params: ProblemParams, rtol: float = DISK_RTOL) -> DiskPosition:
    """Classify ``omega`` against the open disk |omega + i c/d| < c/d."""
    if params.c == 0.0 or is_infinite(omega):
        return DiskPosition.OUTSIDE
    r = params.disk_radius
    dist = abs(omega - params.disk_center)
    if abs(dist - r) <= rtol * (1.0 + r):
        return DiskPosition.ON_BOUNDARY
    return DiskPosition.INSIDE if dist < r else DiskPosition.OUTSIDE

"""Pointwise membership in the enclosure W_Omega.

Off the imaginary axis a point omega is a root of exactly one p(alpha, beta),
given by the inverse maps ``beta_hat`` and ``alpha_hat``; membership reduces
to two interval tests.  On the axis the admissible (alpha, beta) form a line
and membership is a line/box intersection.  The poles, 0 and infinity follow
their own rules.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DiskPosition,
    OmegaBox,
    ProblemParams,
    endpoint_tol,
    in_closed,
    in_disk,
    is_infinite,
    near_endpoint,
    poles,
)
from .errors import OnDiskBoundary

FLAG_RTOL = 1e-9
# snap radius for 0, the poles; matches the root clustering tolerance since
# multiple roots there are only resolved to about sqrt(machine epsilon)
SPECIAL_RTOL = 1e-7
# near 0 and the poles the inverse maps are 0/0 with finite limits, and roots
# approach the poles tangentially to the boundary of D; the boundary snap is
# skipped inside this radius
REMOVABLE_RTOL = 1e-3


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of ``contains``.

    Attributes
    ----------
    inside : bool
    witness : str
        ``"zero"``, ``"delta_plus"``, ``"delta_minus"``, ``"infinity"``,
        ``"axis"``, ``"disk_boundary"`` or ``"off_axis"``.
    alpha, beta : float or None
        The witnessing parameters: (alpha_hat, beta_hat) off the axis, a point
        of the admissible line on the axis.
    boundary_flag : bool
        True when the decision sits on an interval endpoint.
    """

    inside: bool
    witness: str
    alpha: float | None = None
    beta: float | None = None
    boundary_flag: bool = False

    def __bool__(self) -> bool:
        return self.inside


def _disk_denominator(x, y, params: ProblemParams):
    return params.d * (x * x + y * y) + 2.0 * params.c * y


def _check_disk(den, x, y, params: ProblemParams) -> None:
    scale = params.d * (x * x + y * y) + 2.0 * params.c * np.abs(y)
    if np.any(np.abs(den) <= 1e-12 * scale):
        raise OnDiskBoundary("inverse map evaluated on the boundary of D")


def beta_hat_xy(x, y, params: ProblemParams):
    """beta_hat from real and imaginary parts (array friendly, no checks)."""
    x2 = x * x
    c, d = params.c, params.d
    n = (-x2 + y * y + d * y + c) ** 2 + x2 * (2 * y + d) ** 2
    return -2.0 * y * n / _disk_denominator(x, y, params)


def alpha_hat_xy(x, y, params: ProblemParams):
    """alpha_hat from real and imaginary parts (array friendly, no checks)."""
    r2 = x * x + y * y
    return (2 * y + params.d) * r2 * r2 / _disk_denominator(x, y, params)


def beta_hat(omega: complex, params: ProblemParams) -> float:
    """The beta for which ``omega`` is a root of p (off the axis).

    Raises
    ------
    OnDiskBoundary
        If ``omega`` lies on the boundary of the disk D.
    """
    x, y = omega.real, omega.imag
    _check_disk(_disk_denominator(x, y, params), x, y, params)
    return float(beta_hat_xy(x, y, params))


def alpha_hat(omega: complex, params: ProblemParams) -> float:
    """The alpha for which ``omega`` is a root of p (off the axis).

    Raises
    ------
    OnDiskBoundary
        If ``omega`` lies on the boundary of the disk D.
    """
    x, y = omega.real, omega.imag
    _check_disk(_disk_denominator(x, y, params), x, y, params)
    return float(alpha_hat_xy(x, y, params))


def _near(omega: complex, s: complex) -> bool:
    return abs(omega - s) <= SPECIAL_RTOL * (1.0 + abs(s))


def _near_removable(omega: complex, params: ProblemParams) -> bool:
    dp, dm, _ = poles(params)
    return any(abs(omega - s) <= REMOVABLE_RTOL * (1.0 + abs(s)) for s in (0j, dp, dm))


def special_rule(omega: complex, box: OmegaBox, params: ProblemParams) -> MembershipVerdict | None:
    """Apply the rules for 0, the poles and infinity; None if not special."""
    unbounded = not box.alpha_bounded
    if is_infinite(omega):
        return MembershipVerdict(unbounded, "infinity")
    zero_b = in_closed(0.0, box.beta_lo, box.beta_hi)
    if _near(omega, 0j):
        inside = in_closed(0.0, box.alpha_lo, box.alpha_hi) or params.c == 0.0
        return MembershipVerdict(inside, "zero", alpha=0.0 if inside else None)
    dp, dm, _ = poles(params)
    if _near(omega, dp):
        return MembershipVerdict(unbounded or zero_b or params.c == 0.0, "delta_plus")
    if _near(omega, dm):
        return MembershipVerdict(unbounded or zero_b, "delta_minus")
    return None


def axis_alpha_range(mu: float, box: OmegaBox, params: ProblemParams) -> tuple[float, float, float]:
    """Range of alpha = -mu**2 - k beta over the beta interval, and k."""
    # c + d mu + mu**2 in completed-square form, accurate near a double pole
    h = mu + params.d / 2
    den = h * h + (params.c - params.d * params.d / 4)
    k = mu * mu / den if den != 0 else math.inf
    with np.errstate(invalid="ignore"):
        a1 = -mu * mu - k * box.beta_lo
        a2 = -mu * mu - k * box.beta_hi if math.isfinite(box.beta_hi) else -math.copysign(math.inf, k)
    return min(a1, a2), max(a1, a2), k


def axis_verdict(mu: float, box: OmegaBox, params: ProblemParams) -> MembershipVerdict:
    """Membership of i*mu (mu != 0, not a pole).

    The admissible pairs form the line alpha = -mu**2 - k beta with
    k = mu**2/(c + d mu + mu**2); the point is inside iff that line meets the
    box, which is tested against all four edges at once by intersecting the
    alpha-range of the line over the beta interval with the alpha interval.
    """
    lo, hi, k = axis_alpha_range(mu, box, params)
    ok_lo = lo <= box.alpha_hi + endpoint_tol(box.alpha_hi)
    ok_hi = hi >= box.alpha_lo - endpoint_tol(box.alpha_lo)
    if not (ok_lo and ok_hi):
        return MembershipVerdict(False, "axis")
    a_lo = max(lo, box.alpha_lo)
    a_hi = min(hi, box.alpha_hi)
    if a_lo > a_hi:
        a_star = a_lo if abs(a_lo) < math.inf else a_hi
        flag = True
    else:
        if math.isfinite(a_lo) and math.isfinite(a_hi):
            a_star = 0.5 * (a_lo + a_hi)
        elif math.isfinite(a_lo):
            a_star = a_lo
        elif math.isfinite(a_hi):
            a_star = a_hi
        else:
            a_star = -mu * mu - k * box.beta_lo
        width = a_hi - a_lo
        flag = width <= FLAG_RTOL * (1.0 + abs(a_star))
    b_star = (-mu * mu - a_star) / k if k != 0 else None
    return MembershipVerdict(True, "axis", alpha=a_star, beta=b_star, boundary_flag=flag)


def contains(omega: complex, box: OmegaBox, params: ProblemParams) -> MembershipVerdict:
    """Decide whether ``omega`` lies in the enclosure W_Omega.

    Dispatch: the special points 0, the poles and infinity first, then points
    on the imaginary axis, then the off-axis inverse-map test.  Points on the
    boundary of D other than the special points are outside.
    """
    omega = complex(omega)
    v = special_rule(omega, box, params)
    if v is not None:
        return v
    x, y = omega.real, omega.imag
    if x == 0.0:
        return axis_verdict(y, box, params)
    if in_disk(omega, params) is DiskPosition.ON_BOUNDARY and not _near_removable(omega, params):
        return MembershipVerdict(False, "disk_boundary")
    with np.errstate(all="ignore"):
        b = float(beta_hat_xy(x, y, params))
        a = float(alpha_hat_xy(x, y, params))
    if not (math.isfinite(a) and math.isfinite(b)):
        return MembershipVerdict(False, "disk_boundary")
    inside = in_closed(b, box.beta_lo, box.beta_hi) and in_closed(a, box.alpha_lo, box.alpha_hi)
    flag = near_endpoint(b, box.beta_lo, box.beta_hi, FLAG_RTOL) or near_endpoint(
        a, box.alpha_lo, box.alpha_hi, FLAG_RTOL
    )
    return MembershipVerdict(inside, "off_axis", alpha=a, beta=b, boundary_flag=flag)


def _interval_mask(v: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return (v >= lo - endpoint_tol(lo)) & (v <= hi + endpoint_tol(hi))


def _contains_chunk(omega: np.ndarray, box: OmegaBox, params: ProblemParams) -> np.ndarray:
    x = omega.real
    y = omega.imag
    out = np.zeros(omega.shape, dtype=bool)
    with np.errstate(all="ignore"):
        den = _disk_denominator(x, y, params)
        if params.c > 0:
            r = params.disk_radius
            on_disk = np.abs(np.abs(omega - params.disk_center) - r) <= 1e-12 * (1.0 + r)
            dp, dm, _ = poles(params)
            for s in (0j, dp, dm):
                on_disk &= np.abs(omega - s) > REMOVABLE_RTOL * (1.0 + abs(s))
        else:
            on_disk = np.zeros(omega.shape, dtype=bool)
        b = beta_hat_xy(x, y, params)
        a = alpha_hat_xy(x, y, params)
        reg = _interval_mask(b, box.beta_lo, box.beta_hi) & _interval_mask(a, box.alpha_lo, box.alpha_hi)
    out[:] = reg & ~on_disk & np.isfinite(den) & np.isfinite(a) & np.isfinite(b)
    dp, dm, _ = poles(params)
    slow = (x == 0.0) | ~np.isfinite(omega)
    for s in (0j, dp, dm):
        slow |= np.abs(omega - s) <= SPECIAL_RTOL * (1.0 + abs(s))
    for idx in zip(*np.nonzero(slow)):
        out[idx] = contains(complex(omega[idx]), box, params).inside
    return out


def contains_grid(omega, box: OmegaBox, params: ProblemParams, threads: int = 1) -> np.ndarray:
    """Vectorized ``contains`` over an array of points.

    Off-axis regular points are decided with array arithmetic; axis points and
    special points fall back to the scalar routine, so the result agrees with
    ``contains`` element by element.

    Parameters
    ----------
    omega : array_like of complex
    threads : int
        Number of worker threads; the array is split along its first axis.
    """
    omega = np.asarray(omega, dtype=complex)
    if omega.ndim == 0:
        return np.asarray(contains(complex(omega), box, params).inside)
    if threads <= 1 or omega.shape[0] < 2 * threads:
        return _contains_chunk(omega, box, params)
    parts = np.array_split(np.arange(omega.shape[0]), threads)
    with ThreadPoolExecutor(max_workers=threads) as ex:
        res = list(ex.map(lambda ix: _contains_chunk(omega[ix], box, params), parts))
    return np.concatenate(res, axis=0)


def sign_regions(omega: complex, params: ProblemParams) -> tuple[bool, bool]:
    """Return ``(in_pi_beta, in_pi_alpha)``.

    Pi_beta is {Im <= 0} outside the closed disk; Pi_alpha is
    {Im >= -d/2} outside the closed disk together with {Im <= -d/2} inside D.
    On Pi_beta the inverse map beta_hat is non-negative, on Pi_alpha alpha_hat is.
    """
    pos = in_disk(omega, params)
    outside = pos is DiskPosition.OUTSIDE
    inside = pos is DiskPosition.INSIDE
    y = omega.imag
    in_b = y <= 0 and outside
    in_a = (y >= -params.d / 2 and outside) or (inside and y <= -params.d / 2)
    return in_b, in_a


def exclusion_height(box: OmegaBox, params: ProblemParams) -> float:
    """A height H with no off-axis enclosure point having |Im(omega)| >= H.

    For |y| >= max(1, 2|delta|, 2c/d) one has
    |beta_hat| >= |y|**3 / (8 (d + 2c/|y|)), so H is doubled until this lower
    bound exceeds the largest |beta| in the box.  Returns inf for an
    unbounded beta interval.
    """
    if not math.isfinite(box.beta_hi):
        return math.inf
    bmax = max(abs(box.beta_lo), abs(box.beta_hi))
    dp, dm, _ = poles(params)
    h = max(1.0, 2 * abs(dp), 2 * abs(dm), 2 * params.c / params.d + 1e-9)
    while h**3 / (8 * (params.d + 2 * params.c / h)) <= bmax:
        h *= 2
    return h

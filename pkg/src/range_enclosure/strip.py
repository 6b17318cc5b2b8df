"""Discriminant thresholds and horizontal strips of the boundary curves.

Two slices are studied: the fixed-beta curve (all alpha) and the fixed-alpha
curve (beta >= 0).  A maximal strip is an open band s_low < Im(omega) < s_high
free of the curve whose closure touches the curve on both edges.  Candidate
edge ordinates come from every available closed form (roots of the extreme
point functions and the real axis roots of q_beta / q_alpha); the actual
edges are selected and verified by scanning the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .axis import q_alpha_real_roots, q_beta_real_roots
from .boundary import _evaluate
from .core import ProblemParams, solve_cubic_batch
from .errors import DegenerateConfiguration, VerificationFailure

GUARD_RTOL = 1e-12
EDGE_TOL = 1e-6
SCAN_POINTS = 10_000


def compare(a: float, b: float, rtol: float = GUARD_RTOL) -> int:
    """Sign of a - b, refusing to decide inside the relative guard band.

    Exact equality returns 0.  Values that differ but lie within
    ``rtol * max(|a|, |b|)`` raise DegenerateConfiguration.
    """
    if a == b:
        return 0
    if math.isinf(a) or math.isinf(b):
        return 1 if a > b else -1
    if abs(a - b) <= rtol * max(abs(a), abs(b)):
        raise DegenerateConfiguration(f"{a!r} and {b!r} are inside the guard band")
    return 1 if a > b else -1


def real_cubic_roots(a3: float, a2: float, a1: float, a0: float) -> list[float]:
    """Sorted real roots of a3 x**3 + a2 x**2 + a1 x + a0.

    Cardano on the monic cubic, then a few real Newton steps.  A vanishing
    leading coefficient falls back to the quadratic formula.
    """
    if a3 == 0.0:
        if a2 == 0.0:
            return [] if a1 == 0.0 else [-a0 / a1]
        disc = a1 * a1 - 4 * a2 * a0
        if disc < 0:
            return []
        q = -0.5 * (a1 + math.copysign(math.sqrt(disc), a1))
        r = [q / a2] + ([a0 / q] if q != 0 else [0.0])
        return sorted(r)
    z = solve_cubic_batch(a2 / a3, a1 / a3, a0 / a3)
    z = np.atleast_2d(z)[0]
    scale = 1.0 + np.abs(z)
    out = []
    for r in z[np.abs(z.imag) <= 1e-7 * scale].real:
        for _ in range(4):
            f = ((a3 * r + a2) * r + a1) * r + a0
            df = (3 * a3 * r + 2 * a2) * r + a1
            if df == 0:
                break
            step = f / df
            r2 = r - step
            f2 = ((a3 * r2 + a2) * r2 + a1) * r2 + a0
            if abs(f2) >= abs(f):
                break
            r = r2
        out.append(float(r))
    return sorted(out)


# ---------------------------------------------------------------------------
# discriminant thresholds


@dataclass(frozen=True)
class DiscriminantThresholds:
    """Values of d where q_beta (d1, d2, d3) or q_alpha (d0) change root count.

    Unused entries are None; absent thresholds are +inf.
    """

    d1: float | None = None
    d2: float | None = None
    d3: float | None = None
    d0: float | None = None

    def q_beta_root_count(self, d: float) -> int:
        """Real root count of q_beta predicted by the case analysis."""
        if d < self.d1:
            return 0
        if self.d2 <= d <= self.d3:
            return 4
        return 2


def beta_discriminant_cubic(beta: float, c: float) -> tuple[float, float, float, float]:
    """Coefficients of the discriminant of q_beta (scaled) as a cubic in d**2/4."""
    return (
        beta - 8 * c,
        -(27 * beta * beta / 32 - 6 * beta * c - 24 * c * c),
        -3 * c * c * (5 * beta + 8 * c),
        8 * c**3 * (beta + c),
    )


def alpha_discriminant_cubic(alpha: float, c: float) -> tuple[float, float, float, float]:
    """Coefficients of the discriminant of q_alpha as a cubic in d**2/4."""
    a = alpha
    return (4 * a**3, -(a * a) * (27 * a * a - 6 * a * c + 27 * c * c), 192 * a**3 * c * c, -256 * a**3 * c**3)


def _pick(roots: list[float], lo: float, hi: float, lo_open: bool, hi_open: bool) -> float | None:
    tol = 1e-9
    best = None
    for r in roots:
        ok_lo = r > lo - tol * (1 + abs(lo)) if lo_open else r >= lo - tol * (1 + abs(lo))
        ok_hi = r < hi + tol * (1 + abs(hi)) if hi_open else r <= hi + tol * (1 + abs(hi))
        if ok_lo and ok_hi:
            best = r if best is None else best
    return best


def discriminant_ds_beta(beta: float, params: ProblemParams) -> DiscriminantThresholds:
    """Thresholds d1 <= d2 <= d3 of q_beta as functions of beta and c.

    beta < 4c: only d1 in (0, 2 sqrt(c)); 4c <= beta < 8c: all three;
    beta >= 8c > 0: d1 and d2.  For c = 0 the discriminant cubic in
    d_hat = d**2/4 has roots 0 and 27 beta/32, so d1 = 0 and
    d2 = 2 sqrt(27 beta / 32).
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    c = params.c
    if c == 0.0:
        return DiscriminantThresholds(d1=0.0, d2=2 * math.sqrt(27 * beta / 32), d3=math.inf)
    roots = real_cubic_roots(*beta_discriminant_cubic(beta, c))
    h1 = _pick(roots, 0.0, c, True, True)
    s4 = compare(beta, 4 * c)
    s8 = compare(beta, 8 * c)
    d = lambda h: 2 * math.sqrt(max(h, 0.0))
    if h1 is None:
        raise DegenerateConfiguration("no discriminant root in (0, c)")
    if s4 < 0:
        return DiscriminantThresholds(d1=d(h1), d2=math.inf, d3=math.inf)
    rest = [r for r in roots if r > c * (1 + 1e-9)]
    h2 = _pick(rest, c, beta, True, False)
    if s4 == 0:
        # double root d_hat = beta
        h2 = beta if h2 is None else h2
        return DiscriminantThresholds(d1=d(h1), d2=d(beta), d3=d(beta))
    if s8 < 0:
        above = [r for r in rest if r >= beta * (1 - 1e-9)]
        h3 = above[-1] if len(rest) >= 2 and above else None
        if h2 is None or h3 is None:
            raise DegenerateConfiguration("missing discriminant roots for 4c <= beta < 8c")
        return DiscriminantThresholds(d1=d(h1), d2=d(h2), d3=d(h3))
    if h2 is None:
        raise DegenerateConfiguration("missing discriminant root in (c, beta]")
    return DiscriminantThresholds(d1=d(h1), d2=d(h2), d3=math.inf)


def d0_alpha(alpha: float, params: ProblemParams) -> float:
    """Largest d solving Delta_{q_alpha} = 0.

    alpha > 0 gives d0 >= 4 sqrt(max(alpha, c)); alpha < 0 with c > 0 gives
    d0 in (0, 2 sqrt(c)]; alpha < 0 with c = 0 gives 0.  At alpha = c the
    cubic has the triple root d_hat = 4c and d0 = 4 sqrt(c) exactly.
    """
    if alpha == 0:
        raise ValueError("alpha must be non-zero")
    c = params.c
    if alpha == c:
        return 4 * math.sqrt(c)
    if c == 0.0:
        return math.sqrt(27 * alpha) if alpha > 0 else 0.0
    roots = real_cubic_roots(*alpha_discriminant_cubic(alpha, c))
    if alpha > 0:
        h = max(roots)
    else:
        pos = [r for r in roots if r > 0]
        h = _pick(pos, 0.0, c, True, False) if pos else None
        if h is None:
            raise DegenerateConfiguration("no discriminant root in (0, c]")
    return 2 * math.sqrt(max(h, 0.0))


# ---------------------------------------------------------------------------
# strips


@dataclass
class StripReport:
    """Maximal strip of one curve slice.

    Attributes
    ----------
    exists : bool
    s_low, s_high : float or None
        Edge ordinates, ``s_low < s_high``.
    low_points, high_points : list of complex
        Curve points attaining the edges.
    low_on_axis, high_on_axis : bool
        Whether the attaining point is an axis root.
    min_imag : float or None
        Smallest imaginary part of the curve, when computed.
    min_on_axis : bool or None
    candidates : list of float
        All candidate ordinates that were examined.
    """

    exists: bool
    s_low: float | None = None
    s_high: float | None = None
    low_points: list = field(default_factory=list)
    high_points: list = field(default_factory=list)
    low_on_axis: bool = False
    high_on_axis: bool = False
    min_imag: float | None = None
    min_on_axis: bool | None = None
    candidates: list = field(default_factory=list)

    def to_dict(self) -> dict:
        pts = lambda ps: [[p.real, p.imag] for p in ps]
        return {
            "exists": self.exists,
            "s_low": self.s_low,
            "s_high": self.s_high,
            "low_points": pts(self.low_points),
            "high_points": pts(self.high_points),
            "low_on_axis": self.low_on_axis,
            "high_on_axis": self.high_on_axis,
            "min_imag": self.min_imag,
            "min_on_axis": self.min_on_axis,
        }


class _Slice:
    """Validity of the curve at given ordinates, for scans."""

    def __init__(self, kind: str, value: float, params: ProblemParams):
        self.kind, self.value, self.params = kind, value, params
        self.lo, self.hi = (-math.inf, math.inf) if kind == "beta" else (0.0, math.inf)
        self.singular = [0.0] if kind == "beta" else [0.0, -params.d / 2]

    def re(self, y) -> np.ndarray:
        y = np.atleast_1d(np.asarray(y, dtype=float))
        return _evaluate(self.kind, self.value, y, self.params, self.lo, self.hi)

    def valid(self, y) -> np.ndarray:
        return np.isfinite(self.re(y)).any(axis=-1)

    def touch(self, s: float, side: int) -> float | None:
        """Ordinate within EDGE_TOL of s (below for side=-1) where the curve is."""
        offs = np.concatenate([[0.0], np.logspace(-15, 0, 61) * EDGE_TOL * (1 + abs(s))])
        ys = s + side * offs
        ys = ys[~np.isin(ys, self.singular)]
        v = self.valid(ys)
        return float(ys[np.argmax(v)]) if v.any() else None

    def empty(self, a: float, b: float) -> bool:
        eps = EDGE_TOL
        if b - a > 2 * eps:
            ys = np.linspace(a + eps, b - eps, SCAN_POINTS)
        else:
            ys = np.array([0.5 * (a + b)])
        ys = ys[~np.isin(ys, self.singular)]
        return not self.valid(ys).any()

    def points_at(self, y: float) -> list[complex]:
        x = self.re([y])[0]
        pts = []
        for v in x[np.isfinite(x)]:
            pts.append(complex(v, y))
            if v != 0:
                pts.append(complex(-v, y))
        return sorted(set(pts), key=lambda p: p.real)


def _verify(sl: _Slice, cands: list[float], axis_roots: list[float]) -> StripReport:
    """Select the widest candidate pair bounding an empty band with touching edges."""
    cands = sorted({float(s) for s in cands if math.isfinite(s) and s < 0})
    best = None
    for i, a in enumerate(cands):
        ya = sl.touch(a, -1)
        if ya is None:
            continue
        for b in cands[i + 1 :]:
            yb = sl.touch(b, +1)
            if yb is None or not sl.empty(a, b):
                continue
            if best is None or b - a > best[1] - best[0]:
                best = (a, b, ya, yb)
    if best is None:
        raise VerificationFailure("no candidate pair bounds an empty band")
    a, b, ya, yb = best
    on_axis = lambda s, pts: any(abs(s - m) <= 1e-7 * (1 + abs(m)) for m in axis_roots) and (
        not pts or min(abs(p.real) for p in pts) <= 1e-3
    )
    lp, hp = sl.points_at(ya), sl.points_at(yb)
    lo_ax, hi_ax = on_axis(a, lp), on_axis(b, hp)
    if lo_ax:
        lp = [complex(0.0, a)]
    if hi_ax:
        hp = [complex(0.0, b)]
    return StripReport(True, a, b, lp, hp, lo_ax, hi_ax, candidates=cands)


def _off_axis_beta(beta: float, d: float, c: float) -> list[float]:
    out = []
    if d * d >= 4 * beta:
        r = math.sqrt(d * d - 4 * beta)
        out += [(-d - r) / 4, (-d + r) / 4]
    if 4 * c != d * d:
        t = 1 + 4 * beta / (4 * c - d * d)
        if t >= 0:
            r = d * math.sqrt(t)
            out += [(-d - r) / 4, (-d + r) / 4]
    return out


def strip_exists_beta(beta: float, params: ProblemParams) -> bool:
    """A maximal strip exists iff d > min(2 sqrt(beta), d2)."""
    th = discriminant_ds_beta(beta, params)
    return compare(params.d, min(2 * math.sqrt(beta), th.d2)) > 0


def strip_edges_beta(beta: float, params: ProblemParams) -> StripReport:
    """Verified edges of the strip of the fixed-beta curve.

    Candidates: (-d +- sqrt(d**2 - 4 beta))/4, (-d +- d sqrt(1 + 4 beta/(4c - d**2)))/4
    and the real roots of q_beta.

    Raises
    ------
    ValueError
        If no strip exists.
    VerificationFailure
        If no candidate pair passes the curve scan.
    """
    if not strip_exists_beta(beta, params):
        raise ValueError("no strip for this beta and d")
    mus = list(q_beta_real_roots(beta, params).roots)
    cands = _off_axis_beta(beta, params.d, params.c) + mus
    rep = _verify(_Slice("beta", beta, params), cands, mus)
    rep.min_imag, rep.min_on_axis = min_imag_beta(beta, params)
    return rep


def min_imag_cubic(beta: float, c: float) -> tuple[float, float, float, float]:
    """Cubic in d_hat whose root in (0, c) separates the on/off-axis minimum."""
    return (c, beta * beta / 16 - beta * c - 3 * c * c, c * c * (2 * beta + 3 * c), -(c**3) * (beta + c))


def min_imag_beta(beta: float, params: ProblemParams) -> tuple[float, bool]:
    """Smallest imaginary part of the fixed-beta curve and whether it is on the axis.

    With d_hat the root in (0, c) of ``min_imag_cubic`` (0 when c = 0): for
    d >= 2 sqrt(d_hat) the minimum is the smallest axis root mu_1, otherwise
    it is (-d - d sqrt(1 + 4 beta/(4c - d**2)))/4 off the axis.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    c, d = params.c, params.d
    if c == 0.0:
        h = 0.0
    else:
        h = _pick(real_cubic_roots(*min_imag_cubic(beta, c)), 0.0, c, True, True)
        if h is None:
            raise DegenerateConfiguration("no root of the minimum cubic in (0, c)")
    mus = q_beta_real_roots(beta, params).roots
    if compare(d, 2 * math.sqrt(h)) >= 0 and mus:
        return float(mus[0]), True
    return (-d - d * math.sqrt(1 + 4 * beta / (4 * c - d * d))) / 4, False


def strip_exists_alpha(alpha: float, params: ProblemParams) -> bool:
    """A strip exists iff alpha > 0 and (alpha < c or d > d0)."""
    if alpha == 0:
        raise ValueError("alpha must be non-zero")
    if alpha < 0:
        return False
    if compare(alpha, params.c) < 0:
        return True
    return compare(params.d, d0_alpha(alpha, params)) > 0


def _off_axis_alpha(alpha: float, d: float, c: float) -> list[float]:
    out = []
    if c > 0:
        for t in (1 - alpha / c, 1 + alpha / c):
            if t >= 0:
                r = d * math.sqrt(t)
                out += [(-d - r) / 4, (-d + r) / 4]
    return out


def strip_alpha(alpha: float, params: ProblemParams) -> StripReport:
    """Strip and minimum of the fixed-alpha curve restricted to beta >= 0.

    For alpha > 0 with a strip the edges are verified as in
    ``strip_edges_beta``, with the real roots nu of q_alpha as axis
    candidates and (-d +- d sqrt(1 - alpha/c))/4 off the axis.  For alpha < 0
    no strip exists and only the point of smallest imaginary part is
    reported.
    """
    if alpha == 0:
        raise ValueError("alpha must be non-zero")
    c, d = params.c, params.d
    sl = _Slice("alpha", alpha, params)
    nus = [v for v in q_alpha_real_roots(alpha, params).roots if v != 0.0]
    cands = _off_axis_alpha(alpha, d, c) + nus + [-d / 2]
    if alpha == c and d * d >= 16 * c:
        cands += [-math.sqrt(c), -d / 4 - math.sqrt(d * d / 16 - c)]
    if not strip_exists_alpha(alpha, params):
        rep = StripReport(False, candidates=sorted(set(cands)))
    else:
        rep = _verify(sl, cands, nus)
    rep.min_imag, rep.min_on_axis = _min_by_scan(sl, cands, nus)
    return rep


def _min_by_scan(sl: _Slice, cands: list[float], axis_roots: list[float]) -> tuple[float | None, bool | None]:
    """Lowest candidate ordinate touched by the curve with nothing below it."""
    for s in sorted(set(c for c in cands if math.isfinite(c))):
        y = sl.touch(s, +1)
        if y is None:
            continue
        below = np.linspace(s - 10 * (1 + abs(s)), s - EDGE_TOL * (1 + abs(s)), SCAN_POINTS)
        if sl.valid(below).any():
            continue
        pts = sl.points_at(y)
        on = any(abs(s - m) <= 1e-7 * (1 + abs(m)) for m in axis_roots) and (
            not pts or min(abs(p.real) for p in pts) <= 1e-3
        )
        return s, on
    return None, None


def curve_imag_extent(kind: str, value: float, params: ProblemParams, lo: float, hi: float,
                      n: int = 200_000) -> np.ndarray:
    """Boolean mask of a dense ordinate grid on [lo, hi] where the curve exists.

    Used as a scan oracle in tests and by the command line.
    """
    sl = _Slice(kind, value, params)
    ys = np.linspace(lo, hi, n)
    return ys, sl.valid(ys)


def combined_strip(reports: list[StripReport]) -> tuple[float, float] | None:
    """Numeric intersection of per-edge strips, or None if empty.

    This makes no claim that the result is a strip of the whole enclosure.
    """
    lo, hi = -math.inf, math.inf
    for r in reports:
        if not r.exists:
            return None
        lo, hi = max(lo, r.s_low), min(hi, r.s_high)
    return (lo, hi) if lo < hi else None

"""Boundary curves of the enclosure and the planar region map.

Off the imaginary axis the boundary is the image of the box edges.  A fixed
beta edge is sampled through

    Re(omega)**2 = P +- sqrt(P**2 - Q) - Im(omega)**2,
    P = c - d**2/2 - d y - beta d / (4 y),   Q = beta c + c**2 + 2 c d y + 4 c y**2,

and a fixed alpha edge through

    Re(omega)**2 = R +- sqrt(R**2 - S) - Im(omega)**2,
    R = alpha d / (2 (d + 2 y)),   S = -2 alpha c y / (d + 2 y),

with y = Im(omega) as the curve parameter.  Edge pieces are kept where the
opposite inverse map lands in the box.  The region map rasterizes the curves,
flood-fills the complement and colours components alternately starting from
the top, checking every cell against pointwise membership.
"""

from __future__ import annotations

import logging
import math
import heapq
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .axis import q_alpha_real_roots, q_beta_real_roots
from .core import OmegaBox, ProblemParams, endpoint_tol, family_roots, poles
from .membership import alpha_hat_xy, beta_hat_xy, contains, contains_grid

log = logging.getLogger(__name__)

BISECT_RTOL = 1e-12
BRANCH_TAGS = ("in+", "in-")


# ---------------------------------------------------------------------------
# branch formulas


def beta_branch_terms(beta: float, y, params: ProblemParams):
    """P, Q and the two inner radicands for the fixed-beta family."""
    c, d = params.c, params.d
    y = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        P = c - d * d / 2 - d * y - beta * d / (4 * y)
        Q = beta * c + c * c + 2 * c * d * y + 4 * c * y * y
        disc = P * P - Q
        inner = _inner(P, Q, disc, y)
    return disc, inner


def _inner(P, Q, disc, y):
    """x**2 = P +- sqrt(P**2 - Q) - y**2, the smaller root of t**2 - 2Pt + Q
    taken as Q over the larger one to avoid cancellation."""
    sq = np.sqrt(np.maximum(disc, 0.0))
    big = P + np.copysign(sq, P)
    small = np.where(big != 0, Q / np.where(big != 0, big, 1.0), 0.0)
    plus = np.where(P >= 0, big, small)
    minus = np.where(P >= 0, small, big)
    return np.stack([plus - y * y, minus - y * y], axis=-1)


def alpha_branch_terms(alpha: float, y, params: ProblemParams):
    """R, S and the two inner radicands for the fixed-alpha family."""
    c, d = params.c, params.d
    y = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        R = alpha * d / (2 * (d + 2 * y))
        S = -2 * alpha * c * y / (d + 2 * y)
        disc = R * R - S
        inner = _inner(R, S, disc, y)
    return disc, inner


def branch_residual(kind: str, value: float, x, y, params: ProblemParams):
    """Residual of the defining branch equation at (x, y).

    For each point the smaller of the two inner-sign residuals is returned,
    computed from the squared form (x**2 + y**2 - P)**2 - (P**2 - Q), which
    is free of the square root.
    """
    c, d = params.c, params.d
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if kind == "beta":
        P = c - d * d / 2 - d * y - value * d / (4 * y)
        Q = value * c + c * c + 2 * c * d * y + 4 * c * y * y
    else:
        P = value * d / (2 * (d + 2 * y))
        Q = -2 * value * c * y / (d + 2 * y)
    v = x * x + y * y
    return np.abs((v - P) ** 2 - (P * P - Q)) / (1.0 + P * P + np.abs(Q) + v * v)


# ---------------------------------------------------------------------------
# curves


@dataclass
class BranchCurve:
    """Samples of one edge curve on a grid of imaginary parts.

    Attributes
    ----------
    kind : str
        ``"beta"`` (fixed beta) or ``"alpha"`` (fixed alpha).
    value : float
        The fixed parameter.
    edge_tag : str
        Which box edge produced the curve, e.g. ``"beta_hi"``.
    im : ndarray, shape (n,)
        Imaginary parts, increasing.
    re : ndarray, shape (n, 2)
        Non-negative real parts for the inner signs ``+`` and ``-``; NaN
        where the branch is invalid.  The left half is the mirror image.
    points : list of complex
        Isolated points: axis intersections, poles, 0.
    segments : list of (complex, complex)
        Straight pieces not captured by the branch formulas (beta = 0 and
        alpha = 0 edges).
    """

    kind: str
    value: float
    edge_tag: str
    im: np.ndarray
    re: np.ndarray
    points: list = field(default_factory=list)
    segments: list = field(default_factory=list)

    @property
    def valid(self) -> np.ndarray:
        return np.isfinite(self.re)

    def tagged_points(self):
        """Yield ``(omega, branch_tag)`` for every emitted point, mirrored."""
        for k, tag in enumerate(BRANCH_TAGS):
            ok = self.valid[:, k]
            for x, y in zip(self.re[ok, k], self.im[ok]):
                yield complex(x, y), "re+" + tag
                if x != 0.0:
                    yield complex(-x, y), "re-" + tag
        for p in self.points:
            yield complex(p), "point"
        for a, b in self.segments:
            yield complex(a), "segment"
            yield complex(b), "segment"

    def all_points(self) -> np.ndarray:
        return np.array([p for p, _ in self.tagged_points()], dtype=complex)


def _singular_lines(kind: str, params: ProblemParams) -> list[float]:
    return [0.0, -params.d / 2] if kind == "alpha" else [0.0]


def default_im_grid(lo: float, hi: float, params: ProblemParams, n: int = 2048, kind: str = "beta") -> np.ndarray:
    """Uniform grid on [lo, hi] with geometric clustering at singular lines.

    The singular ordinates themselves (0, and -d/2 for fixed alpha) are
    removed so that the branch formulas stay finite.
    """
    g = [np.linspace(lo, hi, n)]
    for s in [0.0, -params.d / 2]:
        if lo < s < hi or s in (lo, hi):
            off = np.logspace(-12, -2, 41) * max(1.0, abs(hi - lo))
            g.append(s + off)
            g.append(s - off)
    y = np.unique(np.concatenate(g))
    y = y[(y >= lo) & (y <= hi)]
    for s in [0.0, -params.d / 2]:
        y = y[y != s]
    return y


def _evaluate(kind: str, value: float, y: np.ndarray, params: ProblemParams,
              other_lo: float, other_hi: float) -> np.ndarray:
    """Real parts (n, 2) with NaN where invalid or filtered out."""
    if kind == "beta":
        disc, inner = beta_branch_terms(value, y, params)
    else:
        disc, inner = alpha_branch_terms(value, y, params)
    ok = (disc[:, None] >= 0) & (inner >= 0)
    x = np.where(ok, np.sqrt(np.where(ok, inner, 0.0)), np.nan)
    yy = np.broadcast_to(y[:, None], x.shape)
    with np.errstate(all="ignore"):
        if kind == "beta":
            other = alpha_hat_xy(x, yy, params)
        else:
            other = beta_hat_xy(x, yy, params)
    keep = (other >= other_lo - endpoint_tol(other_lo)) & (other <= other_hi + endpoint_tol(other_hi))
    return np.where(ok & keep, x, np.nan)


def _refine(kind, value, y, params, lo, hi, sweeps: int = 60) -> np.ndarray:
    """Insert bisected validity-change ordinates into the grid."""
    x = _evaluate(kind, value, y, params, lo, hi)
    v = np.isfinite(x)
    extra = []
    sing = _singular_lines(kind, params)
    for k in range(2):
        idx = np.flatnonzero(v[:-1, k] != v[1:, k])
        if not len(idx):
            continue
        a = y[idx].copy()
        b = y[idx + 1].copy()
        # skip brackets straddling a singular line
        straddle = np.zeros(len(idx), dtype=bool)
        for s in sing:
            straddle |= (a < s) & (b > s)
        a, b, idx = a[~straddle], b[~straddle], idx[~straddle]
        good_left = v[idx, k]
        for _ in range(sweeps):
            m = 0.5 * (a + b)
            vm = np.isfinite(_evaluate(kind, value, m, params, lo, hi)[:, k])
            same_as_left = vm == good_left
            a = np.where(same_as_left, m, a)
            b = np.where(same_as_left, b, m)
            if np.all(b - a <= BISECT_RTOL * (1 + np.abs(a))):
                break
        extra.append(np.where(good_left, a, b))
    if extra:
        y = np.unique(np.concatenate([y] + extra))
    return y


def _curve(kind: str, value: float, im_grid, params: ProblemParams, other_lo: float, other_hi: float,
           edge_tag: str) -> BranchCurve:
    y = np.asarray(im_grid, dtype=float)
    y = y[np.isfinite(y)]
    for s in _singular_lines(kind, params):
        y = y[y != s]
    y = np.unique(y)
    y = _refine(kind, value, y, params, other_lo, other_hi)
    x = _evaluate(kind, value, y, params, other_lo, other_hi)
    return BranchCurve(kind, float(value), edge_tag, y, x)


def curve_fixed_beta(beta: float, im_grid, params: ProblemParams,
                     alpha_range: tuple[float, float] = (-math.inf, math.inf),
                     edge_tag: str = "beta") -> BranchCurve:
    """Sample the curve of roots of p(alpha, beta) for fixed beta.

    Points are kept where alpha_hat lies in ``alpha_range``.  The axis
    intersections i*mu (real roots of q_beta) whose line parameter lies in
    ``alpha_range`` and the point 0 (when c > 0) are added as isolated points.
    """
    if beta == 0.0:
        return _beta_zero_curve(im_grid, params, alpha_range, edge_tag)
    cur = _curve("beta", beta, im_grid, params, alpha_range[0], alpha_range[1], edge_tag)
    pts = []
    if beta > 0:
        for mu in q_beta_real_roots(beta, params).roots:
            den = params.c + params.d * mu + mu * mu
            if den == 0:
                continue
            a = -mu * mu - mu * mu * beta / den
            if not math.isfinite(a):
                continue
            if alpha_range[0] - endpoint_tol(alpha_range[0]) <= a <= alpha_range[1] + endpoint_tol(alpha_range[1]):
                pts.append(complex(0.0, mu))
    if params.c > 0 and alpha_range[0] <= 0.0 <= alpha_range[1]:
        pts.append(0j)
    cur.points = pts
    return cur


def _beta_zero_curve(im_grid, params, alpha_range, edge_tag) -> BranchCurve:
    """beta = 0: roots are +-sqrt(alpha) and the poles."""
    y = np.asarray(im_grid, dtype=float)
    cur = BranchCurve("beta", 0.0, edge_tag, y, np.full((len(y), 2), np.nan))
    lo, hi = alpha_range
    if hi > 0:
        x0 = math.sqrt(max(lo, 0.0))
        x1 = math.sqrt(hi) if math.isfinite(hi) else math.inf
        cur.segments = [(complex(x0, 0.0), complex(x1, 0.0)), (complex(-x0, 0.0), complex(-x1, 0.0))]
    if lo < 0:
        top = math.sqrt(-lo)
        bot = math.sqrt(-min(hi, 0.0))
        cur.segments += [(complex(0.0, -top), complex(0.0, -bot)), (complex(0.0, bot), complex(0.0, top))]
    dp, dm, _ = poles(params)
    cur.points = [dp, dm]
    return cur


def curve_fixed_alpha(alpha: float, im_grid, params: ProblemParams,
                      beta_range: tuple[float, float] = (0.0, math.inf),
                      edge_tag: str = "alpha") -> BranchCurve:
    """Sample the curve of roots of p(alpha, beta) for fixed alpha.

    Points are kept where beta_hat lies in ``beta_range``; the default
    [0, inf) restricts to the half plane Pi_beta.  Axis intersections come
    from q_alpha, and the poles are added when the inclusion rule fires
    (d <= 2 sqrt(c), strictly when alpha < -c).
    """
    if alpha == 0.0:
        return _alpha_zero_curve(im_grid, params, beta_range, edge_tag)
    cur = _curve("alpha", alpha, im_grid, params, beta_range[0], beta_range[1], edge_tag)
    c, d = params.c, params.d
    pts = []
    for nu in q_alpha_real_roots(alpha, params).roots:
        if abs(nu) < 1e-300:
            continue
        k = nu * nu / (c + d * nu + nu * nu) if (c + d * nu + nu * nu) != 0 else math.inf
        if k == 0 or not math.isfinite(k):
            continue
        b = (-nu * nu - alpha) / k
        if beta_range[0] - endpoint_tol(beta_range[0]) <= b <= beta_range[1] + endpoint_tol(beta_range[1]):
            pts.append(complex(0.0, nu))
    if alpha > 0 and c > 0 and beta_range[0] <= 0.0:
        pts.append(0j)
    strict = alpha < -c
    fire = d < 2 * math.sqrt(c) if strict else d <= 2 * math.sqrt(c)
    if fire and beta_range[0] <= 0.0 <= beta_range[1]:
        dp, dm, _ = poles(params)
        pts += [dp, dm]
    cur.points = pts
    return cur


def _alpha_zero_curve(im_grid, params, beta_range, edge_tag) -> BranchCurve:
    """alpha = 0: a double root at 0 and +-sqrt(beta + c - d**2/4) - i d/2."""
    y = np.asarray(im_grid, dtype=float)
    cur = BranchCurve("alpha", 0.0, edge_tag, y, np.full((len(y), 2), np.nan))
    c, d = params.c, params.d
    lo, hi = beta_range
    h = -d / 2
    shift = c - d * d / 4
    if hi + shift > 0:
        x0 = math.sqrt(max(lo + shift, 0.0))
        x1 = math.sqrt(hi + shift) if math.isfinite(hi) else math.inf
        cur.segments = [(complex(x0, h), complex(x1, h)), (complex(-x0, h), complex(-x1, h))]
    if lo + shift < 0:
        top = math.sqrt(-(lo + shift))
        bot = math.sqrt(-min(hi + shift, 0.0))
        cur.segments += [(complex(0.0, h + bot), complex(0.0, h + top)),
                         (complex(0.0, h - top), complex(0.0, h - bot))]
    cur.points = [0j]
    return cur


def boundary_set(box: OmegaBox, im_grid, params: ProblemParams) -> list[BranchCurve]:
    """Edge curves of the box, each filtered to the opposite interval.

    Infinite alpha edges contribute only the poles and infinity, which are
    not sampled.  A degenerate interval yields a single curve for that
    parameter.
    """
    curves = []
    a_rng = (box.alpha_lo, box.alpha_hi)
    b_rng = (box.beta_lo, box.beta_hi)
    betas = [("beta_lo", box.beta_lo)]
    if box.beta_hi != box.beta_lo:
        betas.append(("beta_hi", box.beta_hi))
    for tag, b in betas:
        if math.isfinite(b):
            curves.append(curve_fixed_beta(b, im_grid, params, a_rng, tag))
    alphas = [("alpha_lo", box.alpha_lo)]
    if box.alpha_hi != box.alpha_lo:
        alphas.append(("alpha_hi", box.alpha_hi))
    for tag, a in alphas:
        if math.isfinite(a):
            curves.append(curve_fixed_alpha(a, im_grid, params, b_rng, tag))
    return curves


# ---------------------------------------------------------------------------
# viewport and raster


def default_viewport(box: OmegaBox, params: ProblemParams) -> tuple[float, float, float, float]:
    """``(re_lo, re_hi, im_lo, im_hi)`` symmetric about the imaginary axis.

    The lower edge is -(d + sqrt(d**2 + 4 beta_hi))/1.5, pushed further down
    if a finite corner quartic has a lower root.  L is taken from the same
    scale and from the largest finite |alpha|.
    """
    d = params.d
    bhi = box.beta_hi if math.isfinite(box.beta_hi) else max(abs(box.beta_lo), 1.0) * 10
    bottom = -(d + math.sqrt(d * d + 4 * max(bhi, 0.0))) / 1.5
    fin = [(a, b) for a, b in box.corners() if math.isfinite(a) and math.isfinite(b)]
    if fin:
        r = family_roots([a for a, _ in fin], [b for _, b in fin], params)
        bottom = min(bottom, 1.1 * float(r.imag.min()))
    amax = max([abs(a) for a in (box.alpha_lo, box.alpha_hi) if math.isfinite(a)] + [0.0])
    L = max(2.0, 1.2 * abs(bottom), 1.2 * math.sqrt(amax))
    return (-L, L, bottom, 0.5)


def _clip(x0, y0, x1, y1, xmin, xmax, ymin, ymax):
    """Liang-Barsky clipping; returns None if the chord misses the box."""
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0 - xmin), (dx, xmax - x0), (-dy, y0 - ymin), (dy, ymax - y0)):
        if p == 0:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            if t > t1:
                return None
            t0 = max(t0, t)
        else:
            if t < t0:
                return None
            t1 = min(t1, t)
    return x0 + t0 * dx, y0 + t0 * dy, x0 + t1 * dx, y0 + t1 * dy


class _Raster:
    def __init__(self, viewport, nx, ny):
        self.x0, self.x1, self.y0, self.y1 = viewport
        self.nx, self.ny = nx, ny
        self.hx = (self.x1 - self.x0) / nx
        self.hy = (self.y1 - self.y0) / ny
        self.mask = np.zeros((ny, nx), dtype=bool)  # row 0 is the top

    def cell(self, x, y):
        j = int(math.floor((x - self.x0) / self.hx))
        i = int(math.floor((self.y1 - y) / self.hy))
        return min(max(i, 0), self.ny - 1), min(max(j, 0), self.nx - 1)

    def chord(self, x0, y0, x1, y1):
        if not all(map(math.isfinite, (x0, y0))):
            return
        if not math.isfinite(x1) or not math.isfinite(y1):
            # ray towards infinity along the chord direction: clip far away
            big = 1e6 * (abs(self.x1) + abs(self.y1) + 1)
            x1 = math.copysign(big, x1) if math.isinf(x1) else x1
            y1 = math.copysign(big, y1) if math.isinf(y1) else y1
        c = _clip(x0, y0, x1, y1, self.x0, self.x1, self.y0, self.y1)
        if c is None:
            return
        ax, ay, bx, by = c
        i0, j0 = self.cell(ax, ay)
        i1, j1 = self.cell(bx, by)
        n = max(abs(i1 - i0), abs(j1 - j0)) + 1
        # sample densely enough that consecutive cells are 8-neighbours
        m = 2 * n + 1
        ts = np.linspace(0.0, 1.0, m)
        xs = ax + ts * (bx - ax)
        ys = ay + ts * (by - ay)
        jj = np.clip(np.floor((xs - self.x0) / self.hx).astype(int), 0, self.nx - 1)
        ii = np.clip(np.floor((self.y1 - ys) / self.hy).astype(int), 0, self.ny - 1)
        self.mask[ii, jj] = True


def rasterize_curves(curves: list[BranchCurve], viewport, nx: int, ny: int, params: ProblemParams) -> np.ndarray:
    """Mark every cell crossed by a chord between consecutive valid samples."""
    r = _Raster(viewport, nx, ny)
    for cur in curves:
        sing = _singular_lines(cur.kind, params)
        y = cur.im
        for k in range(2):
            x = cur.re[:, k]
            ok = np.isfinite(x[:-1]) & np.isfinite(x[1:])
            for s in sing:
                ok &= ~((y[:-1] < s) & (y[1:] > s))
            for i in np.flatnonzero(ok):
                for sgn in (1.0, -1.0):
                    r.chord(sgn * x[i], y[i], sgn * x[i + 1], y[i + 1])
        for a, b in cur.segments:
            r.chord(a.real, a.imag, b.real, b.imag)
    return r.mask


# ---------------------------------------------------------------------------
# region map

OUTSIDE, INSIDE, BOUNDARY = 0, 1, 2


@dataclass
class RegionMap:
    """Raster classification of a viewport.

    Attributes
    ----------
    labels : ndarray of int8, shape (ny, nx)
        0 outside, 1 inside, 2 boundary; row 0 is the top of the viewport.
    inside : ndarray of bool
        Final inside flags, boundary cells resolved pointwise.
    pointwise : ndarray of bool
        ``contains`` at the cell centres.
    components : ndarray of int
        Flood-fill component ids (0 on boundary cells).
    adjacency : dict
        Neighbouring component pairs mapped to the number of shared
        boundary cells.
    coloring : dict
        Component id -> colour assigned by the alternating algorithm.
    iterations : int
        Number of alternation rounds used by the colouring.
    agreement_pre, agreement_post : float
        Fraction of non-boundary cells whose label matches ``contains``,
        before and after the pointwise fallback.
    fallback_components : list of int
        Components relabelled by majority vote.
    fallback_cells : int
        Cells still disagreeing after the component vote and set pointwise.
    """

    viewport: tuple
    labels: np.ndarray
    inside: np.ndarray
    pointwise: np.ndarray
    components: np.ndarray
    adjacency: dict
    coloring: dict
    iterations: int
    agreement_pre: float
    agreement_post: float
    fallback_components: list
    fallback_cells: int

    def cell_centers(self) -> np.ndarray:
        return _centers(self.viewport, self.labels.shape[1], self.labels.shape[0])

    def inside_component_count(self) -> int:
        _, n = ndimage.label(self.inside, structure=np.ones((3, 3)))
        return int(n)


def _centers(viewport, nx, ny) -> np.ndarray:
    x0, x1, y0, y1 = viewport
    hx = (x1 - x0) / nx
    hy = (y1 - y0) / ny
    if x0 == -x1 and nx % 2 == 0:
        half = (np.arange(nx // 2) + 0.5) * hx
        xs = np.concatenate([-half[::-1], half])
    else:
        xs = x0 + (np.arange(nx) + 0.5) * hx
    ys = y1 - (np.arange(ny) + 0.5) * hy
    return xs[None, :] + 1j * ys[:, None]


def _adjacency(comp: np.ndarray, boundary: np.ndarray, min_shared: int = 3) -> dict:
    """Component pairs sharing at least ``min_shared`` boundary cells, with counts."""
    ny, nx = comp.shape
    pad = np.pad(comp, 1)
    bi, bj = np.nonzero(boundary)
    neigh = np.stack(
        [pad[bi + 1 + di, bj + 1 + dj] for di in (-1, 0, 1) for dj in (-1, 0, 1)], axis=1
    )
    counts: dict[tuple[int, int], int] = {}
    for row in neigh:
        labs = np.unique(row[row > 0])
        for a in range(len(labs)):
            for b in range(a + 1, len(labs)):
                key = (int(labs[a]), int(labs[b]))
                counts[key] = counts.get(key, 0) + 1
    return {k: v for k, v in counts.items() if v >= min_shared}


def classify_regions(box: OmegaBox, viewport=None, resolution=256, params: ProblemParams | None = None,
                     threads: int = 1) -> RegionMap:
    """Inside/outside raster of the enclosure by alternating colouring.

    Parameters
    ----------
    box : OmegaBox
    viewport : tuple, optional
        ``(re_lo, re_hi, im_lo, im_hi)``; defaults to ``default_viewport``.
    resolution : int or (int, int)
        Cells per side (or ``(nx, ny)``), at least 64.
    params : ProblemParams
    threads : int
        Worker threads for the pointwise membership grid.
    """
    if params is None:
        raise ValueError("params is required")
    nx, ny = (resolution, resolution) if np.isscalar(resolution) else resolution
    if min(nx, ny) < 64:
        raise ValueError("resolution must be at least 64")
    if viewport is None:
        viewport = default_viewport(box, params)
    x0, x1, y0, y1 = (float(v) for v in viewport)
    viewport = (x0, x1, y0, y1)

    span = y1 - y0
    im_grid = default_im_grid(y0 - 0.1 * span, y1 + 0.1 * span, params, max(2048, 8 * ny))
    curves = boundary_set(box, im_grid, params)
    symmetric = x0 == -x1 and nx % 2 == 0
    if symmetric:
        right = rasterize_curves(curves, (0.0, x1, y0, y1), nx // 2, ny, params)
        bmask = np.concatenate([right[:, ::-1], right], axis=1)
    else:
        bmask = rasterize_curves(curves, viewport, nx, ny, params)

    centers = _centers(viewport, nx, ny)
    pw = contains_grid(centers, box, params, threads=threads)

    comp, ncomp = ndimage.label(~bmask)
    adj = _adjacency(comp, bmask)
    nbrs: dict[int, dict] = {k: {} for k in range(1, ncomp + 1)}
    for (a, b), w in adj.items():
        nbrs[a][b] = w
        nbrs[b][a] = w

    # Alternate colours outwards from the components touching the top row.
    # Components are reached along a maximum-weight spanning tree of the
    # adjacency graph, so long shared borders win over contacts through
    # bands thinner than a cell.
    color: dict[int, int] = {}
    depth: dict[int, int] = {}
    heap: list = []
    for lab in np.unique(comp[0][comp[0] > 0]):
        color[int(lab)] = OUTSIDE
        depth[int(lab)] = 0
        for b, w in nbrs[int(lab)].items():
            heapq.heappush(heap, (-w, int(lab), b))
    while heap:
        _, a, b = heapq.heappop(heap)
        if b in color:
            continue
        color[b] = 1 - color[a]
        depth[b] = depth[a] + 1
        for c2, w in nbrs[b].items():
            if c2 not in color:
                heapq.heappush(heap, (-w, b, c2))
    iterations = max(depth.values()) if depth else 0

    sizes = ndimage.sum_labels(np.ones_like(pw, dtype=float), comp, index=np.arange(1, ncomp + 1))
    votes = ndimage.sum_labels(pw.astype(float), comp, index=np.arange(1, ncomp + 1))
    unreached = [k for k in range(1, ncomp + 1) if k not in color]
    for k in unreached:
        color[k] = INSIDE if votes[k - 1] * 2 > sizes[k - 1] else OUTSIDE

    lut = np.zeros(ncomp + 1, dtype=np.int8)
    for k, v in color.items():
        lut[k] = v
    region = lut[comp].astype(bool)
    interior = ~bmask
    n_int = max(int(interior.sum()), 1)
    agree_pre = float((region == pw)[interior].sum()) / n_int

    # pointwise fallback: majority vote per disagreeing component
    bad = np.unique(comp[interior & (region != pw)])
    fallback = [int(k) for k in bad if k > 0] + [k for k in unreached if k not in bad]
    for k in bad:
        if k == 0:
            continue
        v = INSIDE if votes[k - 1] * 2 > sizes[k - 1] else OUTSIDE
        lut[k] = v
        color[int(k)] = v
    region = lut[comp].astype(bool)
    residual = interior & (region != pw)
    n_cells = int(residual.sum())
    region = np.where(residual, pw, region)
    agree_post = float((region == pw)[interior].sum()) / n_int
    if fallback or n_cells:
        log.info("region fallback: %d components, %d cells", len(fallback), n_cells)

    labels = np.where(bmask, BOUNDARY, region.astype(np.int8)).astype(np.int8)
    inside = np.where(bmask, pw, region)
    return RegionMap(viewport, labels, inside, pw, comp, adj, color, iterations,
                     agree_pre, agree_post, sorted(set(fallback)), n_cells)

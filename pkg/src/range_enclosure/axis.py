"""Structure of the enclosure on the imaginary axis.

Axis roots of the corner quartics are split by the two box diagonals into
R1 (first diagonal, outside the pole segment N) and R2 (second diagonal,
inside N).  Points whose counting multiplicity m is odd are segment endpoints
and are paired in increasing order; even points are isolated points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    CLUSTER_RTOL,
    OmegaBox,
    ProblemParams,
    family_roots,
    poles,
    real_poly_roots,
)
from .errors import OddPairing
from .membership import axis_verdict, contains

N_RTOL = 1e-10


@dataclass(frozen=True)
class RealRootList:
    """Sorted real roots with multiplicities.

    ``admissible`` is only filled in by ``q_alpha_real_roots``; it flags the
    roots satisfying nu <= -2c/d (strict when alpha < -c).
    """

    roots: tuple[float, ...]
    multiplicities: tuple[int, ...]
    admissible: tuple[bool, ...] = ()

    @property
    def count(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> list[float]:
        return [r for r, m in zip(self.roots, self.multiplicities) for _ in range(m)]


def cluster_reals(values, rtol: float = CLUSTER_RTOL) -> list[tuple[float, int]]:
    """Cluster sorted reals: neighbours within rtol*(1+|v|) are merged.

    Infinite values only merge with equal infinities.
    """
    vals = sorted(values)
    out: list[list] = []
    for v in vals:
        if out:
            last = out[-1]
            ref = last[0][-1]
            if math.isinf(v) or math.isinf(ref):
                same = v == ref
            else:
                same = abs(v - ref) <= rtol * (1.0 + max(abs(v), abs(ref)))
            if same:
                last[0].append(v)
                continue
        out.append([[v]])
    res = []
    for (grp,) in out:
        rep = grp[0] if math.isinf(grp[0]) else float(np.mean(grp))
        res.append((rep, len(grp)))
    return res


def real_roots_of_quartic(b) -> RealRootList:
    """Real roots of z**4 + b3 z**3 + b2 z**2 + b1 z + b0 with multiplicity.

    A conjugate pair whose imaginary part is below the clustering tolerance
    is counted as a double real root.
    """
    z = real_poly_roots(np.asarray(b, dtype=float)[None, :])[0]
    near = np.abs(z.imag) <= CLUSTER_RTOL * (1.0 + np.abs(z))
    cl = cluster_reals(z.real[near].tolist())
    return RealRootList(tuple(r for r, _ in cl), tuple(m for _, m in cl))


def q_beta_coeffs(beta: float, params: ProblemParams) -> np.ndarray:
    c, d = params.c, params.d
    return np.array([2 * d, 2 * c + d * d, d * (beta / 2 + 2 * c), c * (beta + c)])


def q_alpha_coeffs(alpha: float, params: ProblemParams) -> np.ndarray:
    c, d = params.c, params.d
    return np.array([d / 2, 0.0, -alpha * d / 2, -alpha * c])


def q_beta_real_roots(beta: float, params: ProblemParams) -> RealRootList:
    """Real roots mu of q_beta; i*mu are the axis points of the fixed-beta curve."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    return real_roots_of_quartic(q_beta_coeffs(beta, params))


def q_alpha_real_roots(alpha: float, params: ProblemParams) -> RealRootList:
    """Real roots nu of q_alpha, flagging those with nu <= -2c/d.

    The inequality is strict when alpha < -c.
    """
    if alpha == 0:
        raise ValueError("alpha must be non-zero")
    rl = real_roots_of_quartic(q_alpha_coeffs(alpha, params))
    bound = -2 * params.c / params.d
    tol = CLUSTER_RTOL * (1.0 + abs(bound))
    if alpha < -params.c:
        adm = tuple(r < bound - tol for r in rl.roots)
    else:
        adm = tuple(r <= bound + tol for r in rl.roots)
    return RealRootList(rl.roots, rl.multiplicities, adm)


# ---------------------------------------------------------------------------
# corner root sets


def pole_segment(params: ProblemParams) -> tuple[float, float] | None:
    """N = [delta_-, delta_+] as an interval of mu, or None when d < 2 sqrt(c)."""
    if params.c - params.d**2 / 4 > 0:
        return None
    dp, dm, _ = poles(params)
    return (dm.imag, dp.imag)


def _in_n(mu: float, seg: tuple[float, float] | None) -> bool:
    if seg is None or math.isinf(mu):
        return False
    lo, hi = seg
    return lo - N_RTOL * (1 + abs(lo)) <= mu <= hi + N_RTOL * (1 + abs(hi))


def corner_axis_roots(alpha: float, beta: float, params: ProblemParams, drop_zero: bool = False) -> list[float]:
    """Axis roots i*mu of p at one corner, repeated by multiplicity.

    Infinite alpha contributes the poles that lie on the axis, and for
    alpha = -inf also mu = +-inf.  Infinite beta contributes the double root 0.
    With ``drop_zero`` one root at 0 is removed (the forced root when c = 0).
    """
    mus: list[float] = []
    if math.isinf(alpha):
        if pole_segment(params) is not None:
            dp, dm, _ = poles(params)
            mus += [dp.imag, dm.imag]
        if alpha < 0:
            mus += [math.inf, -math.inf]
    elif math.isinf(beta):
        mus += [0.0, 0.0]
    else:
        r = family_roots(alpha, beta, params)[0]
        on = np.abs(r.real) <= CLUSTER_RTOL * (1.0 + np.abs(r))
        mus += r.imag[on].tolist()
    if drop_zero and 0.0 in mus:
        mus.remove(0.0)
    elif drop_zero and mus:
        # the forced root may carry rounding; drop the one nearest to zero
        i = int(np.argmin(np.abs(mus)))
        if abs(mus[i]) <= CLUSTER_RTOL:
            mus.pop(i)
    return mus


@dataclass(frozen=True)
class CornerRoots:
    r1: tuple[tuple[float, int], ...]
    r2: tuple[tuple[float, int], ...]

    @property
    def multiplicity(self) -> dict[float, int]:
        return {mu: m for mu, m in self.r1 + self.r2}


def corner_root_sets(box: OmegaBox, params: ProblemParams, drop_zero: bool | None = None) -> CornerRoots:
    """Build R1 and R2 together with the counting function m.

    R1 collects the axis roots of the corners (alpha_lo, beta_lo) and
    (alpha_hi, beta_hi) outside N; R2 those of (alpha_lo, beta_hi) and
    (alpha_hi, beta_lo) inside N.  m(i mu) is the multiplicity summed over
    the two quartics of the relevant diagonal.
    """
    if drop_zero is None:
        drop_zero = params.c == 0.0
    seg = pole_segment(params)
    corners = box.corners()
    out = []
    for j, pair in enumerate((corners[:2], corners[2:])):
        pool: list[float] = []
        for a, b in pair:
            pool += corner_axis_roots(a, b, params, drop_zero)
        cl = cluster_reals(pool)
        if j == 0:
            out.append(tuple((mu, m) for mu, m in cl if not _in_n(mu, seg)))
        else:
            out.append(tuple((mu, m) for mu, m in cl if _in_n(mu, seg)))
    return CornerRoots(out[0], out[1])


@dataclass(frozen=True)
class AxisStructure:
    """Segments [i mu_a, i mu_b] and isolated points i mu on the axis.

    ``generators`` maps each endpoint or point mu to ``(diagonal, m)`` where
    diagonal is 1 or 2 (0 for the forced zero when c = 0).
    """

    segments: tuple[tuple[float, float], ...]
    isolated: tuple[float, ...]
    generators: dict = field(default_factory=dict, compare=False)

    def contains_mu(self, mu: float, rtol: float = 1e-9) -> bool:
        for a, b in self.segments:
            if a - rtol * (1 + abs(a)) <= mu <= b + rtol * (1 + abs(b)):
                return True
        return any(abs(mu - p) <= rtol * (1 + abs(p)) for p in self.isolated)

    def to_dict(self) -> dict:
        return {
            "segments": [[a, b] for a, b in self.segments],
            "isolated": list(self.isolated),
        }


def special_axis_points(params: ProblemParams) -> list[float]:
    """Axis points whose endpoint status is not settled by parity.

    These are the poles when they lie on the axis (the line coefficient k
    blows up there, and beta = 0 corners carry spurious pole roots) and, for
    c = 0, the point 0 where k changes sign.
    """
    pts: list[float] = []
    if pole_segment(params) is not None:
        dp, dm, _ = poles(params)
        pts += [dm.imag, dp.imag]
    if params.c == 0.0:
        pts.append(0.0)
    return sorted(set(pts))


def _probe(lo: float, hi: float, box: OmegaBox, params: ProblemParams) -> bool:
    """Axis membership on the open interval (lo, hi), where it is constant."""
    if math.isinf(lo) and math.isinf(hi):
        mid = -1.0
    elif math.isinf(lo):
        mid = hi - (1.0 + abs(hi))
    elif math.isinf(hi):
        mid = lo + (1.0 + abs(lo))
    else:
        mid = 0.5 * (lo + hi)
    return axis_verdict(mid, box, params).inside


def _walk(regular: list[tuple[float, int, int]], specials: list[float], box: OmegaBox,
          params: ProblemParams) -> AxisStructure:
    """Turn odd/even points into segments and isolated points.

    Odd points toggle the state, as in the pairing rule.  At special points
    the state on each side is read off the adjacent open interval; a
    mismatch with the parity state raises OddPairing.
    """
    tol = lambda a, b: abs(a - b) <= CLUSTER_RTOL * (1.0 + max(abs(a), abs(b)))
    reg = [p for p in regular if math.isinf(p[0]) or not any(tol(p[0], s) for s in specials)]
    n_odd = sum(1 for p in reg if p[1] % 2 == 1)
    if not specials and n_odd % 2:
        raise OddPairing(f"odd number ({n_odd}) of odd-multiplicity axis points")
    events = sorted([(mu, "reg", m) for mu, m, _ in reg] + [(mu, "special", 0) for mu in specials])
    cuts = [e[0] for e in events]
    segs: list[tuple[float, float]] = []
    state = False
    start = None
    for i, (mu, kind, m) in enumerate(events):
        before = state
        if kind == "reg":
            if m % 2 == 0:
                continue
            state = not state
        else:
            lo = cuts[i - 1] if i > 0 else -math.inf
            hi = cuts[i + 1] if i + 1 < len(cuts) else math.inf
            left = _probe(lo, mu, box, params) if lo != mu else state
            if left != state:
                raise OddPairing(f"parity state disagrees with the axis test below mu={mu}")
            state = _probe(mu, hi, box, params) if hi != mu else state
        if state and not before:
            start = mu
        elif before and not state:
            segs.append((start, mu))
    if state:
        raise OddPairing("unterminated axis segment")
    inside = lambda mu: any(a <= mu <= b for a, b in segs)
    iso = [mu for mu, m, _ in reg if m % 2 == 0 and not inside(mu)]
    iso += [mu for mu in specials if not inside(mu) and contains(complex(0.0, mu), box, params).inside]
    gens = {mu: (diag, m) for mu, m, diag in reg}
    gens.update({mu: (0, 0) for mu in specials})
    return AxisStructure(tuple(segs), tuple(sorted(set(iso))), gens)


def axis_segments(box: OmegaBox, params: ProblemParams) -> AxisStructure:
    """W_Omega intersected with the imaginary axis.

    Axis roots of the corner quartics are sorted; odd-multiplicity points are
    paired consecutively into segments and even ones are isolated points.
    For c = 0 the forced root 0 is factored out of every corner quartic
    before the pairing and 0 is added back at the end.
    """
    cr = corner_root_sets(box, params)
    pts = [(mu, m, 1) for mu, m in cr.r1] + [(mu, m, 2) for mu, m in cr.r2]
    return _walk(pts, special_axis_points(params), box, params)

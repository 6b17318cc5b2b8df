import math

import numpy as np
import pytest

from range_enclosure.core import OmegaBox, ProblemParams, family_roots, in_disk, DiskPosition, poles
from range_enclosure.errors import OnDiskBoundary
from range_enclosure.membership import (
    alpha_hat,
    beta_hat,
    beta_hat_xy,
    alpha_hat_xy,
    contains,
    contains_grid,
    exclusion_height,
    sign_regions,
)

from conftest import FIG_C

# the inverse maps are 0/0 at these points; round trips exclude a small
# neighbourhood around them
SINGULAR_RADIUS = 1e-3


def _off_axis_roots(rng, p, n):
    al = rng.uniform(-20, 10, n)
    be = rng.uniform(0.01, 12, n)
    R = family_roots(al, be, p)
    dp, dm, _ = poles(p)
    keep = (np.abs(R.real) > 1e-6)
    for s in (0.0, dp, dm):
        keep &= np.abs(R - s) > SINGULAR_RADIUS
    return R, al, be, keep


def test_beta_hat_examples():
    p = ProblemParams(1.0, 1.0)
    assert beta_hat(2.0 + 0j, p) == 0.0
    with pytest.raises(OnDiskBoundary):
        beta_hat(1 - 1j, p)
    assert alpha_hat(3.0 + 0j, p) == pytest.approx(9.0, rel=1e-15)


def test_alpha_hat_at_double_parameter_point():
    c, beta = 4.0, 1.0
    d = 2 * math.sqrt(beta)
    p = ProblemParams(c, d)
    w = math.sqrt(c - d * d / 16) - 1j * d / 4
    assert alpha_hat(w, p) == pytest.approx(c, rel=1e-12)
    assert beta_hat(w, p) == pytest.approx(d * d / 4, rel=1e-12)


@pytest.mark.parametrize("c,d", [(1.0, 1.0), (6.0, 4.0), (4.0, 4.0), (0.0, 2.0), (2.0, 7.0)])
def test_round_trip(rng, c, d):
    p = ProblemParams(c, d)
    R, al, be, keep = _off_axis_roots(rng, p, 3000)
    A = np.broadcast_to(al[:, None], R.shape)[keep]
    B = np.broadcast_to(be[:, None], R.shape)[keep]
    z = R[keep]
    bh = beta_hat_xy(z.real, z.imag, p)
    ah = alpha_hat_xy(z.real, z.imag, p)
    assert np.all(np.abs(bh - B) <= 1e-8 * np.maximum(1, np.abs(B)))
    assert np.all(np.abs(ah - A) <= 1e-8 * np.maximum(1, np.abs(A)))


def test_contains_axis_witness():
    p = ProblemParams(1.0, 1.0)
    v = contains(1j, OmegaBox(-2.0, -1.0, 0.0, 3.0), p)
    assert v.inside and v.witness == "axis"
    assert abs(v.alpha - (-1 - v.beta / 3)) < 1e-12


def test_special_points():
    p = ProblemParams(6.0, 4.0)
    dp, dm, _ = poles(p)
    unb = OmegaBox(1.0, math.inf, 1.0, 2.0)
    bnd = OmegaBox(1.0, 2.0, 1.0, 2.0)
    assert contains(complex(math.inf, 0), unb, p).inside
    assert not contains(complex(math.inf, 0), bnd, p).inside
    assert contains(dp, unb, p).inside and not contains(dp, bnd, p).inside
    assert contains(dm, OmegaBox(1.0, 2.0, 0.0, 2.0), p).inside
    assert not contains(0j, bnd, p).inside
    assert contains(0j, OmegaBox(-1.0, 2.0, 1.0, 2.0), p).inside
    assert contains(0j, bnd, ProblemParams(0.0, 4.0)).inside


def test_symmetry_exact(rng):
    for _ in range(200):
        p = ProblemParams(rng.uniform(0, 6), rng.uniform(0.2, 6))
        lo, hi = np.sort(rng.uniform(-20, 5, 2))
        blo, bhi = np.sort(rng.uniform(0, 10, 2))
        box = OmegaBox(lo, hi, blo, bhi)
        w = complex(*rng.uniform(-4, 4, 2))
        assert contains(w, box, p).inside == contains(-w.conjugate(), box, p).inside


def test_soundness_sampled_parameters(rng):
    p, box = FIG_C
    al = rng.uniform(box.alpha_lo, box.alpha_hi, 10_000)
    be = rng.uniform(box.beta_lo, box.beta_hi, 10_000)
    R = family_roots(al, be, p).ravel()
    assert contains_grid(R, box, p).all()


def test_grid_matches_rasterized_roots():
    # brute force: rasterize roots of a 200x200 parameter grid; every hit
    # cell must contain an enclosure point, so its centre or a neighbour is inside
    p, box = FIG_C
    al, be = np.meshgrid(np.linspace(-32, 4, 200), np.linspace(0, 4, 200))
    R = family_roots(al.ravel(), be.ravel(), p).ravel()
    vp = (-6.0, 6.0, -8.0, 1.0)
    n = 120
    hx = (vp[1] - vp[0]) / n
    hy = (vp[3] - vp[2]) / n
    ok = (R.real > vp[0]) & (R.real < vp[1]) & (R.imag > vp[2]) & (R.imag < vp[3])
    # axis roots form segments of zero width; check them directly
    on_axis = np.abs(R.real) < 1e-9
    assert contains_grid(R[ok & on_axis], box, p).all()
    R = R[ok & ~on_axis]
    j = ((R.real - vp[0]) / hx).astype(int)
    i = ((R.imag - vp[2]) / hy).astype(int)
    hit = np.zeros((n, n), bool)
    hit[i, j] = True
    xs = vp[0] + hx * (np.arange(n) + 0.5)
    ys = vp[2] + hy * (np.arange(n) + 0.5)
    W = xs[None, :] + 1j * ys[:, None]
    inside = contains_grid(W, box, p)
    grown = inside.copy()
    grown[1:] |= inside[:-1]
    grown[:-1] |= inside[1:]
    grown[:, 1:] |= inside[:, :-1]
    grown[:, :-1] |= inside[:, 1:]
    assert not (hit & ~grown).any()
    # conversely, interior cells far from the boundary are hit by some root
    core = inside.copy()
    for s in (1, -1):
        core &= np.roll(inside, s, 0) & np.roll(inside, s, 1)
    assert hit[core].mean() > 0.95


def test_sign_regions_examples():
    assert sign_regions(1 - 1j, ProblemParams(0.0, 1.0))[0]
    assert not sign_regions(1 + 1j, ProblemParams(1.0, 1.0))[0]


def test_sign_regions_match_beta_hat(rng):
    p = ProblemParams(2.0, 1.5)
    n = 0
    while n < 10_000:
        w = complex(rng.uniform(-5, 5), rng.uniform(-6, 3))
        if in_disk(w, p) is DiskPosition.ON_BOUNDARY or w.real == 0:
            continue
        n += 1
        assert (beta_hat(w, p) >= 0) == sign_regions(w, p)[0]


def test_large_imaginary_part_excluded(rng):
    p, box = FIG_C
    h = exclusion_height(box, p)
    x = rng.uniform(-50, 50, 2000)
    y = np.where(rng.random(2000) < 0.5, -1, 1) * (h + rng.uniform(0, 100, 2000))
    assert not contains_grid(x + 1j * y, box, p).any()


def test_beta_hat_asymptotics():
    p = ProblemParams(3.0, 2.0)
    y = -0.7
    for x in (1e2, 1e3, 1e4):
        assert beta_hat_xy(x, y, p) * p.d / (-2 * y * x * x) == pytest.approx(1.0, rel=50 / x)


def test_contains_grid_threads_agree():
    p, box = FIG_C
    xs = np.linspace(-6, 6, 101)
    ys = np.linspace(-8, 1, 77)
    W = xs[None, :] + 1j * ys[:, None]
    assert np.array_equal(contains_grid(W, box, p, threads=1), contains_grid(W, box, p, threads=4))


def test_roots_near_pole_for_large_alpha_are_inside():
    # roots for huge alpha approach delta_+ tangentially to the disk boundary
    p = ProblemParams(1.7931532897822355, 2.6137258408771955)
    box = OmegaBox(1.9786, math.inf, -1.0789, 1.7068)
    dp = poles(p)[0]
    for alpha in (1e3, 1e5, 3.6e5, 1e6):
        r = family_roots(alpha, 0.5, p)[0]
        near = r[np.argmin(np.abs(r - dp))]
        assert abs(near - dp) < 1e-2
        assert contains(near, box, p).inside
        assert contains_grid(np.array([near]), box, p)[0]

import math

import numpy as np
import pytest
from scipy import ndimage

from range_enclosure.axis import axis_segments
from range_enclosure.boundary import boundary_set, default_im_grid, default_viewport
from range_enclosure.core import OmegaBox, ProblemParams, eval_t
from range_enclosure.errors import PoleEvaluation
from range_enclosure.membership import contains
from range_enclosure.oracle import random_config
from range_enclosure.pseudo import (
    KappaLambda,
    epsilon0,
    epsilon0_grid,
    pseudo_axis_segments,
    pseudo_contour,
    resolvent_bound,
)

from conftest import FIG_A, FIG_C

UNIT = (ProblemParams(1.0, 1.0), OmegaBox(0.0, 1.0, 0.0, 1.0))


def brute_min(w, box, p, n):
    lo = max(box.alpha_lo, -1e3)
    hi = min(box.alpha_hi, 1e3)
    a, b = np.meshgrid(np.linspace(lo, hi, n), np.linspace(box.beta_lo, box.beta_hi, n))
    k = KappaLambda.at(w, p)
    return float(np.abs(a - k.lam - k.kappa * b).min())


def test_worked_example():
    p, box = UNIT
    k = KappaLambda.at(1j, p)
    assert k.kappa == pytest.approx(-1 / 3, abs=1e-15)
    assert k.lam == pytest.approx(-1, abs=1e-15)
    r = epsilon0(1j, box, p)
    assert r.value == 1.0
    assert (r.alpha, r.beta) == (0.0, 0.0)
    assert r.branch == "alpha_lo"
    assert resolvent_bound(1j, box, p) == 1.0


def test_inside_gives_zero_and_infinite_bound():
    p, box = FIG_C
    w = -1j
    assert contains(w, box, p).inside
    assert epsilon0(w, box, p).value == 0.0
    assert resolvent_bound(w, box, p) == math.inf


def test_pole_raises():
    p, box = FIG_C
    with pytest.raises(PoleEvaluation):
        epsilon0(-2j, box, p)


def test_argmin_attains_value(rng):
    for _ in range(300):
        p, box = random_config(rng)
        w = complex(rng.uniform(-6, 6), rng.uniform(-8, 4))
        r = epsilon0(w, box, p)
        if r.value == 0.0:
            continue
        assert abs(abs(eval_t(r.alpha, r.beta, w, p)) - r.value) <= 1e-10 * max(1.0, r.value)


def test_grid_oracle(rng):
    for _ in range(100):
        p, box = random_config(rng)
        w = complex(rng.uniform(-6, 6), rng.uniform(-8, 4))
        v = epsilon0(w, box, p).value
        g1 = brute_min(w, box, p, 100)
        g2 = brute_min(w, box, p, 199)  # nested in the 100-point grid
        assert g1 >= v - 1e-12 * (1 + v)
        assert g2 >= v - 1e-12 * (1 + v)
        assert g2 - v <= g1 - v + 1e-12


def test_symmetry_exact(rng):
    for _ in range(200):
        p, box = random_config(rng, unbounded=True)
        w = complex(rng.uniform(-6, 6), rng.uniform(-8, 4))
        assert epsilon0(w, box, p).value == epsilon0(-w.conjugate(), box, p).value


def test_lipschitz_in_alpha_translation(rng):
    for _ in range(200):
        p, box = random_config(rng)
        w = complex(rng.uniform(-6, 6), rng.uniform(-8, 4))
        s = rng.uniform(-2, 2)
        moved = OmegaBox(box.alpha_lo + s, box.alpha_hi + s, box.beta_lo, box.beta_hi)
        assert abs(epsilon0(w, box, p).value - epsilon0(w, moved, p).value) <= abs(s) + 1e-9


def test_bound_decays_like_inverse_square():
    p, box = FIG_C
    for y in (1e2, 1e3, 1e4):
        assert resolvent_bound(1j * y, box, p) * y * y == pytest.approx(1.0, rel=10 / y)


def test_grid_matches_scalar(rng):
    p, box = FIG_A
    W = rng.uniform(-6, 6, 500) + 1j * rng.uniform(-8, 2, 500)
    g = epsilon0_grid(W, box, p)
    s = np.array([epsilon0(w, box, p).value for w in W])
    assert np.array_equal(g, s)


def test_contour_vertices_on_level_set():
    p, box = FIG_A
    eps = 1.0
    lines = pseudo_contour(box, eps, default_viewport(box, p), 200, p)
    assert lines
    pts = np.concatenate(lines)
    E = epsilon0_grid(pts, box, p)
    assert np.all(np.abs(E - eps) <= 1e-6 * max(1.0, eps))


def test_contour_small_eps_hugs_boundary():
    p, box = FIG_C
    vp = default_viewport(box, p)
    res = 256
    cell = max(vp[1] - vp[0], vp[3] - vp[2]) / (res - 1)
    lines = pseudo_contour(box, 1e-3, vp, res, p)
    pts = np.concatenate(lines)
    curves = boundary_set(box, default_im_grid(vp[2], vp[3], p), p)
    bnd = [cv.all_points() for cv in curves]
    bnd += [a + (b - a) * np.linspace(0, 1, 2000) for cv in curves for a, b in cv.segments]
    bnd = np.concatenate(bnd)
    bnd = bnd[np.isfinite(bnd)]
    bnd = bnd[(bnd.real >= vp[0]) & (bnd.real <= vp[1]) & (bnd.imag >= vp[2]) & (bnd.imag <= vp[3])]
    # axis pieces of the boundary are segments; add them densely
    st = axis_segments(box, p)
    for a, b in st.segments:
        a, b = max(a, vp[2]), min(b, vp[3])
        if a < b:
            bnd = np.concatenate([bnd, 1j * np.linspace(a, b, 2000)])
    d = np.array([np.min(np.abs(bnd - z)) for z in pts[::5]])
    assert d.max() <= 2 * cell


def test_no_new_components():
    p, box = FIG_A
    vp = default_viewport(box, p)
    xs = np.linspace(vp[0], vp[1], 240)
    ys = np.linspace(vp[2], vp[3], 240)
    E = epsilon0_grid(xs[None, :] + 1j * ys[:, None], box, p)
    for eps in (0.3, 1.0, 3.0):
        lab, n = ndimage.label(E < eps, structure=np.ones((3, 3)))
        for k in range(1, n + 1):
            assert (E[lab == k] == 0).any()


def test_pseudo_axis_segments():
    p, box = FIG_C
    assert pseudo_axis_segments(box, 0.0, p) == axis_segments(box, p)
    small = pseudo_axis_segments(box, 0.5, p)
    big = pseudo_axis_segments(box, 2.0, p)
    for mu in np.linspace(-20, 20, 4001):
        if small.contains_mu(mu):
            assert big.contains_mu(mu)
    for a, b in big.segments:
        for e in (a, b):
            if math.isfinite(e) and e != 0:
                assert epsilon0(1j * e, box, p).value == pytest.approx(2.0, abs=1e-6)

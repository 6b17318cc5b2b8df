import math

import numpy as np
import pytest

from range_enclosure.axis import (
    axis_segments,
    corner_root_sets,
    pole_segment,
    q_alpha_coeffs,
    q_alpha_real_roots,
    q_beta_coeffs,
    q_beta_real_roots,
    corner_axis_roots,
)
from range_enclosure.core import OmegaBox, ProblemParams, family_roots
from range_enclosure.membership import contains, contains_grid
from range_enclosure.oracle import random_config
from range_enclosure.strip import discriminant_ds_beta

from conftest import FIG_A, FIG_B, FIG_C


def _companion_real(coeffs, tol=1e-6):
    r = np.roots(np.concatenate([[1.0], coeffs]))
    return np.sort(r[np.abs(r.imag) <= tol * (1 + np.abs(r))].real)


def axis_mismatches(st, box, p, step=1e-3, span=None):
    """Grid points where the structure and pointwise membership disagree,
    ignoring one grid step around every endpoint."""
    ends = [e for s in st.segments for e in s] + list(st.isolated)
    fin = [abs(e) for e in ends if math.isfinite(e)]
    h = span or (max(fin + [1.0]) * 1.2 + 1)
    mus = np.arange(-h, h, step)
    mus = mus[mus != 0]
    truth = contains_grid(1j * mus, box, p)
    got = np.array([st.contains_mu(m) for m in mus])
    near = np.zeros(mus.shape, bool)
    for e in ends:
        if math.isfinite(e):
            near |= np.abs(mus - e) <= 2 * step
    return int(((truth != got) & ~near).sum())


def test_q_beta_example_c0():
    p = ProblemParams(0.0, 2.0)
    r = q_beta_real_roots(4.0, p)
    ref = _companion_real(q_beta_coeffs(4.0, p))
    assert np.allclose(r.expanded(), ref, atol=1e-9)
    assert any(abs(x) < 1e-12 for x in r.roots)


def test_q_beta_below_d1_has_no_real_roots():
    p = ProblemParams(1.0, 0.1)
    assert discriminant_ds_beta(1.0, p).d1 > 0.1
    assert q_beta_real_roots(1.0, p).count == 0
    assert len(_companion_real(q_beta_coeffs(1.0, p))) == 0


def test_q_beta_double_root_at_d1():
    d1 = discriminant_ds_beta(1.0, ProblemParams(1.0, 1.0)).d1
    r = q_beta_real_roots(1.0, ProblemParams(1.0, d1))
    assert r.count == 2 and r.multiplicities == (2,)


@pytest.mark.parametrize("beta", [0.5, 1.0, 4.0, 9.0])
@pytest.mark.parametrize("c", [0.0, 1.0])
def test_q_beta_counts_follow_thresholds(beta, c):
    th = discriminant_ds_beta(beta, ProblemParams(c, 1.0))
    for d in np.linspace(0.05, 12, 100):
        p = ProblemParams(c, d)
        r = q_beta_real_roots(beta, p)
        assert r.count in (0, 2, 4)
        if min(abs(d - x) for x in (th.d1, th.d2, th.d3) if math.isfinite(x)) < 1e-3:
            continue
        assert r.count == th.q_beta_root_count(d)
        assert r.count == len(_companion_real(q_beta_coeffs(beta, p)))


def test_q_alpha_at_coincident_poles():
    c = 2.0
    p = ProblemParams(c, 2 * math.sqrt(c))
    r = q_alpha_real_roots(c, p)
    nu = -2 * c / p.d
    k = int(np.argmin([abs(x - nu) for x in r.roots]))
    assert abs(r.roots[k] - nu) < 1e-9 and r.admissible[k]
    # p at (c, 0) has the coincident poles there as a double root
    assert corner_axis_roots(c, 0.0, p).count(pytest.approx(nu, abs=1e-6)) == 2


def test_q_alpha_positive_small_d():
    p = ProblemParams(4.0, 1.0)
    r = q_alpha_real_roots(2.0, p)
    assert r.count > 0
    assert not any(r.admissible)


def test_q_alpha_c0_negative_alpha():
    r = q_alpha_real_roots(-1.0, ProblemParams(0.0, 1.0))
    assert r.count == 2
    assert np.allclose(r.expanded(), _companion_real(q_alpha_coeffs(-1.0, ProblemParams(0.0, 1.0))), atol=1e-9)


def test_pole_segment():
    assert pole_segment(ProblemParams(6.0, 4.0)) is None
    assert pole_segment(ProblemParams(4.0, 4.0)) == (-2.0, -2.0)
    lo, hi = pole_segment(ProblemParams(1.0, 4.0))
    assert lo < hi < 0


def test_corner_roots_sign_pattern():
    p = ProblemParams(1.0, 1.0)
    for a in (-2.0, -1.0):
        for b in (0.0, 3.0):
            mus = corner_axis_roots(a, b, p)
            assert sum(m > 0 for m in mus) == 1
            assert sum(m < 0 for m in mus) >= 1


def test_corner_sets_empty_n():
    cr = corner_root_sets(OmegaBox(-2.0, -1.0, 0.0, 3.0), ProblemParams(1.0, 1.0))
    assert cr.r2 == ()


def test_positive_alpha_box_has_no_upper_axis_points():
    p = ProblemParams(6.0, 4.0)
    box = OmegaBox(1.0, 2.0, 1.0, 2.0)
    st = axis_segments(box, p)
    assert all(b <= 1e-12 for _, b in st.segments)
    assert all(m <= 1e-12 for m in st.isolated)
    al, be = np.meshgrid(np.linspace(1, 2, 50), np.linspace(1, 2, 50))
    R = family_roots(al.ravel(), be.ravel(), p)
    ax = R[np.abs(R.real) < 1e-9]
    assert (ax.imag <= 1e-12).all()


@pytest.mark.parametrize("cfg", [FIG_A, FIG_B, FIG_C])
def test_figure_configs_axis(cfg):
    p, box = cfg
    st = axis_segments(box, p)
    assert axis_mismatches(st, box, p) == 0


def test_endpoints_agree_with_contains():
    p, box = FIG_C
    st = axis_segments(box, p)
    for a, b in st.segments:
        for e in (a, b):
            if math.isfinite(e) and e != 0:
                assert contains(1j * e, box, p).inside


def test_degenerate_alpha_interval_matches_corner_scan():
    p = ProblemParams(2.0, 1.0)
    box = OmegaBox(-3.0, -3.0, 0.5, 2.0)
    st = axis_segments(box, p)
    be = np.linspace(0.5, 2.0, 20001)
    R = family_roots(np.full_like(be, -3.0), be, p)
    ax = np.sort(R[np.abs(R.real) < 1e-9].imag)
    assert all(st.contains_mu(m, rtol=1e-6) for m in ax)
    assert axis_mismatches(st, box, p) == 0


def test_random_boxes(rng):
    for _ in range(10):
        p, box = random_config(rng)
        assert axis_mismatches(axis_segments(box, p), box, p, step=2e-3) == 0


def test_structure_is_well_formed(rng):
    for _ in range(30):
        p, box = random_config(rng, unbounded=True)
        st = axis_segments(box, p)
        segs = sorted(st.segments)
        for (a, b), (c, d) in zip(segs, segs[1:]):
            assert b < c
        for a, b in segs:
            assert a <= b
        for m in st.isolated:
            assert not any(a < m < b for a, b in segs)

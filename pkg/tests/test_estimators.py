"""Geometry-side estimators: box counts, dimension fits, sausage areas, content.

Verified here:

* geometric_epsilons ordering and input validation;
* box_count against hand-counted supercover oracles (single point, axis
  segment, corner-touching diagonal), NaN subpath splitting, connect=False,
  seed determinism, scale invariance, and the exact grid-nesting inequalities
  N(2 eps) <= N(eps) <= 4 N(2 eps) for halved anchored grids;
* estimate_dimension on exact power laws (recovered to machine precision),
  plateau selection across a regime crossover, the smallest-eps tiebreak,
  the inconclusive fallback on drifting slopes, and input validation;
* sausage_area against closed-form neighborhoods (disk, stadium, annulus),
  duplicate-geometry idempotence, and the raster cell cap;
* estimate_content on a unit segment: M_hat ~ 2L at the true dimension and
  the forced degenerate verdicts when d is deliberately mis-set;
* spiral_radial_analysis consistency (phi2 monotone in eps, nucleus + tail
  envelope, agreement with the raster sausage area) and validation;
* gen_chirp / gen_spiral / gen_astring invariants and budget errors.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscfract.estimators import (
    box_count,
    estimate_content,
    estimate_dimension,
    gen_astring,
    gen_chirp,
    gen_spiral,
    geometric_epsilons,
    sausage_area,
    spiral_radial_analysis,
)
from oscfract.integrals import NumericBudgetError

# --- geometric_epsilons ---


def test_epsilon_grid_is_decreasing_geometric():
    eps = geometric_epsilons(1e-1, 1e-3, 9)
    assert len(eps) == 9
    assert eps[0] == pytest.approx(1e-1) and eps[-1] == pytest.approx(1e-3)
    ratios = eps[1:] / eps[:-1]
    assert np.allclose(ratios, ratios[0])
    assert np.all(np.diff(eps) < 0)


@pytest.mark.parametrize(
    "args", [(1e-3, 1e-1, 5), (0.0, 1e-1, 5), (1e-1, -1.0, 5), (1e-1, 1e-3, 1)]
)
def test_epsilon_grid_validation(args):
    with pytest.raises(ValueError):
        geometric_epsilons(*args)


# --- box_count oracles ---


def test_single_point_occupies_one_cell():
    pts = np.array([[0.3, 0.7]])
    counts = box_count(pts, np.array([0.5, 0.1, 0.01]), offsets=1)
    assert np.all(counts == 1.0)


def test_unit_segment_cell_count_exact():
    # [0,1] x {0} at eps=0.25: grid anchored at (0,0), columns 0..4 are hit
    # (the right endpoint lands on the x=4 gridline and opens a fifth cell).
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    counts = box_count(pts, np.array([0.25]), offsets=1)
    assert counts[0] == 5.0


def test_diagonal_through_corners_counts_three_cells():
    # (0,0)->(1,1) at eps=0.5 passes exactly through cell corners; the
    # supercover keeps the touched diagonal cells only.
    pts = np.array([[0.0, 0.0], [1.0, 1.0]])
    counts = box_count(pts, np.array([0.5]), offsets=1)
    assert counts[0] == 3.0


def test_nan_row_splits_subpaths():
    # two unit segments three cells apart; the NaN row must suppress the
    # bridging segment, leaving 3 + 3 cells at eps=0.5.
    pts = np.array(
        [[0.0, 0.0], [1.0, 0.0], [np.nan, np.nan], [0.0, 3.0], [1.0, 3.0]]
    )
    counts = box_count(pts, np.array([0.5]), offsets=1)
    assert counts[0] == 6.0


def test_connect_false_counts_vertices_only():
    pts = np.array([[0.05, 0.05], [0.95, 0.05]])
    eps = np.array([0.1])
    assert box_count(pts, eps, offsets=1, connect=False)[0] == 2.0
    assert box_count(pts, eps, offsets=1, connect=True)[0] == 9.0


def test_eps_above_diameter_rejected():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        box_count(pts, np.array([2.0]))


def test_no_finite_points_rejected():
    with pytest.raises(ValueError):
        box_count(np.full((3, 2), np.nan), np.array([0.1]))


def test_offset_averaging_is_seeded():
    pts = gen_chirp(0.5, 1.0, t_min=0.05)
    eps = geometric_epsilons(0.05, 0.01, 3)
    a = box_count(pts, eps, offsets=4, seed=7)
    b = box_count(pts, eps, offsets=4, seed=7)
    assert np.array_equal(a, b)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=-8, max_value=8))
def test_counts_invariant_under_dyadic_similarity(k):
    # grid anchored at the bounding box corner: scaling points and eps by an
    # exact power of two leaves every cell assignment bit-identical.
    lam = 2.0**k
    pts = gen_chirp(0.5, 1.0, t_min=0.05)
    eps = np.array([0.04, 0.01])
    base = box_count(pts, eps, offsets=2, seed=3)
    scaled = box_count(pts * lam, eps * lam, offsets=2, seed=3)
    assert np.array_equal(base, scaled)


def test_counts_stable_under_generic_similarity():
    # non-dyadic scales can flip borderline cells through rounding, but only
    # a handful out of hundreds.
    pts = gen_chirp(0.5, 1.0, t_min=0.05)
    eps = np.array([0.04, 0.01])
    base = box_count(pts, eps, offsets=2, seed=3)
    scaled = box_count(pts * 3.7, eps * 3.7, offsets=2, seed=3)
    assert np.allclose(base, scaled, rtol=0.03)


def test_halved_grids_nest():
    # anchored cells of side eps tile those of side 2 eps exactly, so
    # N(2 eps) <= N(eps) <= 4 N(2 eps).
    pts = gen_chirp(0.5, 1.0, t_min=0.02)
    eps = 0.08 / 2.0 ** np.arange(5)
    counts = box_count(pts, eps, offsets=1)
    for coarse, fine in zip(counts[:-1], counts[1:]):
        assert coarse <= fine <= 4.0 * coarse


# --- estimate_dimension ---


def _counts_from_slopes(slopes, n0=1000.0, step=0.4):
    """Synthetic (eps, N) with prescribed local slopes on a uniform log grid."""
    x = step * np.arange(len(slopes) + 1)
    y = np.log(n0) + np.concatenate([[0.0], np.cumsum(np.asarray(slopes) * step)])
    return np.exp(-x), np.exp(y)


def test_pure_power_law_recovered_exactly():
    eps = np.geomspace(0.1, 1e-4, 12)
    counts = 3.0 * eps**-1.37
    est = estimate_dimension(eps, counts)
    assert est.d_hat == pytest.approx(1.37, abs=1e-12)
    assert not est.inconclusive
    assert est.r_squared == pytest.approx(1.0)
    assert est.fit_window == (pytest.approx(0.1), pytest.approx(1e-4))


def test_plateau_ignores_crossover_regime():
    # rectifiable shoulder (slope 1) followed by a long fractal plateau at
    # 1.5: the fit must land on the plateau, not average the two.
    eps, counts = _counts_from_slopes([1.0, 1.0, 1.0] + [1.5] * 8)
    est = estimate_dimension(eps, counts)
    assert est.d_hat == pytest.approx(1.5, abs=1e-9)
    assert not est.inconclusive
    assert est.fit_window[0] == pytest.approx(eps[3])


def test_equal_plateaus_prefer_smaller_eps():
    # two equally long runs at the median slope, split by one outlier: the
    # smallest-eps run wins because that is where asymptotics live.
    eps, counts = _counts_from_slopes([1.5] * 5 + [3.0] + [1.5] * 5)
    est = estimate_dimension(eps, counts)
    assert est.d_hat == pytest.approx(1.5, abs=1e-9)
    assert est.fit_window[0] == pytest.approx(eps[6])
    assert est.fit_window[1] == pytest.approx(eps[11])


def test_drifting_slopes_are_inconclusive():
    eps, counts = _counts_from_slopes(np.linspace(1.0, 2.0, 11))
    est = estimate_dimension(eps, counts)
    assert est.inconclusive
    # global fallback still reports the overall trend
    assert 1.3 < est.d_hat < 1.7


def test_min_run_is_honored():
    eps, counts = _counts_from_slopes([1.5] * 5 + [3.0] + [1.5] * 5)
    est = estimate_dimension(eps, counts, min_run=6)
    assert est.inconclusive


def test_too_few_pairs_rejected():
    eps = np.geomspace(0.1, 0.01, 7)
    with pytest.raises(ValueError):
        estimate_dimension(eps, eps**-1.0)


# --- sausage_area oracles ---


def test_point_neighborhood_is_a_disk():
    area = sausage_area(np.array([[0.2, -0.1]]), 0.05)
    assert area == pytest.approx(math.pi * 0.05**2, rel=0.03)


def test_segment_neighborhood_is_a_stadium():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    eps = 0.02
    area = sausage_area(pts, eps)
    assert area == pytest.approx(2.0 * eps + math.pi * eps**2, rel=0.02)


def test_circle_neighborhood_is_an_annulus():
    th = np.linspace(0.0, 2.0 * math.pi, 513)
    pts = 0.5 * np.column_stack([np.cos(th), np.sin(th)])
    eps = 0.04
    area = sausage_area(pts, eps)
    assert area == pytest.approx(4.0 * math.pi * 0.5 * eps, rel=0.03)


def test_duplicate_geometry_does_not_double_count():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    doubled = np.vstack([pts, [[np.nan, np.nan]], pts])
    assert sausage_area(doubled, 0.02) == sausage_area(pts, 0.02)


def test_raster_cap_raises_budget_error():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(NumericBudgetError):
        sausage_area(pts, 1e-4, cell_cap=10_000)


# --- estimate_content ---


def test_segment_content_at_true_dimension():
    # |A_eps| = 2 L eps + pi eps^2, so rho -> 2L at d = 1: nondegenerate with
    # M_hat close to 2.
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    eps = geometric_epsilons(2e-2, 2e-3, 8)
    est = estimate_content(pts, 1.0, eps)
    assert est.degenerate_verdict == "nondegenerate"
    assert est.M_hat == pytest.approx(2.0, rel=0.03)
    assert abs(est.log_exponent_hat) <= 0.25


def test_segment_with_understated_dimension_rises_to_infinity():
    # at d = 0.5 the normalization eps^(2-d) over-divides: rho ~ 2 eps^-0.5
    # blows up and the verdict must be degenerate-infinity.
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    eps = geometric_epsilons(2e-2, 2e-3, 8)
    est = estimate_content(pts, 0.5, eps)
    assert est.degenerate_verdict == "degenerate-infinity"
    assert est.log_exponent_hat > 0.5


def test_segment_with_overstated_dimension_falls_to_zero():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    eps = geometric_epsilons(2e-2, 2e-3, 8)
    est = estimate_content(pts, 1.5, eps)
    assert est.degenerate_verdict == "degenerate-zero"
    assert est.log_exponent_hat < -0.5


def test_content_grid_must_allow_log_log():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        estimate_content(pts, 1.0, np.array([0.5, 0.05]))


# --- spiral_radial_analysis ---


def _test_spiral(alpha=0.5, phi_max=400.0 * math.pi):
    phi1 = 1.05 * math.e
    n = int(math.ceil((phi_max - phi1) / (math.pi / 64.0))) + 1
    phi = np.linspace(phi1, phi_max, n)
    return phi, phi**-alpha


def test_radial_merge_angle_monotone_in_eps():
    phi, r = _test_spiral()
    eps = geometric_epsilons(2e-2, 2e-3, 6)
    rep = spiral_radial_analysis(phi, r, eps)
    # smaller eps -> windings merge later -> phi2 cannot decrease
    assert np.all(np.diff(rep.phi2) >= -1e-9)
    assert np.all(rep.nucleus_area > 0) and np.all(rep.tail_area >= 0)


def test_radial_area_within_nucleus_tail_envelope():
    phi, r = _test_spiral()
    eps = geometric_epsilons(2e-2, 5e-3, 4)
    rep = spiral_radial_analysis(phi, r, eps)
    upper = rep.nucleus_area + rep.tail_area
    assert np.all(rep.radial_area <= 1.05 * upper)
    assert np.all(rep.radial_area >= 0.5 * rep.nucleus_area)


def test_radial_area_matches_raster_sausage():
    # the radial neighborhood of a tightly wound spiral is close to the true
    # 2D neighborhood; the two independent constructions must agree.
    phi, r = _test_spiral()
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi)])
    eps = np.array([8e-3])
    rep = spiral_radial_analysis(phi, r, eps)
    raster = sausage_area(pts, float(eps[0]))
    assert rep.radial_area[0] == pytest.approx(raster, rel=0.15)


def test_radial_analysis_validation():
    phi, r = _test_spiral()
    eps = np.array([1e-2])
    with pytest.raises(ValueError):
        spiral_radial_analysis(phi[::-1], r[::-1], eps)
    with pytest.raises(ValueError):
        spiral_radial_analysis(phi, r[::-1], eps)


# --- synthetic generators ---


def test_chirp_endpoints_and_phase_resolution():
    pts = gen_chirp(0.5, 1.0, t_min=0.01)
    t = pts[:, 0]
    assert t[0] == 0.01 and t[-1] == 1.0
    assert np.all(np.diff(t) > 0)
    # vertex-to-vertex phase advance of sin(1/t) stays below ~1/8 radian
    assert np.max(np.abs(np.diff(1.0 / t))) <= 0.125 + 1e-6


def test_chirp_log_factor_applied():
    pts = gen_chirp(0.5, 1.0, l=2, t_min=0.01)
    t, y = pts[:, 0], pts[:, 1]
    expect = t**0.5 * np.log(1.0 / t) ** 2 * np.sin(1.0 / t)
    assert np.allclose(y, expect)


def test_chirp_validation_and_budget():
    with pytest.raises(ValueError):
        gen_chirp(1.5, 1.0)
    with pytest.raises(ValueError):
        gen_chirp(0.5, 1.0, l=-1)
    with pytest.raises(ValueError):
        gen_chirp(0.5, 1.0, t_min=2.0)
    with pytest.raises(NumericBudgetError):
        gen_chirp(0.5, 2.0, t_min=1e-4, max_points=10_000)


def test_spiral_radius_decreases_from_first_point():
    for l in (0, 1):
        pts = gen_spiral(0.5, 1.0, l=l, phi_max=50.0 * math.pi)
        radii = np.hypot(pts[:, 0], pts[:, 1])
        assert np.all(np.diff(radii) < 0)


def test_spiral_first_radius_matches_formula():
    pts = gen_spiral(0.5, 2.0, l=1, phi_max=50.0 * math.pi)
    phi1 = 1.05 * math.exp(1.0 / 0.5)
    expect = 2.0 * phi1**-0.5 * math.log(phi1)
    assert np.hypot(*pts[0]) == pytest.approx(expect, rel=1e-12)


def test_spiral_validation():
    with pytest.raises(ValueError):
        gen_spiral(0.0)
    with pytest.raises(ValueError):
        gen_spiral(0.5, m=-1.0)
    with pytest.raises(ValueError):
        gen_spiral(0.5, l=-1)
    with pytest.raises(ValueError):
        gen_spiral(0.5, phi_max=2.0 * math.pi)


def test_astring_resolves_requested_scale():
    pts = gen_astring(1.0, eps_min=1e-2)
    x = pts[:, 0]
    assert x[0] == 1.0
    assert np.all(np.diff(x) < 0)
    # omitted tail (0, K^-a) sits below eps_min / 2
    assert x[-1] <= 1e-2 / 2.0
    assert np.all(pts[:, 1] == 0.0)


def test_astring_validation_and_budget():
    with pytest.raises(ValueError):
        gen_astring(-1.0)
    with pytest.raises(ValueError):
        gen_astring(1.0, eps_min=0.0)
    with pytest.raises(NumericBudgetError):
        gen_astring(0.5, eps_min=1e-8, max_points=1000)

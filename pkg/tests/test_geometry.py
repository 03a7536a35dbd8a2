import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from gravdec.errors import DomainError
from gravdec.geometry import (
    EARTH,
    DeltaMethod,
    MetricContext,
    PathGeometry,
    delta,
    delta_exact,
    delta_series,
    delta_weak_field,
    mirror1_distance,
    redshift_factor,
    sd_shell_time_climb,
    sd_shell_time_climb_quadrature,
    shell_intervals,
    shell_time_climb,
    shell_time_climb_quadrature,
)


def test_closed_forms_match_quadrature_over_random_heights():
    rng = np.random.default_rng(20240601)
    heights = 10.0 ** rng.uniform(0.0, 7.0, size=1000)
    for h in heights:
        path = PathGeometry(float(h))
        assert shell_time_climb(EARTH, path) == pytest.approx(
            shell_time_climb_quadrature(EARTH, path), rel=1e-12
        )
        assert sd_shell_time_climb(EARTH, path) == pytest.approx(
            sd_shell_time_climb_quadrature(EARTH, path), rel=1e-12
        )


def test_closed_forms_match_quadrature_in_strong_field():
    ctx = MetricContext(mass_parameter=1.0, reference_radius=3.0)
    for h in (1e-3, 0.5, 7.0, 1e3):
        path = PathGeometry(h)
        assert shell_time_climb(ctx, path) == pytest.approx(
            shell_time_climb_quadrature(ctx, path), rel=1e-11
        )
        assert sd_shell_time_climb(ctx, path) == pytest.approx(
            sd_shell_time_climb_quadrature(ctx, path), rel=1e-11
        )


def test_zero_height_gives_zero_everywhere():
    path = PathGeometry(0.0)
    assert shell_time_climb(EARTH, path) == 0.0
    assert sd_shell_time_climb(EARTH, path) == 0.0
    assert delta_exact(EARTH, path) == 0.0
    assert delta_weak_field(EARTH, path) == 0.0
    assert delta_series(EARTH, path) == 0.0


def test_flat_limit_intervals_approach_height():
    ctx = MetricContext(mass_parameter=1e-12, reference_radius=6.38e6)
    path = PathGeometry(1e5)
    assert shell_time_climb(ctx, path) == pytest.approx(1e5, rel=1e-13)
    assert sd_shell_time_climb(ctx, path) == pytest.approx(1e5, rel=1e-13)
    assert abs(delta_exact(ctx, path)) < 1e-12


def test_weak_field_delta_at_400km():
    d = delta_weak_field(EARTH, PathGeometry(4e5))
    assert abs(d - (-1.7421e-5)) < 1e-9


def test_exact_delta_agrees_with_weak_field():
    far = PathGeometry(4e5)
    exact, weak = delta_exact(EARTH, far), delta_weak_field(EARTH, far)
    assert abs(exact - weak) / abs(weak) < 0.10
    # climbing into a weaker field delays less than the short-path estimate
    assert abs(exact) < abs(weak)

    near = PathGeometry(1e3)
    exact, weak = delta_exact(EARTH, near), delta_weak_field(EARTH, near)
    assert abs(exact - weak) / abs(weak) < 1e-3


def test_exact_delta_matches_first_order_series():
    for h in (1e2, 1e4, 4e5, 6.38e6, 5e7):
        path = PathGeometry(h)
        assert delta_exact(EARTH, path) == pytest.approx(delta_series(EARTH, path), rel=1e-6)


def test_exact_delta_matches_difference_of_closed_forms():
    path = PathGeometry(4e5)
    twice_gap = 2.0 * (mirror1_distance(EARTH, path) - shell_time_climb(EARTH, path))
    assert delta_exact(EARTH, path) == pytest.approx(twice_gap, rel=1e-4)


def test_delta_dispatches_on_method():
    path = PathGeometry(2e5)
    assert delta(EARTH, path) == delta_exact(EARTH, path)
    assert delta(EARTH, path, DeltaMethod.WEAK_FIELD) == delta_weak_field(EARTH, path)
    assert DeltaMethod("weak") is DeltaMethod.WEAK_FIELD


@given(st.floats(min_value=1e3, max_value=1e7, allow_nan=False, allow_infinity=False))
@settings(max_examples=200, deadline=None)
def test_sd_interval_never_exceeds_shell_interval(h):
    path = PathGeometry(h)
    assert sd_shell_time_climb(EARTH, path) <= shell_time_climb(EARTH, path)
    assert delta_exact(EARTH, path) <= 0.0


@given(
    st.floats(min_value=1e2, max_value=1e6, allow_nan=False, allow_infinity=False),
    st.floats(min_value=1e2, max_value=1e6, allow_nan=False, allow_infinity=False),
)
@settings(max_examples=200, deadline=None)
def test_exact_delta_is_monotone_in_height(h1, h2):
    lo, hi = sorted((h1, h2))
    assume(hi > 1.001 * lo)
    assert delta_exact(EARTH, PathGeometry(hi)) <= delta_exact(EARTH, PathGeometry(lo))


def test_weak_field_delta_scales_quadratically():
    d1 = delta_weak_field(EARTH, PathGeometry(1e5))
    d2 = delta_weak_field(EARTH, PathGeometry(2e5))
    assert d2 == pytest.approx(4.0 * d1, rel=1e-15)


def test_shell_intervals_are_reciprocal():
    ds_dt, dl_dr = shell_intervals(EARTH, EARTH.reference_radius)
    assert ds_dt * dl_dr == pytest.approx(1.0, rel=1e-15)
    assert ds_dt < 1.0 < dl_dr
    assert ds_dt == pytest.approx(math.sqrt(1.0 - 2.0 * 4.432e-3 / 6.38e6), rel=1e-15)


def test_redshift_factor():
    r_e = EARTH.reference_radius
    assert redshift_factor(EARTH, r_e, r_e) == 1.0
    # light emitted low and received high is redshifted
    assert redshift_factor(EARTH, r_e, r_e + 4e5) < 1.0
    up = redshift_factor(EARTH, r_e, r_e + 4e5)
    down = redshift_factor(EARTH, r_e + 4e5, r_e)
    assert up * down == pytest.approx(1.0, rel=1e-15)


def test_metric_context_rejects_horizon_and_bad_values():
    with pytest.raises(DomainError):
        MetricContext(mass_parameter=1.0, reference_radius=2.0)
    with pytest.raises(DomainError):
        MetricContext(mass_parameter=1.0, reference_radius=1.5)
    with pytest.raises(DomainError):
        MetricContext(mass_parameter=-1.0, reference_radius=10.0)
    with pytest.raises(DomainError):
        MetricContext(mass_parameter=4.432e-3, reference_radius=1e-3)
    with pytest.raises(DomainError):
        MetricContext(mass_parameter=float("nan"), reference_radius=10.0)


def test_horizon_check_allows_radius_just_outside():
    ctx = MetricContext(mass_parameter=1.0, reference_radius=2.0 + 1e-6)
    assert ctx.schwarzschild_radius == 2.0
    with pytest.raises(DomainError):
        shell_intervals(ctx, 2.0)


def test_path_geometry_rejects_negative_height():
    with pytest.raises(DomainError):
        PathGeometry(-1.0)
    with pytest.raises(DomainError):
        PathGeometry(float("inf"))


def test_domain_error_is_a_value_error():
    with pytest.raises(ValueError):
        PathGeometry(-5.0)


def test_metric_to_dict():
    assert EARTH.to_dict() == {"M": 4.432e-3, "re": 6.38e6}


def test_closed_form_keeps_precision_at_small_heights():
    for h in (1.55924, 9.981848376958869, 1000.7492211005434):
        path = PathGeometry(h)
        assert shell_time_climb(EARTH, path) == pytest.approx(
            shell_time_climb_quadrature(EARTH, path), rel=1e-12
        )
        assert sd_shell_time_climb(EARTH, path) <= shell_time_climb(EARTH, path)


def test_exact_delta_scales_quadratically_for_short_paths():
    d1 = delta_exact(EARTH, PathGeometry(100.0))
    d2 = delta_exact(EARTH, PathGeometry(200.0))
    assert d2 / d1 == pytest.approx(4.0, abs=1e-3)


def test_flat_limit_holds_across_heights():
    ctx = MetricContext(mass_parameter=1e-30, reference_radius=6.38e6)
    assert ctx.mass_parameter / ctx.reference_radius < 1e-15
    for h in np.logspace(0.0, 7.0, 57):
        path = PathGeometry(float(h))
        assert abs(shell_time_climb(ctx, path) - h) / h < 1e-9
        assert abs(sd_shell_time_climb(ctx, path) - h) / h < 1e-9

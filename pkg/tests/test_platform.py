"""Mechanical power models. Frozen values come from a standalone re-derivation."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aerialbs.errors import DomainError, FeasibilityError
from aerialbs.platform import (
    FixedWingParams, HapParams, MassBudget, PlatformSpec, RotorParams, fwd_propulsion_power,
    hap_avionics_power, hap_lift_coefficient, hap_propulsion_power, mechanical_power, rwd_hover_power,
)


@pytest.mark.parametrize("mass, expected", [
    (13, 1505.1755608750982),
    (16, 2026.0298673557668),
    (20, 2799.7383386871593),
    (25, 3881.0287991024356),
    (29, 4828.896135210303),
])
def test_hover_power_matches_oracle(mass, expected):
    assert rwd_hover_power(RotorParams(), mass * 9.8) == pytest.approx(expected, rel=1e-12)


def test_hover_power_at_zero_weight_is_blade_profile_only():
    assert rwd_hover_power(RotorParams(), 0.0) == pytest.approx(79.80147994942652, rel=1e-12)


@pytest.mark.parametrize("span, mass, expected", [
    (5, 55, 993.3439501214959),
    (5, 44, 824.1012228145995),
    (10, 60, 2232.771075199262),
    (10, 50, 2190.033012748025),
])
def test_fixed_wing_power_matches_oracle(span, mass, expected):
    assert fwd_propulsion_power(FixedWingParams(span), mass * 9.8) == pytest.approx(expected, rel=1e-12)


def test_straight_flight_drops_the_turn_term():
    straight = fwd_propulsion_power(FixedWingParams(5, turn_radius=math.inf), 55 * 9.8)
    assert straight == pytest.approx(963.9332998001281, rel=1e-12)
    assert straight < fwd_propulsion_power(FixedWingParams(5), 55 * 9.8)


def test_wing_area_from_span_and_aspect_ratio():
    assert FixedWingParams(10).wing_area == pytest.approx(100 / 9.5)


def test_hap_propulsion_is_drag_times_speed_over_efficiency():
    hap = HapParams(54.0)
    expected = 0.0071 * 0.08891 * 54.0 * 20**3 / (2 * 0.8)
    assert hap_propulsion_power(hap, 252 * 9.8) == pytest.approx(expected, rel=1e-12)
    assert hap_avionics_power(hap) == 132.0


@settings(max_examples=50, deadline=None)
@given(st.floats(1, 5000), st.floats(1, 5000))
def test_hap_power_does_not_depend_on_weight(m1, m2):
    hap = HapParams(120.0)
    assert hap_propulsion_power(hap, m1 * 9.8) == pytest.approx(hap_propulsion_power(hap, m2 * 9.8), rel=1e-9)


def test_hap_lift_coefficient_balances_weight():
    hap = HapParams(54.0)
    w = 252 * 9.8
    cl = hap_lift_coefficient(hap, w)
    assert 0.5 * hap.air_density * hap.speed**2 * hap.wing_area * cl == pytest.approx(w)


def test_hap_rejects_zero_weight():
    with pytest.raises(DomainError):
        hap_propulsion_power(HapParams(54.0), 0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 100), st.floats(0.01, 20))
def test_hover_power_increases_with_mass(m, dm):
    rotor = RotorParams()
    assert rwd_hover_power(rotor, (m + dm) * 9.8) > rwd_hover_power(rotor, m * 9.8)


def test_mechanical_power_dispatches_on_variant():
    spec = PlatformSpec(RotorParams(), MassBudget(8, bs_mass=3, battery_mass=5))
    assert mechanical_power(spec) == pytest.approx(2026.0298673557668, rel=1e-12)
    assert spec.kind == "rwd" and spec.category == "rwd"


def test_mass_budget_totals():
    mb = MassBudget(8, bs_mass=3, battery_mass=5, solar_panel_mass=0.114)
    assert mb.payload_mass == pytest.approx(8.114)
    assert mb.total_takeoff_mass == pytest.approx(16.114)
    assert mb.weight() == pytest.approx(16.114 * 9.8)


def test_bs_heavier_than_allowance_is_rejected():
    with pytest.raises(FeasibilityError):
        PlatformSpec(RotorParams(), MassBudget(8, bs_mass=13, max_payload=12))


@pytest.mark.parametrize("kwargs", [
    {"structural_mass": -1},
    {"structural_mass": 8, "battery_mass": float("nan")},
    {"structural_mass": 8, "max_payload": -1},
])
def test_invalid_masses_raise(kwargs):
    with pytest.raises(DomainError):
        MassBudget(**kwargs)


@pytest.mark.parametrize("factory", [
    lambda: RotorParams(rotor_radius=0),
    lambda: FixedWingParams(0),
    lambda: FixedWingParams(5, turn_radius=0),
    lambda: HapParams(54, propeller_efficiency=1.2),
    lambda: HapParams(-1),
])
def test_invalid_airframe_parameters_raise(factory):
    with pytest.raises(DomainError):
        factory()


def test_unknown_variant_rejected():
    with pytest.raises(TypeError):
        PlatformSpec(object(), MassBudget(1))

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aerialbs.endurance import (
    INDEFINITE, BatterySpec, classify_endurance, harvest_ratio, rwd_service_time, rwd_sweep,
    solar_endurance, total_power, with_payload,
)
from aerialbs.errors import DomainError
from aerialbs.payload import DeploymentMode
from aerialbs.solar import ENUGU, YORK, SolarPanel


def test_rwd_service_time_without_panel(rwd, pico):
    res = rwd_service_time(rwd, pico, BatterySpec(5, 350))
    assert res.total_power == pytest.approx(2040.0298673557668, rel=1e-12)
    assert res.service_time == pytest.approx(0.8578305778769328, rel=1e-12)
    assert res.harvested_power == 0 and not res.indefinite


def test_panel_mass_and_harvest_both_enter(rwd, pico):
    res = rwd_service_time(rwd, pico, BatterySpec(5, 350), SolarPanel(1.0), ENUGU)
    assert res.total_power == pytest.approx(2060.867189928448, rel=1e-12)
    assert res.service_time == pytest.approx(0.9193226003459902, rel=1e-12)


def test_panel_without_region_only_adds_mass(rwd, pico):
    bare = rwd_service_time(rwd, pico, BatterySpec(5, 350))
    heavy = rwd_service_time(rwd, pico, BatterySpec(5, 350), SolarPanel(1.0), None)
    assert heavy.service_time < bare.service_time


def test_rwd_service_time_rejects_other_platforms(ledger, micro):
    with pytest.raises(DomainError):
        rwd_service_time(ledger.platforms["fwd-5m"].spec, micro, BatterySpec(5, 350))


@pytest.mark.parametrize("pid, span_area, p_total, hours", [
    ("fwd-5m", 25 / 9.5, 1151.343950121496, 8.628360382896423),
    ("fwd-10m", 100 / 9.5, 2390.771075199262, 16.620931429811296),
])
def test_fixed_wing_solar_only_hours(ledger, pid, span_area, p_total, hours):
    spec = ledger.platforms[pid].spec
    res = solar_endurance(spec, ledger.bs_profiles["micro-fwd"], DeploymentMode.FULL,
                          SolarPanel(span_area), ENUGU)
    assert res.total_power == pytest.approx(p_total, rel=1e-12)
    assert res.service_time == pytest.approx(hours, rel=1e-12)
    assert res.service_time == pytest.approx(24 * res.ratio)


def test_hap_is_indefinite_and_flags_low_margin(ledger):
    spec = ledger.platforms["hap-30m"].spec
    macro = ledger.bs_profiles["macro"]
    panel = SolarPanel(90.2)
    sunny = solar_endurance(spec, macro, DeploymentMode.FULL, panel, ENUGU)
    assert sunny.ratio == pytest.approx(7.977612167886245, rel=1e-9)
    assert sunny.indefinite and sunny.service_time == INDEFINITE and not sunny.low_margin
    dim = solar_endurance(spec, macro, DeploymentMode.FULL, panel, YORK)
    assert dim.indefinite and dim.low_margin
    assert dim.robustness_margin == pytest.approx(dim.ratio - 1)


def test_harvest_ratio_definition(ledger):
    spec = ledger.platforms["hap-60m"].spec
    macro = ledger.bs_profiles["macro"]
    panel = SolarPanel(366.7)
    psi = harvest_ratio(spec, macro, DeploymentMode.SPLIT, panel, ENUGU)
    p_t = total_power(spec, macro, DeploymentMode.SPLIT)
    assert psi == pytest.approx(366.7 * 10_000 * 0.3775 / (24 * p_t))


def test_classify_boundary_at_one():
    assert math.isinf(classify_endurance(1.0, 100.0).service_time)
    assert classify_endurance(0.5, 100.0).service_time == pytest.approx(12.0)
    assert classify_endurance(0.5, 100.0, BatterySpec(1, 100)).service_time == pytest.approx(2.0)


@given(st.floats(0, 0.999), st.floats(1, 1e4), st.floats(0.1, 50), st.floats(10, 500))
def test_battery_service_time_grows_with_harvest(psi, p_total, mass, e_d):
    b = BatterySpec(mass, e_d)
    assert classify_endurance(psi, p_total, b).service_time >= classify_endurance(0.0, p_total, b).service_time


def test_with_payload_only_touches_rotary_wing(ledger, rwd):
    fwd = ledger.platforms["fwd-5m"].spec
    assert with_payload(fwd, SolarPanel(3), BatterySpec(5, 350)) == fwd
    loaded = with_payload(rwd, SolarPanel(1), BatterySpec(5, 350))
    assert loaded.mass_budget.battery_mass == 5
    assert loaded.mass_budget.solar_panel_mass == pytest.approx(0.114)


def test_sweep_grid_order_and_size(rwd, pico, micro):
    recs = rwd_sweep(rwd, [pico, micro], [5, 9], [50, 350], [0, 1], ENUGU)
    assert len(recs) == 16
    assert [r["bs"] for r in recs[:8]] == ["pico"] * 8
    assert recs[0]["takeoff_mass"] == 16 and recs[1]["takeoff_mass"] == 20
    # the heavier battery raises power but still extends service
    assert recs[1]["service_time"] > recs[0]["service_time"]
    assert recs[1]["total_power"] > recs[0]["total_power"]


def test_invalid_battery():
    with pytest.raises(DomainError):
        BatterySpec(5, 0)
    with pytest.raises(DomainError):
        BatterySpec(-1, 350)

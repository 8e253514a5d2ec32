import pytest
from hypothesis import given
from hypothesis import strategies as st

from aerialbs.errors import DomainError
from aerialbs.solar import ENUGU, YORK, SolarPanel, average_harvested_power, daily_energy, panel_mass


def test_one_square_metre_in_enugu():
    assert daily_energy(SolarPanel(1.0), ENUGU) == pytest.approx(3775.0)
    assert average_harvested_power(SolarPanel(1.0), ENUGU) == pytest.approx(157.29166666666666)


def test_york_is_fifteen_percent_of_enugu():
    p = SolarPanel(10.0)
    assert daily_energy(p, YORK) / daily_energy(p, ENUGU) == pytest.approx(0.15)


def test_panel_mass():
    assert panel_mass(SolarPanel(1.0)) == pytest.approx(0.114)
    assert panel_mass(SolarPanel(0.0)) == 0.0


@given(st.floats(0, 1000), st.floats(0, 1000))
def test_energy_linear_in_area(a, b):
    assert daily_energy(SolarPanel(a + b), ENUGU) == pytest.approx(
        daily_energy(SolarPanel(a), ENUGU) + daily_energy(SolarPanel(b), ENUGU), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("kwargs", [{"area": -1}, {"area": 1, "efficiency": 1.5}, {"area": 1, "efficiency": -0.1}])
def test_invalid_panel(kwargs):
    with pytest.raises(DomainError):
        SolarPanel(**kwargs)

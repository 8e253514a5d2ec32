"""Daily solar energy harvesting on photovoltaic panels."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, check_nonnegative

HOURS_PER_DAY = 24.0


@dataclass(frozen=True)
class SolarPanel:
    """Photovoltaic installation: area (m^2), cell efficiency, areal density (kg/m^2).

    Defaults are thin-film GaAs cells.
    """

    area: float
    efficiency: float = 0.3775
    areal_density: float = 0.114

    def __post_init__(self):
        check_nonnegative("area", self.area)
        check_nonnegative("areal_density", self.areal_density)
        eff = check_nonnegative("efficiency", self.efficiency)
        if eff > 1:
            raise DomainError(f"efficiency must be <= 1, got {eff!r}")


@dataclass(frozen=True)
class Region:
    name: str
    daily_irradiance: float  # kWh / m^2 / day

    def __post_init__(self):
        check_nonnegative("daily_irradiance", self.daily_irradiance)


ENUGU = Region("enugu", 10.0)
YORK = Region("york", 1.5)


def daily_energy(panel: SolarPanel, region: Region) -> float:
    """Energy harvested over one day, in Wh."""
    return panel.area * region.daily_irradiance * 1000.0 * panel.efficiency


def average_harvested_power(panel: SolarPanel, region: Region) -> float:
    """Daily energy spread evenly over 24 h, in W."""
    return daily_energy(panel, region) / HOURS_PER_DAY


def panel_mass(panel: SolarPanel) -> float:
    return panel.area * panel.areal_density

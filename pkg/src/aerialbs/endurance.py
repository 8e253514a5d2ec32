"""Service time and harvested-to-consumed energy ratio of aerial base stations."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, check_nonnegative, check_positive
from .payload import BsProfile, DeploymentMode, bs_comm_power, deploy
from .platform import PlatformSpec, mechanical_power
from .solar import HOURS_PER_DAY, Region, SolarPanel, average_harvested_power, daily_energy, panel_mass

INDEFINITE = math.inf
LOW_MARGIN_THRESHOLD = 1.5


@dataclass(frozen=True)
class BatterySpec:
    mass: float  # kg
    energy_density: float  # Wh/kg

    def __post_init__(self):
        check_nonnegative("mass", self.mass)
        check_positive("energy_density", self.energy_density)

    @property
    def capacity(self) -> float:
        """Stored energy in Wh."""
        return self.mass * self.energy_density


@dataclass(frozen=True)
class EnduranceResult:
    """Power balance of one configuration.

    ``service_time`` is in hours and equals ``INDEFINITE`` when the
    harvest ratio reaches 1.
    """

    total_power: float
    harvested_power: float
    ratio: float
    service_time: float
    low_margin_threshold: float = LOW_MARGIN_THRESHOLD

    @property
    def indefinite(self) -> bool:
        return math.isinf(self.service_time)

    @property
    def robustness_margin(self) -> float:
        return self.ratio - 1.0

    @property
    def low_margin(self) -> bool:
        """Nominally indefinite, but too close to break-even to rely on."""
        return self.indefinite and self.ratio < self.low_margin_threshold


def with_payload(spec: PlatformSpec, panel: SolarPanel | None = None,
                 battery: BatterySpec | None = None) -> PlatformSpec:
    """Put battery and panel masses into a rotary-wing payload."""
    # Only rotary-wing payloads carry battery and panels; other platforms
    # account for them in the structural mass.
    if spec.kind == "rwd":
        changes = {}
        if panel is not None:
            changes["solar_panel_mass"] = panel_mass(panel)
        if battery is not None:
            changes["battery_mass"] = battery.mass
        if changes:
            spec = spec.with_masses(**changes)
    return spec


def total_power(spec: PlatformSpec, profile: BsProfile,
                mode: DeploymentMode = DeploymentMode.FULL) -> float:
    """Mechanical power with the BS on board plus BS communication power (W)."""
    return mechanical_power(deploy(spec, profile)) + bs_comm_power(profile, mode)


def classify_endurance(ratio: float, total_power: float, battery: BatterySpec | None = None,
                       low_margin_threshold: float = LOW_MARGIN_THRESHOLD) -> EnduranceResult:
    """Turn a harvest ratio into a service time.

    Without a battery the platform is solar-only and serves ``24 * ratio``
    hours. With a battery the stored energy is drained by the power deficit
    ``total_power - harvested``. A ratio of 1 or more is indefinite.
    """
    check_nonnegative("ratio", ratio)
    check_positive("total_power", total_power)
    harvested = ratio * total_power
    if ratio >= 1:
        t = INDEFINITE
    elif battery is None:
        t = HOURS_PER_DAY * ratio
    else:
        t = battery.capacity / (total_power - harvested)
    return EnduranceResult(total_power, harvested, ratio, t, low_margin_threshold)


def harvest_ratio(spec: PlatformSpec, profile: BsProfile, mode: DeploymentMode,
                  panel: SolarPanel, region: Region) -> float:
    """Daily harvested energy over daily consumed energy."""
    p_total = total_power(with_payload(spec, panel), profile, mode)
    if p_total <= 0:
        raise DomainError("total power must be positive")
    return daily_energy(panel, region) / (HOURS_PER_DAY * p_total)


def rwd_service_time(spec: PlatformSpec, profile: BsProfile, battery: BatterySpec,
                     panel: SolarPanel | None = None, region: Region | None = None,
                     mode: DeploymentMode = DeploymentMode.FULL,
                     low_margin_threshold: float = LOW_MARGIN_THRESHOLD) -> EnduranceResult:
    """Battery-limited service time of a rotary-wing ABS.

    Battery and panel masses are added to the payload before the hover
    power is evaluated, so a heavier battery also raises consumption.
    """
    if spec.kind != "rwd":
        raise DomainError(f"rwd_service_time needs a rotary-wing platform, got {spec.kind}")
    p_total = total_power(with_payload(spec, panel, battery), profile, mode)
    if p_total <= 0:
        raise DomainError("total power must be positive")
    p_sol = 0.0
    if panel is not None and region is not None:
        p_sol = average_harvested_power(panel, region)
    return classify_endurance(p_sol / p_total, p_total, battery, low_margin_threshold)


def solar_endurance(spec: PlatformSpec, profile: BsProfile, mode: DeploymentMode,
                    panel: SolarPanel, region: Region,
                    low_margin_threshold: float = LOW_MARGIN_THRESHOLD) -> EnduranceResult:
    """Endurance of a solar-only platform (fixed-wing drone or HAP)."""
    p_total = total_power(with_payload(spec, panel), profile, mode)
    psi = harvest_ratio(spec, profile, mode, panel, region)
    return classify_endurance(psi, p_total, None, low_margin_threshold)


def rwd_sweep(spec: PlatformSpec, profiles: Sequence[BsProfile], battery_masses: Iterable[float],
              energy_densities: Iterable[float], panel_areas: Iterable[float],
              region: Region, panel: SolarPanel = SolarPanel(0.0),
              mode: DeploymentMode = DeploymentMode.FULL) -> list[dict]:
    """Evaluate service time over a profile x E_d x panel area x battery mass grid.

    Records come back in grid order, one dict per point.
    """
    records = []
    grid = itertools.product(profiles, list(energy_densities), list(panel_areas), list(battery_masses))
    for profile, e_d, area, m_b in grid:
        pv = SolarPanel(area, panel.efficiency, panel.areal_density)
        battery = BatterySpec(m_b, e_d)
        res = rwd_service_time(spec, profile, battery, pv, region, mode)
        loaded = deploy(with_payload(spec, pv, battery), profile)
        records.append({
            "bs": profile.name or profile.bs_class.value,
            "energy_density": e_d,
            "panel_area": area,
            "battery_mass": m_b,
            "takeoff_mass": loaded.mass_budget.total_takeoff_mass,
            "total_power": res.total_power,
            "harvested_power": res.harvested_power,
            "ratio": res.ratio,
            "service_time": res.service_time,
        })
    return records

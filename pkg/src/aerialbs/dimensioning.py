"""Fleet size and backup-battery counts for covering a service area."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .coverage import DEFAULT_SEED, ChannelEnvironment, CoverageResult, coverage_radius
from .endurance import BatterySpec, with_payload, total_power
from .errors import DomainError, check_positive
from .payload import BsProfile, DeploymentMode
from .platform import PlatformSpec


@dataclass(frozen=True)
class ServiceArea:
    area: float  # km^2

    def __post_init__(self):
        check_positive("area", self.area)


@dataclass(frozen=True)
class ChargingStation:
    charging_power: float  # W

    def __post_init__(self):
        check_positive("charging_power", self.charging_power)


def _ceil(x: float) -> int:
    # absorb rounding noise so an exact ratio of 2 does not become 3
    return math.ceil(round(x, 9))


def num_abs(area: ServiceArea, coverage_radius: float) -> int:
    """Number of circular cells of radius ``coverage_radius`` (m) needed for the area."""
    r = check_positive("coverage_radius", coverage_radius)
    return _ceil(area.area * 1e6 / (math.pi * r * r))


def num_backup_batteries(total_power: float, station: ChargingStation) -> int:
    """Batteries per ABS for continuous hot-swapping.

    Charging time over service time reduces to total power over charging
    power, so battery capacity drops out.
    """
    p = check_positive("total_power", total_power)
    return _ceil(p / station.charging_power)


@dataclass(frozen=True)
class DimensioningPoint:
    battery_mass: float
    total_power: float
    n_backup_batteries: int
    total_batteries: int
    total_battery_mass: float


@dataclass(frozen=True)
class DimensioningReport:
    coverage: CoverageResult
    n_abs: int
    points: tuple[DimensioningPoint, ...] = field(default_factory=tuple)

    @property
    def coverage_radius(self) -> float:
        return self.coverage.radius

    @property
    def n_backup_batteries_per_abs(self) -> tuple[int, int]:
        counts = [p.n_backup_batteries for p in self.points]
        return min(counts), max(counts)

    @property
    def total_batteries(self) -> tuple[int, int]:
        counts = [p.total_batteries for p in self.points]
        return min(counts), max(counts)

    @property
    def total_battery_mass(self) -> tuple[float, float]:
        masses = [p.total_battery_mass for p in self.points]
        return min(masses), max(masses)


def dimension(spec: PlatformSpec, profile: BsProfile, area: ServiceArea, station: ChargingStation,
              battery_masses: Iterable[float], energy_density: float = 350.0,
              env: ChannelEnvironment = ChannelEnvironment(), altitude: float = 100.0,
              reliability: float = 0.99, samples: int = 10_000, seed: int = DEFAULT_SEED,
              radius_step: float = 1.0, mode: DeploymentMode = DeploymentMode.FULL,
              coverage: CoverageResult | None = None) -> DimensioningReport:
    """Coverage radius, fleet size and battery counts over a battery-mass sweep.

    Pass ``coverage`` to reuse an existing radius instead of running the
    Monte Carlo search again.
    """
    if coverage is None:
        if profile.tx_power is None or profile.rx_sensitivity is None:
            raise DomainError(f"profile {profile.name or profile.bs_class.value} has no tx_power/rx_sensitivity")
        coverage = coverage_radius(profile.tx_power, profile.rx_sensitivity, altitude, env,
                                   reliability, samples, seed, radius_step)
    if not coverage.covered:
        raise DomainError(f"no coverage: {coverage.diagnostic}")
    n_abs = num_abs(area, coverage.radius)
    points = []
    for m_b in battery_masses:
        battery = BatterySpec(m_b, energy_density)
        p_total = total_power(with_payload(spec, battery=battery), profile, mode)
        n_bb = num_backup_batteries(p_total, station)
        points.append(DimensioningPoint(m_b, p_total, n_bb, n_abs * n_bb, n_abs * n_bb * m_b))
    if not points:
        raise DomainError("battery_masses must not be empty")
    return DimensioningReport(coverage, n_abs, tuple(points))

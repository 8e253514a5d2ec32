"""Mechanical power of rotary-wing drones, fixed-wing drones and fixed-wing HAPs.

Every power function takes the platform weight in newtons (mass times
``GRAVITY``) and returns watts.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, FeasibilityError, check_finite, check_nonnegative, check_positive

GRAVITY = 9.8  # m/s^2


@dataclass(frozen=True)
class MassBudget:
    """Take-off mass split into structure and payload items (all kg).

    ``max_payload`` is the base-station allowance of the platform. Battery
    and solar panel masses add to take-off mass but are not charged against
    it.
    """

    structural_mass: float
    bs_mass: float = 0.0
    battery_mass: float = 0.0
    solar_panel_mass: float = 0.0
    max_payload: float = math.inf

    def __post_init__(self):
        for f in ("structural_mass", "bs_mass", "battery_mass", "solar_panel_mass"):
            check_nonnegative(f, getattr(self, f))
        if math.isnan(self.max_payload) or self.max_payload < 0:
            raise DomainError(f"max_payload must be >= 0, got {self.max_payload!r}")

    @property
    def payload_mass(self) -> float:
        return self.bs_mass + self.battery_mass + self.solar_panel_mass

    @property
    def total_takeoff_mass(self) -> float:
        return self.structural_mass + self.payload_mass

    def weight(self, g: float = GRAVITY) -> float:
        """Take-off weight in newtons."""
        return self.total_takeoff_mass * g


@dataclass(frozen=True)
class RotorParams:
    profile_drag_coeff: float = 0.012
    correction_factor: float = 0.1
    air_density: float = 1.225
    rotor_solidity: float = 0.05
    rotor_radius: float = 0.4
    angular_velocity: float = 300.0

    def __post_init__(self):
        check_nonnegative("profile_drag_coeff", self.profile_drag_coeff)
        check_nonnegative("correction_factor", self.correction_factor)
        check_nonnegative("rotor_solidity", self.rotor_solidity)
        check_positive("air_density", self.air_density)
        check_positive("rotor_radius", self.rotor_radius)
        check_positive("angular_velocity", self.angular_velocity)

    @property
    def disc_area(self) -> float:
        return math.pi * self.rotor_radius**2


@dataclass(frozen=True)
class FixedWingParams:
    """Drag-polar parameters of a fixed-wing drone in a steady circular orbit.

    ``turn_radius`` may be ``math.inf`` for straight and level flight.
    """

    wingspan: float
    aspect_ratio: float = 9.5
    zero_lift_drag_coeff: float = 0.0447
    oswald_efficiency: float = 0.7548
    air_density: float = 1.112
    speed: float = 20.0
    turn_radius: float = 158.0
    gravity: float = GRAVITY

    def __post_init__(self):
        for f in ("wingspan", "aspect_ratio", "zero_lift_drag_coeff", "oswald_efficiency",
                  "air_density", "speed", "gravity"):
            check_positive(f, getattr(self, f))
        check_positive("turn_radius", self.turn_radius, allow_inf=True)

    @property
    def wing_area(self) -> float:
        return self.wingspan**2 / self.aspect_ratio


@dataclass(frozen=True)
class HapParams:
    wing_area: float
    drag_coeff: float = 0.0071
    propeller_efficiency: float = 0.8
    air_density: float = 0.08891
    speed: float = 20.0
    avionics_mass: float = 22.0
    avionics_power_ratio: float = 6.0  # W/kg

    def __post_init__(self):
        for f in ("wing_area", "drag_coeff", "air_density", "speed"):
            check_positive(f, getattr(self, f))
        eta = check_positive("propeller_efficiency", self.propeller_efficiency)
        if eta > 1:
            raise DomainError(f"propeller_efficiency must be <= 1, got {eta!r}")
        check_nonnegative("avionics_mass", self.avionics_mass)
        check_nonnegative("avionics_power_ratio", self.avionics_power_ratio)


Variant = Union[RotorParams, FixedWingParams, HapParams]

_KINDS = {RotorParams: "rwd", FixedWingParams: "fwd", HapParams: "hap"}


@dataclass(frozen=True)
class PlatformSpec:
    """An airframe plus its mass budget.

    ``category`` keys the compatibility matrix (``rwd``, ``fwd``,
    ``hap-heavy``, ``hap-light``); it defaults to the variant kind.
    """

    variant: Variant
    mass_budget: MassBudget
    name: str = ""
    category: str = ""

    def __post_init__(self):
        if type(self.variant) not in _KINDS:
            raise TypeError(f"unsupported platform variant {type(self.variant).__name__}")
        if not self.category:
            object.__setattr__(self, "category", self.kind)
        mb = self.mass_budget
        if mb.bs_mass > mb.max_payload:
            raise FeasibilityError(
                f"{self.name or self.kind}: bs_mass {mb.bs_mass} kg exceeds max_payload {mb.max_payload} kg"
            )

    @property
    def kind(self) -> str:
        return _KINDS[type(self.variant)]

    def with_masses(self, **changes) -> "PlatformSpec":
        """Copy with some mass-budget fields replaced."""
        return dataclasses.replace(self, mass_budget=dataclasses.replace(self.mass_budget, **changes))


def rwd_hover_power(rotor: RotorParams, weight: float) -> float:
    """Hover power of a rotary-wing drone: blade profile plus induced power."""
    weight = check_nonnegative("weight", weight)
    area = rotor.disc_area
    rho = rotor.air_density
    profile = (rotor.profile_drag_coeff / 8) * rho * rotor.rotor_solidity * area \
        * rotor.angular_velocity**3 * rotor.rotor_radius**3
    induced = (1 + rotor.correction_factor) * weight**1.5 / math.sqrt(2 * rho * area)
    return profile + induced


def fwd_coefficients(fw: FixedWingParams, weight: float) -> tuple[float, float]:
    """Return ``(c1, c2)`` of the fixed-wing power model; c2 scales with weight squared."""
    weight = check_nonnegative("weight", weight)
    area = fw.wing_area
    c1 = 0.5 * fw.air_density * fw.zero_lift_drag_coeff * area
    c2 = 2 * weight**2 / (math.pi * fw.oswald_efficiency * fw.aspect_ratio * fw.air_density * area)
    return c1, c2


def fwd_propulsion_power(fw: FixedWingParams, weight: float) -> float:
    """Propulsion power of a fixed-wing drone at speed V on a circle of radius r."""
    c1, c2 = fwd_coefficients(fw, weight)
    v = fw.speed
    turn = 0.0 if math.isinf(fw.turn_radius) else c2 / (fw.gravity**2 * fw.turn_radius**2)
    return (c1 + turn) * v**3 + c2 / v


def hap_lift_coefficient(hap: HapParams, weight: float) -> float:
    return 2 * weight / (hap.air_density * hap.speed**2 * hap.wing_area)


def hap_propulsion_power(hap: HapParams, weight: float) -> float:
    """Propulsion power of a fixed-wing HAP in level flight.

    The lift coefficient is derived from the weight, so the weight cancels
    and the result equals ``C_D * rho * A_w * V**3 / (2 * eta_p)``.
    """
    weight = check_positive("weight", weight)
    cl = hap_lift_coefficient(hap, weight)
    return hap.drag_coeff / (hap.propeller_efficiency * cl**1.5) \
        * math.sqrt(2 * weight**3 / (hap.air_density * hap.wing_area))


def hap_avionics_power(hap: HapParams) -> float:
    return hap.avionics_mass * hap.avionics_power_ratio


def mechanical_power(spec: PlatformSpec) -> float:
    """Mechanical power at the spec's total take-off weight (avionics included for HAPs)."""
    weight = spec.mass_budget.weight()
    v = spec.variant
    if isinstance(v, RotorParams):
        p = rwd_hover_power(v, weight)
    elif isinstance(v, FixedWingParams):
        p = fwd_propulsion_power(v, weight)
    else:
        p = hap_propulsion_power(v, weight) + hap_avionics_power(v)
    return check_finite("mechanical power", p)

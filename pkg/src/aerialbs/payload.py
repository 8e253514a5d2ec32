"""Base-station communication power, backhaul overhead and payload feasibility."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .errors import DomainError, FeasibilityError, check_nonnegative, check_positive
from .platform import PlatformSpec, mechanical_power


class BsClass(str, enum.Enum):
    PICO = "pico"
    MICRO = "micro"
    MACRO = "macro"
    SPLIT = "split"


class DeploymentMode(str, enum.Enum):
    FULL = "full"
    SPLIT = "split"


@dataclass(frozen=True)
class BsProfile:
    """A base-station class with its mass and per-component power draw (W).

    ``tx_power`` (W) and ``rx_sensitivity`` (dBm) are only needed when the
    profile is used for coverage analysis.
    """

    bs_class: BsClass
    mass: float
    p_bb: float
    p_rf: float
    p_pa: float
    p_oh: float
    tx_power: float | None = None
    rx_sensitivity: float | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "bs_class", BsClass(self.bs_class))
        check_positive("mass", self.mass)
        for f in ("p_bb", "p_rf", "p_pa", "p_oh"):
            check_nonnegative(f, getattr(self, f))
        if self.tx_power is not None:
            check_positive("tx_power", self.tx_power)
        if self.rx_sensitivity is not None and math.isnan(self.rx_sensitivity):
            raise DomainError("rx_sensitivity must not be NaN")


def bs_comm_power(profile: BsProfile, mode: DeploymentMode = DeploymentMode.FULL) -> float:
    """Communication power of the flying part of the base station.

    Baseband power is dropped in split mode and always for split-class
    profiles, whose baseband unit stays on the ground.
    """
    mode = DeploymentMode(mode)
    radio = profile.p_rf + profile.p_pa + profile.p_oh
    if mode is DeploymentMode.SPLIT or profile.bs_class is BsClass.SPLIT:
        return radio
    return profile.p_bb + radio


def backhaul_power(service_link_power: float, fraction: float = 0.1) -> float:
    check_nonnegative("service_link_power", service_link_power)
    if not 0 <= fraction <= 0.1:
        raise DomainError(f"backhaul fraction must lie in [0, 0.1], got {fraction!r}")
    return fraction * service_link_power


class Verdict(str, enum.Enum):
    FEASIBLE_AND_COMPATIBLE = "feasible_and_compatible"
    FEASIBLE_ONLY = "feasible_only"
    INFEASIBLE = "infeasible"


class Feasibility(NamedTuple):
    verdict: Verdict
    reason: str

    @property
    def feasible(self) -> bool:
        return self.verdict is not Verdict.INFEASIBLE


# platform category -> BS classes that meet that platform's coverage role
DEFAULT_COMPATIBILITY: dict[str, frozenset[BsClass]] = {
    "rwd": frozenset({BsClass.PICO, BsClass.MICRO}),
    "fwd": frozenset({BsClass.MICRO}),
    "hap-heavy": frozenset({BsClass.MACRO}),
    "hap-light": frozenset({BsClass.SPLIT}),
}


def check_feasibility(
    spec: PlatformSpec,
    profile: BsProfile,
    compatibility: Mapping[str, frozenset[BsClass] | set[BsClass]] | None = None,
) -> Feasibility:
    """Classify a platform/BS pairing by payload mass and the compatibility matrix."""
    allowance = spec.mass_budget.max_payload
    label = spec.name or spec.category
    if profile.mass > allowance:
        return Feasibility(
            Verdict.INFEASIBLE,
            f"{profile.bs_class.value} BS mass {profile.mass:g} kg exceeds {label} payload allowance {allowance:g} kg",
        )
    matrix = DEFAULT_COMPATIBILITY if compatibility is None else compatibility
    allowed = {BsClass(c) for c in matrix.get(spec.category, ())}
    if profile.bs_class in allowed:
        return Feasibility(Verdict.FEASIBLE_AND_COMPATIBLE, f"{profile.bs_class.value} fits and is compatible with {label}")
    return Feasibility(
        Verdict.FEASIBLE_ONLY,
        f"{profile.bs_class.value} fits {label} but does not meet its coverage role",
    )


def deploy(spec: PlatformSpec, profile: BsProfile) -> PlatformSpec:
    """Mount ``profile`` on ``spec`` and return the loaded platform.

    Rotary-wing platforms carry the BS at its own mass. Fixed-wing drones
    and HAPs are flown at full payload utilisation, so the whole payload
    allowance is charged once a BS is on board.
    """
    verdict = check_feasibility(spec, profile)
    if not verdict.feasible:
        raise FeasibilityError(verdict.reason)
    mb = spec.mass_budget
    if spec.kind == "rwd" or math.isinf(mb.max_payload):
        return spec.with_masses(bs_mass=profile.mass)
    return spec.with_masses(bs_mass=mb.max_payload)


def strip_bs(spec: PlatformSpec) -> PlatformSpec:
    return spec.with_masses(bs_mass=0.0)


class CombinedPower(NamedTuple):
    excess_mechanical: float
    comm: float

    @property
    def total(self) -> float:
        return self.excess_mechanical + self.comm


def combined_bs_power(
    spec: PlatformSpec, profile: BsProfile, mode: DeploymentMode = DeploymentMode.FULL
) -> CombinedPower:
    """Extra mechanical power caused by the BS mass, plus its communication power."""
    loaded = deploy(spec, profile)
    excess = mechanical_power(loaded) - mechanical_power(strip_bs(spec))
    return CombinedPower(excess, bs_comm_power(profile, mode))

"""Probabilistic air-to-ground path loss and Monte Carlo coverage radius.

Elevation angles are in degrees throughout, including inside the LoS
probability and the elevation-dependent spread of the excess loss.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.stats import norm

from .errors import DomainError, check_finite, check_nonnegative, check_positive

DEFAULT_SEED = 42


@dataclass(frozen=True)
class ChannelEnvironment:
    """Frequency (MHz) and LoS/NLoS statistics of the air-to-ground channel.

    Defaults are the urban environment at 2 GHz.
    """

    frequency: float = 2000.0
    mean_los: float = 1.0
    mean_nlos: float = 20.0
    sigma_scale_los: float = 10.39
    sigma_scale_nlos: float = 29.6
    sigma_decay_los: float = 0.05
    sigma_decay_nlos: float = 0.03
    los_coeff: float = 0.6
    los_exp: float = 0.11
    theta0: float = 15.0
    name: str = "urban-2000MHz"

    def __post_init__(self):
        check_positive("frequency", self.frequency)
        check_finite("mean_los", self.mean_los)
        check_finite("mean_nlos", self.mean_nlos)
        check_positive("sigma_scale_los", self.sigma_scale_los)
        check_positive("sigma_scale_nlos", self.sigma_scale_nlos)
        check_nonnegative("sigma_decay_los", self.sigma_decay_los)
        check_nonnegative("sigma_decay_nlos", self.sigma_decay_nlos)
        check_nonnegative("los_coeff", self.los_coeff)
        check_nonnegative("los_exp", self.los_exp)
        t0 = check_nonnegative("theta0", self.theta0)
        if t0 >= 90:
            raise DomainError(f"theta0 must lie in [0, 90), got {t0!r}")
        if self.los_coeff * (90.0 - t0) ** self.los_exp > 1 + 1e-12:
            raise DomainError("LoS probability at 90 degrees exceeds 1")

    def sigma_los(self, theta):
        return self.sigma_scale_los * np.exp(-self.sigma_decay_los * np.asarray(theta, dtype=float))

    def sigma_nlos(self, theta):
        return self.sigma_scale_nlos * np.exp(-self.sigma_decay_nlos * np.asarray(theta, dtype=float))


@dataclass(frozen=True)
class LinkGeometry:
    altitude: float
    ground_range: float

    def __post_init__(self):
        check_positive("altitude", self.altitude)
        check_nonnegative("ground_range", self.ground_range)

    @property
    def slant_distance(self) -> float:
        return math.hypot(self.altitude, self.ground_range)

    @property
    def elevation(self) -> float:
        """Elevation seen from the ground user, degrees in (0, 90]."""
        return math.degrees(math.atan2(self.altitude, self.ground_range))


@dataclass(frozen=True)
class CoverageResult:
    radius: float
    outage_at_radius: float
    samples_per_point: int
    seed: int
    reliability: float
    covered: bool = True
    diagnostic: str = ""


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def watts_to_dbm(power: float) -> float:
    return 10.0 * math.log10(check_positive("power", power) * 1000.0)


def fspl_db(distance, frequency: float):
    """Free-space path loss in dB for distance in metres and frequency in MHz."""
    d = np.asarray(distance, dtype=float)
    if np.any(d <= 0) or frequency <= 0:
        raise DomainError("distance and frequency must be positive")
    return _scalar_or_array(20 * np.log10(d) + 20 * math.log10(frequency) - 27.55)


def free_space_path_loss(geom: LinkGeometry, frequency: float) -> float:
    return fspl_db(geom.slant_distance, frequency)


def los_probability(env: ChannelEnvironment, theta):
    """Probability of line of sight at elevation ``theta`` (degrees).

    Zero at and below ``theta0``; clipped to [0, 1] above it.
    """
    t = np.asarray(theta, dtype=float)
    excess = np.clip(t - env.theta0, 0.0, None)
    p = np.where(t > env.theta0, env.los_coeff * excess**env.los_exp, 0.0)
    return _scalar_or_array(np.clip(p, 0.0, 1.0))


def mean_excess_path_loss(env: ChannelEnvironment, theta):
    """Expected excess loss (dB): LoS/NLoS means weighted by their probabilities."""
    p = los_probability(env, theta)
    return _scalar_or_array(env.mean_los * p + env.mean_nlos * (1 - np.asarray(p)))


def excess_loss_sample(env: ChannelEnvironment, theta: float, rng: np.random.Generator,
                       size: int | None = None):
    """Draw excess loss (dB): pick LoS with its probability, then a Gaussian.

    The Gaussian is unbounded, so negative values (a net gain) can occur.
    """
    p = los_probability(env, theta)
    u = rng.random(size)
    z = rng.standard_normal(size)
    los = u < p
    mu = np.where(los, env.mean_los, env.mean_nlos)
    sigma = np.where(los, env.sigma_los(theta), env.sigma_nlos(theta))
    return _scalar_or_array(mu + sigma * z)


def received_power(tx_power_dbm: float, geom: LinkGeometry, env: ChannelEnvironment, excess_db):
    """Received power in dBm after free-space and excess loss."""
    return tx_power_dbm - free_space_path_loss(geom, env.frequency) - excess_db


def outage_probability(tx_power_dbm: float, rx_sensitivity: float, geom: LinkGeometry,
                       env: ChannelEnvironment) -> float:
    """Closed-form P(P_rx <= P_min) from the two-component Gaussian mixture."""
    theta = geom.elevation
    p = los_probability(env, theta)
    margin = tx_power_dbm - free_space_path_loss(geom, env.frequency) - rx_sensitivity
    los = norm.sf((margin - env.mean_los) / float(env.sigma_los(theta)))
    nlos = norm.sf((margin - env.mean_nlos) / float(env.sigma_nlos(theta)))
    return float(p * los + (1 - p) * nlos)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def scan_radii(altitude: float, env: ChannelEnvironment, radius_step: float = 1.0,
               max_radius: float | None = None) -> np.ndarray:
    """Ground ranges from directly below the platform out to elevation ``theta0``."""
    check_positive("radius_step", radius_step)
    if max_radius is None:
        if env.theta0 <= 0:
            raise DomainError("max_radius is required when theta0 is 0")
        max_radius = altitude / math.tan(math.radians(env.theta0))
    n = int(math.floor(max_radius / radius_step + 1e-9))
    return np.arange(n + 1) * radius_step


def empirical_outage(tx_power_dbm: float, rx_sensitivity: float, altitude: float,
                     env: ChannelEnvironment, radii, samples: int = 10_000,
                     seed: int = DEFAULT_SEED) -> np.ndarray:
    """Monte Carlo outage fraction at each radius.

    Radius ``i`` draws from its own stream seeded by ``(seed, i)``, so every
    threshold sees the same channel realisations.
    """
    seed = _check_seed(seed)
    out = np.empty(len(radii))
    for i, r in enumerate(radii):
        geom = LinkGeometry(altitude, float(r))
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        excess = excess_loss_sample(env, geom.elevation, rng, samples)
        prx = received_power(tx_power_dbm, geom, env, excess)
        out[i] = 1.0 - np.count_nonzero(prx > rx_sensitivity) / samples
    return out


def coverage_radius(tx_power: float, rx_sensitivity: float, altitude: float,
                    env: ChannelEnvironment = ChannelEnvironment(), reliability: float = 0.99,
                    samples: int = 10_000, seed: int = DEFAULT_SEED, radius_step: float = 1.0,
                    max_radius: float | None = None) -> CoverageResult:
    """Largest ground range whose empirical reliability exceeds ``reliability``.

    ``tx_power`` is in W and ``rx_sensitivity`` in dBm. The scan covers every
    radius from 0 to the ``theta0`` horizon and keeps the farthest compliant
    one; empirical reliability is noisy, so this is not a bisection.
    """
    if not 0 < reliability < 1:
        raise DomainError(f"reliability must lie in (0, 1), got {reliability!r}")
    if samples < 1:
        raise DomainError("samples must be >= 1")
    radii = scan_radii(altitude, env, radius_step, max_radius)
    outage = empirical_outage(watts_to_dbm(tx_power), rx_sensitivity, altitude, env,
                              radii, samples, seed)
    ok = np.flatnonzero(1.0 - outage > reliability)
    if ok.size == 0:
        return CoverageResult(
            0.0, float(outage[0]), samples, seed, reliability, covered=False,
            diagnostic=f"reliability {reliability} not met even directly below the platform "
                       f"(outage {outage[0]:.4f})",
        )
    i = int(ok[-1])
    return CoverageResult(float(radii[i]), float(outage[i]), samples, seed, reliability)


def calibrate_sensitivity(tx_power: float, target_radius: float, altitude: float,
                          env: ChannelEnvironment = ChannelEnvironment(),
                          reliability: float = 0.99) -> float:
    """Receiver sensitivity (dBm) giving exactly the target outage at ``target_radius``.

    Uses the closed-form outage, so Monte Carlo noise plays no part.
    """
    geom = LinkGeometry(altitude, target_radius)
    tx = watts_to_dbm(tx_power)
    base = tx - free_space_path_loss(geom, env.frequency)
    target = 1.0 - reliability
    return brentq(lambda pmin: outage_probability(tx, pmin, geom, env) - target,
                  base - 500.0, base + 500.0, xtol=1e-10)

"""Power, solar endurance, coverage and dimensioning models for aerial base stations."""
from .coverage import (
    ChannelEnvironment, CoverageResult, LinkGeometry, calibrate_sensitivity, coverage_radius,
    excess_loss_sample, free_space_path_loss, los_probability, mean_excess_path_loss,
    outage_probability, received_power, watts_to_dbm,
)
from .dimensioning import ChargingStation, DimensioningReport, ServiceArea, dimension, num_abs, num_backup_batteries
from .endurance import (
    BatterySpec, EnduranceResult, classify_endurance, harvest_ratio, rwd_service_time, solar_endurance,
    total_power,
)
from .errors import ConfigError, DomainError, FeasibilityError
from .payload import (
    BsClass, BsProfile, DeploymentMode, Verdict, backhaul_power, bs_comm_power, check_feasibility,
    combined_bs_power,
)
from .platform import (
    GRAVITY, FixedWingParams, HapParams, MassBudget, PlatformSpec, RotorParams, fwd_propulsion_power,
    hap_avionics_power, hap_propulsion_power, mechanical_power, rwd_hover_power,
)
from .solar import ENUGU, YORK, Region, SolarPanel, average_harvested_power, daily_energy, panel_mass

__version__ = "0.1.0"

"""Scenario files: parsing, validation against the defaults ledger, and execution.

Scenario and ledger files are YAML. Quantities are written as
``"<number> <unit>"`` strings (``"5 kg"``, ``"-113.25 dBm"``); a value with
the wrong unit, or a bare number where a unit is required, is a validation
error rather than a silent conversion.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping

import yaml

from .coverage import DEFAULT_SEED, ChannelEnvironment, coverage_radius
from .dimensioning import ChargingStation, ServiceArea, dimension
from .endurance import (
    LOW_MARGIN_THRESHOLD, BatterySpec, rwd_service_time, solar_endurance, with_payload,
)
from .errors import ConfigError, DomainError, FeasibilityError
from .payload import (
    BsClass, BsProfile, DeploymentMode, backhaul_power, bs_comm_power, check_feasibility, deploy,
    strip_bs,
)
from .platform import FixedWingParams, HapParams, MassBudget, PlatformSpec, RotorParams, mechanical_power
from .solar import Region, SolarPanel, daily_energy

log = logging.getLogger(__name__)

_REQUIRED = object()
ANALYSES = ("power", "endurance", "coverage", "dimension")


@dataclass(frozen=True)
class _F:
    unit: str | None = None
    default: Any = _REQUIRED
    check: str | None = None  # "pos", "nonneg"


def _format_value(raw) -> str:
    return repr(raw) if not isinstance(raw, str) else f"'{raw}'"


def parse_quantity(raw, unit: str | None, key: str, errors: list[str]) -> float | None:
    """Parse ``raw`` as a number in ``unit`` (``None`` for dimensionless)."""
    if isinstance(raw, bool):
        errors.append(f"{key}: expected a number, got {raw!r}")
        return None
    if isinstance(raw, (int, float)):
        if unit is not None:
            errors.append(f"{key}: missing unit, write it as '{raw} {unit}'")
            return None
        return float(raw)
    if not isinstance(raw, str):
        errors.append(f"{key}: expected a quantity, got {_format_value(raw)}")
        return None
    parts = raw.split()
    try:
        value = float(parts[0]) if parts else None
    except ValueError:
        value = None
    if value is None or len(parts) > 2:
        errors.append(f"{key}: cannot parse quantity {_format_value(raw)}")
        return None
    got = parts[1] if len(parts) == 2 else None
    if got != unit:
        if unit is None:
            errors.append(f"{key}: expected a dimensionless number, got unit '{got}'")
        elif got is None:
            errors.append(f"{key}: missing unit, write it as '{parts[0]} {unit}'")
        else:
            errors.append(f"{key}: expected unit '{unit}', got '{got}'")
        return None
    return value


def _parse_fields(raw: Any, fields: Mapping[str, _F], prefix: str, errors: list[str],
                  extra: Iterable[str] = ()) -> dict[str, Any] | None:
    if not isinstance(raw, Mapping):
        errors.append(f"{prefix}: expected a mapping, got {_format_value(raw)}")
        return None
    allowed = set(fields) | set(extra) | {"derivation"}
    for k in raw:
        if k not in allowed:
            errors.append(f"{prefix}.{k}: unknown key")
    out = {}
    for name, f in fields.items():
        key = f"{prefix}.{name}"
        if name not in raw or raw[name] is None:
            if f.default is _REQUIRED:
                errors.append(f"{key}: required")
            else:
                out[name] = f.default
            continue
        value = parse_quantity(raw[name], f.unit, key, errors)
        if value is None:
            continue
        if math.isnan(value) or (math.isinf(value) and f.check is not None):
            errors.append(f"{key}: must be finite, got {_format_value(raw[name])}")
        elif f.check == "pos" and value <= 0:
            errors.append(f"{key}: must be > 0, got {_format_value(raw[name])}")
        elif f.check == "nonneg" and value < 0:
            errors.append(f"{key}: must be >= 0, got {_format_value(raw[name])}")
        else:
            out[name] = value
    return out


def _build(factory: Callable, kwargs: dict | None, prefix: str, errors: list[str]):
    if kwargs is None:
        return None
    try:
        return factory(**kwargs)
    except TypeError:
        return None  # a field already failed and was reported
    except (DomainError, FeasibilityError) as exc:
        errors.append(f"{prefix}: {exc}")
        return None


_ROTOR = {
    "profile_drag_coeff": _F(None, 0.012, "nonneg"),
    "correction_factor": _F(None, 0.1, "nonneg"),
    "air_density": _F("kg_per_m3", 1.225, "pos"),
    "rotor_solidity": _F(None, 0.05, "nonneg"),
    "rotor_radius": _F("m", 0.4, "pos"),
    "angular_velocity": _F("rad_per_s", 300.0, "pos"),
}
_WING = {
    "wingspan": _F("m", check="pos"),
    "aspect_ratio": _F(None, 9.5, "pos"),
    "zero_lift_drag_coeff": _F(None, 0.0447, "pos"),
    "oswald_efficiency": _F(None, 0.7548, "pos"),
    "air_density": _F("kg_per_m3", 1.112, "pos"),
    "speed": _F("m_per_s", 20.0, "pos"),
    "turn_radius": _F("m", 158.0),
    "gravity": _F("m_per_s2", 9.8, "pos"),
}
_HAP = {
    "wing_area": _F("m2", check="pos"),
    "drag_coeff": _F(None, 0.0071, "pos"),
    "propeller_efficiency": _F(None, 0.8, "pos"),
    "air_density": _F("kg_per_m3", 0.08891, "pos"),
    "speed": _F("m_per_s", 20.0, "pos"),
    "avionics_mass": _F("kg", 22.0, "nonneg"),
    "avionics_power_ratio": _F("W_per_kg", 6.0, "nonneg"),
}
_PLATFORM = {
    "structural_mass": _F("kg", check="nonneg"),
    "max_payload": _F("kg", math.inf, "nonneg"),
    "panel_area": _F("m2", None, "nonneg"),
}
_VARIANTS = {
    "rotary-wing": ("rotor", _ROTOR, RotorParams),
    "fixed-wing": ("wing", _WING, FixedWingParams),
    "hap": ("hap", _HAP, HapParams),
}
_PROFILE = {
    "mass": _F("kg", check="pos"),
    "p_bb": _F("W", check="nonneg"),
    "p_rf": _F("W", check="nonneg"),
    "p_pa": _F("W", check="nonneg"),
    "p_oh": _F("W", check="nonneg"),
    "tx_power": _F("W", None, "pos"),
    "rx_sensitivity": _F("dBm", None),
}
_PANEL = {
    "efficiency": _F(None, 0.3775, "nonneg"),
    "areal_density": _F("kg_per_m2", 0.114, "nonneg"),
}
_REGION = {"daily_irradiance": _F("kWh_per_m2_day", check="nonneg")}
_ENV = {
    "frequency": _F("MHz", check="pos"),
    "mean_los": _F("dB"),
    "mean_nlos": _F("dB"),
    "sigma_scale_los": _F(None, check="pos"),
    "sigma_scale_nlos": _F(None, check="pos"),
    "sigma_decay_los": _F("per_deg", check="nonneg"),
    "sigma_decay_nlos": _F("per_deg", check="nonneg"),
    "los_coeff": _F(None, check="nonneg"),
    "los_exp": _F(None, check="nonneg"),
    "theta0": _F("deg", check="nonneg"),
}


@dataclass(frozen=True)
class PlatformEntry:
    spec: PlatformSpec
    panel_area: float | None  # None -> wing area for fixed-wing drones, else 0


def _parse_platform(raw, name: str, prefix: str, errors: list[str]) -> PlatformEntry | None:
    if not isinstance(raw, Mapping):
        errors.append(f"{prefix}: expected a mapping")
        return None
    kind = raw.get("kind")
    if kind not in _VARIANTS:
        errors.append(f"{prefix}.kind: must be one of {sorted(_VARIANTS)}, got {_format_value(kind)}")
        return None
    section, fields, factory = _VARIANTS[kind]
    base = _parse_fields(raw, _PLATFORM, prefix, errors, extra=("kind", "category", section))
    params = _parse_fields(raw.get(section, {}), fields, f"{prefix}.{section}", errors)
    variant = _build(factory, params, f"{prefix}.{section}", errors)
    if base is None or variant is None or "structural_mass" not in base or "max_payload" not in base:
        return None
    budget = MassBudget(base["structural_mass"], max_payload=base["max_payload"])
    spec = _build(PlatformSpec, dict(variant=variant, mass_budget=budget, name=name,
                                     category=str(raw.get("category") or "")), prefix, errors)
    if spec is None:
        return None
    return PlatformEntry(spec, base.get("panel_area"))


def _parse_profile(raw, name: str, prefix: str, errors: list[str]) -> BsProfile | None:
    if not isinstance(raw, Mapping):
        errors.append(f"{prefix}: expected a mapping")
        return None
    cls = raw.get("class")
    if cls not in {c.value for c in BsClass}:
        errors.append(f"{prefix}.class: must be one of {[c.value for c in BsClass]}, got {_format_value(cls)}")
        return None
    kw = _parse_fields(raw, _PROFILE, prefix, errors, extra=("class",))
    if kw is None:
        return None
    return _build(BsProfile, dict(kw, bs_class=BsClass(cls), name=name), prefix, errors)


def _parse_region(raw, name: str, prefix: str, errors: list[str]) -> Region | None:
    kw = _parse_fields(raw, _REGION, prefix, errors, extra=("name",))
    if kw is None:
        return None
    return _build(Region, dict(kw, name=str(raw.get("name", name))), prefix, errors)


def _parse_env(raw, name: str, prefix: str, errors: list[str]) -> ChannelEnvironment | None:
    kw = _parse_fields(raw, _ENV, prefix, errors, extra=("name",))
    if kw is None:
        return None
    return _build(ChannelEnvironment, dict(kw, name=str(raw.get("name", name))), prefix, errors)


def _parse_panel_type(raw, name: str, prefix: str, errors: list[str]) -> dict | None:
    return _parse_fields(raw, _PANEL, prefix, errors)


@dataclass
class Ledger:
    """Named defaults that scenarios refer to, with their derivation notes."""

    platforms: dict[str, PlatformEntry] = field(default_factory=dict)
    bs_profiles: dict[str, BsProfile] = field(default_factory=dict)
    panels: dict[str, dict] = field(default_factory=dict)
    regions: dict[str, Region] = field(default_factory=dict)
    environments: dict[str, ChannelEnvironment] = field(default_factory=dict)
    compatibility: dict[str, frozenset[BsClass]] = field(default_factory=dict)
    derivations: dict[str, str] = field(default_factory=dict)
    version: int = 0

    def explain(self, section: str, name: str) -> str:
        return self.derivations.get(f"{section}.{name}", "")


_SECTIONS = {
    "platforms": _parse_platform,
    "bs_profiles": _parse_profile,
    "panels": _parse_panel_type,
    "regions": _parse_region,
    "environments": _parse_env,
}


def _load_yaml(text: str, source: str):
    try:
        return yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ConfigError(f"{source}: parse error at {where}: {exc.problem or exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"{source}: parse error: {exc}") from exc


def parse_ledger(data: Mapping, source: str = "<ledger>") -> Ledger:
    errors: list[str] = []
    if not isinstance(data, Mapping):
        raise ConfigError(f"{source}: expected a mapping at top level")
    ledger = Ledger(version=int(data.get("version", 0)))
    for section, parser in _SECTIONS.items():
        entries = data.get(section) or {}
        target = getattr(ledger, section)
        for name, raw in entries.items():
            value = parser(raw, name, f"{section}.{name}", errors)
            if value is not None:
                target[name] = value
            if isinstance(raw, Mapping) and raw.get("derivation"):
                ledger.derivations[f"{section}.{name}"] = " ".join(str(raw["derivation"]).split())
    for category, classes in (data.get("compatibility") or {}).items():
        try:
            ledger.compatibility[category] = frozenset(BsClass(c) for c in classes)
        except (ValueError, TypeError):
            errors.append(f"compatibility.{category}: unknown BS class in {classes!r}")
    if errors:
        raise ConfigError(errors)
    return ledger


_default_ledger: Ledger | None = None


def load_ledger(path: str | Path | None = None) -> Ledger:
    """Load a ledger file; with no path, the bundled one (cached)."""
    global _default_ledger
    if path is None:
        if _default_ledger is None:
            text = resources.files("aerialbs").joinpath("data/provenance.yaml").read_text("utf-8")
            _default_ledger = parse_ledger(_load_yaml(text, "provenance.yaml"), "provenance.yaml")
        return _default_ledger
    path = Path(path)
    return parse_ledger(_load_yaml(path.read_text("utf-8"), str(path)), str(path))


@dataclass(frozen=True)
class MonteCarloControls:
    seed: int = DEFAULT_SEED
    samples: int = 10_000
    radius_step: float = 1.0
    reliability: float = 0.99


@dataclass(frozen=True)
class BatterySweep:
    masses: tuple[float, ...] = (5.0, 6.0, 7.0, 8.0, 9.0)
    energy_densities: tuple[float, ...] = (50.0, 180.0, 350.0)
    panel_areas: tuple[float, ...] = (0.0, 0.5, 1.0)


@dataclass(frozen=True)
class ScenarioConfig:
    id: str
    platform: PlatformSpec
    profile: BsProfile
    mode: DeploymentMode = DeploymentMode.FULL
    battery: BatterySpec | None = None
    sweep: BatterySweep | None = None
    panel: SolarPanel | None = None
    region: Region | None = None
    channel: ChannelEnvironment | None = None
    altitude: float = 100.0
    service_area: ServiceArea | None = None
    station: ChargingStation | None = None
    monte_carlo: MonteCarloControls = MonteCarloControls()
    backhaul_fraction: float = 0.0
    low_margin_threshold: float = LOW_MARGIN_THRESHOLD
    compatibility: Mapping[str, frozenset[BsClass]] | None = None


_TOP_KEYS = {
    "id", "description", "platform", "bs_profile", "mode", "battery", "battery_sweep", "solar",
    "coverage", "dimensioning", "monte_carlo", "backhaul_fraction", "low_margin_threshold",
}


def _resolve(raw, section: str, ledger: Ledger, key: str, errors: list[str], parser):
    """A scenario reference is either a ledger name or an inline definition."""
    table = getattr(ledger, section)
    if isinstance(raw, str):
        if raw not in table:
            errors.append(f"{key}: unknown {section[:-1].replace('_', ' ')} '{raw}' "
                          f"(known: {', '.join(sorted(table))})")
            return None
        note = ledger.explain(section, raw)
        log.info("default %s = %s%s", key, raw, f" [{note}]" if note else "")
        return table[raw]
    if isinstance(raw, Mapping):
        return parser(raw, str(raw.get("name", key)), key, errors)
    errors.append(f"{key}: expected a name or a mapping, got {_format_value(raw)}")
    return None


def _quantity_list(raw, unit: str, key: str, errors: list[str]) -> tuple[float, ...] | None:
    if not isinstance(raw, list) or not raw:
        errors.append(f"{key}: expected a non-empty list")
        return None
    values = []
    for i, item in enumerate(raw):
        v = parse_quantity(item, unit, f"{key}[{i}]", errors)
        if v is not None and v < 0:
            errors.append(f"{key}[{i}]: must be >= 0, got {_format_value(item)}")
        values.append(v)
    if any(v is None or v < 0 for v in values):
        return None
    return tuple(values)


def parse_scenario(data: Any, ledger: Ledger | None = None, source: str = "<scenario>") -> ScenarioConfig:
    """Validate a scenario mapping, resolve ledger references and apply defaults.

    Raises ``ConfigError`` listing every violation found.
    """
    ledger = ledger or load_ledger()
    if not isinstance(data, Mapping):
        raise ConfigError(f"{source}: expected a mapping at top level")
    errors: list[str] = []
    for k in data:
        if k not in _TOP_KEYS:
            errors.append(f"{k}: unknown key")

    sid = data.get("id")
    if not isinstance(sid, str) or not sid:
        errors.append("id: required, a non-empty string")

    entry = None
    if "platform" not in data:
        errors.append("platform: required")
    else:
        entry = _resolve(data["platform"], "platforms", ledger, "platform", errors, _parse_platform)
    profile = None
    if "bs_profile" not in data:
        errors.append("bs_profile: required")
    else:
        profile = _resolve(data["bs_profile"], "bs_profiles", ledger, "bs_profile", errors, _parse_profile)

    mode = DeploymentMode.FULL
    if "mode" in data:
        try:
            mode = DeploymentMode(data["mode"])
        except ValueError:
            errors.append(f"mode: must be 'full' or 'split', got {_format_value(data['mode'])}")

    battery = None
    if "battery" in data:
        kw = _parse_fields(data["battery"], {"mass": _F("kg", check="nonneg"),
                                             "energy_density": _F("Wh_per_kg", check="pos")},
                           "battery", errors)
        battery = _build(BatterySpec, kw, "battery", errors)

    sweep = None
    if "battery_sweep" in data:
        raw = data["battery_sweep"]
        if not isinstance(raw, Mapping):
            errors.append("battery_sweep: expected a mapping")
        else:
            for k in raw:
                if k not in ("masses", "energy_densities", "panel_areas"):
                    errors.append(f"battery_sweep.{k}: unknown key")
            defaults = BatterySweep()
            parts = {}
            for k, unit in (("masses", "kg"), ("energy_densities", "Wh_per_kg"), ("panel_areas", "m2")):
                parts[k] = (_quantity_list(raw[k], unit, f"battery_sweep.{k}", errors)
                            if k in raw else getattr(defaults, k))
            if any(v == 0 for v in (parts["energy_densities"] or ())):
                errors.append("battery_sweep.energy_densities: values must be > 0")
            if all(v is not None for v in parts.values()):
                sweep = BatterySweep(**parts)

    panel = region = None
    if "solar" in data:
        raw = data["solar"]
        if not isinstance(raw, Mapping):
            errors.append("solar: expected a mapping")
        else:
            for k in raw:
                if k not in ("panel", "area", "region"):
                    errors.append(f"solar.{k}: unknown key")
            ptype = _resolve(raw.get("panel", "gaas"), "panels", ledger, "solar.panel", errors,
                             _parse_panel_type)
            area = None
            if "area" in raw:
                area = parse_quantity(raw["area"], "m2", "solar.area", errors)
                if area is not None and area < 0:
                    errors.append(f"solar.area: must be >= 0, got {_format_value(raw['area'])}")
                    area = None
            elif entry is not None:
                area = entry.panel_area
                if area is None and isinstance(entry.spec.variant, FixedWingParams):
                    area = entry.spec.variant.wing_area
                area = area or 0.0
                log.info("default solar.area = %.4g m2 (platform %s)", area, entry.spec.name)
            if ptype is not None and area is not None:
                panel = _build(SolarPanel, dict(ptype, area=area), "solar", errors)
            if "region" in raw:
                region = _resolve(raw["region"], "regions", ledger, "solar.region", errors, _parse_region)

    channel = None
    altitude = 100.0
    if "coverage" in data:
        raw = data["coverage"]
        kw = _parse_fields(raw, {"altitude": _F("m", 100.0, "pos")}, "coverage", errors, extra=("channel",))
        if kw is not None:
            altitude = kw.get("altitude", 100.0)
            channel = _resolve(raw.get("channel", "urban-2000MHz"), "environments", ledger,
                               "coverage.channel", errors, _parse_env)

    area = station = None
    if "dimensioning" in data:
        kw = _parse_fields(data["dimensioning"], {"service_area": _F("km2", check="pos"),
                                                  "charging_power": _F("W", check="pos")},
                           "dimensioning", errors)
        if kw is not None and len(kw) == 2:
            area = ServiceArea(kw["service_area"])
            station = ChargingStation(kw["charging_power"])

    mc = MonteCarloControls()
    if "monte_carlo" in data:
        raw = data["monte_carlo"]
        if not isinstance(raw, Mapping):
            errors.append("monte_carlo: expected a mapping")
        else:
            for k in raw:
                if k not in ("seed", "samples", "radius_step", "reliability"):
                    errors.append(f"monte_carlo.{k}: unknown key")
            seed = raw.get("seed", DEFAULT_SEED)
            if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
                errors.append(f"monte_carlo.seed: must be an unsigned 64-bit integer, got {_format_value(seed)}")
                seed = DEFAULT_SEED
            samples = raw.get("samples", 10_000)
            if isinstance(samples, bool) or not isinstance(samples, int) or samples < 1:
                errors.append(f"monte_carlo.samples: must be a positive integer, got {_format_value(samples)}")
                samples = 10_000
            step = 1.0
            if "radius_step" in raw:
                step = parse_quantity(raw["radius_step"], "m", "monte_carlo.radius_step", errors)
                if step is not None and not step > 0:
                    errors.append("monte_carlo.radius_step: must be > 0")
                step = step if step and step > 0 else 1.0
            rel = raw.get("reliability", 0.99)
            if isinstance(rel, bool) or not isinstance(rel, (int, float)) or not 0 < rel < 1:
                errors.append(f"monte_carlo.reliability: must lie in (0, 1), got {_format_value(rel)}")
                rel = 0.99
            mc = MonteCarloControls(seed, samples, step, float(rel))
    if "seed" not in (data.get("monte_carlo") or {}):
        log.info("default monte_carlo.seed = %d", DEFAULT_SEED)

    backhaul = 0.0
    if "backhaul_fraction" in data:
        v = parse_quantity(data["backhaul_fraction"], None, "backhaul_fraction", errors)
        if v is not None and not 0 <= v <= 0.1:
            errors.append(f"backhaul_fraction: must lie in [0, 0.1], got {v!r}")
        elif v is not None:
            backhaul = v

    low_margin = LOW_MARGIN_THRESHOLD
    if "low_margin_threshold" in data:
        v = parse_quantity(data["low_margin_threshold"], None, "low_margin_threshold", errors)
        if v is not None and v < 1:
            errors.append("low_margin_threshold: must be >= 1")
        elif v is not None:
            low_margin = v

    if entry is not None and profile is not None:
        verdict = check_feasibility(entry.spec, profile, ledger.compatibility or None)
        if not verdict.feasible:
            errors.append(f"bs_profile: {verdict.reason}")

    if errors:
        raise ConfigError([f"{source}: {e}" for e in errors])

    return ScenarioConfig(
        id=sid, platform=entry.spec, profile=profile, mode=mode, battery=battery, sweep=sweep,
        panel=panel, region=region, channel=channel, altitude=altitude, service_area=area,
        station=station, monte_carlo=mc, backhaul_fraction=backhaul,
        low_margin_threshold=low_margin, compatibility=ledger.compatibility or None,
    )


def bundled_scenarios() -> list[str]:
    root = resources.files("aerialbs").joinpath("data/scenarios")
    return sorted(p.name[: -len(".scenario")] for p in root.iterdir() if p.name.endswith(".scenario"))


def scenario_path(name_or_path: str | Path) -> Path:
    """Resolve a bundled scenario name (``rwd-pico``) or a filesystem path."""
    p = Path(name_or_path)
    if p.exists():
        return p
    name = p.name[: -len(".scenario")] if p.name.endswith(".scenario") else p.name
    bundled = resources.files("aerialbs").joinpath(f"data/scenarios/{name}.scenario")
    if bundled.is_file():
        return Path(str(bundled))
    raise ConfigError(f"{name_or_path}: no such scenario file or bundled scenario")


def load_scenario(path: str | Path, ledger: Ledger | None = None) -> ScenarioConfig:
    path = scenario_path(path)
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    return parse_scenario(_load_yaml(text, str(path)), ledger, str(path))


@dataclass(frozen=True)
class ReportRow:
    """One computed figure.

    ``series``/``x`` place the value on a plot series (x is usually take-off
    mass); ``note`` says which model produced it.
    """

    scenario: str
    metric: str
    value: float
    unit: str
    note: str = ""
    series: str = ""
    x: float | None = None
    x_name: str = ""

    def __post_init__(self):
        if not self.unit:
            raise ValueError(f"{self.metric}: unit is required")
        if not math.isfinite(self.value):
            raise ValueError(f"{self.metric}: value must be finite, got {self.value!r}")


def _power_rows(cfg: ScenarioConfig) -> list[ReportRow]:
    spec = with_payload(cfg.platform, cfg.panel, cfg.battery)
    verdict = check_feasibility(spec, cfg.profile, cfg.compatibility)
    loaded = deploy(spec, cfg.profile)
    p_with = mechanical_power(loaded)
    p_without = mechanical_power(strip_bs(spec))
    comm = bs_comm_power(cfg.profile, cfg.mode)
    total = p_with + comm
    r = lambda metric, value, unit, note: ReportRow(cfg.id, metric, value, unit, note)  # noqa: E731
    rows = [
        r("takeoff_mass", loaded.mass_budget.total_takeoff_mass, "kg", "structure + payload"),
        r("compatible", float(verdict.verdict.value == "feasible_and_compatible"), "flag", verdict.reason),
        r("mechanical_power_without_bs", p_without, "W", "platform mechanical model without BS mass"),
        r("mechanical_power", p_with, "W", "platform mechanical model with BS on board"),
        r("excess_mechanical_power", p_with - p_without, "W", "mechanical power caused by BS mass"),
        r("comm_power", comm, "W", f"BS component sum ({cfg.mode.value} deployment)"),
        r("combined_bs_power", p_with - p_without + comm, "W", "excess mechanical + comm"),
        r("total_power", total, "W", "mechanical + comm"),
        r("share_without_bs", 100 * p_without / total, "%", "power without BS over total"),
        r("share_combined", 100 * (total - p_without) / total, "%", "combined BS power over total"),
    ]
    if cfg.backhaul_fraction > 0:
        bh = backhaul_power(comm, cfg.backhaul_fraction)
        rows += [
            r("backhaul_power", bh, "W", f"{cfg.backhaul_fraction:g} x service-link power"),
            r("total_power_with_backhaul", total + bh, "W", "total + backhaul"),
        ]
    return rows


def _endurance_rows(cfg: ScenarioConfig) -> list[ReportRow]:
    r = lambda metric, value, unit, note: ReportRow(cfg.id, metric, value, unit, note)  # noqa: E731
    rows = []
    if cfg.platform.kind == "rwd":
        if cfg.battery is None:
            raise ConfigError(f"{cfg.id}: endurance of a rotary-wing platform needs a battery section")
        res = rwd_service_time(cfg.platform, cfg.profile, cfg.battery, cfg.panel, cfg.region, cfg.mode,
                               cfg.low_margin_threshold)
        note = "battery energy over (total - harvested) power"
    else:
        if cfg.panel is None or cfg.region is None:
            raise ConfigError(f"{cfg.id}: endurance of a solar platform needs solar.region")
        res = solar_endurance(cfg.platform, cfg.profile, cfg.mode, cfg.panel, cfg.region,
                              cfg.low_margin_threshold)
        note = "24 h x harvest ratio"
    if cfg.panel is not None and cfg.region is not None:
        rows.append(r("daily_energy", daily_energy(cfg.panel, cfg.region), "Wh",
                      f"panel {cfg.panel.area:g} m2 in {cfg.region.name}"))
    rows += [
        r("total_power", res.total_power, "W", "mechanical + comm"),
        r("harvested_power", res.harvested_power, "W", "daily energy / 24 h"),
        r("harvest_ratio", res.ratio, "1", "daily harvested / daily consumed energy"),
        r("robustness_margin", res.robustness_margin, "1", "harvest ratio - 1"),
        r("indefinite", float(res.indefinite), "flag", "harvest ratio >= 1"),
        r("low_margin", float(res.low_margin), "flag", f"indefinite with ratio < {res.low_margin_threshold:g}"),
    ]
    if not res.indefinite:
        rows.append(r("service_time", res.service_time, "h", note))
    return rows


def _coverage(cfg: ScenarioConfig):
    if cfg.channel is None:
        raise ConfigError(f"{cfg.id}: coverage needs a coverage section")
    p = cfg.profile
    if p.tx_power is None or p.rx_sensitivity is None:
        raise ConfigError(f"{cfg.id}: profile {p.name} has no tx_power/rx_sensitivity for coverage")
    mc = cfg.monte_carlo
    return coverage_radius(p.tx_power, p.rx_sensitivity, cfg.altitude, cfg.channel, mc.reliability,
                           mc.samples, mc.seed, mc.radius_step)


def _coverage_rows(cfg: ScenarioConfig, cov) -> list[ReportRow]:
    r = lambda metric, value, unit, note: ReportRow(cfg.id, metric, value, unit, note)  # noqa: E731
    return [
        r("coverage_radius", cov.radius, "m",
          f"largest radius with reliability > {cov.reliability}" + (f"; {cov.diagnostic}" if cov.diagnostic else "")),
        r("outage_at_radius", cov.outage_at_radius, "1", "Monte Carlo outage fraction"),
        r("samples_per_point", float(cov.samples_per_point), "count", "Monte Carlo samples per radius"),
        r("seed", float(cov.seed), "count", "Monte Carlo seed"),
    ]


def _dimension_rows(cfg: ScenarioConfig, cov) -> list[ReportRow]:
    if cfg.service_area is None or cfg.station is None:
        raise ConfigError(f"{cfg.id}: dimensioning needs a dimensioning section")
    masses = cfg.sweep.masses if cfg.sweep else ((cfg.battery.mass,) if cfg.battery else None)
    if not masses:
        raise ConfigError(f"{cfg.id}: dimensioning needs battery or battery_sweep.masses")
    e_d = cfg.battery.energy_density if cfg.battery else 350.0
    rep = dimension(cfg.platform, cfg.profile, cfg.service_area, cfg.station, masses, e_d,
                    mode=cfg.mode, coverage=cov)
    r = lambda metric, value, unit, note: ReportRow(cfg.id, metric, value, unit, note)  # noqa: E731
    bb, tot, mass = rep.n_backup_batteries_per_abs, rep.total_batteries, rep.total_battery_mass
    rows = [
        r("n_abs", float(rep.n_abs), "count", "ceil(area / (pi R_c^2))"),
        r("n_backup_batteries_min", float(bb[0]), "count", "ceil(P_total / P_charge) over battery sweep"),
        r("n_backup_batteries_max", float(bb[1]), "count", "ceil(P_total / P_charge) over battery sweep"),
        r("total_batteries_min", float(tot[0]), "count", "n_abs x backup batteries"),
        r("total_batteries_max", float(tot[1]), "count", "n_abs x backup batteries"),
        r("total_battery_mass_min", mass[0], "kg", "total batteries x battery mass"),
        r("total_battery_mass_max", mass[1], "kg", "total batteries x battery mass"),
    ]
    for pt in rep.points:
        rows.append(ReportRow(cfg.id, "n_backup_batteries", float(pt.n_backup_batteries), "count",
                              f"P_total {pt.total_power:.1f} W", series=f"{cfg.id}/n_backup_batteries",
                              x=pt.battery_mass, x_name="battery_mass_kg"))
    return rows


def run_scenario(cfg: ScenarioConfig, analyses: Iterable[str] | None = None) -> list[ReportRow]:
    """Run the requested analyses (default: every one the scenario configures).

    Rows come back in a fixed order; Monte Carlo results depend only on the
    scenario's seed.
    """
    if analyses is None:
        wanted = ["power"]
        if cfg.platform.kind != "rwd" and cfg.region is not None or cfg.platform.kind == "rwd" and cfg.battery:
            wanted.append("endurance")
        if cfg.channel is not None and cfg.profile.tx_power is not None and cfg.profile.rx_sensitivity is not None:
            wanted.append("coverage")
            if cfg.service_area is not None:
                wanted.append("dimension")
    else:
        wanted = list(analyses)
        for a in wanted:
            if a not in ANALYSES:
                raise ValueError(f"unknown analysis {a!r}")
    rows: list[ReportRow] = []
    cov = None
    for a in ANALYSES:
        if a not in wanted:
            continue
        if a == "power":
            rows += _power_rows(cfg)
        elif a == "endurance":
            rows += _endurance_rows(cfg)
        else:
            cov = cov or _coverage(cfg)
            rows += _coverage_rows(cfg, cov) if a == "coverage" else _dimension_rows(cfg, cov)
    return rows

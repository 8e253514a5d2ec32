"""Re-run the bundled scenarios behind each reference table and diff the results."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from importlib import resources

import yaml

from .coverage import DEFAULT_SEED
from .endurance import rwd_sweep, with_payload
from .errors import ConfigError
from .payload import bs_comm_power, deploy, strip_bs
from .platform import mechanical_power
from .scenario import Ledger, ReportRow, load_ledger, load_scenario, run_scenario

TABLES = ("I", "II", "III", "V", "fig2-sweep", "fig3-sweep")


@dataclass(frozen=True)
class Check:
    table: str
    cell: str
    computed: float
    expected: float
    tolerance: str
    passed: bool

    @property
    def delta(self) -> float:
        return self.computed - self.expected


@dataclass
class Reproduction:
    table: str
    rows: list[ReportRow] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def load_reference() -> dict:
    text = resources.files("aerialbs").joinpath("data/reference.yaml").read_text("utf-8")
    return yaml.safe_load(text)


def _tol_check(table: str, cell: str, computed: float, expected: float, tol: dict) -> Check:
    if "rel" in tol:
        ok = abs(computed - expected) <= tol["rel"] * abs(expected)
        label = f"rel {tol['rel'] * 100:g}%"
    else:
        ok = abs(computed - expected) <= tol["abs"]
        label = f"abs {tol['abs']:g}"
    return Check(table, cell, computed, expected, label, ok)


def _exact(table: str, cell: str, computed: float, expected: float) -> Check:
    return Check(table, cell, computed, expected, "exact", abs(computed - expected) < 1e-9)


def _by_metric(rows: list[ReportRow]) -> dict[str, float]:
    return {r.metric: r.value for r in rows}


def _regional(table: str, ref: dict, ledger: Ledger, metric: str) -> Reproduction:
    """Shared driver for the two solar tables: one run per scenario and region."""
    out = Reproduction(table)
    tol = ref["tolerances"]
    for sid, cells in ref["rows"].items():
        base = load_scenario(sid, ledger)
        power = run_scenario(base, ["power"])
        out.rows += power
        total = _by_metric(power)["total_power"]
        out.checks.append(_tol_check(table, f"{sid} total_power_kW", total / 1000,
                                     cells["total_power_kW"], tol["total_power"]))
        key = "service_time_h" if metric == "service_time" else metric
        for region, expected in cells[key].items():
            cfg = dataclasses.replace(base, id=f"{sid}@{region}", region=ledger.regions[region])
            rows = run_scenario(cfg, ["endurance"])
            out.rows += rows
            got = _by_metric(rows)
            value = got.get(metric, float("inf"))
            out.checks.append(_tol_check(table, f"{sid}@{region} {key}", value, expected, tol[metric]))
            if metric == "harvest_ratio":
                out.checks.append(Check(table, f"{sid}@{region} self-sustaining", got[metric], 1.0,
                                        "> 1", got[metric] > 1))
    return out


def table_i(ledger: Ledger | None = None) -> Reproduction:
    """Fixed-wing drone power and solar-limited service time."""
    return _regional("I", load_reference()["I"], ledger or load_ledger(), "service_time")


def table_ii(ledger: Ledger | None = None) -> Reproduction:
    """HAP power and harvested-to-consumed energy ratio."""
    return _regional("II", load_reference()["II"], ledger or load_ledger(), "harvest_ratio")


def table_iii(ledger: Ledger | None = None) -> Reproduction:
    """Power-stream breakdown of every platform/BS pairing."""
    ledger = ledger or load_ledger()
    ref = load_reference()["III"]
    out = Reproduction("III")
    for sid, cells in ref["rows"].items():
        rows = run_scenario(load_scenario(sid, ledger), ["power"])
        out.rows += rows
        got = _by_metric(rows)
        out.checks.append(_tol_check("III", f"{sid} total_power_kW", got["total_power"] / 1000,
                                     cells["total_power_kW"], ref["tolerances"]["total_power"]))
        out.checks.append(_tol_check("III", f"{sid} share_without_bs_pct", got["share_without_bs"],
                                     cells["share_without_bs"], ref["tolerances"]["share_without_bs"]))
    return out


def table_v(seed: int = DEFAULT_SEED, samples: int = 10_000, ledger: Ledger | None = None) -> Reproduction:
    """Coverage radius, fleet size and backup batteries for 1 km^2."""
    ledger = ledger or load_ledger()
    ref = load_reference()["V"]
    out = Reproduction("V")
    masses = []
    for sid, cells in ref["rows"].items():
        cfg = load_scenario(sid, ledger)
        cfg = dataclasses.replace(cfg, monte_carlo=dataclasses.replace(
            cfg.monte_carlo, seed=seed, samples=samples))
        rows = run_scenario(cfg, ["coverage", "dimension"])
        out.rows += rows
        got = _by_metric(rows)
        out.checks.append(_tol_check("V", f"{sid} coverage_radius_m", got["coverage_radius"],
                                     cells["coverage_radius_m"], ref["tolerances"]["coverage_radius"]))
        out.checks.append(_exact("V", f"{sid} n_abs", got["n_abs"], cells["n_abs"]))
        for name in ("n_backup_batteries", "total_batteries"):
            lo, hi = cells[name]
            out.checks.append(_exact("V", f"{sid} {name}_min", got[f"{name}_min"], lo))
            out.checks.append(_exact("V", f"{sid} {name}_max", got[f"{name}_max"], hi))
        masses += [got["total_battery_mass_min"], got["total_battery_mass_max"]]
    lo, hi = ref["overall"]["total_battery_mass_kg"]
    out.checks.append(_exact("V", "overall total_battery_mass_kg_min", min(masses), lo))
    out.checks.append(_exact("V", "overall total_battery_mass_kg_max", max(masses), hi))
    return out


def _sweep_records(sid: str, ledger: Ledger) -> list[dict]:
    cfg = load_scenario(sid, ledger)
    if cfg.sweep is None or cfg.region is None:
        raise ConfigError(f"{sid}: sweep reproduction needs battery_sweep and solar.region")
    return rwd_sweep(cfg.platform, [cfg.profile], cfg.sweep.masses, cfg.sweep.energy_densities,
                     cfg.sweep.panel_areas, cfg.region, cfg.panel, cfg.mode)


def fig2_sweep(ledger: Ledger | None = None) -> Reproduction:
    """Rotary-wing service time against take-off mass over the E_d x panel grid."""
    ledger = ledger or load_ledger()
    ref = load_reference()["fig2-sweep"]
    out = Reproduction("fig2-sweep")
    per_bs = {}
    for sid in ("rwd-pico", "rwd-micro"):
        recs = _sweep_records(sid, ledger)
        per_bs[sid] = recs
        for rec in recs:
            series = f"fig2/{rec['bs']}/Ed{rec['energy_density']:g}/Apv{rec['panel_area']:g}"
            out.rows.append(ReportRow(
                sid, "service_time", rec["service_time"], "h",
                f"battery {rec['battery_mass']:g} kg, E_d {rec['energy_density']:g} Wh/kg, "
                f"panel {rec['panel_area']:g} m2",
                series=series, x=rec["takeoff_mass"], x_name="takeoff_mass_kg"))
        base = {(r["energy_density"], r["battery_mass"]): r["service_time"] for r in recs if r["panel_area"] == 0}
        gains = [60 * (r["service_time"] - base[r["energy_density"], r["battery_mass"]])
                 for r in recs if r["panel_area"] == 1]
        lo, hi = ref["solar_gain_min"][sid]
        best = max(gains)
        out.checks.append(Check("fig2-sweep", f"{sid} max solar gain (1 m2) min", best, hi,
                                f"in [{lo:g}, {hi:g}]", lo <= best <= hi))
    # a picocell always outlasts a microcell for the same battery and panel
    micro = {(r["energy_density"], r["panel_area"], r["battery_mass"]): r["service_time"]
             for r in per_bs["rwd-micro"]}
    margin = min(r["service_time"] - micro[r["energy_density"], r["panel_area"], r["battery_mass"]]
                 for r in per_bs["rwd-pico"])
    out.checks.append(Check("fig2-sweep", "pico minus micro service time h (min)", margin, 0.0,
                            "> 0", margin > 0))
    return out


def fig3_sweep(ledger: Ledger | None = None) -> Reproduction:
    """Stacked power streams of the rotary-wing ABS against take-off mass."""
    ledger = ledger or load_ledger()
    out = Reproduction("fig3-sweep")
    for sid in ("rwd-pico", "rwd-micro"):
        cfg = load_scenario(sid, ledger)
        masses = cfg.sweep.masses if cfg.sweep else (cfg.battery.mass,)
        for m_b in masses:
            spec = cfg.platform.with_masses(battery_mass=m_b)
            loaded = deploy(with_payload(spec), cfg.profile)
            without = mechanical_power(strip_bs(spec))
            streams = {
                "without_bs": without,
                "bs_payload": mechanical_power(loaded) - without,
                "bs_comm": bs_comm_power(cfg.profile, cfg.mode),
            }
            for stream, value in streams.items():
                out.rows.append(ReportRow(sid, stream, value, "W", f"battery {m_b:g} kg",
                                          series=f"fig3/{cfg.profile.name}/{stream}",
                                          x=loaded.mass_budget.total_takeoff_mass, x_name="takeoff_mass_kg"))
    return out


def reproduce(table_id: str, seed: int = DEFAULT_SEED, samples: int = 10_000,
              ledger: Ledger | None = None) -> Reproduction:
    if table_id not in TABLES:
        raise ConfigError(f"unknown table '{table_id}' (known: {', '.join(TABLES)})")
    if table_id == "V":
        return table_v(seed, samples, ledger)
    return {"I": table_i, "II": table_ii, "III": table_iii,
            "fig2-sweep": fig2_sweep, "fig3-sweep": fig3_sweep}[table_id](ledger)

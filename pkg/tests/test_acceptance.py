"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Lines are printed as each test runs and again in the terminal summary.
"""
import math
import subprocess
import sys

import numpy as np
import pytest

from aerialbs.coverage import ChannelEnvironment, coverage_radius, excess_loss_sample, los_probability, \
    mean_excess_path_loss
from aerialbs.dimensioning import ChargingStation, num_backup_batteries
from aerialbs.platform import HapParams, hap_propulsion_power
from aerialbs.reproduce import reproduce


@pytest.fixture
def report(acceptance_log):
    def _report(n, passed, line):
        acceptance_log[n] = (passed, line)
        print(f"[{'PASS' if passed else 'FAIL'}] {n}. {line}")
        return passed
    return _report


def _failures(rep):
    return [f"{c.cell}: {c.computed:.6g} vs {c.expected:g} ({c.tolerance})" for c in rep.checks if not c.passed]


def _table_criterion(report, n, table, label):
    rep = reproduce(table)
    bad = _failures(rep)
    ok = report(n, not bad and bool(rep.checks),
                f"{label}: {len(rep.checks) - len(bad)}/{len(rep.checks)} cells in tolerance")
    assert ok, bad


def test_01_power_breakdown_table(report):
    _table_criterion(report, 1, "III", "power breakdown, total +-1%, share +-1 pp")


def test_02_fixed_wing_table(report):
    _table_criterion(report, 2, "I", "fixed-wing total +-2%, service time +-4%")


def test_03_hap_ratio_table(report):
    _table_criterion(report, 3, "II", "HAP total +-1%, harvest ratio +-5% and > 1")


def test_04_dimensioning_table(report):
    rep = reproduce("V", seed=42, samples=10_000)
    bad = _failures(rep)
    radii = {c.cell.split()[0]: c.computed for c in rep.checks if "coverage_radius" in c.cell}
    ok = report(4, not bad, f"coverage and battery dimensioning, seed 42, 1e4 samples: "
                            f"R_c pico {radii['rwd-pico']:g} m, micro {radii['rwd-micro']:g} m, "
                            f"{len(rep.checks) - len(bad)}/{len(rep.checks)} cells")
    assert ok, bad


def test_05_solar_gain_bounds(report):
    rep = reproduce("fig2-sweep")
    gains = {c.cell.split()[0]: c.computed for c in rep.checks if "solar gain" in c.cell}
    pico, micro = gains["rwd-pico"], gains["rwd-micro"]
    ok = report(5, 2.0 <= pico <= 5.0 and micro <= 1.5,
                f"1 m2 panel gain: pico {pico:.2f} min in [2, 5], micro {micro:.2f} min <= 1.5")
    assert ok


def test_06_hap_power_independent_of_mass(report):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        w, area, rho, v = rng.uniform(100, 1e5), rng.uniform(5, 1000), rng.uniform(0.02, 1.3), rng.uniform(5, 60)
        hap = HapParams(area, air_density=rho, speed=v)
        closed = hap.drag_coeff * rho * area * v**3 / (2 * hap.propeller_efficiency)
        worst = max(worst, abs(hap_propulsion_power(hap, w) - closed) / closed)
    ok = report(6, worst < 1e-9, f"HAP propulsion vs drag*speed/efficiency over 100 tuples: worst rel {worst:.1e}")
    assert ok


def test_07_backup_count_independent_of_capacity(report):
    rng = np.random.default_rng(7)
    station = ChargingStation(300.0)
    p_total = 2986.4
    counts = set()
    for _ in range(100):
        e_d, m_b = rng.uniform(20, 600), rng.uniform(0.5, 30)
        capacity = e_d * m_b
        charge_h, service_h = capacity / station.charging_power, capacity / p_total
        counts.add(math.ceil(round(charge_h / service_h, 9)))
        counts.add(num_backup_batteries(p_total, station))
    ok = report(7, counts == {10}, f"backup batteries over 100 (E_d, m_b) pairs at fixed power: {sorted(counts)}")
    assert ok


def test_08_coverage_monotone_and_los_bounded(report):
    sens = np.linspace(-118.0, -104.0, 10)
    radii = [coverage_radius(0.13, float(s), 100.0).radius for s in sens]
    monotone = all(a >= b for a, b in zip(radii, radii[1:]))

    rng = np.random.default_rng(8)
    bounded = True
    for _ in range(1000):
        theta0 = rng.uniform(0, 60)
        exp = rng.uniform(0, 1)
        coeff = rng.uniform(0, 1) / (90 - theta0) ** exp
        env = ChannelEnvironment(los_coeff=coeff, los_exp=exp, theta0=theta0)
        p = los_probability(env, rng.uniform(0, 90, 20))
        bounded &= bool(np.all((p >= 0) & (p <= 1))) and los_probability(env, theta0) == 0.0
    ok = report(8, monotone and bounded,
                f"R_c over P_min {sens[0]:g}..{sens[-1]:g} dBm: {radii[0]:g} -> {radii[-1]:g} m "
                f"({'non-increasing' if monotone else 'NOT monotone'}); LoS probability in [0, 1] "
                f"and 0 at theta0 for 1000 environments: {bounded}")
    assert ok, radii


def test_09_reproduce_is_byte_identical(report):
    cmd = [sys.executable, "-m", "aerialbs.cli", "reproduce", "V", "--seed", "42", "--format", "csv"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout and first.stdout.startswith(b"scenario,metric")
    ok = report(9, same and first.returncode == 0,
                f"two CLI runs of reproduce V --seed 42: {len(first.stdout)} bytes, identical={same}")
    assert ok, first.stderr.decode()


def test_10_sampler_mean_matches_closed_form(report):
    env = ChannelEnvironment()
    rng = np.random.default_rng(10)
    z_scores = {}
    for theta in (20.0, 45.0, 90.0):
        x = excess_loss_sample(env, theta, rng, 100_000)
        se = x.std(ddof=1) / math.sqrt(x.size)
        z_scores[theta] = (x.mean() - mean_excess_path_loss(env, theta)) / se
    ok = report(10, all(abs(z) < 3 for z in z_scores.values()),
                "excess-loss sample mean, 1e5 samples: " +
                ", ".join(f"{t:g} deg z={z:+.2f}" for t, z in z_scores.items()))
    assert ok

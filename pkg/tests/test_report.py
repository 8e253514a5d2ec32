import io

import pytest

from aerialbs.report import emit, plot_series, read_csv, to_csv, to_pretty
from aerialbs.reproduce import fig2_sweep, fig3_sweep, reproduce
from aerialbs.scenario import ReportRow

ROWS = [
    ReportRow("a", "total_power", 2040.0298673557668, "W", "note, with comma"),
    ReportRow("a", "service_time", 0.1 + 0.2, "h", series="s/1", x=16.0, x_name="takeoff_mass_kg"),
    ReportRow("a", "service_time", 0.5, "h", series="s/1", x=15.0, x_name="takeoff_mass_kg"),
]


def test_csv_round_trip_is_exact():
    assert read_csv(to_csv(ROWS)) == ROWS


def test_pretty_table_lists_every_row():
    text = to_pretty(ROWS)
    assert text.count("\n") == len(ROWS) + 2
    assert "2040.03" in text


def test_plot_series_sorted_by_x():
    files = plot_series(ROWS)
    assert list(files) == ["s_1.csv"]
    lines = files["s_1.csv"].splitlines()
    assert lines[0] == "takeoff_mass_kg,service_time_h"
    assert lines[1].startswith("15.0,")


def test_emit_to_stream_and_files(tmp_path):
    buf = io.StringIO()
    assert emit(ROWS, "csv", stream=buf) == []
    assert buf.getvalue() == to_csv(ROWS)
    written = emit(ROWS, "plot-data", tmp_path)
    assert [p.name for p in written] == ["s_1.csv"]
    (txt,) = emit(ROWS, "pretty-table", tmp_path, name="r")
    assert txt.read_text() == to_pretty(ROWS)


@pytest.mark.parametrize("rows, fmt, out", [([], "csv", None), (ROWS, "xml", None), (ROWS, "plot-data", None),
                                            (ROWS[:1], "plot-data", ".")])
def test_emit_errors(rows, fmt, out):
    with pytest.raises(ValueError):
        emit(rows, fmt, out)


def test_service_time_sweep_has_eighteen_series():
    rep = fig2_sweep()
    series = {r.series for r in rep.rows}
    assert len(series) == 18
    assert all(len([r for r in rep.rows if r.series == s]) == 5 for s in series)
    assert len(plot_series(rep.rows)) == 18


def test_power_stream_sweep_stacks_to_total(ledger):
    rep = fig3_sweep(ledger)
    by_x = {}
    for r in rep.rows:
        by_x.setdefault((r.scenario, r.x), 0.0)
        by_x[(r.scenario, r.x)] += r.value
    # 5 kg battery on the picocell drone: 2040.03 W in total
    assert by_x[("rwd-pico", 16.0)] == pytest.approx(2040.0298673557668, rel=1e-12)
    assert len({r.series for r in rep.rows}) == 6


@pytest.mark.parametrize("table", ["I", "II", "III", "fig2-sweep"])
def test_closed_form_tables_pass(table):
    rep = reproduce(table)
    assert rep.checks and rep.passed, [c for c in rep.checks if not c.passed]


def test_unknown_table():
    from aerialbs.errors import ConfigError
    with pytest.raises(ConfigError):
        reproduce("IV")

import csv
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablematch import theory
from stablematch.errors import ConfigError, ParseError
from stablematch.experiments import (
    GAMMA_CSV_HEADER,
    METRICS_CSV_HEADER,
    PLOT_CSV_HEADER,
    THREADS_ENV,
    ExperimentConfig,
    RunReport,
    emit_report,
    parse_config,
    replicate,
    report_csv,
    resampling_decay,
    run_experiment,
)
from stablematch.recursion import default_cuts
from stablematch.rng import stream


def test_minimal_document_gets_defaults():
    cfg = parse_config('experiment = "typical_cost"\nn = 500\nd = 2.0\n')
    assert cfg.experiment == "typical_cost"
    assert cfg.n == 500 and cfg.reps == 1000 and cfg.seed == 0
    assert cfg.dist.kind == "weibull" and cfg.dist.d == 2.0
    assert cfg.engine == "recursion" and cfg.format == "json" and cfg.output is None
    assert cfg.cuts == default_cuts(500, 2.0)


def test_full_document():
    text = """
experiment = "Segments"
n = 1000
reps = 10
seed = 99
engine = "direct"
dist = { kind = "chisquared", k = 6 }
threads = 2

[cuts]
lambda = 40
kappa = 100

[output]
path = "out/seg"
format = "csv"
"""
    cfg = parse_config(text)
    assert cfg.experiment == "segments"
    assert cfg.cuts == (40, 100)
    assert cfg.dist.params == {"k": 6}
    assert (cfg.output, cfg.format, cfg.threads, cfg.engine) == ("out/seg", "csv", 2, "direct")


@pytest.mark.parametrize("text,field", [
    ('experiment = "typical_cost"\nd = 0\n', "d"),
    ('experiment = "typical_cost"\nn = -4\n', "n"),
    ('experiment = "nonsense"\n', "experiment"),
    ('n = 4\n', "experiment"),
    ('experiment = "clt"\nd = 3.0\nengine = "gpu"\n', "engine"),
    ('experiment = "clt"\nd = 2.0\n', "d"),
    ('experiment = "total_cost_lln"\nd = 3.0\ncuts = { lambda = 0, kappa = 1 }\n', "cuts"),
    ('experiment = "typical_cost"\nd = 2.0\ncolour = "red"\n', "colour"),
    ('experiment = "typical_cost"\ndist = { kind = "weibull" }\n', "dist"),
    ('experiment = "typical_cost"\nd = 2.0\nformat = "xml"\n', "format"),
    ('experiment = "gamma_table"\nd_grid = [1.5, 3.0]\n', "d_grid"),
    ('experiment = "typical_cost"\nd = 3.0\ndist = { kind = "chisquared", k = 4 }\n', "d"),
    ('experiment = "typical_cost"\nengine = "direct"\nn = 6000\n', "n"),
])
def test_invalid_documents_name_the_field(text, field):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.field == field
    assert f"field '{field}'" in str(info.value)


def test_syntax_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse_config('experiment = "clt"\nn = = 3\n')
    assert info.value.line == 2
    assert isinstance(info.value, ConfigError)


def test_cuts_override_is_verbatim():
    cfg = parse_config('experiment = "segments"\nn = 10000\nd = 4.0\ncuts = [123, 45]\n')
    assert cfg.cuts == (123, 45)


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert parse_config('experiment = "clt"\nd = 3.0\n').threads == 3
    monkeypatch.setenv(THREADS_ENV, "many")
    with pytest.raises(ConfigError):
        parse_config('experiment = "clt"\nd = 3.0\n')


def test_streams_depend_only_on_seed_and_replication():
    a = stream(7, 3).random(4)
    assert np.array_equal(a, stream(7, 3).random(4))
    assert not np.array_equal(a, stream(7, 4).random(4))
    assert not np.array_equal(a, stream(8, 3).random(4))
    out = replicate(lambda r, rng: (r, rng.random()), 6, 7, threads=3)
    assert [r for r, _ in out] == list(range(6))
    assert out[3][1] == stream(7, 3).random()


@pytest.mark.parametrize("text", [
    'experiment = "typical_cost"\nn = 300\nd = 2.0\nreps = 40\nseed = 5\n',
    'experiment = "variance_limit"\nn = 300\nd = 4.0\nreps = 40\nseed = 5\n',
    'experiment = "segments"\nn = 300\nd = 3.0\nreps = 30\nseed = 5\n',
    'experiment = "engine_equivalence"\nn = 12\nreps = 30\nseed = 5\n',
    'experiment = "coupling_check"\nn = 200\nreps = 20\nseed = 5\ndist = { kind = "maxuniform", d = 2 }\n',
])
def test_reports_do_not_depend_on_threads(text):
    one = parse_config(text + "threads = 1\n")
    many = parse_config(text + "threads = 4\n")
    assert run_experiment(one) == run_experiment(many)


def test_typical_cost_report():
    cfg = parse_config('experiment = "typical_cost"\nn = 10000\nd = 2.0\nreps = 2000\nseed = 1\n')
    rep = run_experiment(cfg)
    assert 0 <= rep.metrics["ks_limit"] <= 0.03
    assert rep.checks == {"ks_limit": True}
    x, e, f = np.array(rep.plot_data).T
    assert np.all(np.diff(x) >= 0) and e[-1] == 1.0
    assert np.allclose(f, theory.limit_cdf_typical(2.0, x))


def test_gamma_table_passthrough():
    grid = [2.5, 3.0, 4.0, 6.0, 8.0]
    rep = run_experiment(parse_config(f'experiment = "gamma_table"\nd_grid = {grid}\n'))
    assert rep.table == [list(r) for r in theory.gamma_table(grid)]
    lines = report_csv(rep).splitlines()
    assert lines[0] == ",".join(GAMMA_CSV_HEADER)
    for line, (d, g, _) in zip(lines[1:], theory.gamma_table(grid)):
        a, b, _ = line.split(",")
        assert float(a) == d and float(b) == g


def test_engine_equivalence_fields():
    rep = run_experiment(parse_config('experiment = "engine_equivalence"\nn = 30\nreps = 200\n'))
    assert {"ks_y1", "ks_total"} <= set(rep.metrics)
    assert set(rep.checks) == {"ks_y1", "ks_total"}


def test_coupling_direct_engine_agrees():
    cfg = parse_config('experiment = "coupling_check"\nn = 8\nreps = 20\nengine = "direct"\n'
                       'dist = { kind = "chisquared", k = 5 }\n')
    rep = run_experiment(cfg)
    assert rep.metrics["matching_agreement"] == 1.0 and rep.passed


def test_lln_and_reference_values():
    rep = run_experiment(parse_config('experiment = "total_cost_lln"\nn = 20000\nd = 3.0\nreps = 20\n'))
    assert rep.metrics["reference"] == theory.lln_constant(3.0)
    assert abs(rep.metrics["ratio"] - 1) < 0.03


def test_json_round_trip(tmp_path):
    rep = run_experiment(parse_config('experiment = "typical_cost"\nn = 200\nd = 3.0\nreps = 50\n'))
    files = emit_report(rep, "json", tmp_path / "r")
    assert files == [tmp_path / "r.json", tmp_path / "r_plot.csv"]
    back = RunReport.from_json(files[0].read_text())
    assert back == rep
    assert list(json.loads(files[0].read_text())) == list(rep.to_dict())


def test_csv_headers(tmp_path):
    rep = run_experiment(parse_config('experiment = "typical_cost"\nn = 200\nd = 2.0\nreps = 50\n'))
    files = emit_report(rep, "csv", tmp_path / "r.csv")
    rows = list(csv.reader(files[0].open()))
    assert tuple(rows[0]) == METRICS_CSV_HEADER == ("experiment", "metric", "value")
    assert rows[1][:2] == ["typical_cost", "ks_limit"]
    assert float(rows[1][2]) == rep.metrics["ks_limit"]
    plot = list(csv.reader(files[1].open()))
    assert tuple(plot[0]) == PLOT_CSV_HEADER == ("x", "ecdf", "limit_cdf")
    assert len(plot) == 51
    # 17 significant digits reproduce the doubles exactly
    assert [float(v) for v in plot[1]] == rep.plot_data[0]


def test_emit_to_stdout(capsys):
    rep = run_experiment(parse_config('experiment = "gamma_table"\nd_grid = [3.0]\n'))
    assert emit_report(rep, "csv") == []
    out = capsys.readouterr().out
    assert out.startswith("d,gamma,abs_error_estimate\n")
    with pytest.raises(ConfigError):
        emit_report(rep, "yaml")


def test_resampling_decay_shape():
    res = resampling_decay(2000, 4.0, [10, 30, 100], 50, 3, (60, 8))
    assert res["j"] == [10, 30, 100] and res["k"] == [1991, 1971, 1901]
    assert all(v > 0 for v in res["mean_sq_diff"])
    assert math.isfinite(res["slope"])
    with pytest.raises(ConfigError):
        resampling_decay(2000, 4.0, [1], 5, 3, (60, 8))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2 ** 64 - 1), reps=st.integers(1, 5))
def test_rerun_is_bit_identical(seed, reps):
    cfg = parse_config(f'experiment = "typical_cost"\nn = 50\nd = 2.5\nreps = {reps}\nseed = {seed}\n')
    assert run_experiment(cfg) == run_experiment(cfg)

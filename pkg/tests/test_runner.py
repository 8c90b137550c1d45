import csv
import io
import json

import numpy as np
import pytest

from dirac_lanczos import (
    BOUND,
    ConfigError,
    DiracParams,
    EigenTrace,
    RunConfig,
    emit_outputs,
    exact_energy,
    load_config,
    run,
)
from dirac_lanczos.config import parse_config_text
from dirac_lanczos.runner import CSV_HEADER, RunReport

# h = 0.2: coarse enough that 120 iterations reach the ground state
COARSE = RunConfig(n_points=200, max_iterations=120)


@pytest.fixture(scope="module")
def coarse_report():
    return run(COARSE)


def test_coarse_run_finds_ground_state(coarse_report):
    bound = coarse_report.bound_traces
    assert len(bound) == 1
    assert bound[0].final_value == pytest.approx(0.683729, abs=1e-3)
    assert coarse_report.exit_code == 0
    assert coarse_report.iterations_executed == 120
    assert not coarse_report.breakdown


def test_reported_error_recomputed_independently(coarse_report):
    expected = abs(coarse_report.ground_trace.final_value - exact_energy(DiracParams(100, -1), 1))
    assert coarse_report.bound_error == expected


def test_ground_trace_within_residual_bound(coarse_report):
    # the ground state is interior to the grid spectrum, so its Ritz value
    # oscillates rather than decreasing; each value still lies within the
    # residual norm sqrt(delta) of the discrete eigenvalue once that norm is
    # below half the gap to the next level
    trace = coarse_report.ground_trace
    eigenvalue = trace.final_value
    close = np.sqrt(trace.deltas) < 0.1
    assert close.sum() > 50
    err = np.abs(trace.values - eigenvalue)[close]
    assert np.all(err <= np.sqrt(trace.deltas[close]) + 1e-12)


def test_negative_traces_counted_and_spurious(coarse_report):
    negative = [t for t in coarse_report.traces if t.final_value < 0]
    assert coarse_report.negative_traces == len(negative) > 0
    assert all(t.classification == "spurious" for t in negative)


def test_too_few_iterations_gives_exit_one():
    report = run(COARSE.replace(max_iterations=20))
    assert report.bound_value is None
    assert report.exit_code == 1


def test_unperturbed_start_has_exact_first_coefficient():
    report = run(RunConfig(gamma=1.0, n_points=400, max_iterations=1))
    (trace,) = report.traces
    assert trace.final_value == pytest.approx(exact_energy(DiracParams(100, -1), 1), abs=1e-13)


def test_random_start_is_seeded():
    cfg = RunConfig(n_points=50, max_iterations=8, start_vector="random", random_seed=3)
    a, b = run(cfg), run(cfg)
    assert a.rows == b.rows
    assert run(cfg.replace(random_seed=4)).rows != a.rows


def test_random_start_needs_seed():
    with pytest.raises(ConfigError):
        RunConfig(start_vector="random")


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_outputs_written(tmp_path, coarse_report):
    out = io.StringIO()
    csv_path, json_path = emit_outputs(coarse_report, tmp_path / "sub" / "z100", stream=out)
    assert csv_path.name == "z100_eigenvalues.csv"
    assert json_path.name == "z100_report.json"
    rows = read_csv(csv_path)
    assert rows[0] == list(CSV_HEADER)
    n = coarse_report.iterations_executed
    assert len(rows) - 1 == n * (n + 1) // 2
    for row in rows[1:]:
        float(row[2]), float(row[3])
    assert repr(float(rows[1][2])) == repr(coarse_report.rows[0][2])

    data = json.loads(json_path.read_text())
    assert data["bound_value"] == coarse_report.bound_value
    assert data["config"]["n_points"] == 200
    assert len(data["traces"]) == len(coarse_report.traces)
    assert "iteration_seconds" not in data
    assert "bound state: trace" in out.getvalue()


def test_json_timing_is_opt_in(tmp_path, coarse_report):
    _, json_path = emit_outputs(coarse_report, tmp_path / "t", stream=io.StringIO(), include_timing=True)
    data = json.loads(json_path.read_text())
    assert len(data["iteration_seconds"]) == coarse_report.iterations_executed


def test_row_count_for_hand_built_report(tmp_path):
    traces = [
        EigenTrace(i, tuple((n, 0.5 + i, 0.1) for n in range(1, 19)), BOUND) for i in range(2)
    ]
    rows = [(n, t.label_index, 0.5 + t.label_index, 0.1, BOUND) for n in range(1, 19) for t in traces]
    report = RunReport(RunConfig(), traces, rows, 18, False, 0.68)
    csv_path, _ = emit_outputs(report, tmp_path / "hand", stream=io.StringIO())
    assert len(read_csv(csv_path)) == 37


def test_single_iteration_run(tmp_path):
    report = run(RunConfig(n_points=50, max_iterations=1))
    csv_path, _ = emit_outputs(report, tmp_path / "one", stream=io.StringIO())
    assert len(read_csv(csv_path)) == 2


def test_outputs_are_byte_identical(tmp_path):
    cfg = RunConfig(n_points=150, max_iterations=30)
    for name in ("a", "b"):
        emit_outputs(run(cfg), tmp_path / name, stream=io.StringIO())
    for suffix in ("_eigenvalues.csv", "_report.json"):
        assert (tmp_path / f"a{suffix}").read_bytes() == (tmp_path / f"b{suffix}").read_bytes()


def test_unwritable_prefix(tmp_path, coarse_report):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file"):
        emit_outputs(coarse_report, blocker / "out", stream=io.StringIO())


def test_config_text_parsing():
    text = """
    # paper run
    z = 100
    kappa=-1          # s1/2 channel
    n-points = 4000
    gamma = 0.0998
    output_prefix = runs/z100
    """
    values = parse_config_text(text)
    assert values == {"z": 100, "kappa": -1, "n_points": 4000, "gamma": 0.0998, "output_prefix": "runs/z100"}


def test_flags_override_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("z = 92\nn_points = 300\n")
    cfg = load_config(path, {"n-points": "500", "gamma": None})
    assert cfg.z == 92 and cfg.n_points == 500 and cfg.gamma == 0.0998


@pytest.mark.parametrize("text", ["bogus = 1", "z = abc", "just some words", "max_iterations = 0"])
def test_config_errors(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")

"""End-to-end driver: one Lanczos run with per-iteration classification."""

from __future__ import annotations

import csv
import dataclasses
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

import numpy as np

from . import lanczos
from .config import RunConfig
from .convergence import BOUND, EigenTrace, classify_all, compute_delta, match_traces
from .errors import DiracLanczosError
from .grid import build_grid
from .hamiltonian import DiracOperator, DiracParams
from .reference import StartVectorSpec, bethe_start, exact_energy, lowest_principal_n
from .tridiag import eigen_tridiag

log = logging.getLogger(__name__)

CSV_HEADER = ("iteration", "trace_id", "ritz_value", "delta", "classification")

EXIT_BOUND_MATCHED = 0
EXIT_NO_BOUND = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3


@dataclass
class RunReport:
    config: RunConfig
    traces: list[EigenTrace]
    rows: list[tuple[int, int, float, float, str]]
    iterations_executed: int
    breakdown: bool
    exact_energy: float
    timings: list[float] = field(default_factory=list)
    ritz_history: list[list[float]] = field(default_factory=list)

    @property
    def bound_traces(self) -> list[EigenTrace]:
        return [t for t in self.traces if t.classification == BOUND]

    @property
    def ground_trace(self) -> EigenTrace | None:
        """The lowest positive bound trace, if any."""
        bound = [t for t in self.bound_traces if t.final_value > 0]
        return min(bound, key=lambda t: t.final_value, default=None)

    @property
    def bound_value(self) -> float | None:
        tr = self.ground_trace
        return None if tr is None else tr.final_value

    @property
    def bound_error(self) -> float | None:
        value = self.bound_value
        return None if value is None else abs(value - self.exact_energy)

    @property
    def negative_traces(self) -> int:
        return sum(1 for t in self.traces if t.final_value < 0)

    @property
    def exit_code(self) -> int:
        err = self.bound_error
        if err is not None and err <= self.config.oracle_tol:
            return EXIT_BOUND_MATCHED
        return EXIT_NO_BOUND

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "config": dataclasses.asdict(self.config),
            "iterations_executed": self.iterations_executed,
            "breakdown": self.breakdown,
            "exact_energy": self.exact_energy,
            "bound_trace_id": None if self.ground_trace is None else self.ground_trace.label_index,
            "bound_value": self.bound_value,
            "bound_error": self.bound_error,
            "negative_traces": self.negative_traces,
            "traces": [
                {
                    "trace_id": t.label_index,
                    "birth_iteration": t.birth,
                    "classification": t.classification,
                    "final_value": t.final_value,
                    "final_delta": t.final_delta,
                    "history": [list(h) for h in t.history],
                }
                for t in self.traces
            ],
        }
        if include_timing:
            out["iteration_seconds"] = list(self.timings)
        return out


def make_start(config: RunConfig, params: DiracParams, grid) -> np.ndarray:
    if config.start_vector == "random":
        rng = np.random.default_rng(config.random_seed)
        return rng.standard_normal(2 * grid.n_points)
    spec = StartVectorSpec(config.gamma, params, config.exponent_rule)
    return bethe_start(spec, grid).to_array()


def run(config: RunConfig) -> RunReport:
    """Run Lanczos to ``max_iterations`` or breakdown, diagonalizing after every step."""
    params = DiracParams(config.z, config.kappa, config.alpha)
    grid = build_grid(config.n_points, config.r_max)
    op = DiracOperator(params, grid)
    state = lanczos.init(make_start(config, params, grid), op)
    oracle = exact_energy(params, lowest_principal_n(params.kappa))
    classify_kw = dict(
        window=config.window, delta_tol=config.delta_tol, plateau_tol=config.plateau_tol
    )

    traces: list[EigenTrace] = []
    rows = []
    timings = []
    ritz_history = []
    while state.iteration < config.max_iterations and state.status == lanczos.RUNNING:
        t0 = time.perf_counter()
        try:
            lanczos.step(state)
            pairs = eigen_tridiag(lanczos.tridiagonal(state))
            current = [(p.value, compute_delta(p, state)) for p in pairs]
        except DiracLanczosError as exc:
            raise type(exc)(f"iteration {state.iteration + 1}: {exc}") from exc
        n = state.iteration
        traces = classify_all(match_traces(traces, current, n), **classify_kw)
        for tr in traces:
            if tr.history[-1][0] == n:
                rows.append((n, tr.label_index, tr.final_value, tr.final_delta, tr.classification))
        ritz_history.append([p.value for p in pairs])
        timings.append(time.perf_counter() - t0)
        log.debug("iteration %d: %d Ritz values, w_n = %.3e", n, len(pairs), state.residual_norm)

    return RunReport(
        config=config,
        traces=traces,
        rows=rows,
        iterations_executed=state.iteration,
        breakdown=state.status == lanczos.BREAKDOWN,
        exact_energy=oracle,
        timings=timings,
        ritz_history=ritz_history,
    )


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(report: RunReport, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for it, tid, value, delta, cls in report.rows:
            writer.writerow((it, tid, _fmt(value), _fmt(delta), cls))


def write_json(report: RunReport, path: Path, include_timing: bool = False) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_dict(include_timing), fh, indent=2, sort_keys=True)
        fh.write("\n")


def summary_table(report: RunReport) -> str:
    lines = [
        f"iterations: {report.iterations_executed}"
        + ("  (breakdown: invariant subspace reached)" if report.breakdown else ""),
        f"exact ground-state energy: {report.exact_energy:.9f}",
    ]
    if report.bound_value is None:
        lines.append("bound state: none classified")
    else:
        lines.append(
            f"bound state: trace {report.ground_trace.label_index}  "
            f"E = {report.bound_value:.9f}  |E - exact| = {report.bound_error:.3e}"
        )
    lines.append(f"traces with negative energy: {report.negative_traces}")
    lines.append("")
    lines.append(f"{'trace':>5}  {'born':>4}  {'final value':>16}  {'final delta':>11}  class")
    for t in sorted(report.traces, key=lambda t: t.final_value):
        lines.append(
            f"{t.label_index:>5}  {t.birth:>4}  {t.final_value:>16.9f}  "
            f"{t.final_delta:>11.3e}  {t.classification}"
        )
    if report.timings:
        lines.append("")
        lines.append(f"total time: {sum(report.timings):.3f} s")
    return "\n".join(lines)


def emit_outputs(
    report: RunReport,
    prefix: str | Path,
    stream: TextIO | None = None,
    include_timing: bool = False,
) -> tuple[Path, Path]:
    """Write ``<prefix>_eigenvalues.csv`` and ``<prefix>_report.json``; print a summary."""
    prefix = Path(prefix)
    csv_path = prefix.with_name(prefix.name + "_eigenvalues.csv")
    json_path = prefix.with_name(prefix.name + "_report.json")
    try:
        if prefix.parent != Path(""):
            prefix.parent.mkdir(parents=True, exist_ok=True)
        write_csv(report, csv_path)
        write_json(report, json_path, include_timing)
    except OSError as exc:
        raise OSError(f"cannot write outputs under {prefix}: {exc}") from exc
    print(summary_table(report), file=stream or sys.stdout)
    return csv_path, json_path


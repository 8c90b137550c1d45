"""Delta diagnostic, trace bookkeeping and bound/spurious classification.

For a Ritz pair ``(e, v)`` the diagnostic is ``|e^2 - <v|H^2|v>|``. It
vanishes for an exact eigenpair and, by the Lanczos residual identity,
equals ``(w_n * c_n)^2`` where ``c_n`` is the last Ritz coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameter
from .lanczos import LanczosState
from .tridiag import RitzPair, ritz_vector

BOUND = "bound"
SPURIOUS = "spurious"
UNDETERMINED = "undetermined"

DEFAULT_WINDOW = 5
DEFAULT_DELTA_TOL = 1e-4
DEFAULT_PLATEAU_TOL = 1e-6
DEFAULT_DELTA_PLATEAU_RTOL = 0.1


def compute_delta(pair: RitzPair, state: LanczosState) -> float:
    """``|e^2 - <v|H^2|v>|`` for the Ritz vector ``v`` of ``pair``."""
    op = state.operator
    v = ritz_vector(pair, state)
    h2v = op.apply(op.apply(v))
    return abs(pair.value**2 - op.inner(v, h2v))


def residual_delta(pair: RitzPair, state: LanczosState) -> float:
    """The same quantity from the residual identity, ``(w_n * c_n)^2``."""
    if pair.iteration != state.iteration:
        raise InvalidParameter("Ritz pair and state are from different iterations")
    w = state.residual_norm
    return float((w * pair.coeffs[-1]) ** 2)


@dataclass(frozen=True)
class EigenTrace:
    """History of one Ritz value across iterations.

    ``history`` holds ``(iteration, value, delta)`` triples, gapless from the
    birth iteration onward.
    """

    label_index: int
    history: tuple[tuple[int, float, float], ...]
    classification: str = UNDETERMINED

    @property
    def birth(self) -> int:
        return self.history[0][0]

    @property
    def final_value(self) -> float:
        return self.history[-1][1]

    @property
    def final_delta(self) -> float:
        return self.history[-1][2]

    @property
    def values(self) -> np.ndarray:
        return np.array([h[1] for h in self.history])

    @property
    def deltas(self) -> np.ndarray:
        return np.array([h[2] for h in self.history])


def match_traces(
    previous: Sequence[EigenTrace],
    current: Iterable[tuple[float, float]],
    iteration: int,
) -> list[EigenTrace]:
    """Extend each trace to its nearest current Ritz value.

    ``current`` is a sequence of ``(value, delta)`` pairs sorted ascending.
    Pairs are assigned greedily in order of increasing distance, each current
    value used at most once; leftover values open new traces.
    """
    current = list(current)
    candidates = sorted(
        (abs(trace.final_value - value), t, c)
        for t, trace in enumerate(previous)
        for c, (value, _) in enumerate(current)
    )
    trace_taken: dict[int, int] = {}
    value_taken: set[int] = set()
    for _, t, c in candidates:
        if t in trace_taken or c in value_taken:
            continue
        trace_taken[t] = c
        value_taken.add(c)
        if len(trace_taken) == len(previous):
            break

    out = []
    for t, trace in enumerate(previous):
        if t not in trace_taken:
            # more traces than Ritz values can only follow a breakdown
            out.append(trace)
            continue
        value, delta = current[trace_taken[t]]
        out.append(replace(trace, history=trace.history + ((iteration, value, delta),)))
    next_id = max((tr.label_index for tr in previous), default=-1) + 1
    for c, (value, delta) in enumerate(current):
        if c not in value_taken:
            out.append(EigenTrace(next_id, ((iteration, value, delta),)))
            next_id += 1
    return out


def classify(
    trace: EigenTrace,
    window: int = DEFAULT_WINDOW,
    delta_tol: float = DEFAULT_DELTA_TOL,
    plateau_tol: float = DEFAULT_PLATEAU_TOL,
    *,
    delta_plateau_rtol: float = DEFAULT_DELTA_PLATEAU_RTOL,
) -> str:
    """Label a trace ``bound``, ``spurious`` or ``undetermined``.

    Over the last ``window`` iterations a trace whose value varies by less
    than ``plateau_tol`` is bound when its delta is non-increasing and ends
    below ``delta_tol``, and spurious when its delta levels off above
    ``delta_tol`` (relative spread at most ``delta_plateau_rtol``).
    Negative values are always spurious.
    """
    if int(window) != window or window < 2:
        raise InvalidParameter(f"window must be an integer >= 2, got {window!r}")
    if delta_tol <= 0 or plateau_tol <= 0 or delta_plateau_rtol <= 0:
        raise InvalidParameter("tolerances must be positive")
    if trace.final_value < 0:
        return SPURIOUS
    if len(trace.history) < window:
        return UNDETERMINED
    values = trace.values[-window:]
    deltas = trace.deltas[-window:]
    if np.ptp(values) >= plateau_tol:
        return UNDETERMINED
    slack = 1e-6 * delta_tol
    if deltas[-1] < delta_tol and np.all(np.diff(deltas) <= slack):
        return BOUND
    if deltas.min() >= delta_tol and np.ptp(deltas) <= delta_plateau_rtol * deltas.max():
        return SPURIOUS
    return UNDETERMINED


def classify_all(traces: Sequence[EigenTrace], **kwargs) -> list[EigenTrace]:
    return [replace(tr, classification=classify(tr, **kwargs)) for tr in traces]

"""Per-client queue recursions and a stability diagnostic.

Each client carries two backlogs measured in bits: the local queue of work
that has arrived but not been executed or offloaded, and a virtual queue of
work already offloaded but not yet executed by any edge server.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class QueueState:
    """Backlogs at a slot boundary; both arrays stay non-negative."""

    q: np.ndarray  # (n,) local queue, bits
    h: np.ndarray  # (n,) virtual offloaded queue, bits

    @classmethod
    def zeros(cls, n: int) -> "QueueState":
        return cls(q=np.zeros(n), h=np.zeros(n))


def _check_non_negative(**named) -> None:
    for name, value in named.items():
        if np.any(np.asarray(value) < 0):
            raise ValueError(f"{name} must be non-negative")


def update_local(q, served_total, arrivals):
    """Advance the local queue: drain what was served, then add arrivals."""
    _check_non_negative(q=q, served_total=served_total, arrivals=arrivals)
    return np.maximum(np.asarray(q) - served_total, 0.0) + arrivals


def update_virtual(h, executed_at_edge, offloaded):
    """Advance the virtual queue: drain edge-executed work, add new offloads."""
    _check_non_negative(h=h, executed_at_edge=executed_at_edge, offloaded=offloaded)
    return np.maximum(np.asarray(h) - executed_at_edge, 0.0) + offloaded


@dataclass(frozen=True)
class StabilityReport:
    mean_first_half: float
    mean_second_half: float
    ratio: float

    @property
    def stable(self) -> bool:
        return self.ratio <= 2.0


def stability_diagnostic(queue_history) -> StabilityReport:
    """Compare total backlog between the two halves of a run.

    A ratio (second half / first half) above 2.0 flags a backlog that keeps
    growing instead of settling. An all-zero history is defined as ratio 1.0;
    a zero first half with a non-zero second half reports infinity.
    """
    history = np.asarray(queue_history, dtype=float)
    if history.ndim != 1 or history.size < 100:
        raise ValueError("queue history must be 1-D with at least 100 slots")
    half = history.size // 2
    first = float(history[:half].mean())
    second = float(history[half:].mean())
    if first == 0.0:
        ratio = 1.0 if second == 0.0 else float("inf")
    else:
        ratio = second / first
    return StabilityReport(mean_first_half=first, mean_second_half=second, ratio=ratio)

"""Parameter sweeps over the control weight and the system size.

Sweep cells (one per axis value and policy) reuse the same seed list, so
the cells see identical topologies, arrivals and fading and differ only in
the swept parameter. Cells may run in parallel; results are collected and
written in deterministic sorted order.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from . import charts
from .params import SystemParams
from .policies import PolicyKind
from .simulate import METRIC_NAMES, run_replications

AXES = ("v", "n", "m")

PAPER_SWEEP_VALUES = {
    "v": tuple(k * 1e9 for k in range(1, 10)),
    "n": (10, 20, 30, 100, 200),
    "m": (3, 6, 9),
}

AXIS_LABELS = {"v": "control weight V", "n": "number of clients", "m": "number of servers"}

ALL_POLICIES = (PolicyKind.OJTORA, PolicyKind.RANDOM, PolicyKind.GREEDY)

CSV_HEADER = ("axis", "policy", "seed_count",
              "avg_power", "sd_power", "avg_queue", "sd_queue",
              "avg_cost", "sd_cost", "avg_capacity", "sd_capacity")


def paper_params(base: SystemParams) -> SystemParams:
    """Pin the headline experiment settings on top of a base config."""
    return replace(base, alpha=0.3, beta=1e-5, v=1e9,
                   n_clients=30, n_servers=3, n_slots=10000)


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    params: SystemParams
    policies: tuple = ALL_POLICIES
    seeds: tuple = (42,)

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.values:
            raise ValueError("sweep needs at least one axis value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("axis values must be strictly increasing")
        if not self.seeds:
            raise ValueError("sweep needs at least one seed")
        if not self.policies:
            raise ValueError("sweep needs at least one policy")


def apply_axis(params: SystemParams, axis: str, value) -> SystemParams:
    if axis == "v":
        return replace(params, v=float(value))
    if axis == "n":
        return replace(params, n_clients=int(value))
    if axis == "m":
        return replace(params, n_servers=int(value))
    raise ValueError(f"unknown sweep axis: {axis!r}")


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    policy: str
    seed_count: int
    mean: dict
    std: dict


def _cell_task(args) -> SweepRow:
    params, axis, value, policy, seeds, options = args
    cell = run_replications(apply_axis(params, axis, value), policy, seeds, **options)
    return SweepRow(axis_value=float(value), policy=cell.policy,
                    seed_count=len(seeds), mean=cell.mean, std=cell.std)


def run_sweep(spec: SweepSpec, *, jobs: int = 1, physical_clamp: bool = False,
              clamp_cost: bool = True) -> list[SweepRow]:
    options = dict(physical_clamp=physical_clamp, clamp_cost=clamp_cost)
    tasks = [(spec.params, spec.axis, value, PolicyKind(policy), spec.seeds, options)
             for value in spec.values for policy in spec.policies]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_cell_task, tasks))
    else:
        rows = [_cell_task(t) for t in tasks]
    policy_order = {PolicyKind(p).value: k for k, p in enumerate(spec.policies)}
    rows.sort(key=lambda r: (r.axis_value, policy_order[r.policy]))
    return rows


def _fmt(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([
            _fmt(row.axis_value), row.policy, row.seed_count,
            repr(row.mean["avg_power"]), repr(row.std["avg_power"]),
            repr(row.mean["avg_queue"]), repr(row.std["avg_queue"]),
            repr(row.mean["avg_cost"]), repr(row.std["avg_cost"]),
            repr(row.mean["avg_capacity"]), repr(row.std["avg_capacity"]),
        ])
    return buf.getvalue()


def sweep_charts(axis: str, rows) -> dict:
    """One SVG per metric, one polyline per policy."""
    values = sorted({row.axis_value for row in rows})
    policies = []
    for row in rows:
        if row.policy not in policies:
            policies.append(row.policy)
    out = {}
    for metric in METRIC_NAMES:
        series = {}
        for policy in policies:
            by_value = {r.axis_value: r.mean[metric] for r in rows if r.policy == policy}
            series[policy] = [by_value[v] for v in values]
        out[metric] = charts.line_chart(
            f"{metric} vs {AXIS_LABELS[axis]}", AXIS_LABELS[axis], metric,
            values, series)
    return out


def write_sweep_outputs(out_dir: str | Path, axis: str, rows) -> list[Path]:
    """Write the CSV table and the per-metric charts; returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    csv_path = out_dir / f"sweep_{axis}.csv"
    csv_path.write_text(rows_to_csv(rows))
    written.append(csv_path)
    for metric, svg in sweep_charts(axis, rows).items():
        path = out_dir / f"sweep_{axis}_{metric}.svg"
        path.write_text(svg)
        written.append(path)
    return written

"""Slot-by-slot simulation engine and the evaluation metrics.

One episode owns three independent PRNG streams spawned from its seed:
topology placement, per-slot draws, and the policy's private stream. That
keeps arrivals and fading identical across policies run on the same seed,
so policy comparisons are paired.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .params import SystemParams
from .physics import draw_slot
from .policies import Observation, PolicyKind, decide
from .queues import (QueueState, StabilityReport, stability_diagnostic,
                     update_local, update_virtual)
from .topology import build_topology

METRIC_NAMES = ("avg_power", "avg_queue", "avg_cost", "avg_capacity")


def service_cost(q, h, served_total, executed_at_edge, p_local, p_transmit,
                 params: SystemParams, clamp: bool = True):
    """Weighted latency + power cost of one client for one slot.

    Latency is the backlog left after this slot's service; by default the
    residuals are clamped at zero like the queue updates themselves. Pass
    clamp=False for the literal unclamped form.
    """
    res_q = np.asarray(q) - served_total
    res_h = np.asarray(h) - executed_at_edge
    if clamp:
        res_q = np.maximum(res_q, 0.0)
        res_h = np.maximum(res_h, 0.0)
    latency = params.alpha * res_q + (1.0 - params.alpha) * res_h
    power = np.asarray(p_local) + p_transmit
    return params.beta * latency + (1.0 - params.beta) * power


@dataclass
class MetricsAccumulator:
    """Running totals over slots; averages are read off at the end."""

    sum_power: float = 0.0
    sum_queue: float = 0.0
    sum_cost: float = 0.0
    sum_offloads: float = 0.0
    slots: int = 0

    def add(self, power: float, queue: float, cost: float, offloads: float) -> None:
        self.sum_power += power
        self.sum_queue += queue
        self.sum_cost += cost
        self.sum_offloads += offloads
        self.slots += 1


@dataclass(frozen=True)
class RunResult:
    """Averages of one episode plus its stability report."""

    policy: str
    seed: int
    slots: int
    avg_power: float      # W per client-slot
    avg_queue: float      # bits per client-slot
    avg_cost: float       # cost per client-slot
    avg_capacity: float   # offloading clients per slot, divided by m
    offload_total: float  # raw offload count over the whole run
    stability: StabilityReport | None
    trace: tuple = ()     # optional per-slot rows

    def metrics(self) -> dict:
        return {name: getattr(self, name) for name in METRIC_NAMES}


TRACE_COLUMNS = ("slot", "total_q", "total_h", "power", "cost", "offloads")


def run_episode(params: SystemParams, kind: PolicyKind | str, *,
                physical_clamp: bool = False, clamp_cost: bool = True,
                record_trace: bool = False) -> RunResult:
    """Simulate one seeded episode under the given policy.

    Metrics sample the queues before the end-of-slot update, so the cost of
    a slot reflects the state the decision was made against. Invariant
    violations are re-raised with the offending slot attached.
    """
    kind = PolicyKind(kind)
    ss = np.random.SeedSequence(params.seed)
    streams = [np.random.Generator(np.random.PCG64(c)) for c in ss.spawn(3)]
    topo_rng, draw_rng, policy_rng = streams
    topo = build_topology(params, topo_rng)

    n, t_slots = params.n_clients, params.n_slots
    state = QueueState.zeros(n)
    acc = MetricsAccumulator()
    history = np.empty(t_slots)
    trace: list[tuple] = []

    for t in range(t_slots):
        try:
            q, h = state.q, state.h
            draw = draw_slot(params, draw_rng)
            obs = Observation(q=q, h=h, arrivals=draw.arrivals,
                              fading=draw.fading, topology=topo, params=params)
            dec = decide(kind, obs, policy_rng)

            p_local = params.k_mod * dec.f ** 3
            d_sum = dec.d_l + dec.d_r
            cost = service_cost(q, h, d_sum, dec.d_s, p_local, dec.p,
                                params, clamp=clamp_cost)
            power_t = float(p_local.sum() + dec.p.sum())
            total_q = float(q.sum())
            total_h = float(h.sum())
            cost_t = float(np.sum(cost))
            off_t = float(np.count_nonzero(dec.server >= 0))
            acc.add(power_t, total_q + total_h, cost_t, off_t)
            history[t] = total_q + total_h
            if record_trace:
                trace.append((t, total_q, total_h, power_t, cost_t, off_t))

            if physical_clamp:
                h_in = np.minimum(dec.d_r, np.maximum(q - dec.d_l, 0.0))
            else:
                h_in = dec.d_r
            state.q = update_local(q, d_sum, draw.arrivals)
            state.h = update_virtual(h, dec.d_s, h_in)
        except ValueError as exc:
            raise RuntimeError(f"invariant violation at slot {t}: {exc}") from exc

    stability = stability_diagnostic(history) if t_slots >= 100 else None
    scale_clients = acc.slots * n
    return RunResult(
        policy=kind.value,
        seed=params.seed,
        slots=acc.slots,
        avg_power=acc.sum_power / scale_clients,
        avg_queue=acc.sum_queue / scale_clients,
        avg_cost=acc.sum_cost / scale_clients,
        avg_capacity=acc.sum_offloads / (acc.slots * params.n_servers),
        offload_total=acc.sum_offloads,
        stability=stability,
        trace=tuple(trace),
    )


@dataclass(frozen=True)
class ReplicationResult:
    """Mean and population stddev of each metric over seeded episodes."""

    policy: str
    seeds: tuple
    mean: dict = field(default_factory=dict)
    std: dict = field(default_factory=dict)
    runs: tuple = ()


def _episode_task(args) -> RunResult:
    params, kind, options = args
    try:
        return run_episode(params, kind, **options)
    except RuntimeError as exc:
        raise RuntimeError(f"seed {params.seed}: {exc}") from exc


def run_replications(params: SystemParams, kind: PolicyKind | str, seeds,
                     *, jobs: int = 1, physical_clamp: bool = False,
                     clamp_cost: bool = True,
                     record_trace: bool = False) -> ReplicationResult:
    """Run independent episodes for each seed and aggregate their metrics."""
    kind = PolicyKind(kind)
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    options = dict(physical_clamp=physical_clamp, clamp_cost=clamp_cost,
                   record_trace=record_trace)
    tasks = [(replace(params, seed=s), kind, options) for s in seeds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(_episode_task, tasks))
    else:
        runs = [_episode_task(t) for t in tasks]

    mean, std = {}, {}
    for name in METRIC_NAMES:
        values = np.array([getattr(r, name) for r in runs])
        mean[name] = float(values.mean())
        # identical episodes must report exactly zero spread
        spread = 0.0 if values.max() == values.min() else float(values.std(ddof=0))
        std[name] = spread
    return ReplicationResult(policy=kind.value, seeds=seeds,
                             mean=mean, std=std, runs=tuple(runs))

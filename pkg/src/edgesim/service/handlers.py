"""Request handling shared by the HTTP endpoints and the local CLI mode."""

from __future__ import annotations

from ..experiments import (PAPER_SWEEP_VALUES, SweepSpec, paper_params,
                           rows_to_csv, run_sweep, sweep_charts)
from ..simulate import RunResult, run_replications
from .schemas import (EpisodeModel, MetricsModel, RunRequest, RunResponse,
                      StabilityModel, SweepRequest, SweepResponse,
                      SweepRowModel, TraceRow)


def _episode_model(run: RunResult, include_trace: bool) -> EpisodeModel:
    stability = None
    if run.stability is not None:
        stability = StabilityModel(
            mean_first_half=run.stability.mean_first_half,
            mean_second_half=run.stability.mean_second_half,
            ratio=run.stability.ratio,
            stable=run.stability.stable,
        )
    trace = None
    if include_trace:
        trace = [TraceRow(slot=r[0], total_q=r[1], total_h=r[2],
                          power=r[3], cost=r[4], offloads=r[5])
                 for r in run.trace]
    return EpisodeModel(seed=run.seed, slots=run.slots,
                        metrics=MetricsModel(**run.metrics()),
                        offload_total=run.offload_total,
                        stability=stability, trace=trace)


def handle_run(req: RunRequest) -> RunResponse:
    params = req.params.to_params()
    seeds = req.seeds if req.seeds else [params.seed]
    result = run_replications(params, req.policy, seeds,
                              physical_clamp=req.physical_clamp,
                              clamp_cost=req.clamp_cost,
                              record_trace=req.trace)
    return RunResponse(
        policy=req.policy,
        seed_count=len(seeds),
        mean=MetricsModel(**result.mean),
        std=MetricsModel(**result.std),
        episodes=[_episode_model(r, req.trace) for r in result.runs],
    )


def resolve_sweep_spec(req: SweepRequest) -> SweepSpec:
    params = req.params.to_params()
    if req.preset == "paper":
        params = paper_params(params)
    values = req.values if req.values else PAPER_SWEEP_VALUES[req.axis]
    seeds = req.seeds if req.seeds else [req.seed + k for k in range(req.seed_count)]
    return SweepSpec(axis=req.axis, values=tuple(values), params=params,
                     policies=tuple(req.policies), seeds=tuple(seeds))


def handle_sweep(req: SweepRequest) -> SweepResponse:
    spec = resolve_sweep_spec(req)
    rows = run_sweep(spec, jobs=max(req.jobs, 1),
                     physical_clamp=req.physical_clamp,
                     clamp_cost=req.clamp_cost)
    row_models = [
        SweepRowModel(axis=row.axis_value, policy=row.policy,
                      seed_count=row.seed_count,
                      mean=MetricsModel(**row.mean), std=MetricsModel(**row.std))
        for row in rows
    ]
    return SweepResponse(axis=req.axis, rows=row_models,
                         csv=rows_to_csv(rows),
                         charts=sweep_charts(req.axis, rows))

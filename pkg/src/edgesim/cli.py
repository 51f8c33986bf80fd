"""Command line front end.

The CLI is a thin client of the service layer: it builds the same request
models the HTTP API accepts and renders the responses to stdout and files.
By default requests are handled in-process; pass --server to talk to a
running `edgesim serve` instance instead.
"""

from __future__ import annotations

import csv
from pathlib import Path

import click

from .experiments import AXES
from .params import ConfigError, SystemParams, load_config
from .service import handlers
from .service.schemas import (ParamsModel, RunRequest, RunResponse,
                              SweepRequest, SweepResponse)
from .simulate import TRACE_COLUMNS


class ServiceClient:
    """Dispatches requests either in-process or to a remote service."""

    def __init__(self, server: str | None):
        self.server = server.rstrip("/") if server else None

    def _post(self, path: str, payload: dict) -> dict:
        import httpx

        resp = httpx.post(f"{self.server}{path}", json=payload, timeout=None)
        if resp.status_code != 200:
            raise click.ClickException(f"service error {resp.status_code}: {resp.text}")
        return resp.json()

    def run(self, req: RunRequest) -> RunResponse:
        if self.server is None:
            return handlers.handle_run(req)
        return RunResponse.model_validate(self._post("/run", req.model_dump()))

    def sweep(self, req: SweepRequest) -> SweepResponse:
        if self.server is None:
            return handlers.handle_sweep(req)
        return SweepResponse.model_validate(self._post("/sweep", req.model_dump()))


def _base_params(config: str | None, seed: int | None, slots: int | None) -> ParamsModel:
    try:
        params = load_config(config) if config else SystemParams()
        raw = ParamsModel.from_params(params).model_dump()
        if seed is not None:
            raw["seed"] = seed
        if slots is not None:
            raw["n_slots"] = slots
        model = ParamsModel(**raw)
        model.to_params()  # validate early for a field-level message
        return model
    except ConfigError as exc:
        raise click.ClickException(f"bad config: {exc}") from exc


@click.group()
def main() -> None:
    """Multi-server edge task offloading simulator."""


@main.command()
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON config file; missing keys use the built-in defaults.")
@click.option("--policy", type=click.Choice(["ojtora", "random", "greedy"]),
              default="ojtora", show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=None,
              help="Base PRNG seed (overrides the config).")
@click.option("--seeds", "seed_count", type=click.IntRange(min=1), default=1,
              show_default=True, help="Number of consecutive seeds to run.")
@click.option("--slots", type=click.IntRange(min=1), default=None,
              help="Number of time slots (overrides the config).")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for run.csv and per-seed traces.")
@click.option("--trace", is_flag=True, help="Record a per-slot trace.")
@click.option("--physical-clamp", is_flag=True,
              help="Cap offloaded bits entering the virtual queue at the local backlog.")
@click.option("--no-clamp-cost", is_flag=True,
              help="Use the literal (unclamped) latency residuals in the cost.")
@click.option("--server", default=None, help="Base URL of a running edgesim service.")
def run(config, policy, seed, seed_count, slots, out, trace,
        physical_clamp, no_clamp_cost, server) -> None:
    """Run one scenario and print its average metrics."""
    params = _base_params(config, seed, slots)
    base_seed = params.seed if params.seed is not None else SystemParams().seed
    req = RunRequest(
        params=params,
        policy=policy,
        seeds=[base_seed + k for k in range(seed_count)],
        trace=trace,
        physical_clamp=physical_clamp,
        clamp_cost=not no_clamp_cost,
    )
    resp = ServiceClient(server).run(req)

    click.echo(f"policy={resp.policy} seeds={resp.seed_count} "
               f"slots={resp.episodes[0].slots}")
    for name, value in resp.mean.model_dump().items():
        click.echo(f"{name}={value:.6g} (sd={getattr(resp.std, name):.3g})")
    ratios = [e.stability.ratio for e in resp.episodes if e.stability is not None]
    if ratios:
        click.echo(f"stability_ratio={max(ratios):.4g}")
    click.echo(f"offload_total={sum(e.offload_total for e in resp.episodes):.0f}")

    if out:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        run_csv = out_dir / "run.csv"
        with run_csv.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("seed", "slots") + tuple(resp.mean.model_dump()))
            for ep in resp.episodes:
                writer.writerow((ep.seed, ep.slots) + tuple(
                    repr(v) for v in ep.metrics.model_dump().values()))
        click.echo(f"wrote {run_csv}")
        if trace:
            for ep in resp.episodes:
                path = out_dir / f"trace_seed{ep.seed}.csv"
                with path.open("w", newline="") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(TRACE_COLUMNS)
                    for row in ep.trace or []:
                        writer.writerow([row.slot, repr(row.total_q), repr(row.total_h),
                                         repr(row.power), repr(row.cost), repr(row.offloads)])
                click.echo(f"wrote {path}")


@main.command()
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--sweep", "axis", type=click.Choice(list(AXES)), default=None,
              help="Sweep axis; omit with --preset paper to run all three.")
@click.option("--preset", type=click.Choice(["paper"]), default=None,
              help="Pin the headline experiment settings and sweep values.")
@click.option("--policy", "policies", multiple=True,
              type=click.Choice(["ojtora", "random", "greedy"]),
              help="Policy to include (repeatable; default: all three).")
@click.option("--seed", type=click.IntRange(min=0), default=42, show_default=True)
@click.option("--seeds", "seed_count", type=click.IntRange(min=1), default=3,
              show_default=True)
@click.option("--slots", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(file_okay=False), default="results",
              show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Concurrent sweep cells.")
@click.option("--physical-clamp", is_flag=True)
@click.option("--no-clamp-cost", is_flag=True)
@click.option("--server", default=None, help="Base URL of a running edgesim service.")
def sweep(config, axis, preset, policies, seed, seed_count, slots, out, jobs,
          physical_clamp, no_clamp_cost, server) -> None:
    """Sweep a parameter axis and write CSV tables and SVG charts."""
    if axis is None and preset is None:
        raise click.UsageError("pass --sweep {v|n|m} and/or --preset paper")
    axes = [axis] if axis else list(AXES)
    params = _base_params(config, None, slots)
    client = ServiceClient(server)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)

    for ax in axes:
        req = SweepRequest(
            axis=ax,
            params=params,
            preset=preset,
            policies=list(policies) if policies else ["ojtora", "random", "greedy"],
            seed=seed,
            seed_count=seed_count,
            jobs=jobs,
            physical_clamp=physical_clamp,
            clamp_cost=not no_clamp_cost,
        )
        resp = client.sweep(req)
        csv_path = out_dir / f"sweep_{ax}.csv"
        csv_path.write_text(resp.csv)
        click.echo(f"wrote {csv_path} ({len(resp.rows)} rows)")
        for metric, svg in resp.charts.items():
            svg_path = out_dir / f"sweep_{ax}_{metric}.svg"
            svg_path.write_text(svg)
            click.echo(f"wrote {svg_path}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Start the HTTP service."""
    import uvicorn

    uvicorn.run("edgesim.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()

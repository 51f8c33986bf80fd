"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict

from ..params import SystemParams, params_from_dict

PolicyName = Literal["ojtora", "random", "greedy"]


class ParamsModel(BaseModel):
    """System parameters; every field is optional and defaults like the core."""

    model_config = ConfigDict(extra="forbid")

    tau: Optional[float] = None
    omega: Optional[float] = None
    noise_psd: Optional[float] = None
    g0: Optional[float] = None
    d0: Optional[float] = None
    theta: Optional[float] = None
    k_mod: Optional[float] = None
    f_max_client: Optional[float] = None
    p_max: Optional[float] = None
    cycles_per_bit: Optional[float] = None
    f_max_server: Optional[float] = None
    num_cpus_server: Optional[int] = None
    v: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    a_max: Optional[float] = None
    n_clients: Optional[int] = None
    n_servers: Optional[int] = None
    n_slots: Optional[int] = None
    cell_radius: Optional[float] = None
    seed: Optional[int] = None

    def to_params(self) -> SystemParams:
        raw = {k: v for k, v in self.model_dump().items() if v is not None}
        return params_from_dict(raw)

    @classmethod
    def from_params(cls, params: SystemParams) -> "ParamsModel":
        return cls(**{name: getattr(params, name) for name in cls.model_fields})


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: ParamsModel = ParamsModel()
    policy: PolicyName = "ojtora"
    seeds: Optional[list[int]] = None  # default: [params.seed]
    trace: bool = False
    physical_clamp: bool = False
    clamp_cost: bool = True


class MetricsModel(BaseModel):
    avg_power: float
    avg_queue: float
    avg_cost: float
    avg_capacity: float


class StabilityModel(BaseModel):
    mean_first_half: float
    mean_second_half: float
    ratio: float
    stable: bool


class TraceRow(BaseModel):
    slot: int
    total_q: float
    total_h: float
    power: float
    cost: float
    offloads: float


class EpisodeModel(BaseModel):
    seed: int
    slots: int
    metrics: MetricsModel
    offload_total: float
    stability: Optional[StabilityModel] = None
    trace: Optional[list[TraceRow]] = None


class RunResponse(BaseModel):
    policy: PolicyName
    seed_count: int
    mean: MetricsModel
    std: MetricsModel
    episodes: list[EpisodeModel]


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    axis: Literal["v", "n", "m"]
    params: ParamsModel = ParamsModel()
    preset: Optional[Literal["paper"]] = None
    values: Optional[list[float]] = None  # default: the preset values for the axis
    policies: list[PolicyName] = ["ojtora", "random", "greedy"]
    seed: int = 42
    seed_count: int = 3
    seeds: Optional[list[int]] = None  # overrides seed/seed_count when given
    jobs: int = 1
    physical_clamp: bool = False
    clamp_cost: bool = True


class SweepRowModel(BaseModel):
    axis: float
    policy: PolicyName
    seed_count: int
    mean: MetricsModel
    std: MetricsModel


class SweepResponse(BaseModel):
    axis: Literal["v", "n", "m"]
    rows: list[SweepRowModel]
    csv: str
    charts: dict[str, str]  # metric name -> SVG markup

"""Per-slot decision policies: the online controller and two baselines.

All three policies share the frequency rule, the offload-pressure filter,
the per-candidate power solution and the edge compute allocation; they
differ only in which covering server an offloading client transmits to.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .control import (SlotDecision, allocate_compute, control_weights,
                      optimal_frequency)
from .params import SystemParams
from .physics import LN2
from .topology import Topology


class PolicyKind(str, enum.Enum):
    OJTORA = "ojtora"
    RANDOM = "random"
    GREEDY = "greedy"


@dataclass(frozen=True)
class Observation:
    """Everything a policy may look at when deciding one slot."""

    q: np.ndarray         # (n,) local queues, bits
    h: np.ndarray         # (n,) virtual queues, bits
    arrivals: np.ndarray  # (n,) this slot's arrivals, bits
    fading: np.ndarray    # (n, m) channel fading
    topology: Topology
    params: SystemParams


@dataclass(frozen=True)
class CandidateTables:
    """Per (client, server) power, bits and objective for this slot."""

    psi: np.ndarray        # (n,)
    power: np.ndarray      # (n, m) optimal power per candidate
    bits: np.ndarray       # (n, m) bits sent at that power
    objective: np.ndarray  # (n, m) transmit term of the slot objective
    valid: np.ndarray      # (n, m) candidate mask


def candidate_tables(obs: Observation) -> CandidateTables:
    p, topo = obs.params, obs.topology
    weights = control_weights(obs.q, obs.h, p)
    psi = weights.psi
    bw = topo.bandwidth_share[None, :]
    gains = obs.fading * topo.gain_factor
    valid = topo.coverage & (psi > 0.0)[:, None] & (bw > 0.0)

    if p.beta == 1.0:
        power = np.where(valid, p.p_max, 0.0)
    else:
        scale = p.tau / (p.v * (1.0 - p.beta) * LN2)
        noise_term = np.divide(p.noise_psd * bw, gains,
                               out=np.full_like(gains, np.inf),
                               where=gains > 0.0)
        lam = psi[:, None] * bw * scale - noise_term
        power = np.clip(lam, 0.0, p.p_max)
        power[~valid] = 0.0

    snr = np.divide(gains * power, bw * p.noise_psd,
                    out=np.zeros_like(gains), where=bw > 0.0)
    bits = p.tau * bw * np.log1p(snr) / LN2
    objective = -psi[:, None] * bits + p.v * (1.0 - p.beta) * power
    objective = np.where(valid, objective, np.inf)
    return CandidateTables(psi=psi, power=power, bits=bits,
                           objective=objective, valid=valid)


def _choose_ojtora(tables: CandidateTables, topo: Topology) -> np.ndarray:
    row_min = tables.objective.min(axis=1)
    is_min = tables.objective == row_min[:, None]
    # break exact objective ties by distance, then by server index
    tie_key = np.where(is_min, topo.distances, np.inf)
    choice = tie_key.argmin(axis=1)
    return np.where(row_min < 0.0, choice, -1)


def _choose_greedy(tables: CandidateTables, topo: Topology) -> np.ndarray:
    rows = np.arange(topo.n_clients)
    choice = topo.nearest_server
    ok = tables.valid[rows, choice] & (tables.power[rows, choice] > 0.0)
    return np.where(ok, choice, -1)


def _choose_random(tables: CandidateTables, topo: Topology,
                   rng: np.random.Generator) -> np.ndarray:
    # one uniform per client per slot, used or not, to keep the stream aligned
    u = rng.random(topo.n_clients)
    counts = topo.coverage_counts
    picks = np.minimum((u * counts).astype(int), np.maximum(counts - 1, 0))
    choice = np.array([topo.g_sets[i][picks[i]] for i in range(topo.n_clients)])
    rows = np.arange(topo.n_clients)
    ok = tables.valid[rows, choice] & (tables.power[rows, choice] > 0.0)
    return np.where(ok, choice, -1)


def decide(kind: PolicyKind | str, obs: Observation,
           rng: np.random.Generator) -> SlotDecision:
    """Map one slot's observation to a full control decision.

    Only the random baseline consumes the generator; it still must be passed
    for the other policies so call sites stay uniform.
    """
    kind = PolicyKind(kind)
    p, topo = obs.params, obs.topology
    n = topo.n_clients

    f = optimal_frequency(obs.q, p)
    d_l = p.tau * f / p.cycles_per_bit

    tables = candidate_tables(obs)
    if kind is PolicyKind.OJTORA:
        server = _choose_ojtora(tables, topo)
    elif kind is PolicyKind.GREEDY:
        server = _choose_greedy(tables, topo)
    elif kind is PolicyKind.RANDOM:
        server = _choose_random(tables, topo, rng)
    else:  # pragma: no cover - PolicyKind() already rejects unknown names
        raise ValueError(f"unknown policy kind: {kind!r}")

    rows = np.arange(n)
    offloading = server >= 0
    cols = np.where(offloading, server, 0)
    p_r = np.where(offloading, tables.power[rows, cols], 0.0)
    d_r = np.where(offloading, tables.bits[rows, cols], 0.0)
    x = np.zeros((n, topo.n_servers), dtype=np.int8)
    x[rows[offloading], server[offloading]] = 1

    value = control_weights(obs.q, obs.h, p).value
    d_s = allocate_compute(obs.h, value, topo, p)
    return SlotDecision(f=f, p=p_r, x=x, d_l=d_l, d_r=d_r, d_s=d_s, server=server)

"""Per-slot control subproblems and the slot objective they minimize.

The slot objective trades queue drain against weighted service cost. It
separates per client into a CPU-frequency term (closed form), a transmit
power + server selection term (closed-form power per candidate server,
then a scan over candidates), and an edge compute allocation term (greedy
by marginal benefit).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .params import SystemParams
from .physics import LN2, transmit_rate
from .topology import Topology

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControlWeights:
    """Per-client priorities derived from the queue state.

    psi is the offloading pressure: clients offload only while it is
    positive. value ranks clients for edge compute allocation.
    """

    psi: np.ndarray    # (n,) q - h + v*alpha*beta
    value: np.ndarray  # (n,) v*(1-alpha)*beta + h


def control_weights(q: np.ndarray, h: np.ndarray, params: SystemParams) -> ControlWeights:
    psi = q - h + params.v * params.alpha * params.beta
    value = params.v * (1.0 - params.alpha) * params.beta + h
    return ControlWeights(psi=psi, value=value)


@dataclass(frozen=True)
class SlotDecision:
    """Control output for one slot."""

    f: np.ndarray       # (n,) client CPU frequencies, Hz
    p: np.ndarray       # (n,) client transmit powers, W
    x: np.ndarray       # (n, m) 0/1 offload assignment
    d_l: np.ndarray     # (n,) bits executed locally
    d_r: np.ndarray     # (n,) bits offloaded
    d_s: np.ndarray     # (n,) bits executed at the edge
    server: np.ndarray  # (n,) chosen server index, -1 when not offloading


def optimal_frequency(q, params: SystemParams):
    """CPU frequency minimizing the per-client frequency term of the slot
    objective, clamped to the hardware range. Works elementwise on arrays.
    """
    if params.v <= 0:
        raise ValueError("control weight v must be > 0")
    q = np.asarray(q, dtype=float)
    if np.any(q < 0):
        raise ValueError("queue length must be non-negative")
    if params.beta == 1.0:
        f = np.full_like(q, params.f_max_client)
    else:
        gain = (q + params.v * params.alpha * params.beta) * params.tau
        curvature = 3.0 * params.k_mod * params.v * (1.0 - params.beta) * params.cycles_per_bit
        f = np.minimum(np.sqrt(gain / curvature), params.f_max_client)
    return float(f) if f.ndim == 0 else f


def optimal_power(psi: float, gain: float, bandwidth: float, params: SystemParams) -> float:
    """Transmit power minimizing the per-client power term for one candidate
    server, clamped to [0, p_max]. Zero pressure or a dead channel means the
    client keeps the slot to itself.
    """
    if params.beta == 1.0:
        return params.p_max
    if psi <= 0.0:
        return 0.0
    if bandwidth <= 0:
        raise ValueError("candidate server has no bandwidth share")
    if gain <= 0.0:
        logger.debug("no viable channel (gain=%r) despite pressure %r", gain, psi)
        return 0.0
    lam = (psi * params.tau * bandwidth / (params.v * (1.0 - params.beta) * LN2)
           - params.noise_psd * bandwidth / gain)
    return min(max(lam, 0.0), params.p_max)


def offload_objective(psi: float, d_r: float, power: float, params: SystemParams) -> float:
    """Per-client transmit term of the slot objective: -psi*d_r + v(1-beta)*p."""
    return -psi * d_r + params.v * (1.0 - params.beta) * power


def select_server(i: int, q: np.ndarray, h: np.ndarray, topology: Topology,
                  fading: np.ndarray, params: SystemParams):
    """Pick the offload target for client i, with its power and bits sent.

    Scans the covering servers, solving the power subproblem for each, and
    keeps the one with the lowest objective (ties: nearer server, then lower
    index). Returns (None, 0.0, 0.0) when offloading cannot help.
    """
    weights = control_weights(q, h, params)
    psi = float(weights.psi[i])
    candidates = topology.g_sets[i]
    if len(candidates) == 0:
        raise ValueError(f"client {i} has no covering server")
    if psi <= 0.0:
        return None, 0.0, 0.0

    best = None  # (objective, distance, j, p, d_r)
    for j in candidates:
        b_j = float(topology.bandwidth_share[j])
        gain = float(fading[i, j]) * float(topology.gain_factor[i, j])
        p_ij = optimal_power(psi, gain, b_j, params)
        d_r = params.tau * transmit_rate(b_j, gain, p_ij, params.noise_psd, 1)
        obj = offload_objective(psi, d_r, p_ij, params)
        key = (obj, float(topology.distances[i, j]), int(j))
        if best is None or key < best[:3]:
            best = (*key, p_ij, d_r)

    obj, _, j_star, p_star, d_r = best
    if obj >= 0.0 or p_star <= 0.0:
        return None, 0.0, 0.0
    return j_star, p_star, d_r


def allocate_compute_with_usage(h: np.ndarray, value: np.ndarray,
                                topology: Topology, params: SystemParams):
    """Edge compute allocation plus the per-server cycles actually spent.

    Clients are served in decreasing value order. A client whose demand fits
    in the pooled leftover cycles of its covering servers is served fully,
    debiting each server in proportion to its leftover; otherwise it takes
    everything that is left and those servers are exhausted.
    """
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise ValueError("virtual queue must be non-negative")
    n = h.shape[0]
    cap = params.server_cycle_capacity
    rest = [cap] * topology.n_servers
    d_s = [0.0] * n
    order = np.argsort(-np.asarray(value), kind="stable").tolist()
    backlog = h.tolist()
    covering = topology.g_index_lists
    cycles_per_bit = params.cycles_per_bit
    for i in order:
        h_i = backlog[i]
        if h_i <= 0.0:
            continue
        cov = covering[i]
        pool = 0.0
        for j in cov:
            pool += rest[j]
        if pool <= 0.0:
            continue
        demand = h_i * cycles_per_bit
        if pool >= demand:
            d_s[i] = h_i
            keep = 1.0 - demand / pool
            for j in cov:
                rest[j] *= keep
        else:
            d_s[i] = pool / cycles_per_bit
            for j in cov:
                rest[j] = 0.0
    return np.asarray(d_s), cap - np.asarray(rest)


def allocate_compute(h: np.ndarray, value: np.ndarray, topology: Topology,
                     params: SystemParams) -> np.ndarray:
    """Bits of each client's offloaded backlog executed at the edge this slot."""
    d_s, _ = allocate_compute_with_usage(h, value, topology, params)
    return d_s


def _check_decision(decision: SlotDecision, params: SystemParams) -> None:
    if np.any(decision.f < 0) or np.any(decision.f > params.f_max_client * (1 + 1e-12)):
        raise ValueError("frequency outside [0, f_max_client]")
    if np.any(decision.p < 0) or np.any(decision.p > params.p_max * (1 + 1e-12)):
        raise ValueError("power outside [0, p_max]")
    if np.any(decision.x.sum(axis=1) > 1):
        raise ValueError("a client offloads to more than one server")
    for name in ("d_l", "d_r", "d_s"):
        if np.any(getattr(decision, name) < 0):
            raise ValueError(f"{name} must be non-negative")
    total_cap = decision.x.shape[1] * params.server_cycle_capacity
    if decision.d_s.sum() * params.cycles_per_bit > total_cap * (1 + 1e-9):
        raise ValueError("edge allocation exceeds the pooled cycle capacity")


def drift_penalty_objective(decision: SlotDecision, q: np.ndarray, h: np.ndarray,
                            params: SystemParams) -> float:
    """Value of the slot objective for an arbitrary feasible decision.

    This is the quantity the control layer minimizes each slot; the cost
    term here is the literal (unclamped) form so the closed-form pieces are
    exact minimizers of it.
    """
    _check_decision(decision, params)
    d_sum = decision.d_l + decision.d_r
    p_local = params.k_mod * decision.f ** 3
    latency = (params.alpha * (q - d_sum)
               + (1.0 - params.alpha) * (h - decision.d_s))
    cost = params.beta * latency + (1.0 - params.beta) * (p_local + decision.p)
    drift = -(q * d_sum).sum() - (h * (decision.d_s - decision.d_r)).sum()
    return float(drift + params.v * cost.sum())

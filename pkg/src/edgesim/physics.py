"""Physical-layer formulas and per-slot random draws."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import SystemParams
from .topology import Topology

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SlotDraw:
    """Random inputs revealed at the start of a slot."""

    arrivals: np.ndarray  # (n,) bits, uniform on [0, a_max]
    fading: np.ndarray    # (n, m) unit-mean exponential channel fading


def draw_slot(params: SystemParams, rng: np.random.Generator) -> SlotDraw:
    """Sample one slot of arrivals and fading from the given stream.

    Fading uses the inverse-CDF transform -ln(1-u) of the uniform stream so
    the draw sequence is pinned down by the generator algorithm alone.
    """
    arrivals = params.a_max * rng.random(params.n_clients)
    u = rng.random((params.n_clients, params.n_servers))
    fading = -np.log1p(-u)
    return SlotDraw(arrivals=arrivals, fading=fading)


def channel_gain(topology: Topology, fading_ij: float, params: SystemParams,
                 i: int, j: int) -> float:
    """Channel power gain between client i and server j for one slot."""
    if not topology.coverage[i, j]:
        raise ValueError(f"client {i} is not covered by server {j}")
    if fading_ij < 0:
        raise ValueError(f"fading must be >= 0, got {fading_ij!r}")
    d = topology.distances[i, j]
    return fading_ij * params.g0 * (params.d0 / d) ** params.theta


def transmit_rate(bandwidth: float, gain: float, power: float,
                  noise_psd: float, x_ij: int) -> float:
    """Shannon uplink rate in bit/s; zero when the client is not offloading."""
    if not x_ij:
        return 0.0
    if bandwidth <= 0:
        raise ValueError("offloading to a server with no bandwidth share")
    if power < 0:
        raise ValueError(f"power must be >= 0, got {power!r}")
    snr = gain * power / (bandwidth * noise_psd)
    return bandwidth * math.log1p(snr) / LN2


def local_exec_bits(freq: float, params: SystemParams) -> float:
    """Bits a client executes locally in one slot at CPU frequency freq."""
    if not 0 <= freq <= params.f_max_client:
        raise ValueError(f"frequency {freq!r} outside [0, {params.f_max_client}]")
    return params.tau * freq / params.cycles_per_bit


def local_power(freq: float, params: SystemParams) -> float:
    """CPU power draw of local execution (cubic in frequency)."""
    if freq < 0:
        raise ValueError(f"frequency must be >= 0, got {freq!r}")
    return params.k_mod * freq ** 3

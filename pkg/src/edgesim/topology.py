"""Server/client placement and static coverage structure.

Servers sit on a square grid whose spacing keeps adjacent coverage disks
overlapping; clients are drawn uniformly over the union of the coverage
disks, so every client can reach at least one server.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .params import SystemParams

# Grid pitch as a multiple of the coverage radius. Below 2.0 the disks of
# adjacent servers overlap; the chosen pitch puts roughly half the clients
# inside a multi-server band, so server selection is a real decision.
GRID_SPACING_FACTOR = 0.75

# Zero distances are nudged to avoid dividing by zero in the path-loss term.
MIN_DISTANCE = 0.01

_MAX_SAMPLE_TRIES = 10_000


@dataclass(frozen=True)
class Topology:
    """Static placement, coverage sets and per-server bandwidth shares."""

    client_pos: np.ndarray      # (n, 2) m
    server_pos: np.ndarray      # (m, 2) m
    distances: np.ndarray       # (n, m) m, strictly positive
    coverage: np.ndarray        # (n, m) bool
    g_sets: tuple               # per client: indices of covering servers
    z_sets: tuple               # per server: indices of covered clients
    bandwidth_share: np.ndarray  # (m,) Hz; 0 for servers covering nobody
    nearest_server: np.ndarray  # (n,) closest covering server per client
    gain_factor: np.ndarray     # (n, m) g0 * (d0/d)^theta

    @property
    def n_clients(self) -> int:
        return self.client_pos.shape[0]

    @property
    def n_servers(self) -> int:
        return self.server_pos.shape[0]

    @cached_property
    def coverage_counts(self) -> np.ndarray:
        return self.coverage.sum(axis=1)

    @cached_property
    def g_index_lists(self) -> tuple:
        """g_sets as plain int tuples, cheap to iterate in hot loops."""
        return tuple(tuple(int(j) for j in g) for g in self.g_sets)


def _server_grid(n_servers: int, spacing: float) -> np.ndarray:
    cols = math.ceil(math.sqrt(n_servers))
    pos = [(spacing * (k % cols), spacing * (k // cols)) for k in range(n_servers)]
    return np.asarray(pos, dtype=float)


def topology_from_positions(client_pos: np.ndarray, server_pos: np.ndarray,
                            params: SystemParams) -> Topology:
    """Derive the full coverage structure from fixed placements."""
    client_pos = np.asarray(client_pos, dtype=float)
    server_pos = np.asarray(server_pos, dtype=float)
    n, m = client_pos.shape[0], server_pos.shape[0]

    distances = np.linalg.norm(client_pos[:, None, :] - server_pos[None, :, :], axis=2)
    distances = np.where(distances == 0.0, MIN_DISTANCE, distances)
    coverage = distances <= params.cell_radius
    if not coverage.any(axis=1).all():
        raise RuntimeError("every client must lie inside at least one coverage disk")

    g_sets = tuple(np.flatnonzero(coverage[i]) for i in range(n))
    z_sets = tuple(np.flatnonzero(coverage[:, j]) for j in range(m))
    z_counts = coverage.sum(axis=0)
    bandwidth_share = np.where(z_counts > 0, params.omega / np.maximum(z_counts, 1), 0.0)

    masked = np.where(coverage, distances, np.inf)
    nearest_server = masked.argmin(axis=1)
    gain_factor = params.g0 * (params.d0 / distances) ** params.theta

    return Topology(
        client_pos=client_pos,
        server_pos=server_pos,
        distances=distances,
        coverage=coverage,
        g_sets=g_sets,
        z_sets=z_sets,
        bandwidth_share=bandwidth_share,
        nearest_server=nearest_server,
        gain_factor=gain_factor,
    )


def build_topology(params: SystemParams, rng: np.random.Generator) -> Topology:
    """Place servers and clients and derive the static coverage structure.

    Deterministic for a fixed generator state. Raises RuntimeError if a
    client cannot be placed inside any coverage disk (cannot happen with
    the rejection sampler, guarded anyway).
    """
    n, m, radius = params.n_clients, params.n_servers, params.cell_radius
    server_pos = _server_grid(m, GRID_SPACING_FACTOR * radius)

    lo = server_pos.min(axis=0) - radius
    hi = server_pos.max(axis=0) + radius
    client_pos = np.empty((n, 2))
    for i in range(n):
        for _ in range(_MAX_SAMPLE_TRIES):
            pt = lo + rng.random(2) * (hi - lo)
            if np.min(np.linalg.norm(server_pos - pt, axis=1)) <= radius:
                client_pos[i] = pt
                break
        else:
            raise RuntimeError(f"could not place client {i} inside any coverage disk")

    return topology_from_positions(client_pos, server_pos, params)

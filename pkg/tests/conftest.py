from dataclasses import replace

import numpy as np
import pytest

from edgesim.params import SystemParams
from edgesim.policies import Observation
from edgesim.topology import Topology, topology_from_positions


@pytest.fixture
def params():
    return SystemParams()


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))


def random_observation(sampler, params=None, n=None, m=None):
    """Random small scenario: covered clients, queue state and fading."""
    params = params or SystemParams()
    n = n or int(sampler.integers(1, 8))
    m = m or int(sampler.integers(1, 4))
    params = replace(params, n_clients=n, n_servers=m)
    server_pos = np.column_stack([np.arange(m) * 112.5, np.zeros(m)])
    client_pos = np.empty((n, 2))
    for i in range(n):
        anchor = server_pos[sampler.integers(m)]
        client_pos[i] = anchor + (sampler.random(2) - 0.5) * 150.0
        while np.min(np.linalg.norm(server_pos - client_pos[i], axis=1)) > params.cell_radius:
            client_pos[i] = anchor + (sampler.random(2) - 0.5) * 150.0
    topo = topology_from_positions(client_pos, server_pos, params)
    q = sampler.random(n) * 5e4
    h = sampler.random(n) * 2e4
    arrivals = sampler.random(n) * params.a_max
    fading = -np.log1p(-sampler.random((n, m)))
    return Observation(q=q, h=h, arrivals=arrivals, fading=fading,
                       topology=topo, params=params)


def two_server_topology(params, client_xy=((60.0, 0.0),)):
    """Clients on the axis between two servers 120 m apart."""
    return topology_from_positions(np.asarray(client_xy, dtype=float),
                                   np.array([[0.0, 0.0], [120.0, 0.0]]),
                                   params)


def synthetic_topology(coverage, params, near=10.0):
    """Topology with an arbitrary coverage pattern.

    Covered pairs sit at `near` metres, everything else far outside the
    cell radius; positions are dummies, all derived fields stay coherent.
    """
    coverage = np.asarray(coverage, dtype=bool)
    n, m = coverage.shape
    if not coverage.any(axis=1).all():
        raise ValueError("every client needs at least one covering server")
    distances = np.where(coverage, near, 10.0 * params.cell_radius)
    z_counts = coverage.sum(axis=0)
    return Topology(
        client_pos=np.zeros((n, 2)),
        server_pos=np.zeros((m, 2)),
        distances=distances,
        coverage=coverage,
        g_sets=tuple(np.flatnonzero(coverage[i]) for i in range(n)),
        z_sets=tuple(np.flatnonzero(coverage[:, j]) for j in range(m)),
        bandwidth_share=np.where(z_counts > 0, params.omega / np.maximum(z_counts, 1), 0.0),
        nearest_server=np.where(coverage, distances, np.inf).argmin(axis=1),
        gain_factor=params.g0 * (params.d0 / distances) ** params.theta,
    )

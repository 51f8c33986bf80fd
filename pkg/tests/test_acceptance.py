"""Acceptance gate: every criterion prints one PASS/FAIL line.

Run with `pytest -s tests/test_acceptance.py` to watch the lines as they
appear. The full-scale scenario runs and the paper-preset sweeps make this
module take several minutes; everything else in the suite stays fast.
"""

import time

import numpy as np
import pytest
from click.testing import CliRunner

from conftest import random_observation, synthetic_topology
from edgesim.cli import main as cli_main
from edgesim.control import (allocate_compute_with_usage,
                             drift_penalty_objective, optimal_frequency,
                             optimal_power)
from edgesim.params import SystemParams
from edgesim.policies import PolicyKind, decide
from edgesim.queues import update_local, update_virtual
from edgesim.simulate import run_replications

GRID_POINTS = 100_001
DEFAULT_SEEDS = (42, 43, 44, 45, 46)
JOBS = 2


def report(num: int, name: str, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


# ------------------------------------------------------------ fixtures

@pytest.fixture(scope="module")
def default_replications():
    """Five-seed replications of the default scenario for every policy."""
    params = SystemParams()
    t0 = time.time()
    out = {kind: run_replications(params, kind, DEFAULT_SEEDS, jobs=JOBS)
           for kind in ("ojtora", "greedy", "random")}
    return out, time.time() - t0


@pytest.fixture(scope="module")
def paper_sweep_invocations(tmp_path_factory):
    """Two full `sweep --preset paper --seed 42` CLI invocations."""
    runner = CliRunner()
    dirs = []
    for name in ("first", "second"):
        out = tmp_path_factory.mktemp(f"paper_{name}")
        result = runner.invoke(cli_main, [
            "sweep", "--preset", "paper", "--seed", "42",
            "--out", str(out), "--jobs", str(JOBS)])
        assert result.exit_code == 0, result.output
        dirs.append(out)
    return dirs


def _csv_column(csv_text: str, policy: str, column: str):
    lines = csv_text.splitlines()
    header = lines[0].split(",")
    axis_i, policy_i, col_i = (header.index(k) for k in ("axis", "policy", column))
    rows = [line.split(",") for line in lines[1:]]
    picked = [(float(r[axis_i]), float(r[col_i])) for r in rows if r[policy_i] == policy]
    return [v for _, v in sorted(picked)]


# ------------------------------------------------------------ criteria

def test_criterion_01_frequency_oracle_equivalence():
    sampler = np.random.Generator(np.random.PCG64(1001))
    t0 = time.time()
    fs = np.linspace(0.0, 1e9, GRID_POINTS)
    step = fs[1] - fs[0]
    worst = 0.0
    for _ in range(1000):
        params = SystemParams(
            v=10 ** sampler.uniform(8, 10),
            alpha=sampler.uniform(0.3, 0.7),
            beta=10 ** sampler.uniform(-6, -5),
        )
        q = sampler.random() * 1e6
        gain = (q + params.v * params.alpha * params.beta) * params.tau
        summand = (-gain * fs / params.cycles_per_bit
                   + params.v * (1 - params.beta) * params.k_mod * fs ** 3)
        oracle = fs[np.argmin(summand)]
        worst = max(worst, abs(optimal_frequency(q, params) - oracle))
    elapsed = time.time() - t0
    ok = worst <= step and elapsed < 10.0
    assert report(1, "frequency-oracle-equivalence", ok,
                  f"max |closed-grid|={worst:.1f} Hz vs step {step:.1f} Hz, {elapsed:.1f}s")


def test_criterion_02_power_oracle_equivalence():
    sampler = np.random.Generator(np.random.PCG64(1002))
    t0 = time.time()
    base = SystemParams()
    ps = np.linspace(0.0, base.p_max, GRID_POINTS)
    step = ps[1] - ps[0]
    worst = 0.0
    for _ in range(1000):
        params = SystemParams(
            v=10 ** sampler.uniform(8, 10),
            alpha=sampler.uniform(0.3, 0.7),
            beta=10 ** sampler.uniform(-6, -5),
        )
        psi = 10 ** sampler.uniform(1, 6)
        gain = 10 ** sampler.uniform(-15, -9)
        bandwidth = 10 ** sampler.uniform(4, 7)
        snr = gain * ps / (bandwidth * params.noise_psd)
        summand = (-psi * params.tau * bandwidth * np.log2(1 + snr)
                   + params.v * (1 - params.beta) * ps)
        oracle = ps[np.argmin(summand)]
        worst = max(worst, abs(optimal_power(psi, gain, bandwidth, params) - oracle))
    branch_max = optimal_power(5.0, 1e-10, 1e5, SystemParams(beta=1.0))
    branch_zero = optimal_power(0.0, 1e-10, 1e5, SystemParams())
    branch_neg = optimal_power(-1e4, 1e-10, 1e5, SystemParams())
    elapsed = time.time() - t0
    ok = (worst <= step and elapsed < 10.0
          and branch_max == SystemParams().p_max
          and branch_zero == 0.0 and branch_neg == 0.0)
    assert report(2, "power-oracle-equivalence", ok,
                  f"max |closed-grid|={worst:.2e} W vs step {step:.2e} W, "
                  f"branches max={branch_max} zero={branch_zero}, {elapsed:.1f}s")


def test_criterion_03_edge_allocation_feasible_and_prioritized():
    sampler = np.random.Generator(np.random.PCG64(1003))
    violations = []
    for trial in range(1000):
        n = int(sampler.integers(1, 21))
        m = int(sampler.integers(1, 6))
        coverage = sampler.random((n, m)) < 0.5
        for i in range(n):
            if not coverage[i].any():
                coverage[i, sampler.integers(m)] = True
        if n >= 4:  # identical-coverage pairs exercise the priority rule
            coverage[1] = coverage[0]
            coverage[3] = coverage[2]
        params = SystemParams(n_clients=n, n_servers=m)
        topo = synthetic_topology(coverage, params)
        h = sampler.random(n) * 5e4
        value = sampler.random(n) * 1e5
        d_s, spent = allocate_compute_with_usage(h, value, topo, params)
        cap = params.server_cycle_capacity
        if np.any(spent > cap * (1 + 1e-9)):
            violations.append((trial, "capacity"))
        if np.any(d_s > h * (1 + 1e-12)):
            violations.append((trial, "overserve"))
        for i in range(n):
            for k in range(n):
                if (np.array_equal(coverage[i], coverage[k])
                        and value[i] > value[k] and d_s[k] > 0
                        and abs(d_s[i] - h[i]) > 1e-9 * max(h[i], 1.0)):
                    violations.append((trial, "priority"))
    ok = not violations
    assert report(3, "edge-allocation-feasibility-priority", ok,
                  f"1000 instances, violations={violations[:3]}")


def test_criterion_04_per_slot_dominance():
    sampler = np.random.Generator(np.random.PCG64(1004))
    worst_gap = 0.0
    failures = 0
    for trial in range(1000):
        obs = random_observation(sampler)
        rng = lambda: np.random.Generator(np.random.PCG64(trial))
        obj = {kind: drift_penalty_objective(decide(kind, obs, rng()),
                                             obs.q, obs.h, obs.params)
               for kind in PolicyKind}
        for other in (PolicyKind.RANDOM, PolicyKind.GREEDY):
            gap = obj[PolicyKind.OJTORA] - obj[other]
            worst_gap = max(worst_gap, gap)
            if gap > 0.0:
                failures += 1
    ok = failures == 0
    assert report(4, "per-slot-dominance", ok,
                  f"1000 paired observations, failures={failures}, "
                  f"worst objective excess={worst_gap:.3g}")


def test_criterion_05_cost_ordering_at_defaults(default_replications):
    reps, elapsed = default_replications
    cost = {k: reps[k].mean["avg_cost"] for k in reps}
    improvement = (cost["random"] - cost["ojtora"]) / cost["random"] * 100
    ordering = cost["ojtora"] < cost["greedy"] < cost["random"]
    ok = ordering and improvement >= 10.0 and elapsed < 120.0
    assert report(5, "default-scenario-cost-ordering", ok,
                  f"ojtora={cost['ojtora']:.5f} < greedy={cost['greedy']:.5f} "
                  f"< random={cost['random']:.5f}, improvement={improvement:.1f}% "
                  f"(>=10%), {elapsed:.0f}s (<120s)")


def test_criterion_06_capacity_non_increasing_in_v(paper_sweep_invocations):
    csv_text = (paper_sweep_invocations[0] / "sweep_v.csv").read_text()
    caps = _csv_column(csv_text, "ojtora", "avg_capacity")
    violations = [(i, (b - a) / a * 100)
                  for i, (a, b) in enumerate(zip(caps, caps[1:])) if b > a]
    ok = len(violations) == 0 or (len(violations) == 1 and violations[0][1] <= 2.0)
    assert report(6, "capacity-trend-in-v", ok,
                  f"capacities={[f'{c:.3f}' for c in caps]}, "
                  f"adjacent increases={[(i, f'{v:.2f}%') for i, v in violations]}")


def test_criterion_07_cost_increasing_in_n(paper_sweep_invocations):
    csv_text = (paper_sweep_invocations[0] / "sweep_n.csv").read_text()
    details = []
    ok = True
    for policy in ("ojtora", "random", "greedy"):
        costs = _csv_column(csv_text, policy, "avg_cost")
        increasing = all(b > a for a, b in zip(costs, costs[1:]))
        ok &= increasing
        details.append(f"{policy}:{'up' if increasing else 'NOT-UP'}")
    assert report(7, "cost-trend-in-n", ok, ", ".join(details))


def test_criterion_08_queue_stability_at_defaults(default_replications):
    reps, _ = default_replications
    ratios = [r.stability.ratio for r in reps["ojtora"].runs]
    ok = all(r <= 2.0 for r in ratios)
    assert report(8, "queue-stability", ok,
                  f"half-to-half ratios={[f'{r:.3f}' for r in ratios]} (<=2.0)")


def test_criterion_09_preset_sweep_bit_identical(paper_sweep_invocations):
    first, second = paper_sweep_invocations
    mismatches = []
    for axis in ("v", "n", "m"):
        a = (first / f"sweep_{axis}.csv").read_bytes()
        b = (second / f"sweep_{axis}.csv").read_bytes()
        if a != b:
            mismatches.append(axis)
    ok = not mismatches
    assert report(9, "preset-sweep-determinism", ok,
                  f"three sweep CSVs compared byte-wise, mismatches={mismatches}")


def test_criterion_10_queue_update_unit_suite():
    cases_local = [
        ((500.0, 200.0, 100.0), 400.0),
        ((100.0, 200.0, 50.0), 50.0),
        ((0.0, 0.0, 1000.0), 1000.0),
    ]
    cases_virtual = [
        ((300.0, 300.0, 0.0), 0.0),
        ((300.0, 500.0, 120.0), 120.0),
        ((0.0, 0.0, 0.0), 0.0),
    ]
    bad = []
    for args, want in cases_local:
        if update_local(*args) != want:
            bad.append(("local", args))
    for args, want in cases_virtual:
        if update_virtual(*args) != want:
            bad.append(("virtual", args))
    ok = not bad
    assert report(10, "queue-update-unit-suite", ok,
                  f"6 exact cases, failures={bad}")

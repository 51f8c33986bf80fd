"""System constants and JSON configuration loading.

All values are stored in linear SI units (W, Hz, bits, seconds). The common
dB/dBm figures from the wireless literature are pre-converted: -174 dBm/Hz
noise density becomes ~3.98e-21 W/Hz and a -40 dB path-loss constant becomes
1e-4.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

# -174 dBm/Hz expressed in W/Hz.
NOISE_PSD_DEFAULT = 10 ** (-174.0 / 10.0) * 1e-3

# Per-server bandwidth. The headline experiments run the system moderately
# loaded: offloading carries a real share of the arriving work while local
# queues still build up, which is the regime where server selection and the
# control parameter V visibly matter.
OMEGA_DEFAULT = 5e5


class ConfigError(ValueError):
    """Invalid configuration value or malformed config file."""


@dataclass(frozen=True)
class SystemParams:
    """Physical and algorithmic constants for one simulation run."""

    tau: float = 2e-3                 # slot length, s
    omega: float = OMEGA_DEFAULT      # total bandwidth per server, Hz
    noise_psd: float = NOISE_PSD_DEFAULT  # noise power spectral density, W/Hz
    g0: float = 1e-4                  # path-loss constant at reference distance
    d0: float = 1.0                   # reference distance, m
    theta: float = 4.0                # path-loss exponent
    k_mod: float = 1e-27              # effective switched capacitance
    f_max_client: float = 1e9         # max client CPU frequency, Hz
    p_max: float = 0.5                # max client transmit power, W
    cycles_per_bit: float = 737.5     # CPU cycles needed per bit of task input
    f_max_server: float = 2.5e9       # max server CPU frequency per core, Hz
    num_cpus_server: int = 4          # CPU cores per edge server
    v: float = 1e9                    # queue/cost trade-off control weight
    alpha: float = 0.3                # local vs offloaded latency weight
    beta: float = 1e-5                # latency vs power weight
    a_max: float = 1000.0             # max per-slot task arrival, bits
    n_clients: int = 30
    n_servers: int = 3
    n_slots: int = 10000
    cell_radius: float = 150.0        # server coverage radius, m
    seed: int = 42

    def __post_init__(self) -> None:
        positive = (
            "tau", "omega", "noise_psd", "g0", "d0", "theta",
            "k_mod", "f_max_client", "p_max", "cycles_per_bit",
            "f_max_server", "num_cpus_server", "v", "cell_radius",
        )
        for name in positive:
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name}: must be > 0, got {getattr(self, name)!r}")
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name}: must be in [0, 1], got {value!r}")
        if self.a_max < 0:
            raise ConfigError(f"a_max: must be >= 0, got {self.a_max!r}")
        for name in ("n_clients", "n_servers", "n_slots"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name}: must be >= 1, got {getattr(self, name)!r}")
        if self.seed < 0:
            raise ConfigError(f"seed: must be >= 0, got {self.seed!r}")

    @property
    def server_cycle_capacity(self) -> float:
        """Per-server CPU cycles available within one slot."""
        return self.tau * self.num_cpus_server * self.f_max_server


_INT_FIELDS = {"num_cpus_server", "n_clients", "n_servers", "n_slots", "seed"}


def params_from_dict(raw: dict) -> SystemParams:
    """Build SystemParams from a plain dict; unknown keys are rejected."""
    known = {f.name for f in fields(SystemParams)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    values = {}
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: expected a number, got {value!r}")
        values[key] = int(value) if key in _INT_FIELDS else float(value)
    return SystemParams(**values)


def load_config(path: str | Path) -> SystemParams:
    """Load a JSON config file; missing keys fall back to the defaults."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return params_from_dict(raw)

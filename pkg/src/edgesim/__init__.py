"""Discrete-time simulator and online control for multi-server edge offloading."""

from .control import (ControlWeights, SlotDecision, allocate_compute,
                      control_weights, drift_penalty_objective,
                      optimal_frequency, optimal_power, select_server)
from .params import ConfigError, SystemParams, load_config
from .physics import (SlotDraw, channel_gain, draw_slot, local_exec_bits,
                      local_power, transmit_rate)
from .policies import Observation, PolicyKind, decide
from .queues import (QueueState, StabilityReport, stability_diagnostic,
                     update_local, update_virtual)
from .simulate import (ReplicationResult, RunResult, run_episode,
                       run_replications, service_cost)
from .topology import Topology, build_topology

__all__ = [
    "ConfigError", "ControlWeights", "Observation", "PolicyKind", "QueueState",
    "ReplicationResult", "RunResult", "SlotDecision", "SlotDraw",
    "StabilityReport", "SystemParams", "Topology", "allocate_compute",
    "build_topology", "channel_gain", "control_weights", "decide",
    "draw_slot", "drift_penalty_objective", "load_config", "local_exec_bits",
    "local_power", "optimal_frequency", "optimal_power", "run_episode",
    "run_replications", "select_server", "service_cost",
    "stability_diagnostic", "transmit_rate", "update_local", "update_virtual",
]

"""Discrete-time simulator for matching-based self-adjusting ToR-to-ToR networks."""

from tmtsim.costs import (
    CostLedger,
    StepCost,
    adjustment_cost,
    edge_distance_cost,
    no_direct_cost,
    service_cost,
    switch_change_cost,
)
from tmtsim.engine import ConfigError, SimConfig, SimResult, replay_verify, run
from tmtsim.model import (
    AdjMode,
    CostParams,
    Edge,
    Matching,
    NetworkSnapshot,
    Request,
    SwitchConfig,
    SwitchKind,
    Trace,
    union_snapshot,
    validate_matching,
)
from tmtsim.policy import DemandMatrix, PolicyParams, decide_reconfig, propose_matching, record_request
from tmtsim.switches import InactiveScope, SwitchState
from tmtsim.traffic import Pattern, PatternSpec, generate, parse_trace, write_trace

__version__ = "0.1.0"

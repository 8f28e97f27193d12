"""Discrete-time simulation loop.

Each slot t: finish due reconfigurations, take the snapshot, serve the
request on it, then let the controllers act and charge the adjustment
between the nominal matchings before and after.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from tmtsim.costs import CostLedger, StepCost, adjustment_cost, service_cost
from tmtsim.model import AdjMode, CostParams, NetworkSnapshot, SwitchKind, Trace, union_snapshot
from tmtsim.policy import DemandMatrix, PolicyParams, decide_reconfig, propose_matching
from tmtsim.switches import (
    InactiveScope,
    active_edges,
    apply_now,
    begin_reconfig,
    finalize_due,
    initial_state,
    rotor_due_target,
)


class ConfigError(ValueError):
    pass


class TraceMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    n: int
    k: int
    switches: tuple
    cost: CostParams = field(default_factory=CostParams)
    policy: Optional[PolicyParams] = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "switches", tuple(self.switches))
        self.validate()

    def validate(self) -> None:
        if self.n < 2:
            raise ConfigError(f"n must be at least 2, got {self.n}")
        if len(self.switches) != self.k:
            raise ConfigError(
                f"k={self.k} but {len(self.switches)} switches are listed (invariant |switches| = k)"
            )
        for i, sw in enumerate(self.switches):
            if sw.switch_id != i:
                raise ConfigError(f"switch at position {i} has switch_id {sw.switch_id}")
            for m in sw.pool:
                if m.n != self.n:
                    raise ConfigError(f"switch {i} has a matching over n={m.n}, config n={self.n}")
        try:
            self.cost.penalty(self.n)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.seed < 0:
            raise ConfigError(f"seed must be unsigned, got {self.seed}")

    @property
    def has_demand_aware(self) -> bool:
        return any(sw.kind is SwitchKind.DEMAND_AWARE for sw in self.switches)

    @property
    def policy_params(self) -> PolicyParams:
        return self.policy if self.policy is not None else PolicyParams()


@dataclass(frozen=True)
class SimResult:
    ledger: CostLedger
    per_switch_reconfig_counts: tuple
    mean_hop_count: Fraction
    # per slot, the number of active edges contributed by each switch
    snapshot_log: tuple = ()
    # per switch, slots in which some of its committed edges were down
    inactive_slots: tuple = ()
    snapshots: Optional[tuple] = None

    @property
    def bandwidth_tax(self) -> Fraction:
        """Mean extra hops per served (reachable) request beyond a direct link."""
        if not any(not s.unreachable for s in self.ledger.steps):
            return Fraction(0)
        return self.mean_hop_count - 1


def _scope(mode: AdjMode) -> InactiveScope:
    if mode is AdjMode.NO_DIRECT_WHOLE_SWITCH:
        return InactiveScope.WHOLE_SWITCH
    return InactiveScope.CHANGED_EDGES


def run(config: SimConfig, trace: Trace, keep_snapshots: bool = False) -> SimResult:
    n, mode, alpha = config.n, config.cost.adj_mode, config.cost.alpha
    if trace.max_node() >= n:
        raise TraceMismatch(f"trace uses node {trace.max_node()} but n={n}")
    policy = config.policy_params
    states = [initial_state(sw, n) for sw in config.switches]
    demand = DemandMatrix(n, decay=policy.decay)
    reconfigs = [0] * config.k
    inactive = [0] * config.k
    steps, log, snaps = [], [], []
    hops, reachable = Fraction(0), 0

    for req in trace:
        t = req.t
        states = [finalize_due(s, t) for s in states]
        active = [active_edges(s, t) for s in states]
        snapshot: NetworkSnapshot = union_snapshot(list(enumerate(active)), n)
        srv, unreachable = service_cost(req, snapshot, config.cost)
        if not unreachable:
            hops += srv
            reachable += 1
        log.append(tuple(len(a) for a in active))
        for i, (s, a) in enumerate(zip(states, active)):
            if len(a) < len(s.nominal):
                inactive[i] += 1
        if keep_snapshots:
            snaps.append(snapshot)

        demand.record(req)
        before = [s.nominal for s in states]

        def commit(i, target):
            if mode.is_no_direct:
                states[i] = begin_reconfig(states[i], target, t + 1, _scope(mode))
            else:
                states[i] = apply_now(states[i], target)
            reconfigs[i] += 1

        for i, s in enumerate(states):
            if s.config.kind is SwitchKind.ROTOR:
                target = rotor_due_target(s, t)
                if target is not None:
                    commit(i, target)
        if t % policy.epoch == 0:
            for i, s in enumerate(states):
                if s.config.kind is not SwitchKind.DEMAND_AWARE or s.pending is not None:
                    continue
                # pairs already wired directly by another switch need no shortcut here
                covered = {e for j, o in enumerate(states) if j != i for e in o.nominal.edges}
                residual = demand.without(covered)
                proposed = propose_matching(residual)
                if decide_reconfig(s.current, proposed, residual, policy, alpha, mode):
                    commit(i, proposed)

        after = [s.nominal for s in states]
        adj = adjustment_cost(mode, before, after, alpha)
        steps.append(StepCost(t, req.src, req.dst, srv, adj, unreachable))

    mean_hops = hops / reachable if reachable else Fraction(0)
    return SimResult(
        ledger=CostLedger.from_steps(steps),
        per_switch_reconfig_counts=tuple(reconfigs),
        mean_hop_count=mean_hops,
        snapshot_log=tuple(log),
        snapshots=tuple(snaps) if keep_snapshots else None,
        inactive_slots=tuple(inactive),
    )


def replay_verify(result: SimResult, config: SimConfig, trace: Trace) -> bool:
    """Recompute the total cost from the step records and compare exactly."""
    ledger = result.ledger
    if len(ledger.steps) != len(trace) or len(result.per_switch_reconfig_counts) != config.k:
        return False
    for step, req in zip(ledger.steps, trace):
        if (step.t, step.src, step.dst) != (req.t, req.src, req.dst):
            return False
    return ledger.reconciles()

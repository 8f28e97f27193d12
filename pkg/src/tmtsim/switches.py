"""Per-switch state transitions: rotations, reconfiguration jobs, active edges.

Time convention: a job's ``start_t`` is the first slot whose snapshot it
affects and ``complete_t = start_t + beta`` is the first slot where the new
matching is live. The engine starts a job decided after serving request t
with ``start_t = t + 1``, so the affected edges are down for exactly ``beta``
serving slots.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

from tmtsim.model import Matching, SwitchConfig, SwitchKind


class InactiveScope(enum.Enum):
    WHOLE_SWITCH = "whole-switch"
    CHANGED_EDGES = "changed-edges"


class ReconfigInProgress(RuntimeError):
    pass


class StaticSwitchImmutable(RuntimeError):
    pass


class NotARotor(TypeError):
    pass


@dataclass(frozen=True)
class ReconfigJob:
    switch_id: int
    target: Matching
    start_t: int
    complete_t: int
    inactive_scope: InactiveScope

    def __post_init__(self):
        if self.complete_t < self.start_t:
            raise ValueError(f"job completes at {self.complete_t} before it starts at {self.start_t}")


@dataclass(frozen=True)
class SwitchState:
    config: SwitchConfig
    current: Matching
    pool_index: int = 0
    pending: Optional[ReconfigJob] = None

    @property
    def nominal(self) -> Matching:
        """The committed matching: the pending target if a job is running."""
        return self.pending.target if self.pending else self.current


def initial_state(config: SwitchConfig, n: int) -> SwitchState:
    if config.pool:
        return SwitchState(config, config.pool[0], 0)
    return SwitchState(config, Matching.empty(n), 0)


def _install(state: SwitchState, target: Matching) -> SwitchState:
    idx = state.pool_index
    if state.config.kind is SwitchKind.ROTOR:
        pool = state.config.pool
        nxt = (idx + 1) % len(pool)
        idx = nxt if pool[nxt] == target else pool.index(target)
    return replace(state, current=target, pool_index=idx, pending=None)


def active_edges(state: SwitchState, t: int) -> Matching:
    """The usable subset of the switch's matching at slot ``t``."""
    job = state.pending
    if job is None or t < job.start_t:
        return state.current
    if t >= job.complete_t:
        return job.target
    if job.inactive_scope is InactiveScope.WHOLE_SWITCH:
        return Matching.empty(state.current.n)
    return state.current & job.target


def apply_now(state: SwitchState, target: Matching) -> SwitchState:
    """Replace the matching immediately, ignoring the switch latency."""
    if state.config.kind is SwitchKind.STATIC:
        raise StaticSwitchImmutable(f"switch {state.config.switch_id} is static")
    if state.pending is not None:
        raise ReconfigInProgress(f"switch {state.config.switch_id} already has a pending job")
    return _install(state, target)


def begin_reconfig(state: SwitchState, target: Matching, t: int, scope: InactiveScope) -> SwitchState:
    """Start moving to ``target``; edges are affected from slot ``t`` on."""
    cfg = state.config
    if cfg.kind is SwitchKind.STATIC:
        raise StaticSwitchImmutable(f"switch {cfg.switch_id} is static")
    if state.pending is not None:
        raise ReconfigInProgress(f"switch {cfg.switch_id} already has a pending job")
    if target.n != state.current.n:
        raise ValueError(f"target matching is over n={target.n}, switch over n={state.current.n}")
    if cfg.beta == 0:
        return _install(state, target)
    job = ReconfigJob(cfg.switch_id, target, t, t + cfg.beta, scope)
    return replace(state, pending=job)


def finalize_due(state: SwitchState, t: int) -> SwitchState:
    job = state.pending
    if job is not None and t >= job.complete_t:
        return _install(replace(state, pending=None), job.target)
    return state


def rotor_due_target(state: SwitchState, t: int) -> Optional[Matching]:
    """Next pool matching if slot ``t`` is a rotation slot, else None.

    Rotations are skipped while a reconfiguration is still pending.
    """
    cfg = state.config
    if cfg.kind is not SwitchKind.ROTOR:
        raise NotARotor(f"switch {cfg.switch_id} is {cfg.kind.value}, not a rotor")
    if state.pending is not None or t % cfg.delta != 0:
        return None
    return cfg.pool[(state.pool_index + 1) % cfg.pool_size]

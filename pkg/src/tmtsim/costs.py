"""Service and adjustment costs, plus the per-step cost ledger."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from tmtsim.model import AdjMode, CostParams, Edge, NetworkSnapshot, NodeOutOfRange, Request


class LengthMismatch(ValueError):
    pass


def shortest_hops(snapshot: NetworkSnapshot, src: int, dst: int):
    """Directed BFS hop count from ``src`` to ``dst``, or None if unreachable."""
    if src == dst:
        return 0
    adj = snapshot.adjacency
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if v in dist:
                continue
            if v == dst:
                return du
            dist[v] = du
            queue.append(v)
    return None


def service_cost(request: Request, snapshot: NetworkSnapshot, params: CostParams):
    """Return ``(cost, unreachable)`` for serving ``request`` on ``snapshot``."""
    n = snapshot.n
    for node in (request.src, request.dst):
        if not 0 <= node < n:
            raise NodeOutOfRange(Edge(request.src, request.dst), n)
    if request.src == request.dst:
        raise ValueError(f"request {request.src}->{request.dst} is a self-loop")
    hops = shortest_hops(snapshot, request.src, request.dst)
    if hops is None:
        return params.penalty(n), True
    return Fraction(hops), False


def _check_lengths(prev: Sequence, next: Sequence):
    if len(prev) != len(next):
        raise LengthMismatch(f"prev has {len(prev)} matchings, next has {len(next)}")


def edge_distance_cost(prev: Sequence, next: Sequence, alpha) -> Fraction:
    """``alpha`` times the number of edges in ``next[i]`` absent from ``prev[i]``, summed over switches."""
    _check_lengths(prev, next)
    return Fraction(alpha) * sum(len(b.edges - a.edges) for a, b in zip(prev, next))


def switch_change_cost(prev: Sequence, next: Sequence, alpha) -> Fraction:
    """``alpha`` per switch whose matching changed at all."""
    _check_lengths(prev, next)
    return Fraction(alpha) * sum(1 for a, b in zip(prev, next) if a.edges != b.edges)


def no_direct_cost(prev: Sequence, next: Sequence, alpha) -> Fraction:
    # reconfiguration is paid through edge inactivity instead
    return Fraction(0)


def adjustment_cost(mode: AdjMode, prev: Sequence, next: Sequence, alpha) -> Fraction:
    if mode is AdjMode.EDGE_DISTANCE:
        return edge_distance_cost(prev, next, alpha)
    if mode is AdjMode.SWITCH_COST:
        return switch_change_cost(prev, next, alpha)
    return no_direct_cost(prev, next, alpha)


@dataclass(frozen=True)
class StepCost:
    t: int
    src: int
    dst: int
    srv: Fraction
    adj: Fraction
    unreachable: bool = False


@dataclass(frozen=True)
class CostLedger:
    steps: tuple
    total_srv: Fraction
    total_adj: Fraction
    total: Fraction
    unreachable_count: int

    @classmethod
    def from_steps(cls, steps) -> "CostLedger":
        steps = tuple(steps)
        total_srv = sum((s.srv for s in steps), Fraction(0))
        total_adj = sum((s.adj for s in steps), Fraction(0))
        return cls(
            steps=steps,
            total_srv=total_srv,
            total_adj=total_adj,
            total=total_srv + total_adj,
            unreachable_count=sum(1 for s in steps if s.unreachable),
        )

    def reconciles(self) -> bool:
        """Exact check that the totals equal the step-wise sum."""
        srv = sum((s.srv for s in self.steps), Fraction(0))
        adj = sum((s.adj for s in self.steps), Fraction(0))
        return (
            srv == self.total_srv
            and adj == self.total_adj
            and self.total == self.total_srv + self.total_adj
            and self.total == srv + adj
            and self.unreachable_count == sum(1 for s in self.steps if s.unreachable)
        )

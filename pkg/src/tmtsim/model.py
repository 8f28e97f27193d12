"""Domain types for the ToR-Matching-ToR network model.

Nodes are 0-indexed integers in ``[0, n)``. A switch realizes a directed
partial permutation (a :class:`Matching`) between its input and output
ports; the network at a time step is the provenance-tagged union of every
switch's active edges (:class:`NetworkSnapshot`).
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional


class MatchingError(ValueError):
    """An edge set violates the partial-permutation invariants."""

    def __init__(self, edge, message):
        super().__init__(message)
        self.edge = edge


class SelfLoop(MatchingError):
    def __init__(self, edge):
        super().__init__(edge, f"self-loop {edge.src}->{edge.dst}")


class NodeOutOfRange(MatchingError):
    def __init__(self, edge, n):
        super().__init__(edge, f"edge {edge.src}->{edge.dst} has a node outside [0, {n})")
        self.n = n


class DuplicateSource(MatchingError):
    def __init__(self, edge):
        super().__init__(edge, f"source {edge.src} used twice (at {edge.src}->{edge.dst})")


class DuplicateDestination(MatchingError):
    def __init__(self, edge):
        super().__init__(edge, f"destination {edge.dst} used twice (at {edge.src}->{edge.dst})")


class Edge(NamedTuple):
    src: int
    dst: int

    def __str__(self):
        return f"{self.src}->{self.dst}"


def validate_matching(edges: Iterable, n: int) -> "Matching":
    """Check that ``edges`` form a directed partial permutation on ``n`` nodes.

    Edges are checked in sorted order so the reported offender is
    deterministic. Raises a :class:`MatchingError` subclass naming the edge.
    """
    edge_set = frozenset(Edge(*e) for e in edges)
    seen_src: set[int] = set()
    seen_dst: set[int] = set()
    for e in sorted(edge_set):
        if not (0 <= e.src < n and 0 <= e.dst < n):
            raise NodeOutOfRange(e, n)
        if e.src == e.dst:
            raise SelfLoop(e)
        if e.src in seen_src:
            raise DuplicateSource(e)
        if e.dst in seen_dst:
            raise DuplicateDestination(e)
        seen_src.add(e.src)
        seen_dst.add(e.dst)
    return Matching(edge_set, n, _checked=True)


@dataclass(frozen=True)
class Matching:
    """A validated set of directed edges with distinct sources and destinations.

    Build through :func:`validate_matching` or the constructors below; direct
    construction validates too.
    """

    edges: frozenset
    n: int
    _checked: bool = field(default=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self._checked:
            validate_matching(self.edges, self.n)
        object.__setattr__(self, "edges", frozenset(Edge(*e) for e in self.edges))

    @classmethod
    def empty(cls, n: int) -> "Matching":
        return cls(frozenset(), n, _checked=True)

    @classmethod
    def shift(cls, n: int, d: int) -> "Matching":
        """Circulant permutation ``i -> (i + d) mod n``; ``d`` must not be 0 mod n."""
        if n < 2 or d % n == 0:
            raise ValueError(f"shift:{d} is a self-loop permutation for n={n}")
        return validate_matching(((i, (i + d) % n) for i in range(n)), n)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))

    def __contains__(self, edge):
        return Edge(*edge) in self.edges

    def __sub__(self, other: "Matching") -> frozenset:
        return self.edges - other.edges

    def __and__(self, other: "Matching") -> "Matching":
        return Matching(self.edges & other.edges, self.n, _checked=True)

    def as_list(self) -> list[list[int]]:
        return [[e.src, e.dst] for e in self]


class SwitchKind(enum.Enum):
    STATIC = "static"
    ROTOR = "rotor"
    DEMAND_AWARE = "demand-aware"


@dataclass(frozen=True)
class SwitchConfig:
    """Static description of one spine switch.

    ``beta`` is the reconfiguration latency in whole time slots (one slot per
    request). ``delta`` is the rotation period and only meaningful for rotors.
    """

    switch_id: int
    kind: SwitchKind
    pool: tuple = ()
    beta: int = 0
    delta: int = 1

    def __post_init__(self):
        object.__setattr__(self, "pool", tuple(self.pool))
        if self.beta < 0:
            raise ValueError(f"switch {self.switch_id}: beta must be >= 0, got {self.beta}")
        ns = {m.n for m in self.pool}
        if len(ns) > 1:
            raise ValueError(f"switch {self.switch_id}: pool matchings disagree on n ({sorted(ns)})")
        if self.kind is SwitchKind.STATIC and len(self.pool) != 1:
            raise ValueError(
                f"switch {self.switch_id}: static switch needs a pool of exactly 1 matching, "
                f"got {len(self.pool)}"
            )
        if self.kind is SwitchKind.ROTOR:
            if len(self.pool) < 2:
                raise ValueError(
                    f"switch {self.switch_id}: rotor needs a pool of at least 2 matchings, "
                    f"got {len(self.pool)}"
                )
            if self.delta < 1:
                raise ValueError(f"switch {self.switch_id}: rotor delta must be >= 1, got {self.delta}")

    @property
    def pool_size(self) -> int:
        return len(self.pool)


class Request(NamedTuple):
    t: int
    src: int
    dst: int


@dataclass(frozen=True)
class Trace:
    """One request per time step, ``t`` running 1, 2, ..., m."""

    requests: tuple = ()

    def __post_init__(self):
        reqs = tuple(Request(*r) for r in self.requests)
        for i, r in enumerate(reqs, start=1):
            if r.t != i:
                raise ValueError(f"trace time steps must be consecutive from 1; request {i} has t={r.t}")
            if r.src == r.dst:
                raise ValueError(f"request at t={r.t} is a self-loop {r.src}->{r.dst}")
            if r.src < 0 or r.dst < 0:
                raise ValueError(f"request at t={r.t} has a negative node id")
        object.__setattr__(self, "requests", reqs)

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "Trace":
        return cls(tuple(Request(t, s, d) for t, (s, d) in enumerate(pairs, start=1)))

    def __len__(self):
        return len(self.requests)

    def __iter__(self):
        return iter(self.requests)

    def pairs(self) -> list[tuple[int, int]]:
        return [(r.src, r.dst) for r in self.requests]

    def max_node(self) -> int:
        return max((max(r.src, r.dst) for r in self.requests), default=-1)


class AdjMode(enum.Enum):
    EDGE_DISTANCE = "edge-distance"
    SWITCH_COST = "switch-cost"
    NO_DIRECT_WHOLE_SWITCH = "no-direct-whole-switch"
    NO_DIRECT_CHANGED_EDGES = "no-direct-changed-edges"

    @property
    def is_no_direct(self) -> bool:
        return self in (AdjMode.NO_DIRECT_WHOLE_SWITCH, AdjMode.NO_DIRECT_CHANGED_EDGES)


@dataclass(frozen=True)
class CostParams:
    """Cost parameters. ``unreachable_penalty=None`` means "use n"."""

    alpha: Fraction = Fraction(1)
    adj_mode: AdjMode = AdjMode.EDGE_DISTANCE
    unreachable_penalty: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if self.unreachable_penalty is not None:
            object.__setattr__(self, "unreachable_penalty", Fraction(self.unreachable_penalty))

    def penalty(self, n: int) -> Fraction:
        p = Fraction(n) if self.unreachable_penalty is None else self.unreachable_penalty
        # any finite shortest path on n nodes has at most n - 1 hops
        if p <= n - 1:
            raise ValueError(f"unreachable_penalty must exceed n - 1 = {n - 1}, got {p}")
        return p


class TaggedEdge(NamedTuple):
    switch_id: int
    edge: Edge


@dataclass(frozen=True)
class NetworkSnapshot:
    """Union of active edges, each tagged with the switch providing it."""

    n: int
    active_edges: tuple = ()

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for _, e in self.active_edges:
            adj[e.src].append(e.dst)
        return adj

    def __len__(self):
        return len(self.active_edges)

    def edges(self) -> set[Edge]:
        return {e for _, e in self.active_edges}

    def by_switch(self) -> dict[int, frozenset]:
        out = defaultdict(set)
        for sid, e in self.active_edges:
            out[sid].add(e)
        return {sid: frozenset(es) for sid, es in out.items()}

    def count_for(self, switch_id: int) -> int:
        return sum(1 for sid, _ in self.active_edges if sid == switch_id)


def union_snapshot(active_sets: Iterable, n: int) -> NetworkSnapshot:
    """Build the tagged multiset union of per-switch active edge sets.

    Parallel edges coming from different switches are kept as distinct
    members. Members are stored sorted so the result does not depend on the
    order of ``active_sets``.
    """
    tagged = []
    for switch_id, edges in active_sets:
        m = edges if isinstance(edges, Matching) else validate_matching(edges, n)
        if m.n != n:
            raise ValueError(f"switch {switch_id} matching is over n={m.n}, snapshot over n={n}")
        tagged.extend(TaggedEdge(switch_id, e) for e in m.edges)
    tagged.sort()
    return NetworkSnapshot(n, tuple(tagged))

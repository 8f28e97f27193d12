"""Reference online controller for demand-aware switches.

Demand is tracked as (optionally decayed) pair counts. At each epoch
boundary a switch proposes a greedy max-weight matching over the demand
and adopts it only when the weight gain beats a threshold proportional to
the adjustment it would pay.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from tmtsim.model import AdjMode, Edge, Matching, NodeOutOfRange, Request, validate_matching


@dataclass(frozen=True)
class PolicyParams:
    epoch: int = 1
    theta: Fraction = Fraction(1)
    decay: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "theta", Fraction(self.theta))
        object.__setattr__(self, "decay", Fraction(self.decay))
        if self.epoch < 1:
            raise ValueError(f"epoch must be >= 1, got {self.epoch}")
        if self.theta < 0:
            raise ValueError(f"theta must be non-negative, got {self.theta}")
        if not 0 < self.decay <= 1:
            raise ValueError(f"decay must lie in (0, 1], got {self.decay}")


@dataclass
class DemandMatrix:
    """Pair weights; absent pairs weigh 0.

    Weights are floats: with ``decay == 1`` they stay exact integer counts,
    otherwise they behave like an exponentially weighted moving count.
    """

    n: int
    weight: dict = field(default_factory=dict)
    decay: float = 1.0

    def __post_init__(self):
        self.decay = float(self.decay)

    def record(self, request: Request) -> None:
        """In-place version of :func:`record_request`."""
        src, dst = request.src, request.dst
        if not (0 <= src < self.n and 0 <= dst < self.n):
            raise NodeOutOfRange(Edge(src, dst), self.n)
        if self.decay != 1.0:
            d = self.decay
            for pair in self.weight:
                self.weight[pair] *= d
        self.weight[(src, dst)] = self.weight.get((src, dst), 0.0) + 1.0

    def copy(self) -> "DemandMatrix":
        return DemandMatrix(self.n, dict(self.weight), self.decay)

    def __getitem__(self, pair) -> float:
        return self.weight.get(tuple(pair), 0.0)

    def matching_weight(self, matching: Matching) -> float:
        return sum(self.weight.get((e.src, e.dst), 0.0) for e in matching.edges)

    def without(self, pairs) -> "DemandMatrix":
        pairs = {tuple(p) for p in pairs}
        return DemandMatrix(self.n, {p: w for p, w in self.weight.items() if p not in pairs}, self.decay)


def record_request(matrix: DemandMatrix, request: Request) -> DemandMatrix:
    out = matrix.copy()
    out.record(request)
    return out


def propose_matching(matrix: DemandMatrix) -> Matching:
    """Greedy max-weight matching, heaviest pairs first, ties by (src, dst)."""
    candidates = sorted(
        ((w, p) for p, w in matrix.weight.items() if w > 0 and p[0] != p[1]),
        key=lambda wp: (-wp[0], wp[1]),
    )
    used_src, used_dst, edges = set(), set(), []
    for _, (src, dst) in candidates:
        if src in used_src or dst in used_dst:
            continue
        used_src.add(src)
        used_dst.add(dst)
        edges.append((src, dst))
    return validate_matching(edges, matrix.n)


def decide_reconfig(
    current: Matching,
    proposed: Matching,
    matrix: DemandMatrix,
    params: PolicyParams,
    alpha,
    adj_mode: AdjMode = AdjMode.EDGE_DISTANCE,
) -> bool:
    """Adopt ``proposed`` iff its weight gain beats ``theta * alpha * changes``.

    ``changes`` is the number of new edges under edge-distance charging and 1
    under every other mode.
    """
    if proposed.edges == current.edges:
        return False
    changes = len(proposed.edges - current.edges) if adj_mode is AdjMode.EDGE_DISTANCE else 1
    gain = Fraction(matrix.matching_weight(proposed)) - Fraction(matrix.matching_weight(current))
    return gain > params.theta * Fraction(alpha) * changes

"""Synthetic demand sequences and the plain-text trace format.

Trace format: one request per line, ``"<src> <dst>"`` in 0-indexed ASCII
decimal, a single space, LF line endings and a trailing newline. Lines
starting with ``#`` are comments and do not count as time steps.

Random patterns draw from numpy's PCG64 generator seeded with the spec seed.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import cycle, islice

import numpy as np

from tmtsim.model import Request, Trace


class Pattern(enum.Enum):
    ALL_TO_ALL = "all-to-all"
    RING_REDUCE = "ring-reduce"
    ZIPF = "zipf"
    ELEPHANT_MICE = "elephant-mice"


class InvalidSpec(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class PatternSpec:
    kind: Pattern
    n: int
    m: int
    seed: int = 0
    skew: float = 1.0
    elephant_fraction: float = 0.8
    elephants: int = 1

    def validate(self) -> None:
        if self.n < 2:
            raise InvalidSpec(f"n must be at least 2, got {self.n}")
        if self.m < 1:
            raise InvalidSpec(f"m must be at least 1, got {self.m}")
        if self.seed < 0:
            raise InvalidSpec(f"seed must be unsigned, got {self.seed}")
        if self.kind is Pattern.ZIPF and not self.skew >= 0:
            raise InvalidSpec(f"zipf skew must be >= 0, got {self.skew}")
        if self.kind is Pattern.ELEPHANT_MICE:
            if not 0 <= self.elephant_fraction <= 1:
                raise InvalidSpec(f"elephant fraction must lie in [0, 1], got {self.elephant_fraction}")
            if not 1 <= self.elephants <= self.n * (self.n - 1):
                raise InvalidSpec(
                    f"elephant pair count must lie in [1, n(n-1)={self.n * (self.n - 1)}], got {self.elephants}"
                )


def ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(s, d) for s in range(n) for d in range(n) if s != d]


def generate(spec: PatternSpec) -> Trace:
    spec.validate()
    n, m = spec.n, spec.m
    pairs = ordered_pairs(n)

    if spec.kind is Pattern.ALL_TO_ALL:
        chosen = list(islice(cycle(pairs), m))
    elif spec.kind is Pattern.RING_REDUCE:
        ring = [(i, (i + 1) % n) for i in range(n)]
        chosen = list(islice(cycle(ring), m))
    elif spec.kind is Pattern.ZIPF:
        rng = np.random.default_rng(spec.seed)
        ranks = np.arange(1, len(pairs) + 1, dtype=float)
        p = ranks ** (-spec.skew)
        idx = rng.choice(len(pairs), size=m, p=p / p.sum())
        chosen = [pairs[i] for i in idx]
    else:
        rng = np.random.default_rng(spec.seed)
        heavy = sorted(rng.choice(len(pairs), size=spec.elephants, replace=False).tolist())
        heavy_set = set(heavy)
        light = [i for i in range(len(pairs)) if i not in heavy_set] or heavy
        coins = rng.random(m)
        picks = rng.random(m)
        chosen = []
        for c, u in zip(coins, picks):
            group = heavy if c < spec.elephant_fraction else light
            chosen.append(pairs[group[int(u * len(group))]])
    return Trace(tuple(Request(t, s, d) for t, (s, d) in enumerate(chosen, start=1)))


_LINE = re.compile(rb"(0|[1-9][0-9]*) (0|[1-9][0-9]*)")


def parse_trace(text, n: int | None = None) -> Trace:
    """Parse the trace format. ``n`` (optional) enables the range check.

    Errors carry the 1-based physical line number, comments included.
    """
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    if not data:
        return Trace(())
    lines = data.split(b"\n")
    if lines[-1] != b"":
        raise ParseError(len(lines), "missing trailing newline")
    requests = []
    for lineno, raw in enumerate(lines[:-1], start=1):
        if raw.startswith(b"#"):
            continue
        match = _LINE.fullmatch(raw)
        if match is None:
            raise ParseError(lineno, f"malformed line {raw[:40]!r}, expected '<src> <dst>'")
        src, dst = int(match.group(1)), int(match.group(2))
        if src == dst:
            raise ParseError(lineno, "self-loop")
        if n is not None and (src >= n or dst >= n):
            raise ParseError(lineno, f"node id out of range [0, {n})")
        requests.append(Request(len(requests) + 1, src, dst))
    return Trace(tuple(requests))


def write_trace(trace: Trace) -> bytes:
    return b"".join(b"%d %d\n" % (r.src, r.dst) for r in trace)

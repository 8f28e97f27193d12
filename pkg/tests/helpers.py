"""Independent oracles and random instance builders shared by the tests.

The oracles deliberately avoid the package's own algorithms: distances come
from Floyd-Warshall on an adjacency matrix, matching optima from exhaustive
search over destination subsets.
"""

import random
from fractions import Fraction
from itertools import permutations

from tmtsim.model import AdjMode, CostParams, Matching, SwitchConfig, SwitchKind, validate_matching
from tmtsim.engine import SimConfig
from tmtsim.policy import PolicyParams

INF = float("inf")


def floyd_warshall(n, edges):
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in edges:
        d[u][v] = min(d[u][v], 1)
    for w in range(n):
        dw = d[w]
        for i in range(n):
            diw = d[i][w]
            if diw == INF:
                continue
            di = d[i]
            for j in range(n):
                if diw + dw[j] < di[j]:
                    di[j] = diw + dw[j]
    return d


def is_partial_permutation(edges, n):
    edges = list(edges)
    for i, (a, b) in enumerate(edges):
        if a == b or not (0 <= a < n and 0 <= b < n):
            return False
        for c, d in edges[i + 1:]:
            if a == c or b == d:
                return False
    return True


def brute_max_matching_weight(n, weight):
    """Exact max-weight directed matching by DP over used-destination sets."""
    best = {0: 0}
    for src in range(n):
        nxt = dict(best)
        for used, w in best.items():
            for dst in range(n):
                if dst == src or used >> dst & 1:
                    continue
                wd = weight.get((src, dst), 0)
                if wd <= 0:
                    continue
                key = used | 1 << dst
                if nxt.get(key, -1) < w + wd:
                    nxt[key] = w + wd
        best = nxt
    return max(best.values())


def enumerate_max_matching_weight(n, weight):
    """Slower fully enumerative oracle, used to cross-check the DP on tiny n."""
    best = 0
    nodes = list(range(n))
    for size in range(n + 1):
        for srcs in permutations(nodes, size):
            for dsts in permutations(nodes, size):
                pairs = list(zip(srcs, dsts))
                if len(set(srcs)) < size or any(s == d for s, d in pairs):
                    continue
                best = max(best, sum(weight.get(p, 0) for p in pairs))
    return best


def random_matching(rng: random.Random, n: int, density: float | None = None) -> Matching:
    perm = list(range(n))
    rng.shuffle(perm)
    keep = rng.random() if density is None else density
    edges = [(i, perm[i]) for i in range(n) if perm[i] != i and rng.random() < keep]
    return validate_matching(edges, n)


def random_config(rng: random.Random, mode: AdjMode, n: int | None = None, k: int | None = None) -> SimConfig:
    n = n or rng.randint(3, 8)
    k = k or rng.randint(1, 4)
    switches = []
    for i in range(k):
        kind = rng.choice(list(SwitchKind))
        beta = rng.randint(0, 3)
        if kind is SwitchKind.STATIC:
            pool = (random_matching(rng, n),)
        elif kind is SwitchKind.ROTOR:
            pool = tuple(random_matching(rng, n) for _ in range(rng.randint(2, 4)))
        else:
            pool = (random_matching(rng, n),) if rng.random() < 0.5 else ()
        switches.append(SwitchConfig(i, kind, pool, beta=beta, delta=rng.randint(1, 3)))
    alpha = Fraction(rng.randint(0, 6), rng.randint(1, 4))
    policy = PolicyParams(epoch=rng.randint(1, 3), theta=Fraction(rng.randint(0, 4), 2),
                          decay=rng.choice([Fraction(1), Fraction(1, 2), Fraction(9, 10)]))
    return SimConfig(n, k, tuple(switches), CostParams(alpha, mode), policy, seed=rng.randint(0, 2**32))


def random_pairs(rng: random.Random, n: int, m: int):
    out = []
    for _ in range(m):
        s = rng.randrange(n)
        d = rng.randrange(n - 1)
        out.append((s, d + (d >= s)))
    return out

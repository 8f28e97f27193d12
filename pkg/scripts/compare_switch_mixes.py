"""Compare static, rotor, demand-aware and hybrid spine mixes on each traffic pattern.

    python scripts/compare_switch_mixes.py --n 16 --m 2000 --mode edge-distance
"""

from fractions import Fraction

import click

from tmtsim import AdjMode, CostParams, Matching, PolicyParams, SimConfig, SwitchConfig, SwitchKind, run
from tmtsim.config import format_rational
from tmtsim.traffic import Pattern, PatternSpec, generate


def designs(n, k, beta, alpha, mode, theta):
    cost = CostParams(alpha, mode)
    policy = PolicyParams(epoch=4, theta=theta)
    static = lambda i, d: SwitchConfig(i, SwitchKind.STATIC, (Matching.shift(n, d),))
    rotor_pool = tuple(Matching.shift(n, d) for d in range(1, n))

    def rotors(lo):
        # split the shift pool across rotors so one cycle covers every pair
        return [SwitchConfig(i, SwitchKind.ROTOR, rotor_pool[i - lo::k - lo], beta=beta, delta=1)
                for i in range(lo, k)]

    da = lambda i: SwitchConfig(i, SwitchKind.DEMAND_AWARE, beta=beta)
    yield "static", SimConfig(n, k, [static(i, 2 ** i % n or 1) for i in range(k)], cost)
    yield "rotor", SimConfig(n, k, rotors(0), cost)
    yield "demand-aware", SimConfig(n, k, [static(0, 1)] + [da(i) for i in range(1, k)], cost, policy)
    hybrid = [static(0, 1)] + [SwitchConfig(1, SwitchKind.ROTOR, rotor_pool[1:], beta=beta)] + \
        [da(i) for i in range(2, k)]
    yield "hybrid", SimConfig(n, k, hybrid, cost, policy)


@click.command()
@click.option("--n", default=16, show_default=True)
@click.option("--k", default=3, show_default=True)
@click.option("--m", default=2000, show_default=True)
@click.option("--beta", default=1, show_default=True)
@click.option("--alpha", default="1", show_default=True)
@click.option("--theta", default="1", show_default=True)
@click.option("--mode", type=click.Choice([a.value for a in AdjMode]), default="edge-distance", show_default=True)
@click.option("--seed", default=0, show_default=True)
def main(n, k, m, beta, alpha, theta, mode, seed):
    patterns = [
        PatternSpec(Pattern.ALL_TO_ALL, n, m, seed),
        PatternSpec(Pattern.RING_REDUCE, n, m, seed),
        PatternSpec(Pattern.ZIPF, n, m, seed, skew=1.2),
        PatternSpec(Pattern.ELEPHANT_MICE, n, m, seed, elephant_fraction=0.8, elephants=n // 2),
    ]
    print(f"{'pattern':<14}{'design':<14}{'total':>12}{'srv':>12}{'adj':>10}{'hops':>8}{'unreach':>9}")
    for spec in patterns:
        trace = generate(spec)
        for name, cfg in designs(n, k, beta, Fraction(alpha), AdjMode(mode), Fraction(theta)):
            res = run(cfg, trace)
            led = res.ledger
            print(f"{spec.kind.value:<14}{name:<14}{format_rational(led.total):>12}"
                  f"{format_rational(led.total_srv):>12}{format_rational(led.total_adj):>10}"
                  f"{float(res.mean_hop_count):>8.3f}{led.unreachable_count:>9}")


if __name__ == "__main__":
    main()

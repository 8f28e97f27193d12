"""Reconfiguration latency (beta) versus service cost under the no-direct-cost regimes.

Adjustments are free here, so every extra unit of cost is paid as detours or
unreachable requests while edges are down.

    python scripts/latency_tax.py --n 12 --m 1500
"""

import click

from tmtsim import AdjMode, CostParams, Matching, PolicyParams, SimConfig, SwitchConfig, SwitchKind, run
from tmtsim.traffic import Pattern, PatternSpec, generate


@click.command()
@click.option("--n", default=12, show_default=True)
@click.option("--m", default=1500, show_default=True)
@click.option("--betas", default="0,1,2,4,8,16", show_default=True)
@click.option("--seed", default=0, show_default=True)
def main(n, m, betas, seed):
    trace = generate(PatternSpec(Pattern.ELEPHANT_MICE, n, m, seed, elephant_fraction=0.7, elephants=n // 3))
    print(f"{'beta':>5}  {'mode':<26}{'mean srv':>10}{'unreach':>9}{'inactive slots':>16}")
    for beta in (int(b) for b in betas.split(",")):
        for mode in (AdjMode.NO_DIRECT_WHOLE_SWITCH, AdjMode.NO_DIRECT_CHANGED_EDGES):
            switches = (
                SwitchConfig(0, SwitchKind.STATIC, (Matching.shift(n, 1),)),
                SwitchConfig(1, SwitchKind.ROTOR, tuple(Matching.shift(n, d) for d in range(2, n)),
                             beta=beta, delta=4),
                SwitchConfig(2, SwitchKind.DEMAND_AWARE, beta=beta),
            )
            cfg = SimConfig(n, 3, switches, CostParams(0, mode), PolicyParams(epoch=8, theta=0))
            res = run(cfg, trace)
            mean_srv = float(res.ledger.total_srv) / m
            print(f"{beta:>5}  {mode.value:<26}{mean_srv:>10.3f}{res.ledger.unreachable_count:>9}"
                  f"{str(list(res.inactive_slots)):>16}")


if __name__ == "__main__":
    main()

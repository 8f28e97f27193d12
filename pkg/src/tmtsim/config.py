"""JSON config files and report rendering.

Config schema (all rationals may be JSON numbers or strings like "1/2")::

    {
      "n": 8, "k": 2, "seed": 0,
      "cost":   {"alpha": "1", "adj_mode": "edge-distance", "unreachable_penalty": null},
      "policy": {"epoch": 1, "theta": "1", "decay": "1"},
      "switches": [
        {"kind": "static", "pool": ["shift:1"]},
        {"kind": "rotor", "pool": ["shift:2", [[0, 3], [3, 0]]], "beta": 1, "delta": 2},
        {"kind": "demand-aware", "pool": [], "beta": 3}
      ]
    }

A matching is either an edge list ``[[src, dst], ...]`` or ``"shift:d"``
for the circulant permutation ``i -> (i + d) mod n``. Switch ids are list
positions. ``policy`` may be omitted; ``adj_mode`` is one of
edge-distance, switch-cost, no-direct-whole-switch, no-direct-changed-edges.
"""

from __future__ import annotations

import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any

from tmtsim.engine import ConfigError, SimConfig, SimResult
from tmtsim.model import AdjMode, CostParams, Matching, MatchingError, SwitchConfig, SwitchKind, validate_matching
from tmtsim.policy import PolicyParams


def _rational(value, what: str) -> Fraction:
    if isinstance(value, bool):
        raise ConfigError(f"{what}: expected a number, got {value!r}")
    try:
        if isinstance(value, float):
            value = repr(value)
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"{what}: expected a rational number, got {value!r}") from None


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{what}: expected an integer, got {value!r}")
    return value


def parse_matching(spec, n: int, what: str = "matching") -> Matching:
    if isinstance(spec, str):
        name, _, arg = spec.partition(":")
        if name != "shift" or not arg.lstrip("-").isdigit():
            raise ConfigError(f"{what}: unknown matching constructor {spec!r} (expected 'shift:d')")
        try:
            return Matching.shift(n, int(arg))
        except ValueError as exc:
            raise ConfigError(f"{what}: {exc}") from None
    if not isinstance(spec, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        for e in spec
    ):
        raise ConfigError(f"{what}: expected an edge list [[src, dst], ...] or 'shift:d'")
    if len({tuple(e) for e in spec}) != len(spec):
        raise ConfigError(f"{what}: repeated edge in edge list")
    try:
        return validate_matching(spec, n)
    except MatchingError as exc:
        raise ConfigError(f"{what}: matching invariant violated: {exc}") from None


def config_from_dict(doc: dict) -> SimConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config: top level must be an object")
    for key in ("n", "k", "switches"):
        if key not in doc:
            raise ConfigError(f"config: missing required key {key!r}")
    n = _int(doc["n"], "n")
    k = _int(doc["k"], "k")
    if n < 2:
        raise ConfigError(f"n must be at least 2, got {n}")
    raw_switches = doc["switches"]
    if not isinstance(raw_switches, list):
        raise ConfigError("switches: expected a list")

    switches = []
    for i, sw in enumerate(raw_switches):
        where = f"switches[{i}]"
        try:
            kind = SwitchKind(sw.get("kind"))
        except (AttributeError, ValueError):
            raise ConfigError(f"{where}.kind: expected one of {[k.value for k in SwitchKind]}") from None
        pool = tuple(parse_matching(p, n, f"{where}.pool[{j}]") for j, p in enumerate(sw.get("pool", [])))
        try:
            switches.append(
                SwitchConfig(
                    switch_id=i,
                    kind=kind,
                    pool=pool,
                    beta=_int(sw.get("beta", 0), f"{where}.beta"),
                    delta=_int(sw.get("delta", 1), f"{where}.delta"),
                )
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    cost_doc = doc.get("cost", {})
    try:
        mode = AdjMode(cost_doc.get("adj_mode", AdjMode.EDGE_DISTANCE.value))
    except ValueError:
        raise ConfigError(f"cost.adj_mode: expected one of {[m.value for m in AdjMode]}") from None
    penalty = cost_doc.get("unreachable_penalty")
    try:
        cost = CostParams(
            alpha=_rational(cost_doc.get("alpha", 1), "cost.alpha"),
            adj_mode=mode,
            unreachable_penalty=None if penalty is None else _rational(penalty, "cost.unreachable_penalty"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    policy = None
    if doc.get("policy") is not None:
        p = doc["policy"]
        try:
            policy = PolicyParams(
                epoch=_int(p.get("epoch", 1), "policy.epoch"),
                theta=_rational(p.get("theta", 1), "policy.theta"),
                decay=_rational(p.get("decay", 1), "policy.decay"),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    return SimConfig(n=n, k=k, switches=tuple(switches), cost=cost, policy=policy,
                     seed=_int(doc.get("seed", 0), "seed"))


def config_to_dict(config: SimConfig) -> dict:
    """Canonical form; ``config_from_dict`` inverts it exactly."""
    doc: dict[str, Any] = {
        "n": config.n,
        "k": config.k,
        "seed": config.seed,
        "cost": {
            "alpha": str(config.cost.alpha),
            "adj_mode": config.cost.adj_mode.value,
            "unreachable_penalty": None if config.cost.unreachable_penalty is None
            else str(config.cost.unreachable_penalty),
        },
        "switches": [
            {
                "kind": sw.kind.value,
                "pool": [m.as_list() for m in sw.pool],
                "beta": sw.beta,
                "delta": sw.delta,
            }
            for sw in config.switches
        ],
    }
    if config.policy is not None:
        doc["policy"] = {
            "epoch": config.policy.epoch,
            "theta": str(config.policy.theta),
            "decay": str(config.policy.decay),
        }
    return doc


def load_config(path) -> SimConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    return config_from_dict(doc)


def format_rational(x) -> str:
    """Exact decimal when the expansion terminates, else 12 significant digits."""
    x = Fraction(x)
    den = x.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den == 1:
        with localcontext() as ctx:
            ctx.prec = 10_000
            d = Decimal(x.numerator) / Decimal(x.denominator)
        s = format(d, "f")
        if "." in s:
            s = s.rstrip("0").rstrip(".")
        return s
    return format(float(x), ".12g")


def summary(config: SimConfig, result: SimResult, steps_path: str = "steps.csv") -> dict:
    ledger = result.ledger
    return {
        "config": config_to_dict(config),
        "total": format_rational(ledger.total),
        "total_srv": format_rational(ledger.total_srv),
        "total_adj": format_rational(ledger.total_adj),
        "unreachable_count": ledger.unreachable_count,
        "mean_hop_count": format_rational(result.mean_hop_count),
        "bandwidth_tax": format_rational(result.bandwidth_tax),
        "per_switch_reconfig_counts": list(result.per_switch_reconfig_counts),
        "per_switch_inactive_slots": list(result.inactive_slots),
        "steps": len(ledger.steps),
        "steps_csv": steps_path,
    }


STEP_HEADER = "t,src,dst,srv,adj,unreachable"


def steps_csv(result: SimResult) -> str:
    lines = [STEP_HEADER]
    for s in result.ledger.steps:
        lines.append(
            f"{s.t},{s.src},{s.dst},{format_rational(s.srv)},{format_rational(s.adj)},{int(s.unreachable)}"
        )
    return "\n".join(lines) + "\n"

"""Command-line driver: ``tmtsim gen | run | sweep``."""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import click

from tmtsim.config import ConfigError, format_rational, load_config, steps_csv, summary
from tmtsim.engine import SimConfig, TraceMismatch, replay_verify, run
from tmtsim.model import MatchingError
from tmtsim.traffic import InvalidSpec, ParseError, Pattern, PatternSpec, generate, parse_trace, write_trace

SWEEP_PARAMS = ("alpha", "beta", "theta", "epoch", "decay")


def _load_inputs(config_path, trace_path):
    try:
        config = load_config(config_path)
    except (ConfigError, MatchingError) as exc:
        raise click.ClickException(f"invalid config: {exc}")
    except OSError as exc:
        raise click.ClickException(f"cannot read config: {exc}")
    try:
        trace = parse_trace(Path(trace_path).read_bytes(), n=config.n)
    except ParseError as exc:
        raise click.ClickException(f"invalid trace {trace_path}: {exc}")
    except OSError as exc:
        raise click.ClickException(f"cannot read trace: {exc}")
    return config, trace


def _simulate(config, trace):
    try:
        result = run(config, trace)
    except TraceMismatch as exc:
        raise click.ClickException(str(exc))
    if not replay_verify(result, config, trace):
        raise click.ClickException("ledger failed replay verification")
    return result


@click.group()
def main():
    """Simulate matching-based self-adjusting ToR-to-ToR networks."""


@main.command()
@click.option("--pattern", type=click.Choice([p.value for p in Pattern]), required=True)
@click.option("--n", "n", type=int, required=True, help="Number of nodes.")
@click.option("--m", "m", type=int, required=True, help="Number of requests.")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--skew", type=float, default=1.0, show_default=True, help="Zipf exponent.")
@click.option("--elephant-fraction", type=float, default=0.8, show_default=True)
@click.option("--elephants", type=int, default=1, show_default=True, help="Number of elephant pairs.")
@click.option("--out", type=click.Path(dir_okay=False), default="-", help="Output file, '-' for stdout.")
def gen(pattern, n, m, seed, skew, elephant_fraction, elephants, out):
    """Generate a synthetic trace."""
    spec = PatternSpec(Pattern(pattern), n, m, seed, skew, elephant_fraction, elephants)
    try:
        data = write_trace(generate(spec))
    except InvalidSpec as exc:
        raise click.UsageError(str(exc))
    if out == "-":
        sys.stdout.buffer.write(data)
        return
    try:
        Path(out).write_bytes(data)
    except OSError as exc:
        raise click.ClickException(f"cannot write {out}: {exc}")


@main.command("run")
@click.option("--config", "config_path", type=click.Path(), required=True)
@click.option("--trace", "trace_path", type=click.Path(), required=True)
@click.option("--out", type=click.Path(file_okay=False), required=True, help="Report directory.")
def run_cmd(config_path, trace_path, out):
    """Run one simulation; writes report.json and steps.csv into OUT."""
    config, trace = _load_inputs(config_path, trace_path)
    result = _simulate(config, trace)
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "steps.csv").write_bytes(steps_csv(result).encode())
        report = json.dumps(summary(config, result), indent=2) + "\n"
        (out / "report.json").write_bytes(report.encode())
    except OSError as exc:
        raise click.ClickException(f"cannot write report: {exc}")
    click.echo(format_rational(result.ledger.total))


def with_param(config: SimConfig, param: str, value: str) -> SimConfig:
    """Copy of ``config`` with one parameter overridden."""
    try:
        if param == "alpha":
            return replace(config, cost=replace(config.cost, alpha=Fraction(value)))
        if param == "beta":
            beta = int(value)
            return replace(config, switches=tuple(replace(sw, beta=beta) for sw in config.switches))
        policy = config.policy_params
        if param == "epoch":
            return replace(config, policy=replace(policy, epoch=int(value)))
        return replace(config, policy=replace(policy, **{param: Fraction(value)}))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"sweep value {param}={value!r}: {exc}") from None


def _sweep_point(args):
    config, trace = args
    result = run(config, trace)
    if not replay_verify(result, config, trace):
        raise RuntimeError("ledger failed replay verification")
    return result


SWEEP_HEADER = ["param", "value", "total", "total_srv", "total_adj", "unreachable_count",
                "mean_hop_count", "reconfigs"]


@main.command()
@click.option("--config", "config_path", type=click.Path(), required=True)
@click.option("--trace", "trace_path", type=click.Path(), required=True)
@click.option("--param", type=click.Choice(SWEEP_PARAMS), required=True)
@click.option("--values", required=True, help="Comma-separated list, e.g. '0,1,2' or '1/2,1'.")
@click.option("--out", type=click.Path(dir_okay=False), default="-", help="Combined CSV, '-' for stdout.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
def sweep(config_path, trace_path, param, values, out, jobs):
    """Run the same trace over a list of values of one parameter."""
    points = [v.strip() for v in values.split(",") if v.strip()]
    if not points:
        raise click.UsageError("--values must list at least one value")
    config, trace = _load_inputs(config_path, trace_path)
    try:
        configs = [with_param(config, param, v) for v in points]
    except (ConfigError, ValueError) as exc:
        raise click.ClickException(str(exc))
    work = [(c, trace) for c in configs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, work))
    else:
        results = [_sweep_point(w) for w in work]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for value, res in zip(points, results):
        led = res.ledger
        writer.writerow([
            param, value, format_rational(led.total), format_rational(led.total_srv),
            format_rational(led.total_adj), led.unreachable_count,
            format_rational(res.mean_hop_count), sum(res.per_switch_reconfig_counts),
        ])
    data = buf.getvalue().encode()
    if out == "-":
        sys.stdout.buffer.write(data)
        return
    try:
        Path(out).write_bytes(data)
    except OSError as exc:
        raise click.ClickException(f"cannot write {out}: {exc}")


if __name__ == "__main__":
    main()

"""Command-line episode runner, config checker, and service launcher."""

from __future__ import annotations

import math
import sys
from pathlib import Path

import click

from .drones.base import ConfigError
from .drones.config import load_drone_config
from .envs import ENV_NAMES
from .runner import POLICY_KINDS, QUADX_ENVS, RunSpec, interquartile_mean
from .runner import run as run_episodes


@click.group()
@click.version_option(package_name="flightlab")
def main():
    """UAV flight simulation: run episodes, validate vehicles, serve sessions."""


@main.command(name="run")
@click.option("--env", "env_name", required=True, help=f"One of: {', '.join(ENV_NAMES)}")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--episodes", default=1, show_default=True, type=int)
@click.option("--policy", default="random", show_default=True,
              type=click.Choice(POLICY_KINDS))
@click.option("--sparse", is_flag=True, help="Use the sparse reward variant.")
@click.option("--out", default=None, type=click.Path(dir_okay=False, path_type=Path),
              help="Trajectory log path.")
@click.option("--format", "log_format", default="csv", show_default=True,
              type=click.Choice(["csv", "jsonl"]))
@click.option("--waypoints", "waypoint_count", default=None, type=int,
              help="Waypoint count for waypoint environments.")
@click.option("--goal-radius", default=None, type=float)
@click.option("--agent-hz", default=None, type=int)
@click.option("--server", default=None,
              help="Base URL of a running service; episodes run through it.")
def run_command(env_name, seed, episodes, policy, sparse, out, log_format,
                waypoint_count, goal_radius, agent_hz, server):
    """Run seeded episodes and print per-episode and aggregate returns."""
    spec = RunSpec(
        env=env_name, seed=seed, episodes=episodes, policy=policy, sparse=sparse,
        out=out, log_format=log_format, waypoint_count=waypoint_count,
        goal_radius=goal_radius, agent_hz=agent_hz, server=server,
    )
    try:
        spec.validate()
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    summaries = run_episodes(spec)
    for summary in summaries:
        click.echo(
            f"episode {summary.index:3d} seed {summary.seed:6d} "
            f"steps {summary.steps:5d} return {summary.episode_return:12.4f} "
            f"outcome {summary.outcome}"
        )
    returns = [s.episode_return for s in summaries if not math.isnan(s.episode_return)]
    if returns:
        mean = sum(returns) / len(returns)
        click.echo(f"episodes {len(summaries)}  mean return {mean:.4f}  "
                   f"IQM return {interquartile_mean(returns):.4f}")
    diverged = [s for s in summaries if s.outcome == "diverged"]
    if diverged:
        click.echo(f"{len(diverged)} episode(s) diverged", err=True)
        sys.exit(1)


@main.command(name="validate")
@click.argument("path", type=click.Path(path_type=Path))
def validate_command(path):
    """Check a vehicle config file; print one line per violation."""
    if not path.exists():
        raise click.ClickException(f"cannot read {path}: no such file")
    try:
        config = load_drone_config(path)
    except (ConfigError, OSError, ValueError) as exc:
        raise click.ClickException(f"cannot parse {path}: {exc}") from exc
    problems = config.validate()
    if problems:
        for problem in problems:
            click.echo(f"violation: {problem}")
        click.echo(f"{len(problems)} violation(s) in {path}")
        sys.exit(1)
    click.echo(f"{path}: ok ({config.kind} {config.name!r})")


@main.command(name="serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve_command(host, port):
    """Serve the environment-session HTTP API."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()

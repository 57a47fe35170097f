"""Command-line front end: λ sweeps, crossover search and per-outcome tables."""
from __future__ import annotations

import argparse
import io
import os
import sys
import tempfile
from dataclasses import dataclass

from . import protocol
from .errors import QDiscordError
from .states import BELL_STATES, Channel

SWEEP_HEADER = ("lambda,alice_discord,avg_bob_discord,alice_fid_upper,"
                "avg_bob_fid_upper,avg_bob_fid_lower,outcomes_used")
SINGLE_HEADER = "i,N_i,discord_i,fid_lower_i,fid_upper_i"
MODES = ("sweep", "crossover-discord", "crossover-fidelity", "single")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    channel: Channel = Channel.CLUSTER4
    mode: str = "sweep"
    lambda_min: float = 0.0
    lambda_max: float = 1.0
    steps: int = 51
    lam: float | None = None
    grid_theta: int = 32
    grid_phi: int = 64
    refine_tol: float = 1e-8
    measure_qubit: int | str = 1
    output_path: str | None = None
    bell: str = protocol.DEFAULT_BELL

    @property
    def options(self) -> protocol.DiscordOptions:
        return protocol.DiscordOptions(self.measure_qubit, self.grid_theta, self.grid_phi,
                                       self.refine_tol)


def fmt(x: float) -> str:
    return f"{x:.6f}"


def _measure_qubit(text: str):
    if text == "min":
        return "min"
    if text in ("0", "1"):
        return int(text)
    raise argparse.ArgumentTypeError(f"expected 0, 1 or min, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qdiscord",
        description="Average discord and teleportation-fidelity bounds of Bob's "
                    "remotely prepared two-qubit states.")
    p.add_argument("--channel", choices=[c.value for c in Channel], default="cluster4")
    p.add_argument("--mode", choices=MODES, default="sweep")
    p.add_argument("--lambda-min", type=float, default=0.0)
    p.add_argument("--lambda-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="Werner parameter for --mode single")
    p.add_argument("--grid-theta", type=int, default=32)
    p.add_argument("--grid-phi", type=int, default=64)
    p.add_argument("--refine-tol", type=float, default=1e-8)
    p.add_argument("--measure-qubit", type=_measure_qubit, default=1,
                   help="which of Bob's qubits is measured for discord: 0, 1 or min")
    p.add_argument("--bell", choices=sorted(BELL_STATES), default=protocol.DEFAULT_BELL,
                   help="Bell state inside Alice's Werner state")
    p.add_argument("--out", default=None, help="output file (default: standard output)")
    return p


def parse_args(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if not 0.0 <= ns.lambda_min < ns.lambda_max <= 1.0:
        parser.error("need 0 <= --lambda-min < --lambda-max <= 1")
    if ns.steps < 2:
        parser.error("--steps must be at least 2")
    if ns.grid_theta < 2 or ns.grid_phi < 1:
        parser.error("--grid-theta must be >= 2 and --grid-phi >= 1")
    if ns.refine_tol <= 0:
        parser.error("--refine-tol must be positive")
    if ns.mode == "single":
        if ns.lam is None:
            parser.error("--mode single requires --lambda")
        if not 0.0 <= ns.lam <= 1.0:
            parser.error("--lambda must lie in [0, 1]")
    return RunConfig(
        channel=Channel(ns.channel), mode=ns.mode, lambda_min=ns.lambda_min,
        lambda_max=ns.lambda_max, steps=ns.steps, lam=ns.lam, grid_theta=ns.grid_theta,
        grid_phi=ns.grid_phi, refine_tol=ns.refine_tol, measure_qubit=ns.measure_qubit,
        output_path=ns.out, bell=ns.bell,
    )


def render_sweep(rows) -> str:
    lines = [SWEEP_HEADER]
    for r in rows:
        lines.append(",".join([
            fmt(r.lam), fmt(r.alice_discord), fmt(r.avg_bob_discord), fmt(r.alice_fidelity_upper),
            fmt(r.avg_bob_fidelity_upper), fmt(r.avg_bob_fidelity_lower), str(r.outcome_count_used),
        ]))
    return "\n".join(lines) + "\n"


def render_single(records) -> str:
    lines = [SINGLE_HEADER]
    for r in records:
        if not r.present:
            continue
        lines.append(",".join([str(r.index + 1), fmt(r.probability), fmt(r.discord),
                               fmt(r.bounds.lower), fmt(r.bounds.upper)]))
    return "\n".join(lines) + "\n"


def compute(config: RunConfig) -> str:
    opts = config.options
    if config.mode == "sweep":
        rows = protocol.sweep(config.channel, config.lambda_min, config.lambda_max, config.steps,
                              opts, config.bell)
        return render_sweep(rows)
    if config.mode == "single":
        return render_single(protocol.outcomes(config.lam, config.channel, opts, config.bell))
    curve = protocol.Curve.DISCORD if config.mode == "crossover-discord" else protocol.Curve.FIDELITY_UPPER
    lam_star = protocol.find_crossover(config.channel, curve, (config.lambda_min, config.lambda_max),
                                       opts, config.bell)
    return f"{config.channel.value},{curve.value},{fmt(lam_star)}\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qdiscord-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(config: RunConfig, stdout: io.TextIOBase | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        text = compute(config)
        if config.output_path is None:
            stdout.write(text)
        else:
            _write_atomic(config.output_path, text)
    except (QDiscordError, OSError) as exc:
        print(f"qdiscord: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: simulate, density, spectrum, moments and verify.

Exit codes: 0 success, 1 numeric failure or failed verification, 2 usage error.
Artifacts go to standard output (or --out); logs and error messages to standard error.
"""

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Callable, Optional, TextIO

from pydantic import ValidationError

from app.config import settings
from app.errors import KindError, WalkError
from app.models import CoinSchedule, RunConfig, ScheduleKind
from app.observability import logger, timed
from app.walks import densities, harness, io, spectral
from app.walks.coins import build_schedule
from app.walks.core import distribution, empirical_moment, evolve, new_walk, standard_deviation

PRESETS_PATH = Path(__file__).parent / "data" / "presets.json"

SCHEDULE_FLAGS = ("theta", "theta0", "theta1", "thetas", "coin", "coin_theta", "w0", "kappa")
THEOREM_KINDS = {1: "two-period", 2: "case1", 3: "case2"}
THEOREM_SCHEDULES = {
    1: (ScheduleKind.TWO_PERIOD,),
    2: (ScheduleKind.CASE1, ScheduleKind.ONE_PERIOD),
    3: (ScheduleKind.CASE2,),
}
CHECKS = ("case1-reduction", "theorem3-equiv", "spectral", "convergence")


def load_presets() -> dict[str, dict]:
    """Load the named run presets."""
    with open(PRESETS_PATH) as f:
        return json.load(f)


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with the same fields as the flags")
    common.add_argument("--preset", choices=sorted(load_presets()), help="Named run preset")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="Output path (default: standard output)")

    schedule = common.add_argument_group("schedule")
    schedule.add_argument(
        "--schedule", choices=[kind.value for kind in ScheduleKind], help="Coin sequence family"
    )
    schedule.add_argument("--theta", type=float, help="one-period reflection angle (radians)")
    schedule.add_argument("--theta0", type=float, help="two-period angle of H_0 (radians)")
    schedule.add_argument("--theta1", type=float, help="two-period angle of H_1 (radians)")
    schedule.add_argument("--thetas", type=_float_list, help="n-period angles, comma separated")
    schedule.add_argument("--coin-theta", type=float, help="case1/case2 base reflection angle")
    schedule.add_argument(
        "--coin",
        type=float,
        nargs=8,
        metavar=("A_RE", "A_IM", "B_RE", "B_IM", "C_RE", "C_IM", "D_RE", "D_IM"),
        help="Explicit base coin entries",
    )
    schedule.add_argument("--w0", type=float, help="Initial phase w_0 (radians)")
    schedule.add_argument("--kappa", type=float, help="kappa_1 (case1) or kappa_2 (case2)")

    state = common.add_argument_group("initial state")
    state.add_argument("--alpha", help="Up amplitude as re,im")
    state.add_argument("--beta", help="Down amplitude as re,im")

    parser = argparse.ArgumentParser(
        prog="qwalk", description="Time-dependent coined quantum walks on the line."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(
        "simulate", parents=[common], argument_default=argparse.SUPPRESS,
        help="Position distribution at time t",
    )
    simulate.add_argument("--t", type=int, help="Number of steps")

    density = commands.add_parser(
        "density", parents=[common], argument_default=argparse.SUPPRESS,
        help="Closed-form limit density on a grid",
    )
    density.add_argument("--theorem", type=int, choices=(1, 2, 3))
    density.add_argument("--grid-points", type=int)

    spectrum = commands.add_parser(
        "spectrum", parents=[common], argument_default=argparse.SUPPRESS,
        help="Two-period dispersion relation",
    )
    spectrum.add_argument("--k-points", type=int)

    moments = commands.add_parser(
        "moments", parents=[common], argument_default=argparse.SUPPRESS,
        help="Empirical vs limit moments of X_t/t",
    )
    moments.add_argument("--t", type=int)
    moments.add_argument("--r-max", type=int)

    verify = commands.add_parser(
        "verify", parents=[common], argument_default=argparse.SUPPRESS,
        help="Run a verification suite",
    )
    verify.add_argument("--check", choices=CHECKS, required=True)
    verify.add_argument("--t-list", help="Comma-separated ascending times")
    verify.add_argument("--ks-threshold", type=float)
    verify.add_argument("--ks-slack", type=float)
    return parser


def _schedule_descriptor(base: Optional[dict], flags: dict, theorem: Optional[int]) -> Optional[dict]:
    fields = {name: flags[name] for name in SCHEDULE_FLAGS if name in flags}
    if "coin" in fields:
        values = fields["coin"]
        fields["coin"] = {name: values[2 * i: 2 * i + 2] for i, name in enumerate("abcd")}
    kind = flags.get("schedule") or (base or {}).get("kind")
    if kind is None and theorem is not None:
        kind = THEOREM_KINDS[theorem]
    if kind is None and not fields:
        return base
    kind = kind or "two-period"
    descriptor = dict(base) if base and base.get("kind") == kind else {}
    descriptor.update(fields)
    descriptor["kind"] = kind
    return descriptor


def load_config(args: argparse.Namespace) -> RunConfig:
    """Presets, then the --config file, then explicit flags."""
    flags = vars(args)
    data: dict[str, Any] = {}
    if "preset" in flags:
        data.update(load_presets()[flags["preset"]])
    if "config" in flags:
        data.update(json.loads(Path(flags["config"]).read_text(encoding="utf-8")))
    for name in ("format", "out", "alpha", "beta", "t", "theorem", "grid_points",
                 "k_points", "r_max", "check", "ks_threshold", "ks_slack"):
        if name in flags:
            data[name] = flags[name]
    if "t_list" in flags:
        data["t_list"] = [v.strip() for v in flags["t_list"].split(",")]
    data["command"] = flags["command"]
    descriptor = _schedule_descriptor(data.get("schedule"), flags, data.get("theorem"))
    if descriptor is not None:
        data["schedule"] = descriptor
    return _renormalized(RunConfig.model_validate(data))


def _renormalized(config: RunConfig) -> RunConfig:
    """Rescale a spinor typed with a few decimals onto the unit sphere."""
    norm = abs(config.alpha) ** 2 + abs(config.beta) ** 2
    if abs(norm - 1.0) <= settings.normalization_tolerance:
        return config
    if abs(norm - 1.0) > settings.cli_normalization_tolerance:
        return config
    factor = math.sqrt(norm)
    logger.info("Initial spinor renormalized", extra={"norm_squared": norm})
    return config.model_copy(update={"alpha": config.alpha / factor, "beta": config.beta / factor})


def _schedule(config: RunConfig) -> CoinSchedule:
    return build_schedule(config.schedule, settings.cli_angle_tolerance)


def _limit_density(config: RunConfig, schedule: CoinSchedule):
    if config.theorem is not None and schedule.kind not in THEOREM_SCHEDULES[config.theorem]:
        raise KindError(
            f"theorem {config.theorem} needs a "
            f"{' or '.join(k.value for k in THEOREM_SCHEDULES[config.theorem])} schedule, "
            f"got {schedule.kind.value}"
        )
    return densities.limit_density_for_schedule(schedule, config.alpha, config.beta)


def _reflection_angles(schedule: CoinSchedule) -> tuple[float, float]:
    if schedule.kind != ScheduleKind.TWO_PERIOD or len(schedule.thetas) != 2:
        raise KindError(
            f"spectral analysis needs a two-period schedule given by theta0/theta1, "
            f"got {schedule.kind.value}"
        )
    return schedule.thetas


def cmd_simulate(config: RunConfig, stdout: TextIO) -> int:
    schedule = _schedule(config)
    state = evolve(new_walk(config.alpha, config.beta), schedule, config.t)
    dist = distribution(state)
    text = io.distribution_json(dist) if config.format == "json" else io.distribution_csv(dist)
    io.write_text(text, config.out, stdout)
    return 0


def cmd_density(config: RunConfig, stdout: TextIO) -> int:
    schedule = _schedule(config)
    d = _limit_density(config, schedule)
    xs, fs = densities.density_grid(d, config.grid_points)
    text = io.density_json(d, xs, fs) if config.format == "json" else io.density_csv(xs, fs)
    io.write_text(text, config.out, stdout)
    return 0


def cmd_spectrum(config: RunConfig, stdout: TextIO) -> int:
    theta0, theta1 = _reflection_angles(_schedule(config))
    table = spectral.dispersion_table(theta0, theta1, config.k_points)
    if config.format == "json":
        text = io.table_json(table)
    else:
        text = io.table_csv(io.SPECTRUM_HEADER, table)
    io.write_text(text, config.out, stdout)
    return 0


def cmd_moments(config: RunConfig, stdout: TextIO) -> int:
    schedule = _schedule(config)
    dist = distribution(evolve(new_walk(config.alpha, config.beta), schedule, config.t))
    try:
        d = densities.limit_density_for_schedule(schedule, config.alpha, config.beta)
    except WalkError:
        d = None
    thetas = schedule.thetas if schedule.kind == ScheduleKind.TWO_PERIOD else ()
    rows = []
    for r in range(1, config.r_max + 1):
        rows.append(
            {
                "r": r,
                "empirical": empirical_moment(dist, r, rescale=True),
                "density": densities.density_moment(d, r) if d is not None else None,
                "fourier": (
                    spectral.limit_moment_integral(*thetas, config.alpha, config.beta, r)
                    if len(thetas) == 2
                    else None
                ),
            }
        )
    if config.format == "json":
        payload = {
            "time": dist.time,
            "sigma_over_t": io.number(standard_deviation(dist, rescale=True)),
            "moments": [{k: io.number(v) if k != "r" else v for k, v in row.items()} for row in rows],
        }
        text = io.to_json(payload)
    else:
        text = io.moments_csv(rows)
    io.write_text(text, config.out, stdout)
    return 0


def cmd_verify(config: RunConfig, stdout: TextIO) -> int:
    if config.check == "case1-reduction":
        result = harness.case1_reduction_suite()
    elif config.check == "theorem3-equiv":
        result = harness.theorem_equivalence_suite()
    elif config.check == "spectral":
        result = harness.spectral_suite()
    else:
        schedule = _schedule(config)
        d = densities.limit_density_for_schedule(schedule, config.alpha, config.beta)
        result = harness.convergence_report(
            schedule, d, config.t_list, config.alpha, config.beta,
            config.ks_threshold, config.ks_slack,
        )
    io.write_text(io.to_json(result), config.out, stdout)
    return 0 if result.passed else 1


COMMANDS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "simulate": cmd_simulate,
    "density": cmd_density,
    "spectrum": cmd_spectrum,
    "moments": cmd_moments,
    "verify": cmd_verify,
}


def _validation_message(exc: ValidationError) -> str:
    problems = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "config"
        problems.append(f"{location}: {error['msg']}")
    return "invalid configuration: " + "; ".join(problems)


def _fail(message: str, code: int) -> int:
    print(f"qwalk: error: {message}", file=sys.stderr)
    return code


def main(argv: Optional[list[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Parse, run one command, and return the process exit code."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = load_config(args)
        with timed("command", command=config.command) as extra:
            code = COMMANDS[config.command](config, stdout)
            extra["exit_code"] = code
        return code
    except ValidationError as exc:
        logger.warning("Configuration rejected", extra={"errors": exc.error_count()})
        return _fail(_validation_message(exc), 2)
    except WalkError as exc:
        logger.warning("Command failed", extra={"error": type(exc).__name__, "exit_code": exc.exit_code})
        return _fail(str(exc), exc.exit_code)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(f"cannot read configuration: {exc}", 2)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end

Subcommands:
- analyze: distortion, optimal rank-one direction and laminate of one matrix
- sweep: jump ratio over an (alpha, beta) grid, written as CSV
- laminate: sample the laminate f_j on the unit cube
- verify: run the acceptance suite
- figures: write the figure data tables

Exit codes: 0 ok, 1 verification failure, 2 usage, 3 math domain, 4 I/O.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .config import Tolerances, get_thread_count, get_tolerances, profile_name
from .crossing import branch_table, crossing_interval
from .distortion import energy_gap, linear_distortion
from .errors import DegenerateSpectrumError, DistortionError, OutputError, ValidationError
from .export import (
    BRANCH_HEADER,
    GEOMETRY_HEADER,
    LANDSCAPE_HEADER,
    SWEEP_HEADER,
    csv_text,
    dumps_report,
    write_csv,
    write_json,
)
from .laminate import (
    convergence_study,
    hadamard_jump,
    laminate_distortion,
    laminate_samples,
    lamination_angle,
    optimal_laminate,
    regime_strong,
    regime_weak,
)
from .mat_core import as_mat3, require_distinct, svd3
from .models import Command, EnergyFamily, EnergySpec, LaminateSpec, OutputFormat, RunConfig, SingularForm
from .parser import load_matrix_file, load_run_file
from .rank_one import (
    closed_form_q,
    directional_series,
    iwaniec_example,
    optimal_direction,
    q_landscape,
    transport_direction,
)
from .reporting import JsonLinesReportRenderer, TerminalReportRenderer
from .sweep import jump_sweep, sweep_cells
from .validator import validate
from .verify import run_suite

logger = logging.getLogger(__name__)

BRANCH_FIGURE_SING = (2.0, 10.0)
LANDSCAPE_FIGURE_SING = (2.0, 4.0)
BRANCH_FIGURE_POINTS = 401
LANDSCAPE_FIGURE_THETAS = 64
IWANIEC_CS = (1.5, 2.0, 3.0)


def _matrix_of(config: RunConfig) -> np.ndarray:
    if config.sing is not None:
        return SingularForm.sing(*config.sing).diagonal
    return as_mat3(config.matrix)


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        print(text)


def analyze_matrix(A, energy: Optional[EnergySpec] = None, tol: Optional[Tolerances] = None) -> dict:
    """Full single-matrix report

    Matrices without three distinct singular values get a
    "no rank-one improvement" report with a reason instead of an error.

    Raises:
        RankDeficientError: If A is singular
    """
    tol = tol or get_tolerances()
    energy = energy or EnergySpec()
    A = as_mat3(A)
    h = linear_distortion(A)
    F = svd3(A, tol=tol)
    report = {"matrix": A, "h": h.h, "singular_form": F.to_dict()}

    if h.is_conformal():
        report.update(status="no_improvement", reason="conformal, no improvement")
        return report
    try:
        require_distinct(F, tol)
    except DegenerateSpectrumError as e:
        report.update(status="no_improvement", reason=f"repeated singular value: {e}")
        return report

    normalized = optimal_direction(F, tol)
    B0 = transport_direction(F, normalized)
    series = directional_series(A, B0, tol=tol)
    interval = crossing_interval(F, tol=tol)
    jump = laminate_distortion(optimal_laminate(A, tol=tol), tol=tol)

    report.update(
        status="improved",
        direction=B0.to_dict(),
        direction_normalized=normalized.to_dict(),
        d1=series.d1,
        d2=series.d2,
        d2_normalized=-2.0 * closed_form_q(F.alpha, F.beta),
        series=series.to_dict(),
        t_minus=F.scale * interval.t_minus,
        t_plus=F.scale * interval.t_plus,
        h_minus=interval.h_minus,
        h_plus=interval.h_plus,
        crossing=interval.to_dict(),
        ratio=jump.ratio,
        jump=jump.to_dict(),
        angle_rad=lamination_angle(F, tol),
        energy=energy.to_dict(),
        energy_gap=energy_gap(A, energy, tol=tol),
    )
    return report


def cmd_analyze(config: RunConfig, tol: Tolerances) -> int:
    report = analyze_matrix(_matrix_of(config), config.energy, tol)
    _emit(write_json(config.output_path, report), config.output_path)
    return 0


def cmd_sweep(config: RunConfig, tol: Tolerances) -> int:
    result = jump_sweep(config.alphas, config.betas, workers=config.workers, tol=tol)
    rows = [row.to_dict() for row in result.rows]
    summary = result.summary()
    if result.failures:
        summary["failed_cells"] = result.failures

    if config.output_format is OutputFormat.JSON:
        _emit(write_json(config.output_path, {"summary": summary, "rows": rows}), config.output_path)
        return 0

    if config.output_path is None:
        print(csv_text(SWEEP_HEADER, rows), end="")
        print(dumps_report(summary), file=sys.stderr)
    else:
        write_csv(config.output_path, SWEEP_HEADER, rows)
        print(dumps_report(summary))
    return 0


def laminate_report(config: RunConfig, tol: Tolerances) -> tuple[dict, LaminateSpec]:
    """JumpReport, deviation statistics and phase check for the laminate of one matrix"""
    L = optimal_laminate(_matrix_of(config), j=config.j, tol=tol)
    jump = laminate_distortion(L, tol=tol)
    row = convergence_study(L, [config.j], samples=config.samples, seed=config.seed)[0]
    report = {
        "j": config.j,
        "samples": config.samples,
        "seed": config.seed,
        "t_minus": L.t_minus,
        "t_plus": L.t_plus,
        "direction": L.B0.to_dict(),
        "jump": jump.to_dict(),
        "max_deviation": row.max_deviation,
        "deviation_bound": row.bound,
        "h_fj": row.h_fj,
        "fraction_plus": jump.fraction_plus,
        "fraction_plus_sampled": row.fraction_plus_sampled,
        "hadamard": hadamard_jump(L).to_dict(),
    }
    return report, L


def cmd_laminate(config: RunConfig, tol: Tolerances) -> int:
    report, L = laminate_report(config, tol)
    geometry = config.geometry or config.output_format is OutputFormat.CSV
    if not geometry:
        _emit(write_json(config.output_path, report), config.output_path)
        return 0

    rows = laminate_samples(L, samples=config.samples, seed=config.seed)
    if config.output_path is None:
        print(csv_text(GEOMETRY_HEADER, rows), end="")
        logger.info(f"Laminate report: {dumps_report(report)}")
    else:
        write_csv(config.output_path, GEOMETRY_HEADER, rows)
        print(dumps_report(report))
    return 0


def cmd_verify(config: RunConfig, tol: Tolerances, verbosity: int = 0, progress: str = "terminal") -> int:
    if progress == "jsonl":
        renderer = JsonLinesReportRenderer(debug=verbosity >= 2)
    else:
        renderer = TerminalReportRenderer(stream=sys.stderr, use_colors=sys.stderr.isatty(), debug=verbosity >= 2)

    def listener(event):
        for line in renderer.process(event):
            print(line, file=sys.stderr, flush=True)

    report = run_suite(
        alphas=config.alphas,
        betas=config.betas,
        inject_fault=config.inject_fault,
        only=config.checks,
        seed=config.seed,
        workers=config.workers,
        tol=tol,
        listener=listener,
    )
    _emit(write_json(config.output_path, report.to_dict()), config.output_path)
    return 0 if report.passed else 1


def cmd_figures(config: RunConfig, tol: Tolerances) -> int:
    """Write the figure data tables into a directory"""
    out = Path(config.output_path or "figures")
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"Cannot create output directory {out}: {e}")

    F = SingularForm.sing(*BRANCH_FIGURE_SING)
    interval = crossing_interval(F, tol=tol)
    ts = np.linspace(1.5 * interval.t_minus, 1.5 * interval.t_plus, BRANCH_FIGURE_POINTS)
    write_csv(out / "branches_sing_1_2_10.csv", BRANCH_HEADER, branch_table(F, ts))

    landscape = q_landscape(SingularForm.sing(*LANDSCAPE_FIGURE_SING), n_theta=LANDSCAPE_FIGURE_THETAS, tol=tol)
    write_csv(out / "q_landscape_sing_1_2_4.csv", LANDSCAPE_HEADER, landscape)

    strong = sweep_cells(regime_strong(), workers=config.workers, tol=tol)
    write_csv(out / "jump_strong.csv", SWEEP_HEADER, [row.to_dict() for row in strong.rows])
    weak = sweep_cells(regime_weak(), workers=config.workers, tol=tol)
    write_csv(out / "jump_weak.csv", SWEEP_HEADER, [row.to_dict() for row in weak.rows])

    examples = [iwaniec_example(c, tol=tol)[1] for c in IWANIEC_CS]
    write_json(out / "diagonal_examples.json", {"examples": examples})

    print(dumps_report({"output_dir": str(out), "strong": strong.summary(), "weak": weak.summary()}))
    return 0


COMMANDS = {
    Command.ANALYZE: cmd_analyze,
    Command.SWEEP: cmd_sweep,
    Command.LAMINATE: cmd_laminate,
    Command.FIGURES: cmd_figures,
}


def _add_matrix_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("matrix", nargs="*", type=float, help="Nine matrix entries, row-major")
    parser.add_argument("--sing", nargs=2, type=float, metavar=("ALPHA", "BETA"), help="Use diag(1, ALPHA, BETA)")
    parser.add_argument("--matrix-file", help="JSON file with a 3x3 matrix")


def _add_grid_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alphas", nargs="*", type=float, help="Alpha grid values")
    parser.add_argument("--betas", nargs="*", type=float, help="Beta grid values")


def _add_common_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Options accepted both before and after the subcommand"""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "-v", "--verbose", action="count", default=default(0), help="-v for info, -vv for debug logging"
    )
    parser.add_argument("--profile", default=default(None), help="Tolerance profile: default, strict or loose")
    parser.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=default(None), help="Output format"
    )
    parser.add_argument("--output", default=default(None), help="Output file (directory for 'figures')")
    parser.add_argument(
        "--workers", type=int, default=default(None), help="Thread count (default: QCD_THREADS or 1)"
    )
    parser.add_argument("--seed", type=int, default=default(0), help="Random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcdistortion",
        description="Distortion of 3x3 matrices, optimal rank-one directions and distortion-reducing laminates",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="YAML run file (replaces the subcommand and its options)")
    _add_common_options(parser, suppress=False)

    common = argparse.ArgumentParser(add_help=False)
    _add_common_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command")

    analyze = sub.add_parser("analyze", parents=[common], help="Analyze one matrix")
    _add_matrix_options(analyze)
    analyze.add_argument("--energy", choices=[f.value for f in EnergyFamily], default="identity")
    analyze.add_argument("--energy-p", type=float, default=1.0, help="Exponent of the power energy")

    sweep = sub.add_parser("sweep", parents=[common], help="Jump ratio over an (alpha, beta) grid")
    _add_grid_options(sweep)

    laminate = sub.add_parser("laminate", parents=[common], help="Sample the laminate of one matrix")
    _add_matrix_options(laminate)
    laminate.add_argument("--j", type=int, default=10, help="Laminate frequency")
    laminate.add_argument("--samples", type=int, default=10_000, help="Points sampled in the unit cube")
    laminate.add_argument("--geometry", action="store_true", help="Write per-sample (x, f(x), phase) CSV")

    verify = sub.add_parser("verify", parents=[common], help="Run the acceptance suite")
    _add_grid_options(verify)
    verify.add_argument("--inject-fault", action="store_true", help="Perturb closed-form coefficients (self-test)")
    verify.add_argument("--only", nargs="+", help="Run only the named checks")
    verify.add_argument(
        "--progress", choices=["terminal", "jsonl"], default="terminal", help="Progress lines on stderr"
    )

    sub.add_parser("figures", parents=[common], help="Write figure data tables to --output (a directory)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Build a RunConfig from parsed arguments or the --config run file"""
    if args.config:
        config = load_run_file(args.config)
    else:
        if args.command is None:
            raise ValidationError("A subcommand or --config is required")
        config = RunConfig(command=Command(args.command))
        matrix = getattr(args, "matrix", None) or None
        matrix_file = getattr(args, "matrix_file", None)
        if matrix is not None and matrix_file:
            raise ValidationError("Give the matrix either inline or with --matrix-file, not both")
        if matrix_file:
            matrix = load_matrix_file(matrix_file).ravel().tolist()
        config.matrix = matrix
        if getattr(args, "sing", None) is not None:
            config.sing = (args.sing[0], args.sing[1])
        config.alphas = getattr(args, "alphas", None)
        config.betas = getattr(args, "betas", None)
        config.j = getattr(args, "j", config.j)
        config.samples = getattr(args, "samples", config.samples)
        config.geometry = getattr(args, "geometry", False)
        config.inject_fault = getattr(args, "inject_fault", False)
        config.checks = getattr(args, "only", None)
        if getattr(args, "energy", None):
            config.energy = EnergySpec(family=EnergyFamily(args.energy), p=args.energy_p)
        config.seed = args.seed

    if args.format:
        config.output_format = OutputFormat(args.format)
    if args.output:
        config.output_path = args.output
    if args.profile:
        config.tolerance_profile = args.profile
    config.workers = args.workers or (config.workers if args.config else get_thread_count())
    return config


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        config = validate(config_from_args(args), context=args.config)
        config.tolerance_profile = profile_name(config.tolerance_profile)
        tol = get_tolerances(config.tolerance_profile)
        logger.info(f"Running '{config.command.value}' with profile '{config.tolerance_profile}'")
        if config.command is Command.VERIFY:
            return cmd_verify(config, tol, args.verbose, getattr(args, "progress", "terminal"))
        return COMMANDS[config.command](config, tol)
    except ValidationError as e:
        for message in e.errors:
            print(f"❌ {message}", file=sys.stderr)
        return e.exit_code
    except DistortionError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code


__all__ = [
    "analyze_matrix",
    "laminate_report",
    "cmd_analyze",
    "cmd_sweep",
    "cmd_laminate",
    "cmd_verify",
    "cmd_figures",
    "build_parser",
    "config_from_args",
    "main",
]

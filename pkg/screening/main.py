"""Command-line entry point: python -m screening.main <command> [options]."""
from pathlib import Path
from typing import Optional, Sequence
import argparse
import json
import logging
import sys

from pydantic import ValidationError

from screening.commands import bound, critical, reproduce, resonances, scan, smatrix_scan
from screening.commands.common import EXIT_CONFIG, EXIT_FAILURE
from screening.config import KINEMATICS_MODES, get_settings
from screening.data.golden_tables import TABLE_IDS
from screening.schemas.config import parse_config
from screening.utils.exceptions import ConfigError, KinematicsModeError, ScreeningException

logger = logging.getLogger(__name__)


def configure_logging() -> None:
    """Console handler on stderr plus an optional file handler (SPECTRA_LOG_FILE)."""
    settings = get_settings()
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        log_path = Path(settings.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def _add_problem_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("problem")
    group.add_argument("--potential", help="yukawa | hulthen | paper-fig1 | paper-fig1-flat")
    group.add_argument("--A", type=float, dest="strength", help="potential strength A")
    group.add_argument("--mu", type=float, help="screening parameter mu")
    group.add_argument("--Z", type=float, dest="bare_charge", help="bare Coulomb charge Z")
    group.add_argument("--breakpoints", help='piecewise envelope as JSON, e.g. "[[0,1],[2,1],[4,0]]"')
    group.add_argument("--ell", type=int, help="angular momentum")
    group.add_argument("--N", type=int, dest="n_basis", help="basis size")
    group.add_argument("--lambda", type=float, dest="lam", help="basis scale lambda")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="run configuration (.json or .toml)")
    parser.add_argument("--mode", choices=KINEMATICS_MODES, help="kinematics of the outer region")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    parser.add_argument("--output", help="output path (stdout by default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="screening", description="J-matrix bound states and resonances of screened Coulomb potentials."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="bound-state energies")
    _add_common_flags(p)
    _add_problem_flags(p)
    p.add_argument("--window", type=float, nargs=2, metavar=("E_LO", "E_HI"))

    p = sub.add_parser("resonances", help="resonance energies and widths")
    _add_common_flags(p)
    _add_problem_flags(p)
    p.add_argument("--theta", type=float, nargs="+", help="complex-rotation angles (rad)")
    p.add_argument("--seed", type=float, nargs=2, action="append", metavar=("RE", "IM"), dest="seeds")

    p = sub.add_parser("scan", help="lambda/N plateau of one pole")
    _add_common_flags(p)
    _add_problem_flags(p)
    p.add_argument("--lambdas", type=float, nargs="+")
    p.add_argument("--n-values", type=int, nargs="+", dest="n_values")
    p.add_argument("--kind", choices=("bound", "resonance"))
    p.add_argument("--state-index", type=int, dest="state_index")
    p.add_argument("--seed", type=float, nargs=2, metavar=("RE", "IM"), dest="scan_seed")
    p.add_argument("--theta", type=float, nargs="+", help="complex-rotation angles (rad)")

    p = sub.add_parser("critical", help="critical screening parameter")
    _add_common_flags(p)
    _add_problem_flags(p)
    p.add_argument("--state-index", type=int, dest="state_index")
    p.add_argument("--mu-lo", type=float, dest="mu_lo")
    p.add_argument("--mu-hi", type=float, dest="mu_hi")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--method", choices=("bisection", "fit"))

    p = sub.add_parser("reproduce", help="compare against a published table")
    _add_common_flags(p)
    p.add_argument("table", choices=TABLE_IDS)
    p.add_argument("--no-critical", action="store_true", help="skip critical screening rows")

    p = sub.add_parser("smatrix-scan", help="|S(E)| and arg S(E) on a real energy grid")
    _add_common_flags(p)
    _add_problem_flags(p)
    p.add_argument("--e-min", type=float, dest="e_min")
    p.add_argument("--e-max", type=float, dest="e_max")
    p.add_argument("--points", type=int)
    return parser


def _pick(args: argparse.Namespace, names: Sequence[str], rename: Optional[dict] = None) -> dict:
    rename = rename or {}
    return {
        rename.get(name, name): getattr(args, name)
        for name in names
        if getattr(args, name, None) is not None
    }


def flag_overrides(args: argparse.Namespace) -> dict:
    """Nested override dict from the flags the user actually passed."""
    overrides: dict = {}
    potential = _pick(
        args, ("potential", "strength", "mu", "bare_charge"), {"potential": "name", "strength": "A", "bare_charge": "Z"}
    )
    if getattr(args, "breakpoints", None):
        try:
            potential["breakpoints"] = json.loads(args.breakpoints)
        except json.JSONDecodeError as e:
            raise ConfigError("potential.breakpoints", f"not valid JSON: {e}") from e
    if potential:
        overrides["potential"] = potential
    basis = _pick(args, ("ell", "n_basis", "lam"), {"n_basis": "N", "lam": "lambda"})
    if basis:
        overrides["basis"] = basis
    if args.mode:
        overrides["mode"] = args.mode
    output = _pick(args, ("format", "output"), {"output": "path"})
    if output:
        overrides["output"] = output

    if args.command == "bound" and args.window:
        overrides["bound"] = {"window": args.window}
    if args.command in ("resonances", "scan"):
        block = _pick(args, ("theta",))
        if getattr(args, "seeds", None):
            block["seeds"] = args.seeds
        if block:
            overrides["resonances"] = block
    if args.command == "scan":
        block = _pick(args, ("lambdas", "n_values", "kind", "state_index", "scan_seed"), {"scan_seed": "seed"})
        if block:
            overrides["scan"] = block
    if args.command == "critical":
        block = _pick(args, ("state_index", "mu_lo", "mu_hi", "tolerance", "method"))
        overrides["critical"] = block
    if args.command == "smatrix-scan":
        block = _pick(args, ("e_min", "e_max", "points"))
        if block:
            overrides["smatrix"] = block
    return overrides


def _dispatch(args: argparse.Namespace) -> int:
    config = parse_config(args.config, flag_overrides(args))
    if args.command == "bound":
        return bound.run(config)
    if args.command == "resonances":
        return resonances.run(config)
    if args.command == "scan":
        return scan.run(config)
    if args.command == "critical":
        return critical.run(config)
    if args.command == "reproduce":
        return reproduce.run(config, args.table, include_critical=not args.no_critical)
    return smatrix_scan.run(config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()
    logger.info(f"screening {args.command} starting")
    try:
        return _dispatch(args)
    except (ConfigError, KinematicsModeError, ValidationError) as e:
        logger.error(f"Configuration error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ScreeningException as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

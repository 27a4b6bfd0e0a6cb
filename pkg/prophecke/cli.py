"""Command-line entry point: ``prophecke [--config FILE] {verify,compute,presets,seeds}``."""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from prophecke import __version__
from prophecke.dsl import DSLParseError, compute
from prophecke.harness import SUITES, UnknownSuiteError, build_context, list_suites, run_suites
from prophecke.models import Bounds, Config, OutputFormat, RunSummary, parse_config
from prophecke.modules import chamber_seeds
from prophecke.root_system import PRESETS, preset

logger = logging.getLogger(__name__)


def _toon_encode(data):
    """Encode as TOON (Token-Oriented Object Notation), JSON fallback."""
    try:
        from toon import encode
        return encode(data)
    except Exception:
        return json.dumps(data, default=str)


def render(summary: RunSummary, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.text:
        return _toon_encode(summary.model_dump(mode="json"))
    return summary.model_dump_json(indent=2)


def display_error(source: str, error: DSLParseError) -> None:
    print(f"{error}:", file=sys.stderr)
    print(f"  {source}", file=sys.stderr)
    print("  " + " " * error.position + "^", file=sys.stderr)


# --------------------------------------------------------------------------- #
# Parser                                                                      #
# --------------------------------------------------------------------------- #


def _common() -> argparse.ArgumentParser:
    # accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", default=argparse.SUPPRESS, help="JSON config file")
    common.add_argument(
        "--log-level",
        default=argparse.SUPPRESS,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="root logger level (default WARNING)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="prophecke",
        description="exact arithmetic and lemma checks for pro-p Iwahori-Hecke algebras at q = 0",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"prophecke {__version__}")
    parser.add_argument("--list-suites", action="store_true", help="print every suite with the statement it checks")
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser("verify", parents=[common], help="run lemma suites and print a report")
    verify.add_argument(
        "--suite",
        action="append",
        default=None,
        help="suite name, repeatable; 'all' runs every suite (default)",
    )
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--max-length", type=int, default=None)
    verify.add_argument("--nu-height", type=int, default=None)
    verify.add_argument("--box-radius", type=int, default=None)
    verify.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.json.value)
    verify.add_argument("--timings", action="store_true", help="include wall-clock seconds per report")

    comp = sub.add_parser("compute", parents=[common], help="evaluate an expression in H")
    comp.add_argument("expression")

    sub.add_parser("presets", parents=[common], help="list the built-in root data")
    sub.add_parser("seeds", parents=[common], help="list the E(lambda) seeds module matrices are given on")
    return parser


# --------------------------------------------------------------------------- #
# Commands                                                                    #
# --------------------------------------------------------------------------- #


def _load(args: argparse.Namespace) -> Config:
    path = getattr(args, "config", None)
    if path is None:
        return Config()
    return parse_config(path)


def _with_overrides(cfg: Config, args: argparse.Namespace) -> Config:
    overrides = {
        key: value
        for key, value in (
            ("max_length", args.max_length),
            ("nu_height", args.nu_height),
            ("box_radius", args.box_radius),
        )
        if value is not None
    }
    update = {}
    if overrides:
        update["bounds"] = Bounds.model_validate({**cfg.bounds.model_dump(), **overrides})
    if args.seed is not None:
        update["seed"] = args.seed
    return cfg.model_copy(update=update) if update else cfg


def _suite_names(requested: Optional[List[str]]) -> List[str]:
    if not requested or "all" in requested:
        return list(SUITES)
    return list(dict.fromkeys(requested))


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _with_overrides(_load(args), args)
    summary = run_suites(cfg, _suite_names(args.suite), timings=args.timings)
    print(render(summary, OutputFormat(args.format)))
    return summary.exit_code


def cmd_compute(args: argparse.Namespace) -> int:
    ctx = build_context(_load(args))
    try:
        print(compute(ctx.algebra, args.expression))
    except DSLParseError as error:
        display_error(args.expression, error)
        return 1
    return 0


def cmd_presets(args: argparse.Namespace) -> int:
    for name in PRESETS:
        rd = preset(name)
        print(f"{name}: roots {[list(a) for a in rd.simple_roots]} coroots {[list(c) for c in rd.simple_coroots]} |W_0|={len(rd.weyl)}")
    return 0


def cmd_seeds(args: argparse.Namespace) -> int:
    ctx = build_context(_load(args))
    for k, lam in enumerate(chamber_seeds(ctx.algebra)):
        print(f"{k}: {ctx.group.format(ctx.group.from_lambda(lam))}")
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "compute": cmd_compute,
    "presets": cmd_presets,
    "seeds": cmd_seeds,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(args, "log_level", "WARNING"),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if args.list_suites:
        for name, statement in list_suites():
            print(f"{name:22s} {statement}")
        return 0
    if args.command is None:
        parser.print_help()
        return 1
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"invalid config:\n{exc}", file=sys.stderr)
        return 1
    except (UnknownSuiteError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

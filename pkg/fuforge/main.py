"""
Main entry point for FuForge.

This script handles the complete command-line lifecycle, including:
- Parsing the `verify | search | decode | explore` subcommands.
- Loading the stored configuration and resolving the per-run RunConfig.
- Setting up logging (stderr, `LEVEL: message`).
- Running the command and turning its outcome into an exit code
  (0 ok, 1 violation, 2 usage error, 3 budget exhausted).
"""
import argparse
import logging
import sys
from typing import List, Optional

from fuforge.application_manager import ApplicationManager
from fuforge.commands.runner import CommandRunner
from fuforge.config.config import EXIT_USAGE, SEARCH_DOMAINS, VERIFY_SUITES, load_app_info
from fuforge.config.config_manager import ConfigManager, resolve_run_config
from fuforge.log import setup_logging

logger = logging.getLogger("fuforge.main")


def _common_options() -> argparse.ArgumentParser:
    """Flags shared by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed for randomized sweeps and colorings")
    common.add_argument("--budget", type=int, help="node limit per search branch")
    common.add_argument("--workers", type=int, help="worker processes for sweeps and searches")
    common.add_argument("--oracle", action="store_true", help="route through the naive reference path")
    common.add_argument("--json", action="store_true", help="emit a JSON record instead of text")
    common.add_argument("--cache", help="result cache file (overrides FUFORGE_CACHE)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--timing", action="store_true", help="report wall time")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    return common


def build_parser() -> argparse.ArgumentParser:
    app_info = load_app_info()
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog=app_info.get("service_name", "fuforge"),
        description=app_info.get("description"),
    )
    parser.add_argument("--version", action="version", version=app_info.get("version"))
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=VERIFY_SUITES)
    verify.add_argument("--base", help='divisible base: "pow2" or e.g. "1,2,6,24"')
    verify.add_argument("--seq", help='integer sequence, e.g. "1,5,25,125"')
    verify.add_argument("--factor", type=int, help="growth factor for --seq (default 4)")
    verify.add_argument("--order", type=int, help="semigroup order (4 is sampled)")
    verify.add_argument("--trials", type=int, help="random trials for growth/heredity sweeps")
    verify.add_argument("--positions", type=int, help="support positions for the trivial-sum sweep")
    verify.add_argument("--terms", type=int, help="sequence length for the trivial-sum sweep")
    verify.add_argument("--bound", type=int, help="bound on a and b for the trivial-sum sweep")

    search = sub.add_parser("search", parents=[common], help="search witnesses or thresholds")
    search.add_argument("domain", choices=SEARCH_DOMAINS)
    search.add_argument("--N", type=int, help="interval [1, N] for fs")
    search.add_argument("--n", type=int, help="ground set {0..n-1} for fu and pairs")
    search.add_argument("--k", type=int, help="number of generators")
    search.add_argument("--r", type=int, help="number of colors")
    search.add_argument("--coloring", "--colors", dest="coloring",
                        help="generator name or JSON table")
    search.add_argument("--cut", type=int, help="cut point for the threshold coloring")
    search.add_argument("--max", type=int, help="search bound for fs-threshold (default 32)")

    decode = sub.add_parser("decode", parents=[common], help="alpha-expand integers")
    decode.add_argument("--base", default="pow2", help='"pow2" (sized per input) or e.g. "1,2,6,24"')
    decode.add_argument("values", type=int, nargs="+")

    explore = sub.add_parser("explore", parents=[common], help="inspect sequences and families")
    explore.add_argument("--seq", help="integer sequence x")
    explore.add_argument("--y", help="candidate condensation of x")
    explore.add_argument("--sum", type=int, help="a finite sum of x to decode")
    explore.add_argument("--k", type=int, help="catalog FS_k(x)")
    explore.add_argument("--family", help="JSON array of integer arrays (the family s)")
    explore.add_argument("--cond", help="JSON array of integer arrays (the condensation t)")
    explore.add_argument("--b", type=int, help="starting index for the x/y/z construction")
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    """
    Runs one command line.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:]).
        out: Stream for the report (defaults to stdout).

    Returns:
        The exit code.
    """
    args = build_parser().parse_args(argv)
    stored = ConfigManager.load()
    level = "DEBUG" if args.verbose else "WARNING" if args.quiet else stored.get("log_level", "INFO")
    setup_logging(level)
    try:
        config = resolve_run_config(args.command, args, stored)
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    app = ApplicationManager(config, out=out)
    return CommandRunner(args, app).run()


if __name__ == "__main__":
    sys.exit(main())

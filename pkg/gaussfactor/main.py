"""
Gauss Factor - command line entry point
File: gaussfactor/main.py
"""

import argparse
import logging
import sys
from typing import List, Optional

import pydantic

from gaussfactor.cli import factor, simulate, verify
from gaussfactor.config import settings
from gaussfactor.utils.exceptions import GaussFactorError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INTERNAL = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussfactor",
        description="Factor numbers with truncated Gauss sums and simulated spin echoes",
    )
    parser.add_argument("--version", action="version", version=f"{settings.APP_NAME} {settings.VERSION}")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument("--debug", action="store_true", help="log everything to stderr")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # Command modules
    factor.register(subparsers)
    simulate.register(subparsers)
    verify.register(subparsers)
    return parser


def configure_logging(verbose: bool = False, debug: bool = False) -> None:
    level = settings.LOG_LEVEL
    if debug or settings.DEBUG:
        level = "DEBUG"
    elif verbose:
        level = "INFO"
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def run(argv: Optional[List[str]] = None) -> int:
    """Parse flags, execute one command and return its exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 for --help/--version
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION

    configure_logging(args.verbose, args.debug)
    try:
        return args.handler(args)
    except GaussFactorError as e:
        logger.debug(f"{type(e).__name__}: {e.detail}")
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code
    except pydantic.ValidationError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_VALIDATION
    except Exception as e:
        logger.error(f"❌ Internal error: {e}")
        sys.stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

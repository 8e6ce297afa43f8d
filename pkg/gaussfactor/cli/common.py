"""
Shared argument definitions for the command modules
File: gaussfactor/cli/common.py
"""

import argparse
from typing import Optional

from gaussfactor.config import settings
from gaussfactor.services.gauss_sums import damping_from_timing
from gaussfactor.utils.validators import parse_target_number, validate_damping


def add_target_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--n", required=True, type=parse_target_number, metavar="N",
        help="number to factor, as a decimal string of any length",
    )


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["csv", "json"], default="csv", help="output format")
    parser.add_argument("--out", default=None, metavar="PATH", help="write to PATH instead of stdout")


def add_timing_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--gamma", type=float, default=None,
        help="per-cycle damping exponent; overrides the value derived from --tau/--t2",
    )
    parser.add_argument(
        "--tau", type=float, default=settings.DEFAULT_TAU,
        help="half cycle time in seconds (default %(default)s)",
    )
    parser.add_argument(
        "--t2", type=float, default=settings.DEFAULT_T2,
        help="transverse relaxation time in seconds (default %(default)s)",
    )


def resolve_gamma(args: argparse.Namespace) -> float:
    """--gamma if given, else 2*tau/T2"""
    gamma: Optional[float] = getattr(args, "gamma", None)
    if gamma is not None:
        return validate_damping(gamma)
    return damping_from_timing(args.tau, args.t2)

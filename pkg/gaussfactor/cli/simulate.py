"""
Spin-echo simulation command
File: gaussfactor/cli/simulate.py
"""

import argparse

from gaussfactor.cli.common import (
    add_output_arguments,
    add_target_argument,
    add_timing_arguments,
    resolve_gamma,
)
from gaussfactor.config import settings
from gaussfactor.services.output_writer import OutputWriter
from gaussfactor.services.spin_simulator import SpinEchoSimulator, damped_trace
from gaussfactor.utils.validators import validate_trial_factor, validate_truncation


def register(subparsers: argparse._SubParsersAction) -> None:
    simulate = subparsers.add_parser("simulate", help="echo trace s_m for one trial factor")
    add_target_argument(simulate)
    simulate.add_argument("--ell", type=int, required=True, help="trial factor")
    simulate.add_argument("--m", type=int, required=True, help="truncation M (M+1 pulses)")
    add_timing_arguments(simulate)
    simulate.add_argument(
        "--epsilon", type=float, default=settings.DEFAULT_EPSILON,
        help="Boltzmann polarization (default %(default)s)",
    )
    simulate.add_argument("--detuning", type=float, default=0.0, help="delta omega in rad/s")
    simulate.add_argument("--damped", action="store_true", help="append the T2-damped column")
    simulate.add_argument("--times", action="store_true", help="include echo times in seconds")
    add_output_arguments(simulate)
    simulate.set_defaults(handler=handle_simulate)


def handle_simulate(args: argparse.Namespace) -> int:
    validate_trial_factor(args.ell)
    validate_truncation(args.m)
    simulator = SpinEchoSimulator(epsilon=args.epsilon, tau=args.tau)
    trace = simulator.simulate(args.n, args.ell, args.m, detuning=args.detuning, t2=args.t2)
    damped = damped_trace(trace, resolve_gamma(args)) if args.damped else None

    writer = OutputWriter(args.format)
    writer.emit(writer.trace(trace, damped=damped, include_times=args.times), args.out)
    return 0

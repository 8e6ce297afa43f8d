"""
Scan commands: factor, neighborhood and contrast
File: gaussfactor/cli/factor.py
"""

import argparse
import logging

from gaussfactor.cli.common import (
    add_output_arguments,
    add_target_argument,
    add_timing_arguments,
    resolve_gamma,
)
from gaussfactor.config import settings
from gaussfactor.models.scan import InterferencePattern, ScanConfig, ScanVariant
from gaussfactor.services.factor_scanner import FactorScanner, window_config
from gaussfactor.services.output_writer import OutputWriter
from gaussfactor.utils.validators import parse_truncation_list, validate_truncation

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    factor = subparsers.add_parser("factor", help="full interference pattern over ell = 1..n0")
    add_target_argument(factor)
    factor.add_argument("--m", type=int, required=True, help="truncation M (M+1 terms)")
    _add_variant_argument(factor)
    add_timing_arguments(factor)
    _add_scan_arguments(factor)
    factor.add_argument("--force", action="store_true", help="allow full scans above the size limit")
    add_output_arguments(factor)
    factor.set_defaults(handler=handle_factor)

    neighborhood = subparsers.add_parser("neighborhood", help="window scan around a suspected factor")
    add_target_argument(neighborhood)
    neighborhood.add_argument("--center", type=int, required=True)
    neighborhood.add_argument("--halfwidth", type=int, required=True)
    neighborhood.add_argument("--m", type=int, required=True, help="truncation M (M+1 terms)")
    _add_scan_arguments(neighborhood)
    add_output_arguments(neighborhood)
    neighborhood.set_defaults(handler=handle_neighborhood)

    curve = subparsers.add_parser("contrast", help="contrast V as a function of M")
    add_target_argument(curve)
    curve.add_argument("--m-values", required=True, type=parse_truncation_list, help="e.g. 2,4,10")
    _add_variant_argument(curve)
    add_timing_arguments(curve)
    curve.add_argument("--force", action="store_true", help="allow full scans above the size limit")
    add_output_arguments(curve)
    curve.set_defaults(handler=handle_contrast)


def _add_variant_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--variant", choices=[v.value for v in ScanVariant], default=ScanVariant.A_MAGNITUDE.value,
        help="A: |A_N|, C: Re A_N, damped: T2-damped C_N, echo: simulated spin-echo sum",
    )


def _add_scan_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threshold", type=float, default=settings.DEFAULT_THRESHOLD,
        help="detection threshold relative to the divisor value (default %(default)s)",
    )
    parser.add_argument("--workers", type=int, default=None, help="scan threads (capped by GAUSSFACTOR_THREADS)")
    parser.add_argument("--report", default=None, metavar="PATH", help="write a JSON factor report to PATH")


def _emit(args: argparse.Namespace, scanner: FactorScanner, pattern: InterferencePattern) -> int:
    writer = OutputWriter(args.format)
    writer.emit(writer.pattern(pattern), args.out)
    if args.report:
        report = scanner.classify(pattern, args.threshold)
        writer.emit(OutputWriter.report(report), args.report)
        logger.info(f"Detected factors: {report.detected}")
    return 0


def handle_factor(args: argparse.Namespace) -> int:
    validate_truncation(args.m)
    config = ScanConfig(
        n=args.n,
        m_max=args.m,
        variant=ScanVariant(args.variant),
        gamma=resolve_gamma(args),
        threshold=args.threshold,
    )
    scanner = FactorScanner(max_workers=args.workers)
    pattern = scanner.scan(config, force=args.force)
    return _emit(args, scanner, pattern)


def handle_neighborhood(args: argparse.Namespace) -> int:
    validate_truncation(args.m)
    config = window_config(args.n, args.center, args.halfwidth, args.m, threshold=args.threshold)
    scanner = FactorScanner(max_workers=args.workers)
    pattern = scanner.scan(config)
    return _emit(args, scanner, pattern)


def handle_contrast(args: argparse.Namespace) -> int:
    points = FactorScanner().contrast_curve(
        args.n,
        args.m_values,
        variant=ScanVariant(args.variant),
        gamma=resolve_gamma(args),
        force=args.force,
    )
    writer = OutputWriter(args.format)
    writer.emit(writer.contrast_curve(points), args.out)
    return 0

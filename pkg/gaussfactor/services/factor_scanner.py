"""
Trial-factor scans, divisor classification and contrast curves
File: gaussfactor/services/factor_scanner.py
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Set, Tuple

from gaussfactor.config import settings
from gaussfactor.models.gauss import ResourceEstimate
from gaussfactor.models.scan import (
    ContrastPoint,
    FactorReport,
    InterferencePattern,
    PatternRecord,
    ScanConfig,
    ScanRange,
    ScanVariant,
)
from gaussfactor.services.gauss_sums import (
    closest_integer_sqrt,
    contrast,
    damped_gauss_sum,
    damped_peak,
    gauss_sum_A,
    gauss_sum_C,
)
from gaussfactor.services.spin_simulator import SpinEchoSimulator
from gaussfactor.utils.exceptions import (
    InvalidTruncationError,
    ScanRangeError,
    ScanRefusedError,
    ValidationError,
)
from gaussfactor.utils.validators import validate_target_number

logger = logging.getLogger(__name__)


def resource_estimate(n: int) -> ResourceEstimate:
    """
    Scan size of a full pattern: sqrt(N) = exp(L/2) with L = ln N, plus n0

    Args:
        n: Number to be factored, any size

    Returns:
        ResourceEstimate; log_n and n0 are available for every N. sqrt_n is taken
        from exp(L/2) once N no longer fits a double, and is None when that
        overflows too.
    """
    validate_target_number(n)
    log_n = math.log(n)
    try:
        sqrt_n: Optional[float] = math.sqrt(n)
    except OverflowError:
        try:
            sqrt_n = math.exp(log_n / 2.0)
        except OverflowError:
            sqrt_n = None
    return ResourceEstimate(
        sqrt_n=sqrt_n,
        log_n=log_n,
        n0=closest_integer_sqrt(n),
    )


def trial_division_oracle(n: int, bound: int) -> Set[int]:
    """All divisors d of N with 2 <= d <= bound, by exact trial division"""
    if bound < 2:
        raise ValidationError(f"trial division bound must be at least 2, got {bound}")
    return divisors_in_range(n, 2, bound)


def divisors_in_range(n: int, lo: int, hi: int) -> Set[int]:
    """Divisors of N inside [lo, hi]"""
    return {d for d in range(max(lo, 1), hi + 1) if n % d == 0}


def window_config(
    n: int,
    center: int,
    halfwidth: int,
    m_max: int,
    variant: ScanVariant = ScanVariant.A_MAGNITUDE,
    gamma: float = 0.0,
    threshold: Optional[float] = None,
) -> ScanConfig:
    """Scan configuration for the neighborhood of a suspected factor"""
    return ScanConfig(
        n=n,
        m_max=m_max,
        variant=variant,
        gamma=gamma,
        scan_range=ScanRange.window(center, halfwidth),
        threshold=settings.DEFAULT_THRESHOLD if threshold is None else threshold,
    )


class FactorScanner:
    """Sweeps trial factors in parallel batches and merges the records by ell"""

    def __init__(self, max_workers: Optional[int] = None, batch_size: Optional[int] = None):
        requested = settings.THREADS if max_workers is None else max_workers
        if requested < 1:
            raise ValidationError(f"worker count must be positive, got {requested}")
        self.max_workers = min(requested, settings.THREADS)
        self.batch_size = batch_size or settings.SCAN_BATCH_SIZE
        self.simulator = SpinEchoSimulator()

    def bounds(self, config: ScanConfig, force: bool = False) -> Tuple[int, int]:
        """Inclusive ell range of a scan"""
        n = config.n
        if config.scan_range.kind == "window":
            lo = config.scan_range.center - config.scan_range.halfwidth
            hi = config.scan_range.center + config.scan_range.halfwidth
            if lo < 1 or hi > n - 1:
                raise ScanRangeError(f"window [{lo}, {hi}] exceeds [1, {n - 1}]")
            return lo, hi

        n0 = closest_integer_sqrt(n)
        if n0 > settings.MAX_FULL_SCAN_N0 and not force:
            raise ScanRefusedError(
                f"full scan of {n0} trial factors exceeds {settings.MAX_FULL_SCAN_N0}; "
                "use a window scan or force"
            )
        return 1, n0

    def _evaluate(self, config: ScanConfig, ell: int) -> PatternRecord:
        n, m_max = config.n, config.m_max
        if config.variant == ScanVariant.A_MAGNITUDE:
            value = gauss_sum_A(n, ell, m_max)
            re, im, magnitude = value.re, value.im, value.magnitude
        else:
            if config.variant == ScanVariant.C_REAL:
                re = gauss_sum_C(n, ell, m_max)
            elif config.variant == ScanVariant.DAMPED:
                re = damped_gauss_sum(n, ell, m_max, config.gamma)
            else:
                re = self.simulator.normalized_signal(n, ell, m_max)
            im, magnitude = 0.0, abs(re)
        return PatternRecord(ell=ell, re=re, im=im, magnitude=magnitude, is_factor=n % ell == 0)

    def _evaluate_batch(self, config: ScanConfig, ells: range) -> List[PatternRecord]:
        return [self._evaluate(config, ell) for ell in ells]

    def scan(
        self,
        config: ScanConfig,
        force: bool = False,
        workers: Optional[int] = None,
    ) -> InterferencePattern:
        """
        Evaluate every trial factor of the configured range

        Args:
            config: Target number, truncation, variant and range
            force: Allow full scans whose n0 exceeds MAX_FULL_SCAN_N0
            workers: Thread count for this scan, capped by the scanner's limit

        Returns:
            InterferencePattern with one record per integer ell, sorted by ell
            regardless of the worker count
        """
        lo, hi = self.bounds(config, force=force)
        batches = [
            range(start, min(start + self.batch_size, hi + 1))
            for start in range(lo, hi + 1, self.batch_size)
        ]
        pool_size = self.max_workers if workers is None else max(1, min(workers, self.max_workers))
        total = hi - lo + 1
        logger.info(
            f"Scanning N={config.n} over ell in [{lo}, {hi}] "
            f"({total} points, variant={config.variant.value}, M={config.m_max}, workers={pool_size})"
        )

        records: List[PatternRecord] = []
        with ThreadPoolExecutor(max_workers=pool_size) as executor:
            for batch_records in executor.map(lambda ells: self._evaluate_batch(config, ells), batches):
                records.extend(batch_records)
                self._log_progress(len(records), total)

        records.sort(key=lambda record: record.ell)
        return InterferencePattern(records=records, config=config)

    def _log_progress(self, processed: int, total: int):
        percentage = (processed / total) * 100 if total > 0 else 0
        logger.debug(f"Progress: {processed}/{total} ({percentage:.1f}%)")

    def classify(self, pattern: InterferencePattern, threshold: Optional[float] = None) -> FactorReport:
        """
        Detect factors and compare against exact trial division

        The threshold is relative to the value a divisor produces: 1 for the
        undamped variants, damped_peak(M, gamma) for the damped one. ell = 1 is
        never reported as a factor.

        Args:
            pattern: Full or window pattern from scan()
            threshold: Relative cutoff in (0, 1); defaults to the config value

        Returns:
            FactorReport with detected, missed and false-positive factors. The
            contrast is only filled in for full scans.
        """
        config = pattern.config
        threshold = config.threshold if threshold is None else threshold
        if not 0.0 < threshold < 1.0:
            raise ValidationError(f"threshold must lie in (0, 1), got {threshold!r}")

        peak = damped_peak(config.m_max, config.gamma) if config.variant == ScanVariant.DAMPED else 1.0
        cutoff = threshold * peak
        detected = {r.ell for r in pattern.records if r.ell > 1 and r.magnitude >= cutoff}

        estimate = resource_estimate(config.n)
        if config.scan_range.kind == "full":
            oracle = trial_division_oracle(config.n, estimate.n0) if estimate.n0 >= 2 else set()
            contrast_v: Optional[float] = contrast(pattern, oracle | {1})
        else:
            lo, hi = pattern.records[0].ell, pattern.records[-1].ell
            oracle = divisors_in_range(config.n, max(lo, 2), hi)
            contrast_v = None

        non_factor = [r.magnitude for r in pattern.records if not r.is_factor]
        report = FactorReport(
            detected=sorted(detected),
            missed=sorted(oracle - detected),
            false_positives=sorted(detected - oracle),
            contrast_v=contrast_v,
            scan_size=len(pattern.records),
            resource_estimate=estimate.sqrt_n,
            n0=estimate.n0,
            log_n=estimate.log_n,
            max_non_factor_magnitude=max(non_factor, default=0.0),
            threshold=threshold,
            variant=config.variant,
        )
        if report.false_positives:
            logger.warning(f"False positives for N={config.n}: {report.false_positives}")
        if report.missed:
            logger.warning(f"Missed divisors for N={config.n}: {report.missed}")
        return report

    def contrast_curve(
        self,
        n: int,
        m_values: Iterable[int],
        variant: ScanVariant = ScanVariant.A_MAGNITUDE,
        gamma: float = 0.0,
        force: bool = False,
    ) -> List[ContrastPoint]:
        """
        Contrast V of the full pattern for every truncation M

        Args:
            n: Number to be factored
            m_values: Truncations, each at least 1, in any order
            variant: Signal recorded per trial factor
            gamma: Per-cycle damping, damped variant only
            force: Allow full scans above the size limit

        Returns:
            One ContrastPoint per M, sorted by M
        """
        validate_target_number(n)
        m_list = sorted(m_values)
        if not m_list:
            raise InvalidTruncationError("at least one truncation value is required")
        if m_list[0] < 1:
            raise InvalidTruncationError(f"contrast curves need M >= 1, got {m_list[0]}")

        n0 = closest_integer_sqrt(n)
        divisors = (trial_division_oracle(n, n0) if n0 >= 2 else set()) | {1}
        points = []
        for m_max in m_list:
            config = ScanConfig(n=n, m_max=m_max, variant=variant, gamma=gamma)
            pattern = self.scan(config, force=force)
            points.append(ContrastPoint(m_max=m_max, contrast=contrast(pattern, divisors)))
            logger.info(f"Contrast N={n}, M={m_max}: V={points[-1].contrast:.6f}")
        return points

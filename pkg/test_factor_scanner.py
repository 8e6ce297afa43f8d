"""
Tests for trial-factor scans and factor classification
File: test_factor_scanner.py
"""

import math
import os
import sys

import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

# Add the package directory to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from gaussfactor.config import settings
from gaussfactor.models.scan import ScanConfig, ScanVariant
from gaussfactor.services.factor_scanner import (
    FactorScanner,
    divisors_in_range,
    resource_estimate,
    trial_division_oracle,
    window_config,
)
from gaussfactor.services.gauss_sums import damped_peak
from gaussfactor.services.output_writer import OutputWriter
from gaussfactor.utils.exceptions import (
    InvalidTruncationError,
    ScanRangeError,
    ScanRefusedError,
    ValidationError,
)

N_FLAGSHIP = 157573
FLAGSHIP_DIVISORS = [13, 17, 23, 31, 221, 299, 391]

N_LARGE = 1062885837863046188098307
P_LARGE = 790645490053


@pytest.fixture
def scanner():
    return FactorScanner()


@pytest.fixture(scope="module")
def flagship_pattern():
    return FactorScanner().scan(ScanConfig(n=N_FLAGSHIP, m_max=10))


# Oracles and estimates

def test_trial_division_oracle():
    assert trial_division_oracle(N_FLAGSHIP, 397) == set(FLAGSHIP_DIVISORS)
    assert trial_division_oracle(17, 4) == set()
    assert trial_division_oracle(15, 4) == {3}


def test_trial_division_oracle_rejects_bound():
    with pytest.raises(ValidationError):
        trial_division_oracle(15, 1)


def test_divisors_in_range():
    assert divisors_in_range(N_FLAGSHIP, 200, 300) == {221, 299}


def test_large_number_factors_exactly():
    assert N_LARGE % P_LARGE == 0
    q = N_LARGE // P_LARGE
    assert P_LARGE * q == N_LARGE


def test_resource_estimate():
    estimate = resource_estimate(N_FLAGSHIP)
    assert estimate.n0 == 397
    assert estimate.sqrt_n == pytest.approx(396.9546, abs=1e-4)
    assert estimate.log_n == pytest.approx(math.log(N_FLAGSHIP))
    assert resource_estimate(4).sqrt_n == 2.0


def test_resource_estimate_beyond_float_range():
    estimate = resource_estimate(10**400 + 1)
    assert estimate.sqrt_n == pytest.approx(1e200, rel=1e-9)
    assert estimate.log_n == pytest.approx(400 * math.log(10))
    assert estimate.n0 == 10**200


def test_resource_estimate_beyond_sqrt_range():
    estimate = resource_estimate(10**700)
    assert estimate.sqrt_n is None
    assert estimate.n0 == 10**350


# Full scans

def test_flagship_pattern_shape(flagship_pattern):
    assert len(flagship_pattern.records) == 397
    assert flagship_pattern.ells == list(range(1, 398))


def test_flagship_divisors_peak(flagship_pattern):
    for ell in FLAGSHIP_DIVISORS:
        record = flagship_pattern.record_for(ell)
        assert record.is_factor
        assert abs(record.magnitude - 1.0) < 1e-12


def test_flagship_factor_flags_match_oracle(flagship_pattern):
    flagged = {r.ell for r in flagship_pattern.records if r.is_factor}
    assert flagged == set(FLAGSHIP_DIVISORS) | {1}


def test_flagship_classification_is_exact(scanner, flagship_pattern):
    report = scanner.classify(flagship_pattern, 0.9)
    assert report.detected == FLAGSHIP_DIVISORS
    assert report.missed == []
    assert report.false_positives == []
    assert report.is_exact
    assert report.scan_size == 397
    assert report.n0 == 397


def test_flagship_non_factor_bound(scanner, flagship_pattern):
    report = scanner.classify(flagship_pattern, 0.999999)
    assert report.detected == FLAGSHIP_DIVISORS
    # ell = 4 gives |6 - 5i| / 11
    assert report.max_non_factor_magnitude < 0.9
    assert report.max_non_factor_magnitude >= math.sqrt(61) / 11 - 1e-12
    assert report.contrast_v > 0.5


def test_small_composite(scanner):
    pattern = scanner.scan(ScanConfig(n=15, m_max=5))
    assert len(pattern.records) == 4
    assert abs(pattern.record_for(3).magnitude - 1.0) < 1e-12
    assert scanner.classify(pattern).detected == [3]


def test_prime_has_no_detections(scanner):
    report = scanner.classify(scanner.scan(ScanConfig(n=17, m_max=10)), 0.9)
    assert report.detected == []
    assert report.missed == []


def test_scan_is_deterministic_across_workers(monkeypatch):
    monkeypatch.setattr(settings, "THREADS", 16)
    config = ScanConfig(n=N_FLAGSHIP, m_max=10)
    writer = OutputWriter("csv")
    outputs = {
        writer.pattern(FactorScanner(max_workers=workers, batch_size=7).scan(config))
        for workers in (1, 4, 16)
    }
    assert len(outputs) == 1


def test_workers_capped_by_settings(monkeypatch):
    monkeypatch.setattr(settings, "THREADS", 2)
    assert FactorScanner(max_workers=16).max_workers == 2


def test_scanner_rejects_worker_count():
    with pytest.raises(ValidationError):
        FactorScanner(max_workers=0)


def test_full_scan_refused_above_limit(monkeypatch, scanner):
    monkeypatch.setattr(settings, "MAX_FULL_SCAN_N0", 100)
    config = ScanConfig(n=N_FLAGSHIP, m_max=2)
    with pytest.raises(ScanRefusedError):
        scanner.scan(config)
    assert len(scanner.scan(config, force=True).records) == 397


def test_real_part_variant(scanner, flagship_pattern):
    pattern = scanner.scan(ScanConfig(n=N_FLAGSHIP, m_max=10, variant=ScanVariant.C_REAL))
    for record, reference in zip(pattern.records, flagship_pattern.records):
        assert record.re == reference.re
        assert record.im == 0.0
        assert record.magnitude == abs(reference.re)


def test_echo_variant_matches_real_part(scanner):
    echo = scanner.scan(ScanConfig(n=N_FLAGSHIP, m_max=10, variant=ScanVariant.ECHO))
    real = scanner.scan(ScanConfig(n=N_FLAGSHIP, m_max=10, variant=ScanVariant.C_REAL))
    for e, r in zip(echo.records, real.records):
        assert abs(e.re - r.re) < 1e-9


# Damped scans

def test_damped_divisors_reach_peak(scanner):
    pattern = scanner.scan(ScanConfig(n=N_FLAGSHIP, m_max=10, variant=ScanVariant.DAMPED, gamma=0.2))
    peak = damped_peak(10, 0.2)
    assert peak == pytest.approx(0.4459, abs=1e-4)
    for ell in FLAGSHIP_DIVISORS:
        assert pattern.record_for(ell).re == peak


def test_damped_classification_is_relative_to_peak(scanner):
    pattern = scanner.scan(ScanConfig(n=N_FLAGSHIP, m_max=10, variant=ScanVariant.DAMPED, gamma=0.2))
    report = scanner.classify(pattern, 0.9)
    assert report.missed == []
    assert 4 not in report.detected

    # 0.3 of the peak lets ell = 4 (damped value near 0.2507) through
    assert pattern.record_for(4).magnitude == pytest.approx(0.2507, abs=1e-4)
    loose = scanner.classify(pattern, 0.3)
    assert loose.missed == []
    assert 4 in loose.false_positives


def test_classify_rejects_threshold(scanner, flagship_pattern):
    with pytest.raises(ValidationError):
        scanner.classify(flagship_pattern, 1.0)


# Window scans

def test_window_matches_full_scan_slice(scanner, flagship_pattern):
    window = scanner.scan(window_config(N_FLAGSHIP, 200, 20, 10))
    assert window.ells == list(range(180, 221))
    assert window.records == flagship_pattern.records[179:220]


def test_window_classification(scanner):
    report = scanner.classify(scanner.scan(window_config(N_FLAGSHIP, 221, 5, 10)))
    assert report.detected == [221]
    assert report.is_exact
    assert report.contrast_v is None
    assert report.scan_size == 11


def test_large_number_window(scanner):
    pattern = scanner.scan(window_config(N_LARGE, P_LARGE, 10, 200))
    assert len(pattern.records) == 21
    assert abs(pattern.record_for(P_LARGE).magnitude - 1.0) < 1e-12
    others = [r.magnitude for r in pattern.records if r.ell != P_LARGE]
    assert max(others) < 0.5
    assert scanner.classify(pattern).detected == [P_LARGE]


def test_window_classification_beyond_float_range(scanner):
    n = 10**400 + 1
    report = scanner.classify(scanner.scan(window_config(n, 100, 5, 4)))
    assert report.missed == []
    assert set(report.detected) >= divisors_in_range(n, 95, 105)
    assert report.resource_estimate == pytest.approx(1e200, rel=1e-9)


def test_large_number_wide_window(scanner):
    pattern = scanner.scan(window_config(N_LARGE, P_LARGE, 50, 200))
    assert len(pattern.records) == 101
    assert max(r.magnitude for r in pattern.records if r.ell != P_LARGE) < 0.5


@pytest.mark.parametrize("center,halfwidth", [(5, 10), (N_FLAGSHIP - 5, 10)])
def test_window_outside_range(scanner, center, halfwidth):
    with pytest.raises(ScanRangeError):
        scanner.scan(window_config(N_FLAGSHIP, center, halfwidth, 10))


# Contrast curves

@pytest.mark.parametrize("n", [N_FLAGSHIP, 4683359])
def test_contrast_grows_with_truncation(scanner, n):
    points = scanner.contrast_curve(n, [10, 2])
    assert [p.m_max for p in points] == [2, 10]
    assert points[1].contrast > points[0].contrast
    assert all(0.0 <= p.contrast <= 1.0 for p in points)


def test_contrast_curve_single_truncation(scanner):
    points = scanner.contrast_curve(N_FLAGSHIP, [10])
    assert len(points) == 1
    assert points[0].m_max == 10
    assert 0.0 <= points[0].contrast <= 1.0


def test_contrast_curve_for_damped_variant(scanner):
    points = scanner.contrast_curve(N_FLAGSHIP, [2, 10], variant=ScanVariant.DAMPED, gamma=0.2)
    assert [p.m_max for p in points] == [2, 10]
    assert all(0.0 <= p.contrast <= 1.0 for p in points)


def test_contrast_curve_rejects_truncation(scanner):
    with pytest.raises(InvalidTruncationError):
        scanner.contrast_curve(N_FLAGSHIP, [0, 2])


@hypothesis_settings(max_examples=30, deadline=None)
@given(st.integers(min_value=4, max_value=10**6))
def test_every_divisor_is_detected(n):
    scanner = FactorScanner()
    report = scanner.classify(scanner.scan(ScanConfig(n=n, m_max=10)), 0.9)
    assert report.missed == []
    assert set(report.detected) >= trial_division_oracle(n, report.n0)

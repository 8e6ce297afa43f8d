"""
Exact-arithmetic evaluation of truncated Gauss sums
File: gaussfactor/services/gauss_sums.py

The quadratic exponent m^2 N / ell is reduced with Python integers before any
floating point conversion, so 24-digit targets keep their full phase
information. Sums are accumulated in ascending m with plain (non-compensated)
addition, which makes C == Re(A) and damped(gamma=0) == C bit-for-bit.
"""

import logging
import math
from typing import Iterable, List, Sequence, Set

import numpy as np

from gaussfactor.models.gauss import GaussValue, ReducedPhase
from gaussfactor.models.scan import InterferencePattern
from gaussfactor.utils.exceptions import (
    IncompletePatternError,
    InvalidDampingError,
    ValidationError,
)
from gaussfactor.utils.validators import (
    validate_damping,
    validate_target_number,
    validate_trial_factor,
    validate_truncation,
)

logger = logging.getLogger(__name__)


def reduce_phase(m: int, n: int, ell: int) -> ReducedPhase:
    """Return (m^2 * N) mod ell over ell, i.e. the phase 2*pi*r/ell"""
    validate_trial_factor(ell)
    if m < 0:
        raise ValidationError(f"term index must be nonnegative, got {m}")
    return ReducedPhase(numerator=(m * m * n) % ell, denominator=ell)


def phase_residues(n: int, ell: int, m_max: int) -> List[int]:
    """Residues r_m = m^2 N mod ell for m = 0..M"""
    validate_trial_factor(ell)
    validate_truncation(m_max)
    n_mod = n % ell
    return [(m * m % ell) * n_mod % ell for m in range(m_max + 1)]


def gauss_sum_terms(n: int, ell: int, m_max: int) -> List[ReducedPhase]:
    """Exact phases of every term of the sum, in ascending m"""
    return [
        ReducedPhase(numerator=r, denominator=ell)
        for r in phase_residues(n, ell, m_max)
    ]


def _radians(residues: Sequence[int], ell: int) -> np.ndarray:
    # int / int is correctly rounded for arbitrary sizes
    return np.array([2.0 * math.pi * (r / ell) for r in residues], dtype=np.float64)


def _ascending_mean(terms: np.ndarray) -> float:
    """Plain left-to-right sum divided by the term count"""
    total = np.cumsum(terms)[-1]
    return float(total) / len(terms)


def sum_phase_residues(residues: Sequence[int], ell: int) -> GaussValue:
    """Normalized sum of exp(-2*pi*i*r/ell) over the given residues"""
    validate_trial_factor(ell)
    if len(residues) == 0:
        raise ValidationError("at least one term is required")
    phases = _radians(residues, ell)
    return GaussValue(
        re=_ascending_mean(np.cos(phases)),
        im=-_ascending_mean(np.sin(phases)),
    )


def gauss_sum_A(n: int, ell: int, m_max: int) -> GaussValue:
    """A_N^(M)(ell) = 1/(M+1) sum_m exp(-2*pi*i m^2 N / ell)"""
    return sum_phase_residues(phase_residues(n, ell, m_max), ell)


def gauss_sum_C(n: int, ell: int, m_max: int) -> float:
    """C_N^(M)(ell) = Re A_N^(M)(ell)"""
    phases = _radians(phase_residues(n, ell, m_max), ell)
    return _ascending_mean(np.cos(phases))


def _damping_weights(m_max: int, gamma: float) -> np.ndarray:
    return np.exp(-gamma * np.arange(m_max + 1, dtype=np.float64))


def damped_gauss_sum(n: int, ell: int, m_max: int, gamma: float) -> float:
    """1/(M+1) sum_m exp(-m*gamma) cos(2*pi m^2 N / ell)"""
    if not gamma >= 0.0:
        raise InvalidDampingError(f"damping rate must be nonnegative, got {gamma!r}")
    phases = _radians(phase_residues(n, ell, m_max), ell)
    return _ascending_mean(_damping_weights(m_max, gamma) * np.cos(phases))


def damped_peak(m_max: int, gamma: float) -> float:
    """Damped sum at any divisor of N, where every cosine equals one"""
    validate_truncation(m_max)
    validate_damping(gamma)
    return _ascending_mean(_damping_weights(m_max, gamma))


def damping_from_timing(tau: float, t2: float) -> float:
    """gamma = 2*tau/T2"""
    if not tau > 0.0 or not t2 > 0.0:
        raise InvalidDampingError(f"tau and T2 must be positive, got tau={tau!r}, T2={t2!r}")
    return 2.0 * tau / t2


def closest_integer_sqrt(n: int) -> int:
    """n0: the integer closest to sqrt(N), computed exactly"""
    validate_target_number(n)
    root = math.isqrt(n)
    # sqrt(N) >= root + 1/2  <=>  N - root^2 > root  (no integer ties exist)
    return root + 1 if n - root * root > root else root


def contrast(pattern: InterferencePattern, true_divisors: Iterable[int]) -> float:
    """
    Visibility V = (1 - a)/(1 + a) of a full factorization pattern

    a is the sum of |value| over the non-divisors 1 <= ell' <= n0, divided by
    n0 itself even though fewer terms enter the sum.
    """
    n0 = closest_integer_sqrt(pattern.config.n)
    covered = [record for record in pattern.records if 1 <= record.ell <= n0]
    if len(covered) < n0:
        raise IncompletePatternError(
            f"contrast needs ell = 1..{n0}, pattern covers {len(covered)} of them"
        )

    divisors: Set[int] = set(true_divisors)
    non_factor = np.array(
        [record.magnitude for record in covered if record.ell not in divisors],
        dtype=np.float64,
    )
    a = float(np.cumsum(non_factor)[-1]) / n0 if non_factor.size else 0.0
    visibility = (1.0 - a) / (1.0 + a)
    logger.debug(f"Contrast for N={pattern.config.n}: a={a:.6f}, V={visibility:.6f}")
    return visibility


def triangular_sum(m: int) -> int:
    """1 + 2 + ... + m = m(m+1)/2"""
    if m < 0:
        raise ValidationError(f"m must be nonnegative, got {m}")
    return m * (m + 1) // 2


def odd_sum(m: int) -> int:
    """1 + 3 + ... + (2m-1) = 2*T(m) - m = m^2"""
    return 2 * triangular_sum(m) - m


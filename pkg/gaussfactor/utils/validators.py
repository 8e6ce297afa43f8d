"""
Validation helpers for numbers entering the Gauss-sum pipeline
File: gaussfactor/utils/validators.py
"""

import re
from typing import List

from gaussfactor.utils.exceptions import (
    InvalidDampingError,
    InvalidTargetError,
    InvalidTrialFactorError,
    InvalidTruncationError,
)

DECIMAL_PATTERN = re.compile(r"^\+?\d+$")


def parse_target_number(text: str) -> int:
    """Parse N from a decimal string of arbitrary length"""
    cleaned = text.strip().replace("_", "")
    if not DECIMAL_PATTERN.match(cleaned):
        raise InvalidTargetError(f"N must be a decimal integer, got {text!r}")
    return validate_target_number(int(cleaned))


def validate_target_number(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidTargetError(f"N must be an integer, got {type(n).__name__}")
    if n < 2:
        raise InvalidTargetError(f"N must be at least 2, got {n}")
    return n


def validate_trial_factor(ell: int) -> int:
    if isinstance(ell, bool) or not isinstance(ell, int) or ell < 1:
        raise InvalidTrialFactorError(f"trial factor must be a positive integer, got {ell!r}")
    return ell


def validate_truncation(m_max: int) -> int:
    if isinstance(m_max, bool) or not isinstance(m_max, int) or m_max < 0:
        raise InvalidTruncationError(f"truncation M must be a nonnegative integer, got {m_max!r}")
    return m_max


def validate_damping(gamma: float) -> float:
    if not gamma >= 0.0:
        raise InvalidDampingError(f"damping rate must be nonnegative, got {gamma!r}")
    return float(gamma)


def parse_truncation_list(text: str) -> List[int]:
    """Parse a comma separated list of truncations such as '2,4,10'"""
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not DECIMAL_PATTERN.match(chunk):
            raise InvalidTruncationError(f"invalid truncation {chunk!r} in {text!r}")
        values.append(int(chunk))
    if not values:
        raise InvalidTruncationError("at least one truncation value is required")
    return values

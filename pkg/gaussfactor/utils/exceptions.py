"""
Error types raised by the services and mapped to exit codes by the CLI
File: gaussfactor/utils/exceptions.py
"""

from typing import Optional


class GaussFactorError(Exception):
    """Base error carrying a process exit code and a human readable detail"""

    exit_code: int = 4

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ValidationError(GaussFactorError, ValueError):
    """Bad input: flags, numbers or ranges that fail validation"""

    exit_code = 2


class InvalidTargetError(ValidationError):
    pass


class InvalidTrialFactorError(ValidationError):
    pass


class InvalidTruncationError(ValidationError):
    pass


class InvalidDampingError(ValidationError):
    pass


class InvalidPolarizationError(ValidationError):
    pass


class ScheduleError(ValidationError):
    pass


class ScanRangeError(ValidationError):
    pass


class IncompletePatternError(ValidationError):
    pass


class ZeroPolarizationError(ValidationError):
    """The reference state carries no x-polarization to normalize against"""


class UnknownSuiteError(ValidationError):
    pass


class ScanRefusedError(GaussFactorError):
    """Full scan would exceed the configured size without --force"""

    exit_code = 3


class InvariantBreachError(GaussFactorError):
    exit_code = 4

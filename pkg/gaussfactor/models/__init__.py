"""
Domain models
"""
from .gauss import GaussValue, ReducedPhase, ResourceEstimate
from .scan import (
    ContrastPoint,
    FactorReport,
    InterferencePattern,
    PatternRecord,
    ScanConfig,
    ScanRange,
    ScanVariant,
)
from .spin import EchoTrace, PulseSchedule
from .verification import VerificationReport

__all__ = [
    "GaussValue",
    "ReducedPhase",
    "ResourceEstimate",
    "ContrastPoint",
    "FactorReport",
    "InterferencePattern",
    "PatternRecord",
    "ScanConfig",
    "ScanRange",
    "ScanVariant",
    "EchoTrace",
    "PulseSchedule",
    "VerificationReport",
]

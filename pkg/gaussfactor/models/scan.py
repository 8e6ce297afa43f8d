"""
Scan configuration, interference pattern and factor report models
File: gaussfactor/models/scan.py
"""

from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ScanVariant(str, Enum):
    """Which signal a scan records for every trial factor"""

    A_MAGNITUDE = "A"
    C_REAL = "C"
    DAMPED = "damped"
    ECHO = "echo"


class ScanRange(BaseModel):
    """Either the full interval [1, n0] or a window [center - w, center + w]"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["full", "window"] = "full"
    center: Optional[int] = Field(default=None, ge=1)
    halfwidth: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_window(self) -> "ScanRange":
        if self.kind == "window" and (self.center is None or self.halfwidth is None):
            raise ValueError("window ranges need center and halfwidth")
        return self

    @classmethod
    def full(cls) -> "ScanRange":
        return cls(kind="full")

    @classmethod
    def window(cls, center: int, halfwidth: int) -> "ScanRange":
        return cls(kind="window", center=center, halfwidth=halfwidth)


class ScanConfig(BaseModel):
    """Everything that determines an interference pattern"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Number to be factored")
    m_max: int = Field(..., ge=0, description="Truncation M")
    variant: ScanVariant = ScanVariant.A_MAGNITUDE
    gamma: float = Field(default=0.0, ge=0.0, description="Per-cycle damping, damped variant only")
    scan_range: ScanRange = Field(default_factory=ScanRange.full)
    threshold: float = Field(default=0.9, gt=0.0, lt=1.0)


class PatternRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    ell: int
    re: float
    im: float
    magnitude: float
    is_factor: bool


class InterferencePattern(BaseModel):
    """Records sorted strictly ascending by ell without gaps"""

    model_config = ConfigDict(frozen=True)

    records: List[PatternRecord]
    config: ScanConfig

    @model_validator(mode="after")
    def _check_order(self) -> "InterferencePattern":
        for previous, current in zip(self.records, self.records[1:]):
            if current.ell != previous.ell + 1:
                raise ValueError(f"pattern gap or disorder between {previous.ell} and {current.ell}")
        return self

    @property
    def ells(self) -> List[int]:
        return [record.ell for record in self.records]

    @property
    def magnitudes(self) -> List[float]:
        return [record.magnitude for record in self.records]

    def record_for(self, ell: int) -> PatternRecord:
        if not self.records:
            raise KeyError(ell)
        index = ell - self.records[0].ell
        if index < 0 or index >= len(self.records):
            raise KeyError(ell)
        return self.records[index]


class FactorReport(BaseModel):
    """Classification of a pattern against exact trial division"""

    detected: List[int]
    missed: List[int]
    false_positives: List[int]
    contrast_v: Optional[float] = None
    scan_size: int
    resource_estimate: Optional[float] = None
    n0: int
    log_n: float
    max_non_factor_magnitude: float
    threshold: float
    variant: ScanVariant

    @property
    def is_exact(self) -> bool:
        return not self.missed and not self.false_positives


class ContrastPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    m_max: int
    contrast: float

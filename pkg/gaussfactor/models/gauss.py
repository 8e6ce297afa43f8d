"""
Value types for exact Gauss-sum evaluation
File: gaussfactor/models/gauss.py
"""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ReducedPhase(BaseModel):
    """Exact phase 2*pi*numerator/denominator with 0 <= numerator < denominator"""

    model_config = ConfigDict(frozen=True)

    numerator: int = Field(..., ge=0, description="Residue r")
    denominator: int = Field(..., ge=1, description="Modulus d")

    @model_validator(mode="after")
    def _check_reduced(self) -> "ReducedPhase":
        if self.numerator >= self.denominator:
            raise ValueError(
                f"numerator {self.numerator} must be smaller than denominator {self.denominator}"
            )
        return self

    @property
    def radians(self) -> float:
        # r/d is an exact int division rounded once; 2*pi applied after reduction
        return 2.0 * math.pi * (self.numerator / self.denominator)

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0


class GaussValue(BaseModel):
    """Complex value of a normalized truncated Gauss sum"""

    model_config = ConfigDict(frozen=True)

    re: float
    im: float

    @property
    def magnitude(self) -> float:
        return math.hypot(self.re, self.im)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)

    def conjugate(self) -> "GaussValue":
        return GaussValue(re=self.re, im=-self.im)


class ResourceEstimate(BaseModel):
    """Scan size estimate sqrt(N) = exp(L/2) with L = ln N"""

    model_config = ConfigDict(frozen=True)

    sqrt_n: Optional[float] = Field(..., description="None when sqrt(N) exceeds the float range")
    log_n: float
    n0: int = Field(..., description="Closest integer to sqrt(N)")

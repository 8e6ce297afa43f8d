"""
Result model for the end-to-end verification suites
File: gaussfactor/models/verification.py
"""

from typing import Any, Dict

from pydantic import BaseModel, Field


class VerificationReport(BaseModel):
    """Pass/fail outcome of one suite with the largest deviation observed"""

    suite: str
    passed: bool
    max_deviation: float
    tolerance: float
    details: Dict[str, Any] = Field(default_factory=dict)

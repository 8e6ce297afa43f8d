"""
Pulse schedule and echo trace models for the spin-echo simulator
File: gaussfactor/models/spin.py
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PulseSchedule(BaseModel):
    """Modified CPMG sequence: M+1 phase-shifted pi pulses separated by 2*tau"""

    model_config = ConfigDict(frozen=True)

    tau: float = Field(..., gt=0.0, description="Half cycle time in seconds")
    m_max: int = Field(..., ge=0, description="Truncation M")
    phases: List[float] = Field(..., description="Pulse phases phi_k in radians")
    detuning: float = Field(default=0.0, description="Delta omega in rad/s")
    t2: Optional[float] = Field(default=None, gt=0.0, description="T2 in seconds")

    # Exact bookkeeping when generated from (N, ell): phi_k = pi * numerators[k] / ell
    n: Optional[int] = Field(default=None, ge=2)
    ell: Optional[int] = Field(default=None, ge=1)
    numerators: Optional[List[int]] = None
    unreduced: Optional[List[int]] = None

    @model_validator(mode="after")
    def _check_lengths(self) -> "PulseSchedule":
        expected = self.m_max + 1
        if len(self.phases) != expected:
            raise ValueError(f"schedule needs {expected} phases, got {len(self.phases)}")
        for name in ("numerators", "unreduced"):
            values = getattr(self, name)
            if values is not None and len(values) != expected:
                raise ValueError(f"schedule needs {expected} {name}, got {len(values)}")
        if self.numerators is not None and self.ell is None:
            raise ValueError("exact numerators require ell")
        return self

    @property
    def cycle_time(self) -> float:
        return 2.0 * self.tau

    @property
    def delta_omega_tau(self) -> float:
        return self.detuning * self.tau

    @property
    def pulse_times(self) -> List[float]:
        return [(2 * k + 1) * self.tau for k in range(self.m_max + 1)]

    @property
    def echo_times(self) -> List[float]:
        return [t + self.tau for t in self.pulse_times]

    @property
    def gamma(self) -> float:
        """Per-cycle decay exponent 2*tau/T2 (zero without T2)"""
        if self.t2 is None:
            return 0.0
        return 2.0 * self.tau / self.t2


class EchoTrace(BaseModel):
    """Normalized echo heights s_m for m = 0..M"""

    model_config = ConfigDict(frozen=True)

    values: List[float]
    schedule: PulseSchedule

    @model_validator(mode="after")
    def _check_length(self) -> "EchoTrace":
        if len(self.values) != self.schedule.m_max + 1:
            raise ValueError(
                f"trace needs {self.schedule.m_max + 1} values, got {len(self.values)}"
            )
        return self

    @property
    def m_max(self) -> int:
        return self.schedule.m_max

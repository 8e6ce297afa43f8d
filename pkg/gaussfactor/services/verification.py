"""
End-to-end oracle and invariant suites behind the `verify` command
File: gaussfactor/services/verification.py
"""

import logging
import math
import random
from typing import Callable, Dict, Optional

import numpy as np

from gaussfactor.models.verification import VerificationReport
from gaussfactor.services.gauss_sums import (
    closest_integer_sqrt,
    damped_gauss_sum,
    damped_peak,
    gauss_sum_C,
    reduce_phase,
)
from gaussfactor.services.spin_simulator import (
    SpinEchoSimulator,
    alternating_phase_residue,
    alternating_unreduced_sum,
    build_schedule,
    closed_form_unitary,
    cycle_unitary,
    damped_trace,
    signal_sum,
)
from gaussfactor.utils.exceptions import UnknownSuiteError, ValidationError
from gaussfactor.utils.validators import validate_trial_factor

logger = logging.getLogger(__name__)

SUITES = ("equivalence", "refocusing", "telescoping", "damping")

FLAGSHIP_N = 157573
FLAGSHIP_M = 10

# Divisor search for the damping suite stops here and falls back to ell = 1
DIVISOR_SEARCH_LIMIT = 10**6


def smallest_divisor(n: int, bound: int) -> int:
    """Smallest d in [2, bound] dividing N, or 1 when there is none"""
    return next((d for d in range(2, bound + 1) if n % d == 0), 1)


class VerificationService:
    """Runs a named suite and reports its largest observed deviation"""

    def __init__(self, simulator: Optional[SpinEchoSimulator] = None, seed: int = 20070101):
        self.simulator = simulator or SpinEchoSimulator()
        self.seed = seed
        self._suites: Dict[str, Callable[..., VerificationReport]] = {
            "equivalence": self.equivalence,
            "refocusing": self.refocusing,
            "telescoping": self.telescoping,
            "damping": self.damping,
        }

    def run(self, suite: str, **kwargs) -> VerificationReport:
        """
        Run one suite by name

        Args:
            suite: One of SUITES
            **kwargs: Overrides passed to the suite, such as n and m_max

        Returns:
            VerificationReport of the suite
        """
        try:
            runner = self._suites[suite]
        except KeyError:
            raise UnknownSuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        report = runner(**kwargs)
        level = logging.INFO if report.passed else logging.ERROR
        logger.log(level, f"Suite {suite}: passed={report.passed}, max deviation={report.max_deviation:.3e}")
        return report

    def equivalence(self, n: int = FLAGSHIP_N, m_max: int = FLAGSHIP_M) -> VerificationReport:
        """S^(M)/(M+1) from density-matrix propagation against C_N^(M) for ell = 1..n0"""
        tolerance = 1e-9
        worst, worst_ell = 0.0, 1
        n0 = closest_integer_sqrt(n)
        for ell in range(1, n0 + 1):
            deviation = abs(self.simulator.normalized_signal(n, ell, m_max) - gauss_sum_C(n, ell, m_max))
            if deviation > worst:
                worst, worst_ell = deviation, ell
        return VerificationReport(
            suite="equivalence",
            passed=worst < tolerance,
            max_deviation=worst,
            tolerance=tolerance,
            details={"n": str(n), "m_max": m_max, "n0": n0, "worst_ell": worst_ell},
        )

    def refocusing(
        self,
        n: int = FLAGSHIP_N,
        m_max: int = FLAGSHIP_M,
        ell: int = 18,
        detuning_points: int = 32,
        phase_samples: int = 20,
    ) -> VerificationReport:
        """Cycle unitaries and echo traces must not depend on the detuning"""
        unitary_tolerance, trace_tolerance = 1e-12, 1e-10
        rng = np.random.default_rng(self.seed)
        grid = 2.0 * math.pi * np.arange(detuning_points) / detuning_points
        phases = rng.uniform(0.0, 2.0 * math.pi, size=phase_samples)

        unitary_error = max(
            float(np.max(np.abs(cycle_unitary(phi, dwt) - closed_form_unitary(phi))))
            for phi in phases
            for dwt in grid
        )

        reference = np.array(self.simulator.simulate(n, ell, m_max).values)
        tau = self.simulator.tau
        trace_error = max(
            float(np.max(np.abs(np.array(self.simulator.simulate(n, ell, m_max, detuning=dwt / tau).values) - reference)))
            for dwt in grid
        )
        return VerificationReport(
            suite="refocusing",
            passed=unitary_error < unitary_tolerance and trace_error < trace_tolerance,
            max_deviation=max(unitary_error, trace_error),
            tolerance=trace_tolerance,
            details={
                "unitary_deviation": unitary_error,
                "unitary_tolerance": unitary_tolerance,
                "trace_deviation": trace_error,
                "trace_tolerance": trace_tolerance,
                "detuning_points": detuning_points,
                "phase_samples": phase_samples,
            },
        )

    def telescoping(
        self,
        samples: int = 1000,
        max_n: int = 10**25,
        max_ell: int = 10**6,
        max_m: int = 500,
    ) -> VerificationReport:
        """Exact congruence of the alternating phase sum with 2*pi m^2 N/ell"""
        rng = random.Random(self.seed)
        mismatches = 0
        for _ in range(samples):
            n = rng.randint(2, max_n)
            ell = rng.randint(1, max_ell)
            m = rng.randint(0, max_m)
            schedule = build_schedule(n, ell, m)
            residue_ok = alternating_phase_residue(schedule, m) == reduce_phase(m, n, ell)
            integer_ok = alternating_unreduced_sum(schedule, m) == 2 * n * m * m
            if not (residue_ok and integer_ok):
                mismatches += 1
                logger.error(f"Telescoping mismatch for N={n}, ell={ell}, m={m}")
        return VerificationReport(
            suite="telescoping",
            passed=mismatches == 0,
            max_deviation=float(mismatches),
            tolerance=0.0,
            details={"samples": samples, "mismatches": mismatches},
        )

    def damping(
        self,
        n: int = FLAGSHIP_N,
        m_max: int = FLAGSHIP_M,
        gamma: float = 0.2,
        ell: Optional[int] = None,
    ) -> VerificationReport:
        """
        Decay of a divisor trace and the damped sum against their closed forms

        Args:
            n: Number whose divisor trace is damped
            m_max: Truncation M
            gamma: Per-cycle damping exponent
            ell: Divisor of N to simulate; defaults to the smallest one below
                min(n0, DIVISOR_SEARCH_LIMIT), or 1 when N has none there

        Returns:
            VerificationReport with the worst of the decay, peak and sum deviations
        """
        tolerance = 1e-6
        if ell is None:
            ell = smallest_divisor(n, min(closest_integer_sqrt(n), DIVISOR_SEARCH_LIMIT))
        elif n % validate_trial_factor(ell) != 0:
            raise ValidationError(f"damping suite needs a divisor of N, {ell} does not divide {n}")
        trace = damped_trace(self.simulator.simulate(n, ell, m_max), gamma)
        decay = trace.values[-1] / trace.values[0]
        decay_error = abs(decay - math.exp(-gamma * m_max))

        geometric = (1.0 - math.exp(-gamma * (m_max + 1))) / ((m_max + 1) * (1.0 - math.exp(-gamma))) if gamma > 0 else 1.0
        peak_error = abs(damped_peak(m_max, gamma) - geometric)
        sum_error = abs(signal_sum(trace) / (m_max + 1) - damped_gauss_sum(n, ell, m_max, gamma))
        worst = max(decay_error, peak_error, sum_error)
        return VerificationReport(
            suite="damping",
            passed=worst < tolerance,
            max_deviation=worst,
            tolerance=tolerance,
            details={
                "gamma": gamma,
                "ell": ell,
                "decay_ratio": decay,
                "damped_divisor_value": damped_gauss_sum(n, ell, m_max, gamma),
                "geometric_series": geometric,
            },
        )

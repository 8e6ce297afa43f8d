"""
Spin-echo simulation of the phase-shifted CPMG sequence
File: gaussfactor/services/spin_simulator.py

A single spin-1/2 in the rotating frame is driven by ideal, instantaneous
pi pulses. Each cycle is free evolution for tau, a pi pulse about an axis at
angle phi_k in the xy-plane, and another free evolution for tau. The echo
heights s_m summed over m reproduce the real Gauss sum C_N^(M)(ell).
"""

import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from gaussfactor.config import settings
from gaussfactor.models.gauss import ReducedPhase
from gaussfactor.models.spin import EchoTrace, PulseSchedule
from gaussfactor.services.gauss_sums import damping_from_timing, gauss_sum_terms
from gaussfactor.utils.exceptions import (
    InvalidDampingError,
    InvalidPolarizationError,
    InvariantBreachError,
    ScheduleError,
    ValidationError,
    ZeroPolarizationError,
)
from gaussfactor.utils.validators import (
    validate_target_number,
    validate_trial_factor,
    validate_truncation,
)

logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=np.complex128)

# Spin operators I_j = sigma_j / 2
SPIN_OPERATORS: Dict[str, np.ndarray] = {
    "x": 0.5 * np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": 0.5 * np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": 0.5 * np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

DENSITY_TOLERANCE = 1e-13


def rotation(axis: str, alpha: float) -> np.ndarray:
    """U_j(alpha) = exp(-i alpha I_j) = cos(alpha/2) 1 - 2i sin(alpha/2) I_j"""
    try:
        spin = SPIN_OPERATORS[axis]
    except KeyError:
        raise ValidationError(f"rotation axis must be one of x, y, z, got {axis!r}")
    return math.cos(alpha / 2.0) * IDENTITY - 2j * math.sin(alpha / 2.0) * spin


def _validate_polarization(epsilon: float) -> float:
    if not 0.0 < epsilon < 0.5:
        raise InvalidPolarizationError(f"polarization must lie in (0, 0.5), got {epsilon!r}")
    return float(epsilon)


def prepare_initial(epsilon: float) -> np.ndarray:
    """rho_in = 1/2 - epsilon I_x"""
    _validate_polarization(epsilon)
    return 0.5 * IDENTITY - epsilon * SPIN_OPERATORS["x"]


def prepare_from_boltzmann(epsilon: float) -> np.ndarray:
    """Rotate rho_B = 1/2 - epsilon I_z by a pi/2 pulse about y"""
    _validate_polarization(epsilon)
    rho_b = 0.5 * IDENTITY - epsilon * SPIN_OPERATORS["z"]
    pulse = rotation("y", math.pi / 2.0)
    return pulse @ rho_b @ pulse.conj().T


def check_density_matrix(rho: np.ndarray, tolerance: float = DENSITY_TOLERANCE) -> None:
    """Raise when rho is not a Hermitian 2x2 matrix of unit trace"""
    if rho.shape != (2, 2):
        raise InvariantBreachError(f"density matrix must be 2x2, got shape {rho.shape}")
    hermitian_error = float(np.max(np.abs(rho - rho.conj().T)))
    if hermitian_error > tolerance:
        raise InvariantBreachError(f"density matrix not Hermitian (deviation {hermitian_error:.3e})")
    trace_error = abs(complex(np.trace(rho)) - 1.0)
    if trace_error > tolerance:
        raise InvariantBreachError(f"density matrix trace deviates from 1 by {trace_error:.3e}")


def folded_phase_numerators(n: int, ell: int, m_max: int) -> List[int]:
    """
    Integers t_k in [0, 2*ell) with phi_k = pi * t_k / ell

    For k >= 1 the phase (-1)^k (2k-1) pi N/ell is reduced modulo 2*pi as
    s = (2k-1) N mod 2*ell, negated for odd k. phi_0 is zero.
    """
    validate_trial_factor(ell)
    validate_truncation(m_max)
    modulus = 2 * ell
    numerators = [0]
    for k in range(1, m_max + 1):
        s = (2 * k - 1) * n % modulus
        numerators.append(s if k % 2 == 0 else (-s) % modulus)
    return numerators


def unreduced_phase_numerators(n: int, m_max: int) -> List[int]:
    """u_k = (-1)^k (2k-1) N, with phi_k = pi * u_k / ell before folding"""
    return [0] + [(-1) ** k * (2 * k - 1) * n for k in range(1, m_max + 1)]


def phase_schedule(n: int, ell: int, m_max: int) -> List[float]:
    """Pulse phases phi_k folded into [0, 2*pi)"""
    return [math.pi * (t / ell) for t in folded_phase_numerators(n, ell, m_max)]


def build_schedule(
    n: int,
    ell: int,
    m_max: int,
    tau: Optional[float] = None,
    detuning: float = 0.0,
    t2: Optional[float] = None,
) -> PulseSchedule:
    """Pulse schedule for trial factor ell with exact phase bookkeeping"""
    validate_target_number(n)
    numerators = folded_phase_numerators(n, ell, m_max)
    return PulseSchedule(
        tau=settings.DEFAULT_TAU if tau is None else tau,
        m_max=m_max,
        phases=[math.pi * (t / ell) for t in numerators],
        detuning=detuning,
        t2=t2,
        n=n,
        ell=ell,
        numerators=numerators,
        unreduced=unreduced_phase_numerators(n, m_max),
    )


def cycle_unitary(phi: float, delta_omega_tau: float) -> np.ndarray:
    """U_z(dw tau) U_z(phi) U_x(pi) U_z(phi)^dagger U_z(dw tau)"""
    free = rotation("z", delta_omega_tau)
    return np.linalg.multi_dot(
        [free, rotation("z", phi), rotation("x", math.pi), rotation("z", -phi), free]
    )


def closed_form_unitary(phi: float) -> np.ndarray:
    """(-i) [[0, e^{-i phi}], [e^{i phi}, 0]]"""
    return -1j * np.array(
        [[0.0, np.exp(-1j * phi)], [np.exp(1j * phi), 0.0]], dtype=np.complex128
    )


def propagate(rho_in: np.ndarray, schedule: PulseSchedule) -> List[np.ndarray]:
    """rho_m = U_m rho_in U_m^dagger with U_m = U_m ... U_1 U_0"""
    if not all(math.isfinite(phi) for phi in schedule.phases):
        raise ScheduleError("schedule phases must be finite")
    if not math.isfinite(schedule.delta_omega_tau):
        raise ScheduleError("schedule detuning must be finite")
    check_density_matrix(rho_in)

    # The identity part is invariant under conjugation; propagating only the
    # deviation keeps the small polarization at full relative precision.
    deviation = rho_in - 0.5 * IDENTITY
    total = IDENTITY
    states = []
    for phi in schedule.phases:
        total = cycle_unitary(phi, schedule.delta_omega_tau) @ total
        rho_m = 0.5 * IDENTITY + total @ deviation @ total.conj().T
        check_density_matrix(rho_m)
        states.append(rho_m)
    return states


def echo_signal(rho_m: np.ndarray, rho_in: np.ndarray) -> float:
    """s_m = Tr(I_x rho_m) / Tr(I_x rho_in)"""
    reference = complex(np.trace(SPIN_OPERATORS["x"] @ rho_in)).real
    if abs(reference) < 1e-15:
        raise ZeroPolarizationError("initial state carries no x-polarization")
    return complex(np.trace(SPIN_OPERATORS["x"] @ rho_m)).real / reference


def signal_sum(trace: EchoTrace) -> float:
    """S^(M) = sum of s_m, accumulated in ascending m"""
    return float(np.cumsum(np.asarray(trace.values, dtype=np.float64))[-1])


def alternating_phase_sum(phases: Sequence[float], m: int) -> float:
    """sum_{k=0}^{m} (-1)^k 2 phi_k"""
    if m < 0 or m >= len(phases):
        raise ScheduleError(f"phase index {m} outside 0..{len(phases) - 1}")
    signs = np.where(np.arange(m + 1) % 2 == 0, 2.0, -2.0)
    return float(np.cumsum(signs * np.asarray(phases[: m + 1], dtype=np.float64))[-1])


def alternating_phase_residue(schedule: PulseSchedule, m: int) -> ReducedPhase:
    """Exact alternating phase sum as 2*pi*r/ell, from the folded numerators"""
    if schedule.numerators is None or schedule.ell is None:
        raise ScheduleError("schedule carries no exact phase numerators")
    if m < 0 or m > schedule.m_max:
        raise ScheduleError(f"phase index {m} outside 0..{schedule.m_max}")
    # sum (-1)^k 2 phi_k = 2*pi * sum (-1)^k t_k / ell
    total = sum(t if k % 2 == 0 else -t for k, t in enumerate(schedule.numerators[: m + 1]))
    return ReducedPhase(numerator=total % schedule.ell, denominator=schedule.ell)


def alternating_unreduced_sum(schedule: PulseSchedule, m: int) -> int:
    """sum_{k<=m} (-1)^k 2 u_k on the unreduced integers, equal to 2 N m^2"""
    if schedule.unreduced is None:
        raise ScheduleError("schedule carries no unreduced phase numerators")
    if m < 0 or m > schedule.m_max:
        raise ScheduleError(f"phase index {m} outside 0..{schedule.m_max}")
    return sum(2 * u if k % 2 == 0 else -2 * u for k, u in enumerate(schedule.unreduced[: m + 1]))


def damped_trace(trace: EchoTrace, gamma: Optional[float] = None) -> EchoTrace:
    """s_m * exp(-m gamma); gamma defaults to 2 tau / T2 of the schedule"""
    if gamma is None:
        gamma = trace.schedule.gamma
    if not gamma >= 0.0:
        raise InvalidDampingError(f"damping rate must be nonnegative, got {gamma!r}")
    weights = np.exp(-gamma * np.arange(trace.m_max + 1, dtype=np.float64))
    values = np.asarray(trace.values, dtype=np.float64) * weights
    return EchoTrace(values=values.tolist(), schedule=trace.schedule)


class SpinEchoSimulator:
    """Runs the pulse sequence for a trial factor and collects the echo trace"""

    def __init__(self, epsilon: Optional[float] = None, tau: Optional[float] = None):
        self.epsilon = _validate_polarization(
            settings.DEFAULT_EPSILON if epsilon is None else epsilon
        )
        self.tau = settings.DEFAULT_TAU if tau is None else tau
        self.rho_in = prepare_initial(self.epsilon)

    def schedule_for(
        self,
        n: int,
        ell: int,
        m_max: int,
        detuning: float = 0.0,
        t2: Optional[float] = None,
    ) -> PulseSchedule:
        return build_schedule(n, ell, m_max, tau=self.tau, detuning=detuning, t2=t2)

    def run(self, schedule: PulseSchedule) -> EchoTrace:
        states = propagate(self.rho_in, schedule)
        values = [echo_signal(rho_m, self.rho_in) for rho_m in states]
        return EchoTrace(values=values, schedule=schedule)

    def simulate(
        self,
        n: int,
        ell: int,
        m_max: int,
        detuning: float = 0.0,
        t2: Optional[float] = None,
    ) -> EchoTrace:
        """
        Run the phase-shifted CPMG sequence for one trial factor

        Args:
            n: Number to be factored
            ell: Trial factor that sets the pulse phases
            m_max: Truncation M, giving M+1 pulses
            detuning: Off-resonance delta omega in rad/s
            t2: Transverse relaxation time stored on the schedule for damping

        Returns:
            EchoTrace with the normalized echo heights s_0..s_M
        """
        schedule = self.schedule_for(n, ell, m_max, detuning=detuning, t2=t2)
        trace = self.run(schedule)
        logger.debug(f"Simulated N={n}, ell={ell}, M={m_max}: S={signal_sum(trace):.6f}")
        return trace

    def normalized_signal(self, n: int, ell: int, m_max: int) -> float:
        """S^(M)/(M+1), which equals C_N^(M)(ell)"""
        trace = self.simulate(n, ell, m_max)
        return signal_sum(trace) / (m_max + 1)

    def analytic_trace(self, n: int, ell: int, m_max: int) -> List[float]:
        """cos(2*pi (m^2 N mod ell)/ell), the closed form of every echo"""
        return [math.cos(term.radians) for term in gauss_sum_terms(n, ell, m_max)]

    def ensemble_average_trace(
        self, n: int, ell: int, m_max: int, detunings: Sequence[float]
    ) -> EchoTrace:
        """Average echo over an inhomogeneous distribution of detunings"""
        if len(detunings) == 0:
            raise ValidationError("at least one detuning is required")
        traces = [self.simulate(n, ell, m_max, detuning=dw) for dw in detunings]
        mean = np.mean(np.array([trace.values for trace in traces]), axis=0)
        return EchoTrace(values=mean.tolist(), schedule=traces[0].schedule)

    def damped(self, trace: EchoTrace, gamma: Optional[float] = None, t2: Optional[float] = None) -> EchoTrace:
        """Apply T2 decay, gamma taken from (tau, t2) when not given"""
        if gamma is None and t2 is not None:
            gamma = damping_from_timing(trace.schedule.tau, t2)
        return damped_trace(trace, gamma)

"""Pulse envelopes, schedule segments, and time evolution.

A schedule is a sequence of segments.  Each field segment drives one register
qubit through the auxiliary-mediated transition with an in-plane drive phase;
each coupling segment turns on simultaneous XY exchange between two register
qubits and the auxiliary.  Within a segment the Hamiltonian direction is
fixed and only the envelope amplitude varies, so the segment propagator
depends on the pulse only through its time-integrated area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .qcore import Operator, StateVector, _expm_ih

__all__ = [
    "Envelope",
    "FieldSegment",
    "CouplingSegment",
    "PulseSchedule",
    "coupling_hamiltonian",
    "segment_hamiltonian",
    "segment_unitary",
    "evolve",
    "expectation_trace",
]

ENVELOPE_SHAPES = ("constant", "sin_squared")


@dataclass(frozen=True)
class Envelope:
    """A nonnegative pulse shape with a fixed time-integrated area."""

    area: float
    shape: str = "constant"
    duration: float = 1.0

    def __post_init__(self):
        if self.shape not in ENVELOPE_SHAPES:
            raise ValueError(f"unknown envelope shape {self.shape!r}")
        if self.area < 0:
            raise ValueError(f"envelope area must be nonnegative, got {self.area}")
        if self.duration <= 0:
            raise ValueError(f"envelope duration must be positive, got {self.duration}")

    def amplitude(self, t: float) -> float:
        """Instantaneous amplitude at time t in [0, duration]."""
        if not 0 <= t <= self.duration:
            raise ValueError(f"time {t} outside [0, {self.duration}]")
        if self.shape == "constant":
            return self.area / self.duration
        return (2.0 * self.area / self.duration) * math.sin(math.pi * t / self.duration) ** 2

    def partial_area(self, t: float) -> float:
        """Integral of the amplitude from 0 to t."""
        if not 0 <= t <= self.duration:
            raise ValueError(f"time {t} outside [0, {self.duration}]")
        x = t / self.duration
        if self.shape == "constant":
            return self.area * x
        return self.area * (x - math.sin(2.0 * math.pi * x) / (2.0 * math.pi))


@dataclass(frozen=True)
class FieldSegment:
    """Drive one register qubit; ``beta`` is the in-plane drive phase."""

    qubit: int
    beta: float
    envelope: Envelope

    def __post_init__(self):
        if self.qubit < 0:
            raise ValueError(f"qubit index must be nonnegative, got {self.qubit}")
        object.__setattr__(self, "beta", self.beta % math.tau)


@dataclass(frozen=True)
class CouplingSegment:
    """Couple two register qubits to the auxiliary with mixing angle ``mix_theta``.

    The two exchange strengths are (cos(theta/2), sin(theta/2)) times the
    envelope amplitude, for qubits ``pair[0]`` and ``pair[1]`` respectively.
    """

    pair: tuple[int, int]
    mix_theta: float
    envelope: Envelope

    def __post_init__(self):
        k, l = self.pair
        if k == l or k < 0 or l < 0:
            raise ValueError(f"coupling pair must be two distinct qubits, got {self.pair}")
        if not 0 <= self.mix_theta <= math.pi:
            raise ValueError(f"mixing angle must lie in [0, pi], got {self.mix_theta}")
        object.__setattr__(self, "pair", (int(k), int(l)))


Segment = FieldSegment | CouplingSegment


@dataclass(frozen=True)
class PulseSchedule:
    """An ordered sequence of segments acting on an n-qubit register plus auxiliary."""

    segments: tuple[Segment, ...]
    n_register: int

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if self.n_register < 1:
            raise ValueError(f"register needs at least one qubit, got {self.n_register}")
        for seg in self.segments:
            if isinstance(seg, FieldSegment):
                if seg.qubit >= self.n_register:
                    raise ValueError(f"segment qubit {seg.qubit} outside register of {self.n_register}")
            elif isinstance(seg, CouplingSegment):
                if max(seg.pair) >= self.n_register:
                    raise ValueError(f"coupling pair {seg.pair} outside register of {self.n_register}")
            else:
                raise TypeError(f"unknown segment type {type(seg).__name__}")

    @property
    def total_duration(self) -> float:
        return sum(seg.envelope.duration for seg in self.segments)

    def inverted(self) -> "PulseSchedule":
        """Schedule realizing the inverse evolution, segment by segment.

        A field segment is inverted by advancing its drive phase by pi at the
        same area.  A coupling segment's propagator has eigenphases that are
        multiples of half the area, so running the complementary area
        (4*pi - a) mod 4*pi completes the period.
        """
        inv = []
        for seg in reversed(self.segments):
            if isinstance(seg, FieldSegment):
                inv.append(FieldSegment(seg.qubit, seg.beta + math.pi, seg.envelope))
            else:
                e = seg.envelope
                area = (2 * math.tau - e.area) % (2 * math.tau)
                inv.append(CouplingSegment(seg.pair, seg.mix_theta, Envelope(area, e.shape, e.duration)))
        return PulseSchedule(tuple(inv), self.n_register)


def _spin(axis: str) -> np.ndarray:
    if axis == "x":
        return np.array([[0, 0.5], [0.5, 0]], dtype=np.complex128)
    return np.array([[0, -0.5j], [0.5j, 0]], dtype=np.complex128)


def coupling_hamiltonian(j_k: float, j_l: float) -> np.ndarray:
    """XY exchange of two register spins with a shared auxiliary spin.

    Basis order (k, a, l) with k the most significant qubit:
    J_k (Sx_k Sx_a + Sy_k Sy_a) + J_l (Sx_l Sx_a + Sy_l Sy_a).
    """
    sx, sy = _spin("x"), _spin("y")
    eye = np.eye(2, dtype=np.complex128)
    h = j_k * (np.kron(np.kron(sx, sx), eye) + np.kron(np.kron(sy, sy), eye))
    h += j_l * (np.kron(eye, np.kron(sx, sx)) + np.kron(eye, np.kron(sy, sy)))
    return h


def _field_unit_hamiltonian(beta: float) -> np.ndarray:
    """Unit-amplitude drive direction cos(beta) Sx + sin(beta) Sy on one qubit."""
    return math.cos(beta) * _spin("x") + math.sin(beta) * _spin("y")


def _coupling_unit_hamiltonian(mix_theta: float) -> np.ndarray:
    return coupling_hamiltonian(math.cos(mix_theta / 2.0), math.sin(mix_theta / 2.0))


def segment_hamiltonian(seg: Segment, amplitude: float) -> Operator:
    """Instantaneous Hamiltonian of a segment at the given envelope amplitude."""
    if amplitude < 0:
        raise ValueError(f"amplitude must be nonnegative, got {amplitude}")
    if isinstance(seg, FieldSegment):
        h = _field_unit_hamiltonian(seg.beta)
    elif isinstance(seg, CouplingSegment):
        h = _coupling_unit_hamiltonian(seg.mix_theta)
    else:
        raise TypeError(f"unknown segment type {type(seg).__name__}")
    return Operator(amplitude * h, hermitian=True)


def segment_unitary(seg: Segment) -> Operator:
    """Propagator of a segment over its whole duration.

    The direction is constant within a segment, so the time-ordered integral
    collapses to exp(-i * area * H_unit) regardless of envelope shape.
    """
    if isinstance(seg, FieldSegment):
        h = _field_unit_hamiltonian(seg.beta)
    elif isinstance(seg, CouplingSegment):
        h = _coupling_unit_hamiltonian(seg.mix_theta)
    else:
        raise TypeError(f"unknown segment type {type(seg).__name__}")
    return Operator(_expm_ih(h, seg.envelope.area), unitary=True)


def _segment_targets(seg: Segment, schedule: PulseSchedule, psi: StateVector) -> tuple[int, ...]:
    """Resolve which state qubits a segment acts on, for full or local states.

    Full mode: the state covers the register plus the auxiliary stored at the
    last index; a field segment addresses its one qubit and a coupling
    segment (k, aux, l).  Local mode: the state is exactly the segment's own
    qubits (one for a field segment, three for a coupling segment).
    """
    n = schedule.n_register
    if psi.n_qubits == n + 1:
        if isinstance(seg, FieldSegment):
            return (seg.qubit,)
        return (seg.pair[0], n, seg.pair[1])
    if isinstance(seg, FieldSegment) and psi.n_qubits == 1:
        return (0,)
    if isinstance(seg, CouplingSegment) and psi.n_qubits == 3:
        return (0, 1, 2)
    raise ValueError(
        f"state on {psi.n_qubits} qubits matches neither the full register "
        f"of {n}+1 nor the local segment size"
    )


def evolve(schedule: PulseSchedule, psi: StateVector) -> StateVector:
    """Apply every segment propagator of the schedule to the state, in order."""
    if not schedule.segments:
        return psi
    amps = np.array(psi.amplitudes, copy=True)
    for seg in schedule.segments:
        targets = _segment_targets(seg, schedule, psi)
        kernels.apply_gate_inplace(amps, segment_unitary(seg).matrix, targets)
    return StateVector(amps)


def expectation_trace(schedule: PulseSchedule, psi: StateVector,
                      samples: int = 64) -> list[tuple[float, float]]:
    """Sampled <psi(t)| H(t) |psi(t)> along the schedule.

    Returns ``samples`` points per segment as (global time, expectation)
    pairs.  Intermediate states are propagated through partial areas, so the
    trace is exact for the piecewise-constant-direction Hamiltonian, not a
    discretization.
    """
    if samples < 2:
        raise ValueError(f"need at least 2 samples per segment, got {samples}")
    amps = np.array(psi.amplitudes, copy=True)
    out: list[tuple[float, float]] = []
    t0 = 0.0
    for seg in schedule.segments:
        targets = _segment_targets(seg, schedule, psi)
        h_unit = (_field_unit_hamiltonian(seg.beta) if isinstance(seg, FieldSegment)
                  else _coupling_unit_hamiltonian(seg.mix_theta))
        evals, evecs = np.linalg.eigh(h_unit)
        env = seg.envelope
        for j in range(samples):
            t = env.duration * j / (samples - 1)
            u_t = (evecs * np.exp(-1j * env.partial_area(t) * evals)) @ evecs.conj().T
            phi = kernels.apply_gate(amps, u_t, targets)
            h_phi = kernels.apply_gate(phi, env.amplitude(t) * h_unit, targets)
            out.append((t0 + t, float(np.vdot(phi, h_phi).real)))
        kernels.apply_gate_inplace(amps, (evecs * np.exp(-1j * env.area * evals)) @ evecs.conj().T,
                                   targets)
        t0 += env.duration
    return out

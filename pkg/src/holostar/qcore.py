"""Dense complex linear algebra and quantum-state primitives.

Operators and state vectors are immutable wrappers around complex128 numpy
arrays.  Role flags (``hermitian`` / ``unitary``) are verified at construction
time, so a flagged operator can be trusted downstream without re-checking.

Qubit convention: qubit 0 is the most significant bit of the basis index, so
``tensor(a, b)`` puts ``a`` on the most significant positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES as _TOL

__all__ = [
    "Operator",
    "StateVector",
    "Projector",
    "pauli",
    "identity",
    "basis_state",
    "ket",
    "matrix_exponential_hermitian",
    "tensor",
    "partial_trace",
    "phase_invariant_distance",
    "density",
    "purity",
    "embed_operator",
    "permute_basis",
    "wrap_phase",
]


def _as_complex_matrix(m) -> np.ndarray:
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class Operator:
    """A dense complex square matrix with verified role flags."""

    matrix: np.ndarray
    hermitian: bool = False
    unitary: bool = False

    def __post_init__(self):
        m = _as_complex_matrix(self.matrix)
        if self.hermitian:
            dev = np.max(np.abs(m - m.conj().T))
            if dev > _TOL.hermitian:
                raise ValueError(f"operator flagged Hermitian deviates by {dev:.3e}")
        if self.unitary:
            dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
            if dev > _TOL.unitary:
                raise ValueError(f"operator flagged unitary deviates by {dev:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dag(self) -> "Operator":
        return Operator(self.matrix.conj().T, hermitian=self.hermitian, unitary=self.unitary)

    def __matmul__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        return Operator(self.matrix @ other.matrix, unitary=self.unitary and other.unitary)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype or np.complex128)


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized complex amplitude vector over a qubit register."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        n = (a.size - 1).bit_length()
        if a.size != 1 << n:
            raise ValueError(f"amplitude count must be a power of two, got {a.size}")
        nrm = np.linalg.norm(a)
        if abs(nrm - 1.0) > _TOL.state_norm:
            raise ValueError(f"state norm deviates from 1 by {abs(nrm - 1.0):.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def n_qubits(self) -> int:
        return (self.amplitudes.size - 1).bit_length()

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class Projector:
    """An idempotent Hermitian operator selecting a subspace."""

    op: Operator = field()

    def __post_init__(self):
        m = self.op.matrix
        dev = np.max(np.abs(m @ m - m))
        if dev > _TOL.projector:
            raise ValueError(f"projector is not idempotent, residual {dev:.3e}")
        if np.max(np.abs(m - m.conj().T)) > _TOL.hermitian:
            raise ValueError("projector is not Hermitian")

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @classmethod
    def onto_indices(cls, dim: int, indices: Iterable[int]) -> "Projector":
        """Projector onto the span of the given computational basis indices."""
        d = np.zeros(dim)
        for i in indices:
            if not 0 <= i < dim:
                raise ValueError(f"basis index {i} out of range for dimension {dim}")
            d[i] = 1.0
        return cls(Operator(np.diag(d).astype(np.complex128), hermitian=True))

    @classmethod
    def onto_span(cls, vectors: Sequence[np.ndarray]) -> "Projector":
        """Projector onto the span of (orthonormal) column vectors."""
        v = np.column_stack([np.asarray(x, dtype=np.complex128).reshape(-1) for x in vectors])
        return cls(Operator(v @ v.conj().T, hermitian=True))


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli(axis: str) -> Operator:
    """Return the 2x2 Pauli matrix for axis ``"x"``, ``"y"`` or ``"z"``."""
    try:
        m = _PAULI[axis]
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}") from None
    return Operator(m, hermitian=True, unitary=True)


def identity(dim: int) -> Operator:
    return Operator(np.eye(dim, dtype=np.complex128), hermitian=True, unitary=True)


def basis_state(n_qubits: int, index: int) -> StateVector:
    """Computational basis state |index> on ``n_qubits`` qubits."""
    dim = 1 << n_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    a = np.zeros(dim, dtype=np.complex128)
    a[index] = 1.0
    return StateVector(a)


def ket(bits: str) -> StateVector:
    """Basis state from a bit string, e.g. ``ket("010")``; leftmost bit is qubit 0."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"invalid bit string {bits!r}")
    return basis_state(len(bits), int(bits, 2))


def matrix_exponential_hermitian(h: Operator, t: float) -> Operator:
    """exp(-i t H) for Hermitian-flagged H, via eigendecomposition.

    The spectral route keeps the result unitary to rounding for any t, which
    matters because segment unitaries are composed hundreds of times.
    """
    if not h.hermitian:
        raise ValueError("matrix_exponential_hermitian requires a Hermitian-flagged operator")
    return Operator(_expm_ih(h.matrix, t), unitary=True)


def _expm_ih(matrix: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t M) for a Hermitian ndarray (no flag checks)."""
    evals, evecs = np.linalg.eigh(matrix)
    return (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T


def tensor(a, b):
    """Kronecker product of two operators or two state vectors."""
    if isinstance(a, Operator) and isinstance(b, Operator):
        return Operator(
            np.kron(a.matrix, b.matrix),
            hermitian=a.hermitian and b.hermitian,
            unitary=a.unitary and b.unitary,
        )
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def density(psi: StateVector) -> Operator:
    """Rank-one density operator |psi><psi|."""
    a = psi.amplitudes
    return Operator(np.outer(a, a.conj()), hermitian=True)


def purity(rho) -> float:
    m = rho.matrix if isinstance(rho, Operator) else np.asarray(rho)
    return float(np.trace(m @ m).real)


def partial_trace(rho: Operator, keep: Iterable[int], n_qubits: int) -> Operator:
    """Reduced density operator on the kept qubits (ascending index order)."""
    m = rho.matrix
    dim = 1 << n_qubits
    if m.shape != (dim, dim):
        raise ValueError(f"density matrix shape {m.shape} does not match {n_qubits} qubits")
    keep = sorted(set(keep))
    if keep and not (0 <= keep[0] and keep[-1] < n_qubits):
        raise ValueError(f"kept qubit indices {keep} out of range for {n_qubits} qubits")
    if np.max(np.abs(m - m.conj().T)) > _TOL.hermitian:
        raise ValueError("partial_trace requires a Hermitian density operator")
    if abs(np.trace(m).real - 1.0) > _TOL.density or abs(np.trace(m).imag) > _TOL.density:
        raise ValueError("partial_trace requires a unit-trace density operator")
    traced = [q for q in range(n_qubits) if q not in keep]
    t = m.reshape((2,) * (2 * n_qubits))
    row = keep + traced
    col = [n_qubits + q for q in row]
    t = t.transpose(row + col)
    dk, dt = 1 << len(keep), 1 << len(traced)
    t = t.reshape(dk, dt, dk, dt)
    return Operator(np.einsum("itjt->ij", t), hermitian=True)


def phase_invariant_distance(u, v) -> float:
    """Distance sqrt(1 - |tr(U^dag V)| / d) between equal-size unitaries.

    Evaluated as the phase-aligned Frobenius norm ||U - e^{i a} V||_F /
    sqrt(2d) with a = arg tr(U^dag V), which is the same function but does not
    bottom out near sqrt(machine eps) the way the trace form does.
    """
    mu = u.matrix if isinstance(u, Operator) else np.asarray(u, dtype=np.complex128)
    mv = v.matrix if isinstance(v, Operator) else np.asarray(v, dtype=np.complex128)
    if mu.shape != mv.shape:
        raise ValueError(f"dimension mismatch: {mu.shape} vs {mv.shape}")
    d = mu.shape[0]
    alpha = np.angle(np.trace(mu.conj().T @ mv))
    dist = np.linalg.norm(mu - np.exp(-1j * alpha) * mv) / math.sqrt(2 * d)
    return float(min(dist, 1.0))


def embed_operator(gate: np.ndarray, targets: Sequence[int], n_qubits: int) -> np.ndarray:
    """Full 2^n x 2^n matrix for a small gate acting on the given qubits.

    Gate qubit j (most significant first) lands on global qubit ``targets[j]``;
    all other qubits get identity factors.
    """
    g = np.asarray(gate, dtype=np.complex128)
    m = len(targets)
    if g.shape != (1 << m, 1 << m):
        raise ValueError(f"gate shape {g.shape} does not match {m} target qubits")
    if len(set(targets)) != m or any(not 0 <= q < n_qubits for q in targets):
        raise ValueError(f"invalid target qubits {targets} for {n_qubits} qubits")
    dim = 1 << n_qubits
    full = np.eye(dim, dtype=np.complex128).reshape((2,) * n_qubits + (dim,))
    full = np.moveaxis(full, list(targets), range(m))
    shape = full.shape
    full = (g @ full.reshape(1 << m, -1)).reshape(shape)
    full = np.moveaxis(full, range(m), list(targets))
    return full.reshape(dim, dim)


def permute_basis(matrix: np.ndarray, order: Sequence[int]) -> np.ndarray:
    """Reorder basis states: output[i, j] = matrix[order[i], order[j]]."""
    idx = np.asarray(order)
    m = np.asarray(matrix)
    if sorted(idx.tolist()) != list(range(m.shape[0])):
        raise ValueError(f"order {order} is not a permutation of 0..{m.shape[0] - 1}")
    return m[np.ix_(idx, idx)]


def wrap_phase(x: float) -> float:
    """Map an angle to the principal interval (-pi, pi]."""
    y = math.remainder(x, math.tau)
    if y <= -math.pi:
        y += math.tau
    return y

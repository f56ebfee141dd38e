import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holostar.qcore import (
    Operator,
    Projector,
    StateVector,
    basis_state,
    density,
    embed_operator,
    identity,
    ket,
    matrix_exponential_hermitian,
    partial_trace,
    pauli,
    permute_basis,
    phase_invariant_distance,
    purity,
    tensor,
    wrap_phase,
)

from conftest import SX, SY, SZ, random_unitary

angles = st.floats(-10.0, 10.0, allow_nan=False)


def test_pauli_matrices():
    assert np.array_equal(pauli("x").matrix, [[0, 1], [1, 0]])
    assert np.array_equal(pauli("z").matrix, [[1, 0], [0, -1]])
    assert np.array_equal(pauli("y").matrix, [[0, -1j], [1j, 0]])
    with pytest.raises(ValueError):
        pauli("w")


def test_operator_flag_validation():
    with pytest.raises(ValueError, match="Hermitian"):
        Operator(np.array([[0, 1], [0, 0]]), hermitian=True)
    with pytest.raises(ValueError, match="unitary"):
        Operator(np.array([[1, 0], [0, 2]]), unitary=True)
    # matmul keeps the unitary flag only when both factors carry it
    u = pauli("x") @ pauli("y")
    assert u.unitary
    assert not (pauli("x") @ Operator(np.eye(2) * 2)).unitary


def test_operator_matrix_is_frozen():
    op = pauli("x")
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5.0


def test_statevector_validation():
    with pytest.raises(ValueError, match="norm"):
        StateVector(np.array([1.0, 1.0]))
    with pytest.raises(ValueError, match="power of two"):
        StateVector(np.array([1.0, 0.0, 0.0]))
    assert StateVector(np.array([1.0, 0.0])).n_qubits == 1


def test_basis_state_and_ket():
    assert np.array_equal(basis_state(2, 1).amplitudes, [0, 1, 0, 0])
    assert np.array_equal(ket("01").amplitudes, [0, 1, 0, 0])
    assert np.array_equal(ket("110").amplitudes, basis_state(3, 6).amplitudes)
    with pytest.raises(ValueError):
        ket("021")
    with pytest.raises(ValueError):
        basis_state(1, 2)


def test_exponential_examples():
    zero = Operator(np.zeros((2, 2)), hermitian=True)
    assert np.allclose(matrix_exponential_hermitian(zero, 3.0).matrix, np.eye(2))

    half_sx = Operator(SX / 2, hermitian=True)
    got = matrix_exponential_hermitian(half_sx, math.pi).matrix
    assert np.allclose(got, -1j * SX, atol=1e-15)

    sz = Operator(SZ, hermitian=True)
    got = matrix_exponential_hermitian(sz, math.pi / 4).matrix
    assert np.allclose(got, np.diag([np.exp(-1j * math.pi / 4), np.exp(1j * math.pi / 4)]))


def test_exponential_requires_hermitian_flag():
    with pytest.raises(ValueError, match="Hermitian"):
        matrix_exponential_hermitian(Operator(SX), 1.0)


@given(angles, angles)
def test_exponential_additivity(s, t):
    h = Operator(0.7 * SX + 0.2 * SY + 1.1 * SZ, hermitian=True)
    us = matrix_exponential_hermitian(h, s).matrix
    ut = matrix_exponential_hermitian(h, t).matrix
    ust = matrix_exponential_hermitian(h, s + t).matrix
    assert np.max(np.abs(us @ ut - ust)) < 1e-10


@given(angles)
def test_exponential_always_unitary(t):
    h = Operator(SX + 0.3 * SZ, hermitian=True)
    u = matrix_exponential_hermitian(h, t).matrix
    assert np.max(np.abs(u.conj().T @ u - np.eye(2))) < 1e-10


def test_tensor():
    assert np.array_equal(tensor(identity(2), identity(2)).matrix, np.eye(4))
    assert np.array_equal(tensor(basis_state(1, 0), basis_state(1, 1)).amplitudes,
                          [0, 1, 0, 0])
    xx = tensor(pauli("x"), pauli("x"))
    assert np.array_equal(xx.matrix @ basis_state(2, 0).amplitudes,
                          basis_state(2, 3).amplitudes)
    assert xx.hermitian and xx.unitary
    with pytest.raises(TypeError):
        tensor(pauli("x"), basis_state(1, 0))


def test_partial_trace_product_state():
    rho = density(ket("00"))
    reduced = partial_trace(rho, keep=(0,), n_qubits=2)
    assert np.allclose(reduced.matrix, [[1, 0], [0, 0]])
    assert abs(purity(reduced) - 1.0) < 1e-10


def test_partial_trace_bell():
    bell = StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2))
    for q in (0, 1):
        reduced = partial_trace(density(bell), keep=(q,), n_qubits=2)
        assert np.allclose(reduced.matrix, np.eye(2) / 2)


@given(st.floats(0.0, math.pi / 2))
def test_partial_trace_schmidt_form(a):
    psi = StateVector(np.array([math.cos(a), 0, 0, math.sin(a)]))
    reduced = partial_trace(density(psi), keep=(0,), n_qubits=2)
    assert np.allclose(reduced.matrix, np.diag([math.cos(a) ** 2, math.sin(a) ** 2]))


def test_partial_trace_validation():
    rho = density(ket("00"))
    with pytest.raises(ValueError, match="out of range"):
        partial_trace(rho, keep=(2,), n_qubits=2)
    with pytest.raises(ValueError, match="Hermitian"):
        partial_trace(Operator(np.triu(np.ones((4, 4)))), keep=(0,), n_qubits=2)
    with pytest.raises(ValueError, match="unit-trace"):
        partial_trace(Operator(np.eye(4)), keep=(0,), n_qubits=2)


def test_phase_invariant_distance_examples():
    eye = identity(2)
    assert phase_invariant_distance(eye, eye) == 0.0
    assert phase_invariant_distance(eye, Operator(np.exp(1j * math.pi / 7) * np.eye(2))) < 1e-15
    assert abs(phase_invariant_distance(eye, pauli("x")) - 1.0) < 1e-15


@given(st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_phase_invariant_distance_phase_invariance(a, b):
    u = np.diag([1.0, np.exp(0.3j)])
    v = np.array([[0, 1j], [1j, 0]])
    d0 = phase_invariant_distance(u, v)
    d1 = phase_invariant_distance(np.exp(1j * a) * u, np.exp(1j * b) * v)
    assert abs(d0 - d1) < 1e-12
    assert abs(phase_invariant_distance(v, u) - d0) < 1e-12


def test_phase_invariant_distance_no_rounding_floor(rng):
    # A long product of rotations drifts from its closed form only by
    # accumulated rounding; the reported distance must stay at that scale
    # instead of bottoming out near sqrt(machine eps).
    u = np.eye(2, dtype=complex)
    factors = [random_unitary(2, rng) for _ in range(60)]
    for f in factors:
        u = f @ u
    v = np.linalg.multi_dot(factors[::-1])
    assert phase_invariant_distance(u, v) < 1e-12


def test_phase_invariant_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        phase_invariant_distance(np.eye(2), np.eye(4))


def test_projector():
    p = Projector.onto_indices(4, (1, 2))
    assert np.allclose(p.matrix, np.diag([0, 1, 1, 0]))
    with pytest.raises(ValueError):
        Projector.onto_indices(4, (4,))
    with pytest.raises(ValueError, match="idempotent"):
        Projector(Operator(np.diag([0.5, 0.5, 0, 0]).astype(complex)))


def test_embed_operator_against_kron():
    g = np.array([[1, 2], [3, 4]], dtype=complex)
    assert np.allclose(embed_operator(g, (0,), 2), np.kron(g, np.eye(2)))
    assert np.allclose(embed_operator(g, (1,), 2), np.kron(np.eye(2), g))
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    # control on qubit 1, target on qubit 0 == swapped-wire CNOT
    got = embed_operator(cnot, (1, 0), 2)
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.allclose(got, swap @ cnot @ swap)
    with pytest.raises(ValueError):
        embed_operator(g, (0, 1), 2)
    with pytest.raises(ValueError):
        embed_operator(g, (2,), 2)


def test_permute_basis():
    m = np.arange(16).reshape(4, 4)
    p = permute_basis(m, (2, 3, 0, 1))
    assert p[0, 0] == m[2, 2] and p[0, 2] == m[2, 0]
    with pytest.raises(ValueError):
        permute_basis(m, (0, 1, 2, 2))


def test_wrap_phase():
    assert wrap_phase(0.0) == 0.0
    assert wrap_phase(math.pi) == math.pi
    assert wrap_phase(-math.pi) == math.pi
    assert abs(wrap_phase(3 * math.pi) - math.pi) < 1e-15
    assert abs(wrap_phase(-0.1) + 0.1) < 1e-15


@given(angles)
def test_wrap_phase_range_and_congruence(x):
    y = wrap_phase(x)
    assert -math.pi < y <= math.pi
    assert abs(math.remainder(x - y, 2 * math.pi)) < 1e-9

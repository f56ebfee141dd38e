"""State-vector gate application with a compiled core and a numpy fallback.

The compiled extension is used when it imported cleanly and the gate is small
enough for its fixed scratch buffers; setting ``HOLOSTAR_PURE_PYTHON=1`` in
the environment forces the numpy path.  ``BACKEND`` records the choice.
"""

import os

import numpy as np

from . import _fallback

_EXT = None
if not os.environ.get("HOLOSTAR_PURE_PYTHON"):
    try:
        from . import _statevec as _EXT
    except ImportError:
        _EXT = None

BACKEND = "compiled" if _EXT is not None else "numpy"

_EXT_MAX_TARGETS = 6

__all__ = ["BACKEND", "apply_gate", "apply_gate_inplace"]


def apply_gate_inplace(state, gate, targets):
    """Apply a 2^m x 2^m gate to qubits ``targets`` of ``state``, in place.

    ``state`` must be a writable C-contiguous complex128 vector of length 2^n;
    qubit 0 is the most significant bit of the basis index.
    """
    if not (isinstance(state, np.ndarray) and state.dtype == np.complex128
            and state.ndim == 1 and state.flags.c_contiguous and state.flags.writeable):
        raise ValueError("state must be a writable C-contiguous complex128 vector")
    n = (state.size - 1).bit_length()
    if state.size != 1 << n:
        raise ValueError(f"state length {state.size} is not a power of two")
    targets = tuple(int(q) for q in targets)
    m = len(targets)
    if len(set(targets)) != m or any(not 0 <= q < n for q in targets):
        raise ValueError(f"invalid target qubits {targets} for {n} qubits")
    gate = np.ascontiguousarray(gate, dtype=np.complex128)
    if gate.shape != (1 << m, 1 << m):
        raise ValueError(f"gate shape {gate.shape} does not match {m} target qubits")
    if not gate.flags.writeable:
        gate = gate.copy()  # the extension's memoryview requires a writable buffer
    if _EXT is not None and m <= _EXT_MAX_TARGETS:
        _EXT.apply_gate_inplace(state, gate.reshape(-1), np.asarray(targets, dtype=np.int64))
    else:
        _fallback.apply_gate_inplace(state, gate, targets)


def apply_gate(state, gate, targets):
    """Copying variant of :func:`apply_gate_inplace`."""
    out = np.array(state, dtype=np.complex128, copy=True, order="C").reshape(-1)
    apply_gate_inplace(out, gate, targets)
    return out

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled gather/scatter kernel applying a small gate to a state vector."""


def apply_gate_inplace(double complex[::1] state, double complex[::1] gate,
                       long[::1] targets):
    """Apply a 2^m x 2^m gate (row-major, flattened) to the target qubits.

    Qubit 0 is the most significant bit of the basis index; gate qubit j acts
    on global qubit targets[j].  m is capped at 6 (64-amplitude scratch).
    """
    cdef int n = 0, m = targets.shape[0]
    cdef long size = state.shape[0]
    cdef long dim = 1 << m
    cdef long pos[6]
    cdef long offs[64]
    cdef double complex buf[64]
    cdef long i, j, a, b, x, base
    cdef double complex acc

    while (<long>1 << n) < size:
        n += 1
    if m > 6:
        raise ValueError("compiled kernel supports at most 6 target qubits")

    # Bit positions of the targets counted from the least significant bit,
    # sorted ascending so zero-bit insertion below works position by position.
    for j in range(m):
        pos[j] = n - 1 - targets[j]
    for i in range(m):
        for j in range(i + 1, m):
            if pos[j] < pos[i]:
                x = pos[i]; pos[i] = pos[j]; pos[j] = x

    # offs[a]: scatter of the m-bit gate index a onto the target bit positions.
    for a in range(dim):
        x = 0
        for j in range(m):
            if (a >> (m - 1 - j)) & 1:
                x |= <long>1 << (n - 1 - targets[j])
        offs[a] = x

    with nogil:
        for i in range(size >> m):
            # Expand i to a basis index with zero bits at every target position.
            base = i
            for j in range(m):
                x = pos[j]
                base = ((base >> x) << (x + 1)) | (base & ((<long>1 << x) - 1))
            for a in range(dim):
                buf[a] = state[base | offs[a]]
            for a in range(dim):
                acc = 0
                for b in range(dim):
                    acc = acc + gate[a * dim + b] * buf[b]
                state[base | offs[a]] = acc

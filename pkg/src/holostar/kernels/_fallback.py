"""Pure-numpy gate application, used when the compiled extension is absent."""

import numpy as np


def apply_gate_inplace(state, gate, targets):
    n = (state.size - 1).bit_length()
    m = len(targets)
    t = state.reshape((2,) * n)
    t = np.moveaxis(t, list(targets), range(m))
    shape = t.shape
    out = (gate @ t.reshape(1 << m, -1)).reshape(shape)
    out = np.moveaxis(out, range(m), list(targets))
    state[:] = out.reshape(-1)

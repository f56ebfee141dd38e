"""Timing comparison of the compiled gate kernel against the numpy fallback.

Measures raw per-gate application across register sizes, then an end-to-end
50-gate simulation of a 10-qubit register.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import timeit

import numpy as np

import holostar.kernels as kernels
from holostar.architecture import StarArchitecture, random_circuit, simulate
from holostar.kernels import _fallback


def _haar_state(n_qubits: int, rng) -> np.ndarray:
    v = rng.normal(size=2 ** n_qubits) + 1j * rng.normal(size=2 ** n_qubits)
    return np.ascontiguousarray(v / np.linalg.norm(v))


def _random_gate(m: int, rng) -> np.ndarray:
    g = rng.normal(size=(2 ** m, 2 ** m)) + 1j * rng.normal(size=(2 ** m, 2 ** m))
    q, _ = np.linalg.qr(g)
    return np.ascontiguousarray(q)


def bench_apply(n_qubits: int, m: int, repeats: int) -> tuple[float, float]:
    rng = np.random.default_rng(2)
    state = _haar_state(n_qubits, rng)
    gate = _random_gate(m, rng)
    targets = tuple(range(m))
    flat = gate.reshape(-1).copy()
    idx = np.asarray(targets, dtype=np.int64)

    compiled = float("nan")
    if kernels._EXT is not None:
        s = state.copy()
        compiled = min(timeit.repeat(
            lambda: kernels._EXT.apply_gate_inplace(s, flat, idx),
            number=repeats, repeat=3)) / repeats
    s = state.copy()
    fallback = min(timeit.repeat(
        lambda: _fallback.apply_gate_inplace(s, gate, targets),
        number=repeats, repeat=3)) / repeats
    return compiled, fallback


def bench_simulation() -> dict[str, float]:
    circuit = random_circuit(10, 50, np.random.default_rng(3))
    arch = StarArchitecture(10)
    times = {}
    saved = kernels._EXT
    try:
        for label, ext in (("compiled", saved), ("numpy", None)):
            if ext is None and label == "compiled":
                continue
            kernels._EXT = ext  # steer the dispatcher for this measurement
            times[label] = min(timeit.repeat(
                lambda: simulate(circuit, arch), number=1, repeat=3))
    finally:
        kernels._EXT = saved
    return times


def main():
    print(f"active backend: {kernels.BACKEND}")
    print()
    print(f"{'qubits':>6} {'gate':>5} {'compiled':>12} {'numpy':>12} {'speedup':>8}")
    for n in (6, 10, 14, 18):
        repeats = max(1, 2 ** (18 - n))
        for m in (1, 2, 3):
            compiled, fallback = bench_apply(n, m, repeats)
            ratio = fallback / compiled if compiled == compiled else float("nan")
            print(f"{n:>6} {2 ** m:>4}x {compiled * 1e6:>10.1f}us "
                  f"{fallback * 1e6:>10.1f}us {ratio:>7.1f}x")
    print()
    times = bench_simulation()
    for label, t in times.items():
        print(f"50-gate simulation, 10-qubit register ({label}): {t * 1e3:.1f} ms")
    if len(times) == 2:
        print(f"end-to-end speedup: {times['numpy'] / times['compiled']:.1f}x")


if __name__ == "__main__":
    main()

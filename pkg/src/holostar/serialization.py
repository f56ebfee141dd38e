"""Reading and writing schedules, circuits, and report documents.

Documents are JSON with a canonical rendering: keys sorted, two-space
indent, floats printed with 17 significant digits so every double survives a
round trip, and serialize -> parse -> serialize is byte-identical.  The
stdlib emitter cannot be told how to format floats, hence the small emitter
here; parsing is plain ``json.loads`` plus strict key validation (unknown or
missing keys are errors, never ignored).
"""

from __future__ import annotations

import json
import math
import sys

import numpy as np

from .architecture import Circuit, EntanglingGate, RotationGate, StarArchitecture
from .pulse import CouplingSegment, Envelope, FieldSegment, PulseSchedule
from .single_qubit_holonomy import RotationTarget

__all__ = [
    "dumps",
    "loads",
    "load_document",
    "schedule_to_dict",
    "schedule_from_dict",
    "circuit_to_dict",
    "circuit_from_dict",
    "matrix_to_lists",
    "vector_to_lists",
    "document_kind",
    "unwrap_document",
]


def _emit(obj, indent: int) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"document keys must be strings, got {key!r}")
            items.append(f'{pad}  {json.dumps(key)}: {_emit(obj[key], indent + 1)}')
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_emit(x, indent + 1)}" for x in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite number {x}")
        if x == 0:
            return "0"
        return format(x, ".17g")
    raise TypeError(f"cannot serialize value of type {type(obj).__name__}")


def dumps(obj) -> str:
    """Canonical document text (deterministic bytes for identical content)."""
    return _emit(obj, 0) + "\n"


def loads(text: str):
    return json.loads(text)


def load_document(path: str):
    """Parse a document from a file path, or from stdin when path is ``-``."""
    if path == "-":
        return loads(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read())


def _require_keys(d: dict, required: set[str], what: str):
    keys = set(d)
    if keys != required:
        missing, extra = required - keys, keys - required
        parts = []
        if missing:
            parts.append(f"missing {sorted(missing)}")
        if extra:
            parts.append(f"unknown {sorted(extra)}")
        raise ValueError(f"{what}: {', '.join(parts)}")


def matrix_to_lists(m) -> list:
    """Complex matrix as nested [real, imag] pairs."""
    a = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def vector_to_lists(v) -> list:
    a = np.asarray(v, dtype=np.complex128).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in a]


def schedule_to_dict(schedule: PulseSchedule) -> dict:
    segments = []
    for seg in schedule.segments:
        env = seg.envelope
        common = {"shape": env.shape, "duration": float(env.duration), "area": float(env.area)}
        if isinstance(seg, FieldSegment):
            segments.append({"kind": "field", "qubit": int(seg.qubit),
                             "beta": float(seg.beta), **common})
        else:
            segments.append({"kind": "coupling", "pair": [int(seg.pair[0]), int(seg.pair[1])],
                             "mix_theta": float(seg.mix_theta), **common})
    return {"n_register": int(schedule.n_register), "segments": segments}


def schedule_from_dict(d: dict) -> PulseSchedule:
    if not isinstance(d, dict):
        raise ValueError("schedule document must be an object")
    _require_keys(d, {"n_register", "segments"}, "schedule document")
    segments = []
    for i, sd in enumerate(d["segments"]):
        if not isinstance(sd, dict):
            raise ValueError(f"segment {i} must be an object")
        kind = sd.get("kind")
        if kind == "field":
            _require_keys(sd, {"kind", "qubit", "beta", "shape", "duration", "area"},
                          f"field segment {i}")
            env = Envelope(float(sd["area"]), sd["shape"], float(sd["duration"]))
            segments.append(FieldSegment(int(sd["qubit"]), float(sd["beta"]), env))
        elif kind == "coupling":
            _require_keys(sd, {"kind", "pair", "mix_theta", "shape", "duration", "area"},
                          f"coupling segment {i}")
            pair = sd["pair"]
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ValueError(f"coupling segment {i}: pair must be a 2-element list")
            env = Envelope(float(sd["area"]), sd["shape"], float(sd["duration"]))
            segments.append(CouplingSegment((int(pair[0]), int(pair[1])),
                                            float(sd["mix_theta"]), env))
        else:
            raise ValueError(f"segment {i}: unknown kind {kind!r}")
    return PulseSchedule(tuple(segments), int(d["n_register"]))


def circuit_to_dict(circuit: Circuit, arch: StarArchitecture) -> dict:
    gates = []
    for g in circuit.gates:
        if isinstance(g, RotationGate):
            gates.append({"qubit": int(g.qubit), "theta": float(g.target.theta),
                          "phi": float(g.target.phi), "dphi": float(g.target.dphi)})
        else:
            gates.append({"k": int(g.pair[0]), "l": int(g.pair[1]),
                          "theta": float(g.mix_theta)})
    return {"n_register": int(arch.n_register),
            "auxiliary_state": int(arch.auxiliary_state), "gates": gates}


def circuit_from_dict(d: dict) -> tuple[Circuit, StarArchitecture]:
    if not isinstance(d, dict):
        raise ValueError("circuit document must be an object")
    _require_keys(d, {"n_register", "auxiliary_state", "gates"}, "circuit document")
    arch = StarArchitecture(int(d["n_register"]), int(d["auxiliary_state"]))
    gates: list = []
    for i, gd in enumerate(d["gates"]):
        if not isinstance(gd, dict):
            raise ValueError(f"gate {i} must be an object")
        if "qubit" in gd:
            _require_keys(gd, {"qubit", "theta", "phi", "dphi"}, f"rotation gate {i}")
            gates.append(RotationGate(
                int(gd["qubit"]),
                RotationTarget(float(gd["theta"]), float(gd["phi"]), float(gd["dphi"])),
            ))
        elif "k" in gd:
            _require_keys(gd, {"k", "l", "theta"}, f"entangling gate {i}")
            gates.append(EntanglingGate((int(gd["k"]), int(gd["l"])), float(gd["theta"])))
        else:
            raise ValueError(f"gate {i}: expected either a 'qubit' or a 'k'/'l' entry")
    return Circuit(tuple(gates)), arch


def unwrap_document(d):
    """Accept either a bare schedule/circuit document or one embedded under a
    ``"schedule"`` key (as the synthesis commands emit)."""
    if isinstance(d, dict) and "schedule" in d and isinstance(d["schedule"], dict):
        return d["schedule"]
    return d


def document_kind(d) -> str:
    """Classify a parsed document as ``"schedule"`` or ``"circuit"``."""
    if isinstance(d, dict):
        if "segments" in d:
            return "schedule"
        if "gates" in d:
            return "circuit"
    raise ValueError("document is neither a schedule (segments) nor a circuit (gates)")

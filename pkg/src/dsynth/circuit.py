"""Grid-coordinate circuit representation over the {CNOT, RZ} gate set.

Gates live on an n-row occupancy grid.  An RZ occupies the single cell
(qubit, column); a CNOT occupies only its two endpoint cells, so unrelated
gates may sit in the same column between a CNOT's control and target.
Columns execute left to right; gates sharing a column act on disjoint
qubits and therefore commute trivially.  Qubit indices are 1-based
throughout the core; only the OpenQASM exporter maps to 0-based wires.

Angle convention: RZ(q, beta) multiplies the basis state |k_q> by
exp(i * beta * (-1)**k_q / 2), i.e. diag(e^{i beta/2}, e^{-i beta/2}).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from pathlib import Path


class CollisionError(RuntimeError):
    """Two gates claimed the same grid cell: an internal builder bug."""


@dataclass(frozen=True)
class RZ:
    q: int
    beta: float
    col: int = 0  # 0 = not yet placed

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.q,)


@dataclass(frozen=True)
class CNOT:
    c: int
    t: int
    col: int = 0

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.c, self.t)


Gate = RZ | CNOT


def _order_key(gate: Gate) -> tuple[int, int]:
    return (gate.col, min(gate.qubits))


@dataclass(frozen=True, eq=False)
class GridCircuit:
    """Immutable circuit on an n-row grid; gates kept in execution order."""

    n: int
    gates: tuple[Gate, ...]
    width: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"circuit needs at least one qubit, got n={self.n}")
        gates = tuple(sorted(self.gates, key=_order_key))
        max_col = 0
        cells: dict[tuple[int, int], Gate] = {}
        for g in gates:
            if isinstance(g, CNOT) and g.c == g.t:
                raise ValueError(f"CNOT control equals target: {g}")
            for q in g.qubits:
                if not 1 <= q <= self.n:
                    raise ValueError(f"qubit {q} out of range [1, {self.n}] in {g}")
                cell = (q, g.col)
                if cell in cells:
                    raise CollisionError(f"cell {cell} claimed by both {cells[cell]} and {g}")
                cells[cell] = g
            if g.col < 1:
                raise ValueError(f"gate not placed on the grid (col < 1): {g}")
            max_col = max(max_col, g.col)
        width = self.width if self.width else max_col
        if width < max_col:
            raise ValueError(f"declared width {width} smaller than last column {max_col}")
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "width", width)

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class GateCounts:
    rz: int
    cnot: int

    @property
    def total(self) -> int:
        return self.rz + self.cnot


def counts(circuit: GridCircuit) -> GateCounts:
    """Tally RZ and CNOT gates."""
    n_rz = sum(1 for g in circuit.gates if isinstance(g, RZ))
    return GateCounts(n_rz, len(circuit.gates) - n_rz)


def _asap_columns(n: int, gates) -> list[int]:
    """Earliest legal column per gate, preserving per-qubit order."""
    free = [1] * (n + 1)
    cols = []
    for g in gates:
        col = max(free[q] for q in g.qubits)
        for q in g.qubits:
            free[q] = col + 1
        cols.append(col)
    return cols


def depth(circuit: GridCircuit) -> int:
    """Number of layers after ASAP compaction.

    Equals the longest chain in the gate DAG where two gates conflict iff
    they share a qubit; for an already-compact grid it is the count of
    non-empty columns.
    """
    cols = _asap_columns(circuit.n, circuit.gates)
    return max(cols, default=0)


def from_sequence(n: int, gates, width: int = 0) -> GridCircuit:
    """Place an ordered gate sequence on the grid, each gate as early as
    all of its qubits allow.  Input columns, if any, are discarded."""
    cols = _asap_columns(n, gates)
    placed = tuple(replace(g, col=col) for g, col in zip(gates, cols))
    return GridCircuit(n, placed, width)


def compact(circuit: GridCircuit) -> GridCircuit:
    """ASAP-reschedule every gate; per-qubit gate order is preserved, so
    the implemented map is unchanged.  Idempotent; width becomes depth."""
    return from_sequence(circuit.n, circuit.gates)


# ---------------------------------------------------------------------------
# Circuit JSON
# ---------------------------------------------------------------------------

def circuit_to_dict(circuit: GridCircuit) -> dict:
    gates = []
    for g in circuit.gates:
        if isinstance(g, RZ):
            gates.append({"kind": "rz", "q": g.q, "col": g.col, "beta": float(g.beta)})
        else:
            gates.append({"kind": "cnot", "c": g.c, "t": g.t, "col": g.col})
    return {"n": circuit.n, "width": circuit.width, "gates": gates}


def circuit_from_dict(doc: dict) -> GridCircuit:
    try:
        n = int(doc["n"])
        width = int(doc.get("width", 0))
        gates: list[Gate] = []
        for item in doc["gates"]:
            kind = item["kind"]
            if kind == "rz":
                gates.append(RZ(int(item["q"]), float(item["beta"]), int(item["col"])))
            elif kind == "cnot":
                gates.append(CNOT(int(item["c"]), int(item["t"]), int(item["col"])))
            else:
                raise ValueError(f"unknown gate kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed circuit document: {exc}") from exc
    return GridCircuit(n, tuple(gates), width)


def write_circuit_json(circuit: GridCircuit, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(circuit_to_dict(circuit), fh)
        fh.write("\n")


def read_circuit_json(path: str | Path) -> GridCircuit:
    with open(path, "r", encoding="utf-8") as fh:
        return circuit_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# OpenQASM 2.0
#
# qelib1's rz(lambda) applies diag(1, e^{i lambda}), which matches this
# package's RZ(beta) up to the global factor e^{i beta/2} when
# lambda = -beta; the exporter therefore emits -beta and says so in a
# header comment.  Column markers are emitted as comments so a re-import
# restores the exact grid placement.
# ---------------------------------------------------------------------------

_QASM_HEADER = (
    "OPENQASM 2.0;\n"
    'include "qelib1.inc";\n'
    "// rz(lambda) = diag(1, exp(i*lambda)); each rz line realizes this\n"
    "// circuit's RZ(beta) = diag(exp(i*beta/2), exp(-i*beta/2)) up to a\n"
    "// global phase, so the emitted angle is -beta.\n"
)

_QASM_RE = {
    "qreg": re.compile(r"^qreg\s+q\[(\d+)\]\s*;$"),
    "col": re.compile(r"^// column (\d+)$"),
    "rz": re.compile(r"^rz\(([-+0-9.eE]+)\)\s+q\[(\d+)\]\s*;$"),
    "cx": re.compile(r"^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$"),
}


def circuit_to_qasm(circuit: GridCircuit) -> str:
    lines = [_QASM_HEADER + f"qreg q[{circuit.n}];"]
    current_col = None
    for g in circuit.gates:
        if g.col != current_col:
            current_col = g.col
            lines.append(f"// column {current_col}")
        if isinstance(g, RZ):
            lines.append(f"rz({-g.beta!r}) q[{g.q - 1}];")
        else:
            lines.append(f"cx q[{g.c - 1}],q[{g.t - 1}];")
    return "\n".join(lines) + "\n"


def circuit_from_qasm(text: str) -> GridCircuit:
    n = None
    col = 0
    gates: list[Gate] = []
    saw_marker = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = _QASM_RE["col"].match(line)
        if m:
            col = int(m.group(1))
            saw_marker = True
            continue
        if line.startswith("//"):
            continue
        m = _QASM_RE["qreg"].match(line)
        if m:
            n = int(m.group(1))
            continue
        m = _QASM_RE["rz"].match(line)
        if m:
            gates.append(RZ(int(m.group(2)) + 1, -float(m.group(1)), col))
            continue
        m = _QASM_RE["cx"].match(line)
        if m:
            gates.append(CNOT(int(m.group(1)) + 1, int(m.group(2)) + 1, col))
            continue
        raise ValueError(f"unsupported QASM line: {raw!r}")
    if n is None:
        raise ValueError("QASM input lacks a qreg declaration")
    if saw_marker:
        return GridCircuit(n, tuple(gates))
    return from_sequence(n, gates)


def write_circuit_qasm(circuit: GridCircuit, path: str | Path) -> None:
    Path(path).write_text(circuit_to_qasm(circuit), encoding="utf-8")


def read_circuit_qasm(path: str | Path) -> GridCircuit:
    return circuit_from_qasm(Path(path).read_text(encoding="utf-8"))


def read_circuit(path: str | Path) -> GridCircuit:
    """Load a circuit file, dispatching on suffix (.qasm or JSON)."""
    path = Path(path)
    if path.suffix == ".qasm":
        return read_circuit_qasm(path)
    return read_circuit_json(path)

"""Circuit builders mapping rotation spectra to {CNOT, RZ} circuits.

Two constructions of the same diagonal:

  build_sequential  -- gate groups laid out one after another; gate count
                       2**(n+1) - 3, which is asymptotically optimal.
  build_interleaved -- the groups embedded into a single n x 2**n vacancy
                       grid so every column is used; depth exactly 2**n,
                       same gate count.

Group p (1 <= p <= n) collects the rotations whose index has its last set
bit at position p.  Its 2**(p-1) RZ angles are indexed by the reflected
Gray code of width p-1 (suffixed with 1 and padding zeros) and its CNOTs
all target p with controls from the ruler control sequence, so consecutive
rotations differ by exactly one CNOT.  Both builders drop the index-0
coefficient: it contributes only a global phase.
"""

from __future__ import annotations

from .circuit import CNOT, RZ, Gate, GridCircuit, from_sequence
from .walsh import (
    RotationSpectrum,
    control_sequence,
    fold_angle,
    gray_sequence,
)


def _group_index(gray_code: int, pm: int, n: int) -> int:
    """Rotation index for Gray code g in group pm: the bits of g, then a
    1 at position pm, then zeros."""
    return (gray_code << (n - pm + 1)) | (1 << (n - pm))


def parity_phase_module(n: int, j: int, beta: float) -> list[Gate]:
    """Pre-cancellation module phasing the parity of j's set bits.

    A CNOT ladder folds the parity onto the last set bit p_m, one RZ
    applies the phase, and the mirrored ladder restores the state:
    2*(m-1) + 1 gates for Hamming weight m.  Kept as the reference shape
    that the grouped builders are checked against.
    """
    if not 0 < j < (1 << n):
        raise ValueError(f"index must lie in [1, 2**{n} - 1], got {j}")
    ones = [r for r in range(1, n + 1) if (j >> (n - r)) & 1]
    pm = ones[-1]
    ladder = [CNOT(c, pm) for c in ones[:-1]]
    return ladder + [RZ(pm, fold_angle(beta))] + ladder[::-1]


def balanced_run(pm: int, angles) -> list[Gate]:
    """Alternating CNOT/RZ run on target pm: CNOT, RZ, CNOT, ..., RZ, CNOT.

    Controls follow the ruler control sequence, so each distinct control
    appears an even number of times and the whole run commutes with any
    CNOT(pm, t) acting on a fresh target t.  Expects 2**(pm-1) - 1 angles.
    """
    controls = control_sequence(pm).controls
    angles = list(angles)
    if len(angles) != len(controls) - 1:
        raise ValueError(f"group {pm} needs {len(controls) - 1} angles, got {len(angles)}")
    gates: list[Gate] = [CNOT(controls[0], pm)]
    for ctrl, beta in zip(controls[1:], angles):
        gates.append(RZ(pm, fold_angle(beta)))
        gates.append(CNOT(ctrl, pm))
    return gates


def build_sequential(spectrum: RotationSpectrum) -> GridCircuit:
    """Lay the n gate groups end to end; ASAP placement on the grid.

    Gate count is (2**n - 1) RZ + (2**n - 2) CNOT = 2**(n+1) - 3.
    """
    n = spectrum.n
    beta = spectrum.beta
    gates: list[Gate] = [RZ(1, fold_angle(float(beta[1 << (n - 1)])))]
    for pm in range(2, n + 1):
        codes = gray_sequence(pm - 1).codes
        angle_of = lambda g: float(beta[_group_index(g, pm, n)])
        gates.append(RZ(pm, fold_angle(angle_of(codes[0]))))
        gates.extend(balanced_run(pm, [angle_of(g) for g in codes[1:]]))
    return from_sequence(n, gates)


def build_interleaved(spectrum: RotationSpectrum) -> GridCircuit:
    """Embed all groups into one n x 2**n grid of vacancies.

    Layout: the single-rotation head of every group in column 1; group p
    (2 <= p <= n-1) as one CNOT at column 2**p + 1 followed by RZ/CNOT
    pairs at columns 2**p + 2i - 2 / 2**p + 2i - 1; the last group's RZs
    at the odd columns 2i - 1 and CNOTs at the even columns 2i.  The
    placement formulas never hit an occupied cell; the grid constructor
    re-checks that and raises CollisionError on any builder bug.
    """
    n = spectrum.n
    beta = spectrum.beta
    if n == 1:
        # Degenerate single-qubit diagonal: one rotation, one column.
        return GridCircuit(1, (RZ(1, fold_angle(float(beta[1])), col=1),))

    width = 1 << n
    gates: list[Gate] = []
    for r in range(1, n):
        gates.append(RZ(r, fold_angle(float(beta[1 << (n - r)])), col=1))
    for pm in range(2, n):
        controls = control_sequence(pm).controls
        codes = gray_sequence(pm - 1).codes
        base = 1 << pm
        gates.append(CNOT(controls[0], pm, col=base + 1))
        for i in range(2, (1 << (pm - 1)) + 1):
            j = _group_index(codes[i - 1], pm, n)
            gates.append(RZ(pm, fold_angle(float(beta[j])), col=base + 2 * i - 2))
            gates.append(CNOT(controls[i - 1], pm, col=base + 2 * i - 1))
    controls = control_sequence(n).controls
    codes = gray_sequence(n - 1).codes
    for i in range(1, (1 << (n - 1)) + 1):
        j = (codes[i - 1] << 1) | 1
        gates.append(RZ(n, fold_angle(float(beta[j])), col=2 * i - 1))
        gates.append(CNOT(controls[i - 1], n, col=2 * i))
    circuit = GridCircuit(n, tuple(gates), width=width)
    if len(circuit.gates) != (1 << (n + 1)) - 3:
        raise RuntimeError(f"embedding produced {len(circuit.gates)} gates, expected {(1 << (n + 1)) - 3}")
    return circuit


METHODS = {
    "alg1": build_interleaved,
    "theorem1": build_sequential,
}


def build(spectrum: RotationSpectrum, method: str = "alg1") -> GridCircuit:
    """Dispatch on the public method names used by the CLI and service."""
    try:
        builder = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}, expected one of {sorted(METHODS)}") from None
    return builder(spectrum)


def sequential_gate_count(n: int) -> int:
    """Gate count of the sequential construction, 2**(n+1) - 3; also the
    depth of the fully serial prior-art layout used as the benchmark
    baseline."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return (1 << (n + 1)) - 3

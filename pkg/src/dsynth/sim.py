"""Exhaustive basis-state verification for {CNOT, RZ} circuits.

A circuit over this gate set sends each computational basis state to a
single basis state with a phase, so simulation tracks, for every input
string at once, the permuted output string and the accumulated phase.
No statevector is formed; memory stays O(2**n).  Phases accumulate as raw
radians and are only wrapped at comparison time, which keeps values near
+-pi from producing spurious mismatches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import CNOT, RZ, GridCircuit
from .walsh import PhaseSpec

DEFAULT_QUBIT_CAP = 16
DEFAULT_TOLERANCE = 1e-6


class ResourceLimitError(RuntimeError):
    """Simulation request above the configured qubit cap."""


def wrap_phase(x):
    """Fold radians into (-pi, pi] (endpoint sign is irrelevant under abs)."""
    return (np.asarray(x) + math.pi) % (2.0 * math.pi) - math.pi


@dataclass(eq=False)
class SimReport:
    """Permutation + per-basis-state phase, with verification results."""

    n: int
    permutation: np.ndarray  # permutation[k] = output index for input k
    phase: np.ndarray        # accumulated phase per input, radians, unreduced
    is_diagonal: bool
    global_phase_offset: float = 0.0
    max_phase_error: float = math.inf
    failed_k: str | None = None
    passed: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "diagonal": self.is_diagonal,
            "max_phase_error": self.max_phase_error,
            "global_phase": self.global_phase_offset,
            "failed_k": self.failed_k,
        }


def simulate(circuit: GridCircuit, cap: int = DEFAULT_QUBIT_CAP) -> SimReport:
    """Run every basis state through the circuit in column order.

    CNOT(c, t) flips bit t where bit c is set; RZ(q, beta) adds
    beta/2 * (-1)**bit_q to the phase.  O(gates * 2**n) time.
    """
    n = circuit.n
    if n > cap:
        raise ResourceLimitError(f"n={n} exceeds the simulation cap ({cap})")
    size = 1 << n
    state = np.arange(size, dtype=np.uint32)
    phase = np.zeros(size, dtype=np.float64)
    for g in circuit.gates:
        if isinstance(g, CNOT):
            cbit = (state >> (n - g.c)) & np.uint32(1)
            state ^= (cbit << (n - g.t)).astype(np.uint32)
        else:
            rbit = (state >> (n - g.q)) & np.uint32(1)
            phase += (0.5 * g.beta) * (1.0 - 2.0 * rbit)
    identity = np.arange(size, dtype=np.uint32)
    return SimReport(
        n=n,
        permutation=state,
        phase=phase,
        is_diagonal=bool(np.array_equal(state, identity)),
    )


def verify(
    circuit: GridCircuit,
    target: PhaseSpec,
    tol: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_QUBIT_CAP,
) -> SimReport:
    """Compare a circuit against a target phase vector up to global phase.

    The circuit must act diagonally; the phase of input 0...0 fixes the
    global offset, and the report passes iff every other wrapped residual
    stays within tol.  Adding a constant to every target phase never
    changes the outcome.
    """
    if circuit.n != target.n:
        raise ValueError(f"qubit count mismatch: circuit n={circuit.n}, target n={target.n}")
    report = simulate(circuit, cap=cap)
    if not report.is_diagonal:
        bad = int(np.nonzero(report.permutation != np.arange(1 << circuit.n, dtype=np.uint32))[0][0])
        report.failed_k = format(bad, f"0{circuit.n}b")
        report.passed = False
        return report
    offset = float(report.phase[0] - target.theta[0])
    residual = np.abs(wrap_phase(report.phase - target.theta - offset))
    worst = int(np.argmax(residual))
    report.global_phase_offset = offset
    report.max_phase_error = float(residual[worst])
    report.passed = report.max_phase_error <= tol
    report.failed_k = None if report.passed else format(worst, f"0{circuit.n}b")
    return report

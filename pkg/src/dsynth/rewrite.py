"""Peephole optimization passes for synthesized {CNOT, RZ} circuits.

optimize() applies, in order:
    - remove_zero_rz: drop every RZ whose angle folds to zero mod 4*pi
    - cancel_cnots:   delete identical CNOT pairs separated by commuting
                      segments, and contract the three-CNOT pattern
                      CN(b,c) CN(a,b) CN(a,c) -> CN(a,b) CN(b,c);
                      repeated to a fixed point
    - compact:        ASAP recompaction

Pair cancellation: between two CNOT(c,t) occurrences, a segment commutes
as a whole when each gate either touches neither wire, is an RZ on c,
shares the target t, shares the control c, or targets c itself -- the
last class forming a balanced run (every distinct control an even number
of times) that commutes with CNOT(c,t) as a block.  Rotations on t block
the cancellation, as does any write onto a balanced-run control wire.

Every rewrite strictly lowers the gate count, so the fixed point is
reached after at most (initial CNOT count) rewrites.
"""

from __future__ import annotations

from collections import Counter

from .circuit import CNOT, RZ, Gate, GridCircuit, from_sequence
from .walsh import ZERO_ANGLE_EPS, fold_angle


def remove_zero_rz(circuit: GridCircuit, eps: float = ZERO_ANGLE_EPS) -> GridCircuit:
    """Delete identity rotations (|folded angle| <= eps); no rescheduling."""
    keep = tuple(
        g for g in circuit.gates
        if not (isinstance(g, RZ) and abs(fold_angle(g.beta)) <= eps)
    )
    return GridCircuit(circuit.n, keep, width=circuit.width)


def _commutes_with_cnot(gate: Gate, c: int, t: int) -> bool:
    """Single-gate commutation against CNOT(c, t)."""
    if isinstance(gate, RZ):
        return gate.q != t
    return gate.c != t and gate.t != c


def _find_partner(seq: list[Gate], i: int) -> int | None:
    """Index of a later identical CNOT that the pair rule may cancel with
    seq[i], or None.  Scans the whole in-between segment, classifying each
    gate per the module rules."""
    c, t = seq[i].c, seq[i].t
    run_controls: Counter[int] = Counter()  # controls of CNOTs targeting c
    shared_targets: set[int] = set()        # targets of CNOTs sharing control c
    written: set[int] = set()               # wires written by unrelated CNOTs
    for j in range(i + 1, len(seq)):
        g = seq[j]
        if isinstance(g, RZ):
            if g.q == t:
                return None
            continue
        if g.c == c and g.t == t:
            balanced = all(v % 2 == 0 for v in run_controls.values())
            touched = shared_targets | written
            if balanced and not (set(run_controls) & touched):
                return j
            continue  # failed partner still commutes (shared control+target)
        if g.c == t:
            return None
        if g.t == t:
            continue
        if g.c == c:
            shared_targets.add(g.t)
            continue
        if g.t == c:
            run_controls[g.c] += 1
            continue
        written.add(g.t)
    return None


def _cancel_one_pair(seq: list[Gate]) -> bool:
    for i, g in enumerate(seq):
        if isinstance(g, CNOT):
            j = _find_partner(seq, i)
            if j is not None:
                del seq[j]
                del seq[i]
                return True
    return False


def _contract_one_triple(seq: list[Gate]) -> bool:
    """Apply CN(b,c) CN(a,b) CN(a,c) -> CN(a,b) CN(b,c) once, allowing
    commuting gates between the three; leftmost match wins."""
    for i, g1 in enumerate(seq):
        if not isinstance(g1, CNOT):
            continue
        b, c = g1.c, g1.t
        for j in range(i + 1, len(seq)):
            g2 = seq[j]
            if _commutes_with_cnot(g2, b, c):
                continue
            # first blocker: must be CNOT(a, b) with a fresh control
            if not (isinstance(g2, CNOT) and g2.t == b and g2.c != c):
                break
            a = g2.c
            for k in range(j + 1, len(seq)):
                g3 = seq[k]
                if isinstance(g3, CNOT) and g3.c == a and g3.t == c:
                    del seq[k]
                    seq[j:j + 1] = [CNOT(a, b), CNOT(b, c)]
                    del seq[i]
                    return True
                if not _commutes_with_cnot(g3, a, c):
                    break
            break
    return False


def cancel_cnots(circuit: GridCircuit) -> GridCircuit:
    """Run pair cancellation, then triple contraction, restarting after
    every rewrite until neither fires.  The result keeps the surviving
    gates' relative order (columns are reassigned ASAP)."""
    seq = list(circuit.gates)
    while True:
        if _cancel_one_pair(seq):
            continue
        if _contract_one_triple(seq):
            continue
        break
    return from_sequence(circuit.n, seq)


def optimize(circuit: GridCircuit, eps: float = ZERO_ANGLE_EPS) -> GridCircuit:
    """remove_zero_rz, cancel_cnots, compact -- in that order."""
    trimmed = remove_zero_rz(circuit, eps)
    cancelled = cancel_cnots(trimmed)
    return from_sequence(cancelled.n, cancelled.gates)

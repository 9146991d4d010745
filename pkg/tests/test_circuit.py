import numpy as np
import pytest

from dsynth.circuit import (
    CNOT,
    CollisionError,
    GridCircuit,
    RZ,
    circuit_from_dict,
    circuit_from_qasm,
    circuit_to_dict,
    circuit_to_qasm,
    compact,
    counts,
    depth,
    from_sequence,
)
from dsynth.sim import simulate, wrap_phase


def small_reference_circuit():
    # 5 gates on 4 qubits: two CNOTs at (1,2,1), (2,4,2); rotations at
    # (3,1), (2,3), (4,3).  Depth 3.
    return GridCircuit(4, (
        CNOT(1, 2, col=1),
        RZ(3, 0.3, col=1),
        CNOT(2, 4, col=2),
        RZ(2, 0.5, col=3),
        RZ(4, 0.7, col=3),
    ))


def same_map(a, b):
    ra, rb = simulate(a), simulate(b)
    assert np.array_equal(ra.permutation, rb.permutation)
    rel = (ra.phase - rb.phase) - (ra.phase[0] - rb.phase[0])
    assert np.abs(wrap_phase(rel)).max() < 1e-9


class TestGridCircuit:
    def test_reference_depth_and_counts(self):
        c = small_reference_circuit()
        assert depth(c) == 3
        assert counts(c).total == 5
        assert (counts(c).rz, counts(c).cnot) == (3, 2)

    def test_empty(self):
        c = GridCircuit(3, ())
        assert depth(c) == 0
        assert counts(c).rz == 0 and counts(c).cnot == 0

    def test_cell_collision_raises(self):
        with pytest.raises(CollisionError):
            GridCircuit(2, (RZ(1, 0.1, col=1), CNOT(1, 2, col=1)))

    def test_cnot_spans_only_endpoints(self):
        # a rotation may sit between a CNOT's endpoints in the same column
        c = GridCircuit(4, (CNOT(1, 4, col=1), RZ(2, 0.2, col=1), RZ(3, 0.4, col=1)))
        assert depth(c) == 1

    def test_qubit_out_of_range(self):
        with pytest.raises(ValueError):
            GridCircuit(2, (RZ(3, 0.1, col=1),))

    def test_control_equals_target(self):
        with pytest.raises(ValueError):
            GridCircuit(2, (CNOT(1, 1, col=1),))

    def test_unplaced_gate_rejected(self):
        with pytest.raises(ValueError):
            GridCircuit(2, (RZ(1, 0.1),))

    def test_width_cannot_undershoot(self):
        with pytest.raises(ValueError):
            GridCircuit(2, (RZ(1, 0.1, col=3),), width=2)

    def test_gates_sorted_column_major(self):
        c = small_reference_circuit()
        keys = [(g.col, min(g.qubits)) for g in c.gates]
        assert keys == sorted(keys)


class TestCompact:
    def test_idempotent(self, random_circuit):
        c = compact(random_circuit(n=5, count=40))
        again = compact(c)
        assert again.gates == c.gates and again.width == c.width

    def test_width_equals_depth(self, random_circuit):
        c = compact(random_circuit(n=4, count=30))
        assert c.width == depth(c)

    def test_never_increases_depth(self, random_circuit):
        for _ in range(5):
            c = random_circuit(n=5, count=25)
            spread = GridCircuit(c.n, tuple(
                type(g)(*((g.q, g.beta) if isinstance(g, RZ) else (g.c, g.t)), col=g.col * 3)
                for g in c.gates))
            assert depth(compact(spread)) <= depth(spread)

    def test_simulation_preserved(self, random_circuit):
        for _ in range(10):
            c = random_circuit(n=4, count=30)
            same_map(c, compact(c))

    def test_depth_bounds(self, random_circuit):
        for _ in range(10):
            c = random_circuit(n=5, count=20)
            d = depth(c)
            assert d <= len(c.gates)
            per_qubit = np.zeros(c.n + 1, dtype=int)
            for g in c.gates:
                for q in g.qubits:
                    per_qubit[q] += 1
            assert d >= per_qubit.max()

    def test_per_qubit_order_preserved(self, random_circuit):
        c = random_circuit(n=4, count=30)
        cc = compact(c)
        for q in range(1, 5):
            before = [g for g in c.gates if q in g.qubits]
            after = [g for g in cc.gates if q in g.qubits]
            strip = lambda gs: [(type(g).__name__,) + ((g.q, g.beta) if isinstance(g, RZ) else (g.c, g.t)) for g in gs]
            assert strip(before) == strip(after)


class TestSerialization:
    def test_json_round_trip_exact(self, random_circuit):
        c = random_circuit(n=5, count=35)
        back = circuit_from_dict(circuit_to_dict(c))
        assert back.n == c.n and back.width == c.width
        assert back.gates == c.gates

    def test_json_gates_sorted(self, random_circuit):
        doc = circuit_to_dict(random_circuit(n=4, count=20))
        cols = [g["col"] for g in doc["gates"]]
        assert cols == sorted(cols)

    def test_json_malformed(self):
        with pytest.raises(ValueError):
            circuit_from_dict({"n": 2, "gates": [{"kind": "h", "col": 1}]})
        with pytest.raises(ValueError):
            circuit_from_dict({"n": 2})

    def test_qasm_round_trip_exact(self, random_circuit):
        c = random_circuit(n=4, count=25)
        back = circuit_from_qasm(circuit_to_qasm(c))
        assert back.n == c.n
        assert back.gates == c.gates

    def test_qasm_header_and_angle_sign(self):
        c = GridCircuit(2, (RZ(1, 0.5, col=1), CNOT(1, 2, col=2)))
        text = circuit_to_qasm(c)
        assert text.startswith("OPENQASM 2.0;\ninclude \"qelib1.inc\";")
        assert "qreg q[2];" in text
        assert "rz(-0.5) q[0];" in text  # emitted angle is -beta, 0-based wire
        assert "cx q[0],q[1];" in text

    def test_qasm_without_markers_compacts(self):
        text = (
            "OPENQASM 2.0;\n"
            'include "qelib1.inc";\n'
            "qreg q[2];\n"
            "rz(0.25) q[0];\n"
            "cx q[0],q[1];\n"
        )
        c = circuit_from_qasm(text)
        assert c.gates == (RZ(1, -0.25, col=1), CNOT(1, 2, col=2))

    def test_qasm_bad_line(self):
        with pytest.raises(ValueError):
            circuit_from_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n")


class TestFromSequence:
    def test_asap_placement(self):
        c = from_sequence(3, [RZ(1, 0.1), RZ(2, 0.2), CNOT(1, 2), RZ(3, 0.3)])
        cols = {("rz", g.q) if isinstance(g, RZ) else ("cx",): g.col for g in c.gates}
        assert cols[("rz", 1)] == 1 and cols[("rz", 2)] == 1
        assert cols[("cx",)] == 2
        assert cols[("rz", 3)] == 1
        assert c.width == 2

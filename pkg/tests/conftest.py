import numpy as np
import pytest

from dsynth.circuit import CNOT, RZ, from_sequence


def random_gate_sequence(n, count, rng):
    """Random {CNOT, RZ} gate list with angles in (-2pi, 2pi)."""
    gates = []
    for _ in range(count):
        if n > 1 and rng.random() < 0.5:
            c, t = rng.choice(np.arange(1, n + 1), size=2, replace=False)
            gates.append(CNOT(int(c), int(t)))
        else:
            q = int(rng.integers(1, n + 1))
            gates.append(RZ(q, float(rng.uniform(-2 * np.pi, 2 * np.pi))))
    return gates


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def random_circuit(rng):
    def make(n=4, count=24):
        return from_sequence(n, random_gate_sequence(n, count, rng))
    return make

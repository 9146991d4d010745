"""dsynth: diagonal unitaries compiled into depth-optimized {CNOT, RZ} circuits.

Core pipeline: a phase vector (PhaseSpec) is transformed into a rotation
spectrum, built into a circuit (depth 2**n via build_interleaved, or the
sequential gate-count-optimal layout via build_sequential), optionally
peephole-optimized, and checked against the target by exhaustive
basis-state simulation.  A FastAPI service (dsynth.service) and a thin
CLI (dsynth.cli) wrap the same operations.
"""

__version__ = "0.1.0"

from .circuit import (
    CNOT,
    CollisionError,
    GateCounts,
    GridCircuit,
    RZ,
    compact,
    counts,
    depth,
    from_sequence,
)
from .rewrite import cancel_cnots, optimize, remove_zero_rz
from .sim import ResourceLimitError, SimReport, simulate, verify
from .synth import (
    balanced_run,
    build,
    build_interleaved,
    build_sequential,
    parity_phase_module,
    sequential_gate_count,
)
from .walsh import (
    ControlSequence,
    GraySequence,
    PhaseSpec,
    RotationSpectrum,
    compute_alpha,
    control_sequence,
    gray_sequence,
    invert_alpha,
    read_phases,
    write_phases,
)
from .workloads import (
    BenchConfig,
    BenchRecord,
    bench_csv,
    qaoa_original_circuit,
    qaoa_phase,
    random_phase,
    run_benchmark,
)

__all__ = [
    "__version__",
    "CNOT",
    "RZ",
    "CollisionError",
    "GateCounts",
    "GridCircuit",
    "compact",
    "counts",
    "depth",
    "from_sequence",
    "cancel_cnots",
    "optimize",
    "remove_zero_rz",
    "ResourceLimitError",
    "SimReport",
    "simulate",
    "verify",
    "balanced_run",
    "build",
    "build_interleaved",
    "build_sequential",
    "parity_phase_module",
    "sequential_gate_count",
    "ControlSequence",
    "GraySequence",
    "PhaseSpec",
    "RotationSpectrum",
    "compute_alpha",
    "control_sequence",
    "gray_sequence",
    "invert_alpha",
    "read_phases",
    "write_phases",
    "BenchConfig",
    "BenchRecord",
    "bench_csv",
    "qaoa_original_circuit",
    "qaoa_phase",
    "random_phase",
    "run_benchmark",
]

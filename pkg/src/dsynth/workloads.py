"""Workload generators and the benchmark harness.

Two input families: dense random diagonals (phases i.i.d. uniform on
(0, 2*pi)) and the diagonal block of the complete-graph QAOA ansatz,
whose phases are theta_k = gamma * sum_{c<t} (-1)^(k_c xor k_t).  The
harness builds circuits per (n, method, trial) cell, measures depth,
gate counts and wall time, optionally verifies against the target, and
emits a deterministic CSV (identical across runs except for the timing
column when config and seed match).
"""

from __future__ import annotations

import io
import csv
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rewrite, sim, synth
from .circuit import CNOT, RZ, Gate, GridCircuit, counts, depth, from_sequence
from .walsh import PhaseSpec, compute_alpha

BENCH_METHODS = (
    "alg1",
    "theorem1",
    "baseline-closed-form",
    "qaoa-original",
    "qaoa-resynth",
)

CSV_FIELDS = ("n", "method", "trial", "depth", "rz", "cnot", "synth_seconds", "verified", "seed")


def random_phase(n: int, seed: int) -> PhaseSpec:
    """2**n phases drawn i.i.d. uniform on the open interval (0, 2*pi).

    Uses numpy's default_rng (PCG64), so a fixed seed reproduces the same
    vector on every platform.  The endpoint 0.0 has measure zero but is
    still redrawn if it ever appears, keeping the interval open.
    """
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * math.pi, 1 << n)
    while True:
        zeros = theta == 0.0
        if not zeros.any():
            break
        theta[zeros] = rng.uniform(0.0, 2.0 * math.pi, int(zeros.sum()))
    return PhaseSpec(n, theta)


def qaoa_phase(n: int, gamma: float) -> PhaseSpec:
    """Phases of the complete-graph QAOA diagonal, by direct pair summation."""
    if n < 2:
        raise ValueError(f"complete-graph diagonal needs n >= 2, got {n}")
    size = 1 << n
    ks = np.arange(size, dtype=np.uint32)
    bits = [(ks >> (n - r)) & 1 for r in range(1, n + 1)]
    acc = np.zeros(size, dtype=np.float64)
    for c in range(n - 1):
        for t in range(c + 1, n):
            acc += 1.0 - 2.0 * (bits[c] ^ bits[t])
    return PhaseSpec(n, gamma * acc)


def qaoa_pair_order(n: int) -> list[tuple[int, int]]:
    """Edge order of the ansatz: control 1 sweeps targets upward, control 2
    downward, and so on boustrophedon, ending at (n-1, n).  Consecutive
    blocks always share a qubit, so the layout is fully serial."""
    pairs: list[tuple[int, int]] = []
    for c in range(1, n):
        span = range(c + 1, n + 1)
        pairs.extend((c, t) for t in (span if c % 2 == 1 else reversed(span)))
    return pairs


def qaoa_original_circuit(n: int, gamma: float) -> GridCircuit:
    """The unoptimized ansatz block: CNOT / RZ(2*gamma) / CNOT per edge.

    (n**2 - n) CNOTs, (n**2 - n)/2 rotations, compacted depth
    3*(n**2 - n)/2.
    """
    if n < 2:
        raise ValueError(f"complete-graph ansatz needs n >= 2, got {n}")
    gates: list[Gate] = []
    for c, t in qaoa_pair_order(n):
        gates += [CNOT(c, t), RZ(t, 2.0 * gamma), CNOT(c, t)]
    return from_sequence(n, gates)


@dataclass(frozen=True)
class BenchConfig:
    min_n: int = 2
    max_n: int = 8
    trials: int = 20
    seed: int = 1234
    methods: tuple[str, ...] = ("alg1", "theorem1", "baseline-closed-form")
    verify_cap: int = 12

    def __post_init__(self) -> None:
        if self.min_n < 1 or self.max_n < self.min_n:
            raise ValueError(f"bad n range [{self.min_n}, {self.max_n}]")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        unknown = set(self.methods) - set(BENCH_METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}; known: {BENCH_METHODS}")


@dataclass(eq=False)
class BenchRecord:
    n: int
    method: str
    trial: int
    depth: int
    rz: int
    cnot: int
    synth_seconds: float
    verified: bool | None  # None = verification skipped (above cap / closed form)
    seed: int


def _cell_seed(base: int, n: int, trial: int) -> int:
    # Same theta for every method in a cell, distinct across (n, trial).
    return base * 1_000_003 + n * 1_009 + trial


def _run_cell(config: BenchConfig, n: int, method: str, trial: int) -> BenchRecord:
    seed = _cell_seed(config.seed, n, trial)
    do_verify = n <= config.verify_cap

    if method == "baseline-closed-form":
        # Serial prior-art layout: depth equals its gate count.
        return BenchRecord(
            n, method, trial,
            depth=synth.sequential_gate_count(n),
            rz=(1 << n) - 1, cnot=(1 << n) - 2,
            synth_seconds=0.0, verified=None, seed=seed,
        )

    if method in ("qaoa-original", "qaoa-resynth"):
        if n < 2:
            raise ValueError("QAOA methods need n >= 2")
        gamma = float(np.random.default_rng(seed).uniform(0.0, math.pi))
        target = qaoa_phase(n, gamma)
        start = time.perf_counter()
        if method == "qaoa-original":
            circuit = qaoa_original_circuit(n, gamma)
        else:
            circuit = rewrite.optimize(synth.build_interleaved(compute_alpha(target)))
        elapsed = time.perf_counter() - start
    else:
        target = random_phase(n, seed)
        start = time.perf_counter()
        circuit = synth.build(compute_alpha(target), method)
        elapsed = time.perf_counter() - start

    verified = None
    if do_verify:
        verified = bool(sim.verify(circuit, target).passed)
    tally = counts(circuit)
    return BenchRecord(
        n, method, trial,
        depth=depth(circuit), rz=tally.rz, cnot=tally.cnot,
        synth_seconds=elapsed, verified=verified, seed=seed,
    )


def _worker_count() -> int:
    cap = os.environ.get("DSYNTH_THREADS")
    hardware = os.cpu_count() or 1
    if cap is None:
        return hardware
    try:
        return max(1, min(hardware, int(cap)))
    except ValueError:
        return hardware


def run_benchmark(config: BenchConfig) -> list[BenchRecord]:
    """One record per (n, method, trial), in deterministic order.

    Cells are independent and run on a small thread pool (capped by the
    DSYNTH_THREADS environment variable); records are sorted afterwards,
    so aggregation never depends on completion order.  A cell that raises
    is recorded with depth/counts -1 and verified False rather than
    aborting the run.
    """
    cells = [
        (n, method, trial)
        for n in range(config.min_n, config.max_n + 1)
        for method in config.methods
        for trial in range(config.trials)
    ]

    def safe(cell):
        n, method, trial = cell
        try:
            return _run_cell(config, n, method, trial)
        except Exception:
            return BenchRecord(n, method, trial, -1, -1, -1, 0.0,
                               verified=False, seed=_cell_seed(config.seed, n, trial))

    workers = _worker_count()
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(safe, cells))
    else:
        records = [safe(cell) for cell in cells]
    records.sort(key=lambda r: (r.n, r.method, r.trial))
    return records


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def bench_csv(records: list[BenchRecord], config: BenchConfig) -> str:
    """Detail rows per trial plus one mean row per (n, method)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in records:
        writer.writerow([_fmt(v) for v in
                         (r.n, r.method, r.trial, r.depth, r.rz, r.cnot,
                          r.synth_seconds, r.verified, r.seed)])
    groups: dict[tuple[int, str], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.n, r.method), []).append(r)
    for (n, method), rs in sorted(groups.items()):
        checked = [r.verified for r in rs if r.verified is not None]
        verified = None if not checked else all(checked)
        writer.writerow([_fmt(v) for v in (
            n, method, "mean",
            float(np.mean([r.depth for r in rs])),
            float(np.mean([r.rz for r in rs])),
            float(np.mean([r.cnot for r in rs])),
            float(np.mean([r.synth_seconds for r in rs])),
            verified, config.seed,
        )])
    return out.getvalue()

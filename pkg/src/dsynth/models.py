"""Pydantic request/response models for the HTTP service and thin CLI.

CircuitModel serialized with exclude_none is byte-compatible with the
circuit JSON file format, and PhaseModel with the phase JSON format, so
files and API payloads share one schema.
"""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from . import circuit as cir
from . import walsh
from .workloads import BENCH_METHODS, BenchConfig, BenchRecord


class PhaseModel(BaseModel):
    n: int = Field(ge=1)
    theta: list[float]

    @classmethod
    def from_spec(cls, spec: walsh.PhaseSpec) -> "PhaseModel":
        return cls(n=spec.n, theta=[float(x) for x in spec.theta])

    def to_spec(self) -> walsh.PhaseSpec:
        return walsh.PhaseSpec(self.n, np.asarray(self.theta, dtype=np.float64))


class GateModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["rz", "cnot"]
    col: int
    q: Optional[int] = None
    beta: Optional[float] = None
    c: Optional[int] = None
    t: Optional[int] = None


class CircuitModel(BaseModel):
    n: int = Field(ge=1)
    width: int = Field(ge=0)
    gates: list[GateModel]

    @classmethod
    def from_circuit(cls, circuit: cir.GridCircuit) -> "CircuitModel":
        return cls.model_validate(cir.circuit_to_dict(circuit))

    def to_circuit(self) -> cir.GridCircuit:
        return cir.circuit_from_dict(self.model_dump(exclude_none=True))


class SynthRequest(BaseModel):
    phases: PhaseModel
    method: Literal["alg1", "theorem1"] = "alg1"
    optimize: bool = False


class SynthResponse(BaseModel):
    circuit: CircuitModel
    n: int
    depth: int
    rz: int
    cnot: int

    @property
    def summary(self) -> str:
        return f"n={self.n} depth={self.depth} rz={self.rz} cnot={self.cnot}"


class VerifyRequest(BaseModel):
    circuit: CircuitModel
    phases: PhaseModel
    tol: float = 1e-6


class VerifyResponse(BaseModel):
    diagonal: bool
    max_phase_error: float
    global_phase: float
    failed_k: Optional[str]
    passed: bool


class RandomPhaseRequest(BaseModel):
    n: int = Field(ge=1)
    seed: int = 0


class QaoaPhaseRequest(BaseModel):
    n: int = Field(ge=2)
    gamma: float


class BenchRequest(BaseModel):
    min_n: int = Field(default=2, ge=1)
    max_n: int = Field(default=8, ge=1)
    trials: int = Field(default=20, ge=1)
    seed: int = 1234
    methods: list[str] = Field(
        default_factory=lambda: ["alg1", "theorem1", "baseline-closed-form"]
    )
    verify_cap: int = 12

    @field_validator("methods")
    @classmethod
    def _known_methods(cls, methods: list[str]) -> list[str]:
        unknown = set(methods) - set(BENCH_METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}; known: {BENCH_METHODS}")
        return methods

    def to_config(self) -> BenchConfig:
        return BenchConfig(
            min_n=self.min_n, max_n=self.max_n, trials=self.trials,
            seed=self.seed, methods=tuple(self.methods), verify_cap=self.verify_cap,
        )


class BenchRecordModel(BaseModel):
    n: int
    method: str
    trial: int
    depth: int
    rz: int
    cnot: int
    synth_seconds: float
    verified: Optional[bool]
    seed: int

    @classmethod
    def from_record(cls, r: BenchRecord) -> "BenchRecordModel":
        return cls(n=r.n, method=r.method, trial=r.trial, depth=r.depth, rz=r.rz,
                   cnot=r.cnot, synth_seconds=r.synth_seconds, verified=r.verified,
                   seed=r.seed)


class BenchResponse(BaseModel):
    records: list[BenchRecordModel]
    csv: str

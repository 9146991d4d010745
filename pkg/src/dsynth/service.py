"""HTTP facade over the synthesis toolkit.

Run with:  uvicorn dsynth.service:app
The CLI calls these handler functions directly when no --server is given,
so the service layer is the single place request semantics live.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, rewrite, sim, synth, workloads
from .circuit import counts, depth
from .models import (
    BenchRecordModel,
    BenchRequest,
    BenchResponse,
    CircuitModel,
    PhaseModel,
    QaoaPhaseRequest,
    RandomPhaseRequest,
    SynthRequest,
    SynthResponse,
    VerifyRequest,
    VerifyResponse,
)
from .walsh import compute_alpha

app = FastAPI(
    title="dsynth",
    version=__version__,
    description="Synthesis of diagonal unitaries into depth-optimized {CNOT, RZ} circuits.",
)


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/synthesize", response_model=SynthResponse, response_model_exclude_none=True)
def synthesize(req: SynthRequest) -> SynthResponse:
    try:
        spec = req.phases.to_spec()
        circuit = synth.build(compute_alpha(spec), req.method)
        if req.optimize:
            circuit = rewrite.optimize(circuit)
    except ValueError as exc:
        raise _bad_request(exc) from exc
    tally = counts(circuit)
    return SynthResponse(
        circuit=CircuitModel.from_circuit(circuit),
        n=circuit.n, depth=depth(circuit), rz=tally.rz, cnot=tally.cnot,
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    try:
        report = sim.verify(req.circuit.to_circuit(), req.phases.to_spec(), tol=req.tol)
    except (ValueError, sim.ResourceLimitError) as exc:
        raise _bad_request(exc) from exc
    return VerifyResponse(
        diagonal=report.is_diagonal,
        max_phase_error=report.max_phase_error,
        global_phase=report.global_phase_offset,
        failed_k=report.failed_k,
        passed=bool(report.passed),
    )


@app.post("/phases/random", response_model=PhaseModel)
def phases_random(req: RandomPhaseRequest) -> PhaseModel:
    try:
        return PhaseModel.from_spec(workloads.random_phase(req.n, req.seed))
    except ValueError as exc:
        raise _bad_request(exc) from exc


@app.post("/phases/qaoa", response_model=PhaseModel)
def phases_qaoa(req: QaoaPhaseRequest) -> PhaseModel:
    try:
        return PhaseModel.from_spec(workloads.qaoa_phase(req.n, req.gamma))
    except ValueError as exc:
        raise _bad_request(exc) from exc


@app.post("/circuits/qaoa-original", response_model=SynthResponse, response_model_exclude_none=True)
def qaoa_original(req: QaoaPhaseRequest) -> SynthResponse:
    try:
        circuit = workloads.qaoa_original_circuit(req.n, req.gamma)
    except ValueError as exc:
        raise _bad_request(exc) from exc
    tally = counts(circuit)
    return SynthResponse(
        circuit=CircuitModel.from_circuit(circuit),
        n=circuit.n, depth=depth(circuit), rz=tally.rz, cnot=tally.cnot,
    )


@app.post("/benchmark", response_model=BenchResponse)
def benchmark(req: BenchRequest) -> BenchResponse:
    try:
        config = req.to_config()
    except ValueError as exc:
        raise _bad_request(exc) from exc
    records = workloads.run_benchmark(config)
    return BenchResponse(
        records=[BenchRecordModel.from_record(r) for r in records],
        csv=workloads.bench_csv(records, config),
    )

"""Command-line client for the synthesis service.

Thin by design: every subcommand builds the same pydantic request the
HTTP service accepts, then either calls the service handler in-process
(default) or POSTs it to a running server (--server URL).  Consumers are
scripts and CI; there is no interactive mode.

Exit codes: 0 success (verify: pass), 1 verification failure,
2 malformed input, 3 write failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from fastapi import HTTPException

from . import __version__, circuit as cir, service, walsh, workloads
from .models import (
    BenchRequest,
    CircuitModel,
    PhaseModel,
    SynthRequest,
    SynthResponse,
    VerifyRequest,
    VerifyResponse,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_WRITE_FAILED = 3


class _ClientError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    if resp.status_code != 200:
        raise _ClientError(f"server returned {resp.status_code}: {resp.text}", EXIT_BAD_INPUT)
    return resp.json()


def _load_phases(path: str) -> PhaseModel:
    try:
        return PhaseModel.from_spec(walsh.read_phases(path))
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise _ClientError(f"cannot read phase file {path}: {exc}", EXIT_BAD_INPUT) from exc


def _load_circuit(path: str) -> cir.GridCircuit:
    try:
        return cir.read_circuit(path)
    except (OSError, ValueError) as exc:
        raise _ClientError(f"cannot read circuit file {path}: {exc}", EXIT_BAD_INPUT) from exc


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _ClientError(f"cannot write {path}: {exc}", EXIT_WRITE_FAILED) from exc


def _cmd_synth(args) -> int:
    request = SynthRequest(phases=_load_phases(args.input), method=args.method,
                           optimize=args.optimize)
    if args.server:
        response = SynthResponse.model_validate(
            _post(args.server, "/synthesize", request.model_dump()))
    else:
        try:
            response = service.synthesize(request)
        except HTTPException as exc:
            raise _ClientError(str(exc.detail), EXIT_BAD_INPUT) from exc
    if args.out:
        built = response.circuit.to_circuit()
        text = (cir.circuit_to_qasm(built) if args.format == "qasm"
                else json.dumps(cir.circuit_to_dict(built)) + "\n")
        _write_text(args.out, text)
    print(response.summary)
    return EXIT_OK


def _cmd_verify(args) -> int:
    circuit = _load_circuit(args.circuit)
    phases = _load_phases(args.phases)
    if circuit.n != phases.n:
        raise _ClientError(
            f"qubit count mismatch: circuit n={circuit.n}, phases n={phases.n}",
            EXIT_BAD_INPUT)
    request = VerifyRequest(circuit=CircuitModel.from_circuit(circuit),
                            phases=phases, tol=args.tol)
    if args.server:
        response = VerifyResponse.model_validate(_post(args.server, "/verify", request.model_dump()))
    else:
        try:
            response = service.verify(request)
        except HTTPException as exc:
            raise _ClientError(str(exc.detail), EXIT_BAD_INPUT) from exc
    print(json.dumps({
        "diagonal": response.diagonal,
        "max_phase_error": response.max_phase_error,
        "global_phase": response.global_phase,
        "failed_k": response.failed_k,
    }))
    return EXIT_OK if response.passed else EXIT_VERIFY_FAILED


def _write_phase_output(spec: walsh.PhaseSpec, out: str | None) -> None:
    if out:
        try:
            walsh.write_phases(spec, out)
        except OSError as exc:
            raise _ClientError(f"cannot write {out}: {exc}", EXIT_WRITE_FAILED) from exc
    else:
        print(json.dumps(walsh.phases_to_dict(spec)))


def _cmd_rand(args) -> int:
    try:
        spec = workloads.random_phase(args.n, args.seed)
    except ValueError as exc:
        raise _ClientError(str(exc), EXIT_BAD_INPUT) from exc
    _write_phase_output(spec, args.out)
    if args.out:
        print(f"n={args.n} seed={args.seed} wrote {args.out}")
    return EXIT_OK


def _cmd_qaoa(args) -> int:
    try:
        spec = workloads.qaoa_phase(args.n, args.gamma)
        original = workloads.qaoa_original_circuit(args.n, args.gamma)
    except ValueError as exc:
        raise _ClientError(str(exc), EXIT_BAD_INPUT) from exc
    _write_phase_output(spec, args.out)
    print(f"n={args.n} gamma={args.gamma:.6g} d0={cir.depth(original)}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        request = BenchRequest(min_n=args.min_n, max_n=args.max_n, trials=args.trials,
                               seed=args.seed, methods=args.methods.split(","),
                               verify_cap=args.verify_cap)
        config = request.to_config()
    except ValueError as exc:
        raise _ClientError(str(exc), EXIT_BAD_INPUT) from exc
    records = workloads.run_benchmark(config)
    text = workloads.bench_csv(records, config)
    if args.csv:
        _write_text(args.csv, text)
    # mean rows only on stdout; the CSV carries the per-trial detail
    for line in text.splitlines():
        if ",mean," in line or line.startswith("n,"):
            print(line)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsynth",
        description="Compile diagonal unitaries into depth-optimized {CNOT, RZ} circuits.",
    )
    parser.add_argument("--version", action="version", version=f"dsynth {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a circuit from a phase file")
    p.add_argument("input", help="phase file (.json or .phv)")
    p.add_argument("--method", choices=("alg1", "theorem1"), default="alg1")
    p.add_argument("--optimize", action="store_true", help="run the rewrite passes")
    p.add_argument("--out", help="circuit output path")
    p.add_argument("--format", choices=("json", "qasm"), default="json")
    p.add_argument("--server", help="POST to a running service instead of in-process")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("verify", help="check a circuit file against a phase file")
    p.add_argument("circuit", help="circuit file (.json or .qasm)")
    p.add_argument("phases", help="phase file (.json or .phv)")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--server", help="POST to a running service instead of in-process")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rand", help="generate a random phase file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (.json or .phv); default prints JSON")
    p.set_defaults(func=_cmd_rand)

    p = sub.add_parser("qaoa", help="generate complete-graph ansatz phases")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--out", help="output path (.json or .phv); default prints JSON")
    p.set_defaults(func=_cmd_qaoa)

    p = sub.add_parser("bench", help="run the benchmark harness")
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--methods", default="alg1,theorem1,baseline-closed-form",
                   help="comma-separated method list")
    p.add_argument("--verify-cap", type=int, default=12,
                   help="verify circuits only up to this qubit count")
    p.add_argument("--csv", help="write detail+mean rows to this CSV path")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

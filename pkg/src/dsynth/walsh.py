"""Walsh-Hadamard rotation spectra and the code sequences driving synthesis.

A 2**n x 2**n diagonal unitary diag(exp(i*theta_k)) is specified by the
vector of its 2**n phase angles.  The self-inverse transform H^(tensor n)
maps that vector to rotation coefficients alpha (and scaled gate angles
beta = alpha / sqrt(2**(n-2))) indexed by n-bit strings.  The reflected
Gray code and its bit-flip ("ruler") control sequence fix the gate
ordering used by the circuit builders.

Bit convention, global to this package: an index j in [0, 2**n) is read as
the bit string j_1 j_2 ... j_n with j_1 most significant, so bit r of j is
(j >> (n - r)) & 1 for r in [1, n].  The transform kernel
(-1)^(j.k) / sqrt(2**n) with j.k = parity(j AND k) is symmetric in this
reading, so plain integer indexing is safe everywhere.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

# |beta| at or below this counts as an identity rotation: far below the
# float error accumulated at n <= 16, far above anything analytic.
ZERO_ANGLE_EPS = 1e-12

# Column budget for one chunk of the entrywise transform, floats.
_CHUNK_BUDGET = 1 << 25


def bit_of(value: int, r: int, n: int) -> int:
    """Bit r (1-based, most significant first) of an n-bit index."""
    return (value >> (n - r)) & 1


def fold_angle(beta: float) -> float:
    """Fold a rotation angle mod 4*pi into (-2*pi, 2*pi].

    RZ(beta) has operator period 4*pi; the 2*pi half-period only flips a
    global sign, which every comparison in this package quotients out.
    Applied when angles are stamped onto gates, never inside transforms
    (early reduction would break Parseval checks).
    """
    r = math.fmod(beta, FOUR_PI)
    if r > TWO_PI:
        r -= FOUR_PI
    elif r <= -TWO_PI:
        r += FOUR_PI
    return r


@dataclass(frozen=True, eq=False)
class PhaseSpec:
    """Target diagonal: qubit count n and 2**n phase angles in radians."""

    n: int
    theta: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"qubit count must be an integer >= 1, got {self.n!r}")
        theta = np.asarray(self.theta, dtype=np.float64)
        if theta.shape != (1 << self.n,):
            raise ValueError(
                f"phase vector must have 2**{self.n} = {1 << self.n} entries, "
                f"got shape {theta.shape}"
            )
        if not np.all(np.isfinite(theta)):
            raise ValueError("phase vector contains non-finite entries")
        object.__setattr__(self, "theta", theta)

    @property
    def size(self) -> int:
        return 1 << self.n


@dataclass(frozen=True, eq=False)
class RotationSpectrum:
    """Solved rotation coefficients alpha and gate angles beta.

    beta[j] = alpha[j] / sqrt(2**(n-2)) exactly, entry by entry; alpha
    carries the same 2-norm as the phase vector it came from (the
    transform is orthogonal).
    """

    n: int
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        for name in ("alpha", "beta"):
            vec = np.asarray(getattr(self, name), dtype=np.float64)
            if vec.shape != (1 << self.n,):
                raise ValueError(f"{name} must have {1 << self.n} entries")
            object.__setattr__(self, name, vec)

    @classmethod
    def from_alpha(cls, n: int, alpha: np.ndarray) -> "RotationSpectrum":
        alpha = np.asarray(alpha, dtype=np.float64)
        return cls(n, alpha, alpha / math.sqrt(2.0 ** (n - 2)))

    @classmethod
    def from_beta(cls, n: int, beta: np.ndarray) -> "RotationSpectrum":
        beta = np.asarray(beta, dtype=np.float64)
        return cls(n, beta * math.sqrt(2.0 ** (n - 2)), beta)


@dataclass(frozen=True)
class GraySequence:
    """All 2**bits distinct codes in reflected order, starting at 0.

    Consecutive codes (cyclically) differ in exactly one bit.  Codes are
    stored as integers under the package bit convention.
    """

    bits: int
    codes: tuple[int, ...]

    def strings(self) -> list[str]:
        return [format(c, f"0{self.bits}b") for c in self.codes]


@dataclass(frozen=True)
class ControlSequence:
    """CNOT control positions paired with the width-(pm-1) Gray sequence.

    controls[i] is the 1-based position of the single bit flipped between
    consecutive (cyclic) Gray codes; every distinct value occurs an even
    number of times, which is what lets a full run of these CNOTs commute
    past a later CNOT controlled on their shared target.
    """

    pm: int
    controls: tuple[int, ...]


def _butterfly(values: np.ndarray) -> np.ndarray:
    """In-place-style orthonormal Walsh-Hadamard transform, O(n * 2**n)."""
    out = np.array(values, dtype=np.float64, copy=True)
    size = out.shape[0]
    h = 1
    while h < size:
        out = out.reshape(-1, 2 * h)
        even = out[:, :h] + out[:, h:]
        odd = out[:, :h] - out[:, h:]
        out[:, :h] = even
        out[:, h:] = odd
        out = out.reshape(-1)
        h *= 2
    out /= math.sqrt(size)
    return out


def _entrywise(theta: np.ndarray, n: int) -> np.ndarray:
    """Direct double sum alpha_j = sum_k (-1)^(j.k) theta_k / sqrt(2**n).

    Chunked over j so working memory stays O(2**n) regardless of n; terms
    with theta_k == 0 are skipped.  This is the oracle for the butterfly
    path and the low-memory route for large n.
    """
    size = 1 << n
    nz = np.nonzero(theta)[0]
    alpha = np.zeros(size, dtype=np.float64)
    if nz.size == 0:
        return alpha
    idx_dtype = np.uint16 if n <= 16 else np.uint32
    ks = nz.astype(idx_dtype)
    tvals = theta[nz]
    total = float(tvals.sum())
    rows = max(1, min(size, _CHUNK_BUDGET // nz.size))
    and_buf = np.empty((rows, nz.size), dtype=idx_dtype)
    f_buf = np.empty((rows, nz.size), dtype=np.float64)
    for start in range(0, size, rows):
        stop = min(start + rows, size)
        m = stop - start
        js = np.arange(start, stop, dtype=idx_dtype)
        np.bitwise_and(js[:, None], ks[None, :], out=and_buf[:m])
        parity = np.bitwise_count(and_buf[:m])
        parity &= 1
        np.copyto(f_buf[:m], parity)
        # sum of signs * theta = total - 2 * (parity-weighted sum)
        alpha[start:stop] = total - 2.0 * (f_buf[:m] @ tvals)
    alpha /= math.sqrt(size)
    return alpha


def compute_alpha(spec: PhaseSpec, method: str = "fast") -> RotationSpectrum:
    """Solve the rotation spectrum of a phase vector.

    method "fast" runs the O(n * 2**n) butterfly; "naive" evaluates the
    per-entry double sum directly.  The two agree entrywise to 1e-9.
    """
    if method == "fast":
        alpha = _butterfly(spec.theta)
    elif method == "naive":
        alpha = _entrywise(spec.theta, spec.n)
    else:
        raise ValueError(f"unknown method {method!r}, expected 'fast' or 'naive'")
    return RotationSpectrum.from_alpha(spec.n, alpha)


def invert_alpha(spectrum: RotationSpectrum) -> PhaseSpec:
    """Recover the phase vector whose spectrum is the given alpha.

    The transform is its own inverse, so this is one more butterfly pass.
    """
    return PhaseSpec(spectrum.n, _butterfly(spectrum.alpha))


def gray_sequence(m: int) -> GraySequence:
    """Reflected Gray code of width m, built by suffix-append reflection.

    Doubling step: append 0 to every code, then 1 to every code of the
    reversed list.  This exact ordering (not any other Gray code) is what
    the control sequence below is derived from.
    """
    if m < 1:
        raise ValueError(f"Gray code width must be >= 1, got {m}")
    codes = [0, 1]
    for _ in range(m - 1):
        codes = [c << 1 for c in codes] + [(c << 1) | 1 for c in reversed(codes)]
    return GraySequence(m, tuple(codes))


def control_sequence(pm: int) -> ControlSequence:
    """Control positions for the 2**(pm-1) CNOTs of gate group pm.

    Built iteratively: start [1, 1]; for each wider group reassign the
    element at position 2**(p-2) to p-1 and duplicate the list.  Entry i
    equals the bit position flipped between Gray codes i and i+1 (cyclic)
    of width pm-1.
    """
    if pm < 2:
        raise ValueError(f"group index must be >= 2, got {pm}")
    controls = [1, 1]
    for p in range(3, pm + 1):
        controls[(1 << (p - 2)) - 1] = p - 1
        controls = controls + controls
    return ControlSequence(pm, tuple(controls))


# ---------------------------------------------------------------------------
# Phase-vector file formats: JSON {"n":..., "theta":[...]} and the binary
# .phv layout (little-endian uint32 n, then 2**n little-endian float64).
# ---------------------------------------------------------------------------

def read_phases(path: str | Path) -> PhaseSpec:
    path = Path(path)
    if path.suffix == ".phv":
        raw = path.read_bytes()
        if len(raw) < 4:
            raise ValueError(f"{path}: truncated .phv header")
        (n,) = struct.unpack_from("<I", raw, 0)
        if n < 1 or n > 40:
            raise ValueError(f"{path}: implausible qubit count {n}")
        expected = 4 + (1 << n) * 8
        if len(raw) != expected:
            raise ValueError(f"{path}: expected {expected} bytes for n={n}, got {len(raw)}")
        theta = np.frombuffer(raw, dtype="<f8", offset=4).copy()
        return PhaseSpec(int(n), theta)
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "n" not in doc or "theta" not in doc:
        raise ValueError(f"{path}: phase JSON needs keys 'n' and 'theta'")
    return PhaseSpec(int(doc["n"]), np.asarray(doc["theta"], dtype=np.float64))


def write_phases(spec: PhaseSpec, path: str | Path) -> None:
    path = Path(path)
    if path.suffix == ".phv":
        with open(path, "wb") as fh:
            fh.write(struct.pack("<I", spec.n))
            fh.write(spec.theta.astype("<f8").tobytes())
        return
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"n": spec.n, "theta": [float(x) for x in spec.theta]}, fh)
        fh.write("\n")


def phases_to_dict(spec: PhaseSpec) -> dict:
    return {"n": spec.n, "theta": [float(x) for x in spec.theta]}

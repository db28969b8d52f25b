"""Equal-norm Parseval frames and their Gram / projection counterparts.

A frame here is m vectors in C^k, each of squared norm 1/N, whose rank-one
sum is the identity; necessarily m = k N. Vectors are stored as the rows of
an (m, k) complex array. The Gram matrix of such a frame is an m x m
projection with constant diagonal 1/N, and conversely any projection with
constant diagonal 1/N compresses back to a frame on its range; both
directions are implemented below.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import FrameError
from .hermitian import eigh, require_hermitian


@dataclass(frozen=True, eq=False)
class FrameFamily:
    """m = k N vectors of squared norm 1/N forming a Parseval frame for C^k."""

    k: int
    N: int
    vectors: np.ndarray  # (m, k) complex128, row i holds vector i

    def __post_init__(self):
        if self.k < 1:
            raise FrameError(f"dimension k must be positive, got {self.k}")
        if self.N < 2:
            raise FrameError(f"norm parameter N must be at least 2, got {self.N}")
        vs = np.asarray(self.vectors, dtype=np.complex128)
        if vs.ndim != 2 or vs.shape[1] != self.k:
            raise FrameError(f"vector array must have shape (m, {self.k}), got {vs.shape}")
        if not (np.all(np.isfinite(vs.real)) and np.all(np.isfinite(vs.imag))):
            raise FrameError("frame vectors contain NaN or Inf")
        vs = np.ascontiguousarray(vs)
        vs.setflags(write=False)
        object.__setattr__(self, "vectors", vs)

    @property
    def m(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def synthesis(self) -> np.ndarray:
        """The k x m matrix whose columns are the frame vectors."""
        return self.vectors.T

    def rank_one_sum(self, indices=None) -> np.ndarray:
        """sum of v_i (x) v_i over the given 1-based indices (all by default)."""
        if indices is None:
            vs = self.vectors
        else:
            idx = _checked_indices(indices, self.m)
            vs = self.vectors[idx - 1]
        return vs.T @ vs.conj()


@dataclass(frozen=True)
class DiagonalSelector:
    """A sorted subset S of {1, ..., m}, i.e. a diagonal 0/1 projection."""

    m: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = _checked_indices(self.indices, self.m)
        object.__setattr__(self, "indices", tuple(int(i) for i in idx))

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class FrameValidationReport:
    """Deviations of a candidate frame from the exact contracts."""

    k: int
    N: int
    m: int
    count_ok: bool            # m == k N
    norm_deviation: float     # max_i | ||v_i||^2 - 1/N |
    parseval_deviation: float  # || sum v_i (x) v_i - I ||_F
    tol: float

    @property
    def passed(self) -> bool:
        return self.count_ok and self.norm_deviation <= self.tol and self.parseval_deviation <= self.tol

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}: m={self.m} (expected {self.k * self.N}), "
            f"norm deviation {self.norm_deviation:.3e}, "
            f"Parseval deviation {self.parseval_deviation:.3e}, tol {self.tol:.1e}"
        )


def _checked_indices(indices, m: int) -> np.ndarray:
    idx = np.asarray(sorted(int(i) for i in indices), dtype=np.int64)
    if idx.size and (idx[0] < 1 or idx[-1] > m):
        raise FrameError(f"indices must lie in 1..{m}")
    if np.unique(idx).size != idx.size:
        raise FrameError("indices must be distinct")
    return idx


def _check_parameters(k: int, N: int, m_cap: int) -> int:
    if k < 1:
        raise FrameError(f"dimension k must be positive, got {k}")
    if N < 2:
        raise FrameError(f"norm parameter N must be at least 2, got {N}")
    m = k * N
    if m > m_cap:
        raise FrameError(f"m = k*N = {m} exceeds the configured cap {m_cap}")
    return m


def harmonic_frame(k: int, N: int, tols: Tolerances = DEFAULT_TOLS) -> FrameFamily:
    """Frame from the first k rows of the m-point DFT matrix, m = k N.

    Vector i has entries omega^(i d) / sqrt(m) for d = 0..k-1 with
    omega = exp(2 pi i / m). Row-orthogonality of the DFT makes the frame
    exactly Parseval up to roundoff, with every squared norm k/m = 1/N.
    """
    m = _check_parameters(k, N, tols.m_cap)
    i = np.arange(m, dtype=np.int64)[:, None]
    d = np.arange(k, dtype=np.int64)[None, :]
    vectors = np.exp(2j * np.pi * ((i * d) % m) / m) / math.sqrt(m)
    return FrameFamily(k=k, N=N, vectors=vectors)


def modulated_harmonic_frame(k: int, N: int, seed: int, tols: Tolerances = DEFAULT_TOLS) -> FrameFamily:
    """Seeded variant: a random k-subset of DFT rows, random phase per vector.

    Row subsets of the scaled DFT keep the frame Parseval with equal norms,
    and a unit-modulus phase on a vector leaves its rank-one term unchanged.
    Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
    fixed seed always reproduces the same frame.
    """
    m = _check_parameters(k, N, tols.m_cap)
    rng = np.random.default_rng(seed)
    rows = np.sort(rng.choice(m, size=k, replace=False))
    phases = np.exp(2j * np.pi * rng.random(m))
    i = np.arange(m, dtype=np.int64)[:, None]
    vectors = np.exp(2j * np.pi * ((i * rows[None, :]) % m) / m) / math.sqrt(m)
    vectors = vectors * phases[:, None]
    return FrameFamily(k=k, N=N, vectors=vectors)


def validate_frame(F: FrameFamily, tol: float | None = None, tols: Tolerances = DEFAULT_TOLS) -> FrameValidationReport:
    """Measure norm, Parseval, and count deviations; pass iff all within tol."""
    if tol is None:
        tol = tols.frame_tol
    norms2 = np.sum(np.abs(F.vectors) ** 2, axis=1)
    norm_dev = float(np.max(np.abs(norms2 - 1.0 / F.N))) if F.m else 0.0
    gram_sum = F.rank_one_sum()
    parseval_dev = float(np.linalg.norm(gram_sum - np.eye(F.k)))
    return FrameValidationReport(
        k=F.k,
        N=F.N,
        m=F.m,
        count_ok=(F.m == F.k * F.N),
        norm_deviation=norm_dev,
        parseval_deviation=parseval_dev,
        tol=float(tol),
    )


def rescale_norms(F: FrameFamily, tols: Tolerances = DEFAULT_TOLS) -> FrameFamily:
    """Rescale every vector to squared norm exactly 1/N, warning when it acts.

    Refuses deviations above ``tols.rescale_limit``; those indicate a wrong
    frame rather than accumulated roundoff.
    """
    norms2 = np.sum(np.abs(F.vectors) ** 2, axis=1)
    dev = float(np.max(np.abs(norms2 - 1.0 / F.N))) if F.m else 0.0
    if dev > tols.rescale_limit:
        raise FrameError(
            f"norm deviation {dev:.3e} exceeds the rescale limit {tols.rescale_limit:.1e}"
        )
    if dev > tols.frame_tol:
        warnings.warn(f"rescaling frame vectors: worst norm deviation {dev:.3e}", stacklevel=2)
    scale = 1.0 / np.sqrt(norms2 * F.N)
    return FrameFamily(k=F.k, N=F.N, vectors=F.vectors * scale[:, None])


def frame_to_projection(F: FrameFamily, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """The m x m Gram matrix G[i, j] = <v_j, v_i>: a rank-k projection with diagonal 1/N."""
    report = validate_frame(F, tols.frame_tol, tols)
    if not report.passed:
        raise FrameError(f"invalid frame: {report.summary()}")
    return F.vectors.conj() @ F.vectors.T


def projection_to_frame(P: np.ndarray, N: int, tols: Tolerances = DEFAULT_TOLS) -> FrameFamily:
    """Compress a constant-diagonal projection onto its range as a frame.

    ``P`` must be an m x m projection whose diagonal entries all equal 1/N;
    the result is the family P e_i expressed in an orthonormal eigenbasis of
    the range, which has dimension k = rank(P) = m / N.
    """
    if N < 2:
        raise FrameError(f"norm parameter N must be at least 2, got {N}")
    P = require_hermitian(P, tols.hermitian_atol)
    m = P.shape[0]
    idem_dev = float(np.linalg.norm(P @ P - P))
    if idem_dev > tols.frame_tol * max(1.0, float(np.linalg.norm(P))):
        raise FrameError(f"not a projection: ||P^2 - P||_F = {idem_dev:.3e}")
    diag = np.real(np.diag(P))
    diag_dev = float(np.max(np.abs(diag - 1.0 / N)))
    if diag_dev > tols.frame_tol:
        raise FrameError(f"diagonal entries deviate from 1/{N} by {diag_dev:.3e}")
    if m % N != 0:
        raise FrameError(f"rank m/N = {m}/{N} is not integral")
    k = m // N
    eig = eigh(P, tols)
    range_mask = eig.eigenvalues > 0.5
    rank = int(np.count_nonzero(range_mask))
    if rank != k:
        raise FrameError(f"rank {rank} does not match trace m/N = {k}")
    basis = eig.eigenvectors[:, range_mask]
    return FrameFamily(k=k, N=N, vectors=basis.conj())


def compressed_gram(P: np.ndarray, selector: DiagonalSelector) -> np.ndarray:
    """The principal submatrix of P on the selector's rows and columns.

    Its spectral norm is ||Q P Q|| for the diagonal projection Q onto the
    selected coordinates, and equals the norm of the corresponding rank-one
    sum when P is the Gram matrix of a frame.
    """
    P = np.asarray(P, dtype=np.complex128)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise FrameError(f"expected a square matrix, got shape {P.shape}")
    if selector.m != P.shape[0]:
        raise FrameError(f"selector size {selector.m} does not match matrix size {P.shape[0]}")
    idx = np.asarray(selector.indices, dtype=np.int64) - 1
    return P[np.ix_(idx, idx)]


# ---------------------------------------------------------------------------
# JSON interchange. Complex numbers are two-element [re, im] arrays; NaN and
# Inf are refused in both directions; doubles survive a write/read round trip
# bit for bit (shortest-repr decimal serialization).
# ---------------------------------------------------------------------------

def _encode_complex_rows(rows: np.ndarray) -> list:
    out = []
    for row in rows:
        out.append([[float(z.real), float(z.imag)] for z in row])
    return out


def _decode_complex_rows(data, rows: int, cols: int, what: str) -> np.ndarray:
    if not isinstance(data, list) or len(data) != rows:
        raise FrameError(f"{what}: expected {rows} rows")
    out = np.empty((rows, cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise FrameError(f"{what}: row {i} must have {cols} entries")
        for j, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                raise FrameError(f"{what}: entry ({i}, {j}) must be a [re, im] pair")
            re, im = float(pair[0]), float(pair[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise FrameError(f"{what}: entry ({i}, {j}) is not finite")
            out[i, j] = complex(re, im)
    return out


def frame_to_dict(F: FrameFamily) -> dict:
    return {"k": F.k, "N": F.N, "m": F.m, "vectors": _encode_complex_rows(F.vectors)}


def frame_from_dict(data: dict) -> FrameFamily:
    try:
        k, N, m = int(data["k"]), int(data["N"]), int(data["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameError(f"frame JSON missing or malformed header: {exc}") from exc
    vectors = _decode_complex_rows(data.get("vectors"), m, k, "frame vectors")
    return FrameFamily(k=k, N=N, vectors=vectors)


def save_frame(F: FrameFamily, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(frame_to_dict(F), fh, allow_nan=False, indent=1)
        fh.write("\n")


def load_frame(path) -> FrameFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return frame_from_dict(json.load(fh))


def projection_to_dict(P: np.ndarray) -> dict:
    P = np.asarray(P, dtype=np.complex128)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise FrameError(f"expected a square matrix, got shape {P.shape}")
    if not (np.all(np.isfinite(P.real)) and np.all(np.isfinite(P.imag))):
        raise FrameError("projection contains NaN or Inf")
    return {"m": int(P.shape[0]), "entries": _encode_complex_rows(P)}


def projection_from_dict(data: dict) -> np.ndarray:
    try:
        m = int(data["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameError(f"projection JSON missing or malformed header: {exc}") from exc
    return _decode_complex_rows(data.get("entries"), m, m, "projection entries")


def save_projection(P: np.ndarray, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(projection_to_dict(P), fh, allow_nan=False, indent=1)
        fh.write("\n")


def load_projection(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return projection_from_dict(json.load(fh))

"""Dense complex matrices, Hermitian eigendecomposition and random sampling.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Functions that
need a Hermitian argument validate it with :func:`as_hermitian`, which rejects
inputs that are visibly non-Hermitian and symmetrizes the rest.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import DomainError, MatrixFormatError, NonConvergenceError

HERMITIAN_RTOL = 1e-10
JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_RTOL = 1e-13


class SpectralDecomposition(NamedTuple):
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    unitary: np.ndarray

    def reconstruct(self, values=None) -> np.ndarray:
        """Return ``U diag(values) U*`` (the original matrix by default)."""
        if values is None:
            values = self.eigenvalues
        U = self.unitary
        return (U * values) @ U.conj().T


def as_matrix(M) -> np.ndarray:
    """Return ``M`` as a finite square complex matrix."""
    X = np.asarray(M, dtype=np.complex128)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {X.shape}")
    # a finite sum rules out inf and nan entries without a full mask
    if not np.isfinite(X.sum()) and not np.isfinite(X).all():
        raise ValueError("matrix has non-finite entries")
    return X


def as_hermitian(M, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Validate ``M`` as Hermitian and return ``(M + M*) / 2``.

    Raises ``ValueError`` when ``||M - M*||_F > rtol * (1 + ||M||_F)``; such
    inputs are never silently symmetrized.
    """
    X = as_matrix(M)
    Xh = X.conj().T
    D = X - Xh
    skew = np.sqrt(np.vdot(D, D).real)
    if skew > rtol * (1.0 + np.sqrt(np.vdot(X, X).real)):
        raise ValueError(f"matrix is not Hermitian (||M - M*||_F = {skew:.3e})")
    return 0.5 * (X + Xh)


def _jacobi(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = A.shape[0]
    A = A.copy()
    V = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(A)
    threshold = JACOBI_OFF_RTOL * scale
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= threshold:
            return A.diagonal().real.copy(), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                J = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ J
                A[idx, :] = J.conj().T @ A[idx, :]
                V[:, idx] = V[:, idx] @ J
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
    raise NonConvergenceError(f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def eig_hermitian(A, method: str = "lapack") -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix with ascending eigenvalues.

    ``method="jacobi"`` runs cyclic complex Jacobi rotations until the
    off-diagonal Frobenius mass drops below ``1e-13 * ||A||_F``;
    ``method="lapack"`` (default) delegates to ``numpy.linalg.eigh``.
    """
    H = as_hermitian(A)
    if method not in ("lapack", "jacobi"):
        raise ValueError(f"unknown eigensolver {method!r}")
    return _eig_cached(H.tobytes(), H.shape[0], method)


@lru_cache(maxsize=4096)
def _eig_cached(data: bytes, dim: int, method: str) -> SpectralDecomposition:
    # keyed on the exact bits, so repeated calls on one matrix are free
    H = np.frombuffer(data, dtype=np.complex128).reshape(dim, dim)
    if method == "lapack":
        w, U = np.linalg.eigh(H)
    else:
        w, U = _jacobi(H)
        order = np.argsort(w, kind="stable")
        w, U = w[order], U[:, order]
    w = np.asarray(w, dtype=float)
    w.flags.writeable = False
    U.flags.writeable = False
    return SpectralDecomposition(w, U)


def is_positive_definite(A, floor: float | None = None) -> bool:
    """True iff ``lambda_min(A) > floor``.

    The default floor is ``1e-10 * max|lambda_i|``.
    """
    w = eig_hermitian(A).eigenvalues
    if floor is None:
        floor = 1e-10 * float(np.max(np.abs(w)))
    if floor < 0:
        raise ValueError("floor must be non-negative")
    return bool(w[0] > floor)


def require_positive_definite(A, name: str = "matrix") -> np.ndarray:
    H = as_hermitian(A)
    if not is_positive_definite(H):
        raise DomainError(f"{name} is not positive definite")
    return H


def schur_product(X, Y) -> np.ndarray:
    """Entrywise (Hadamard) product."""
    X, Y = as_matrix(X), as_matrix(Y)
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    return X * Y


# -- random sampling -------------------------------------------------------


def make_rng(*key: int) -> np.random.Generator:
    """Generator seeded from an integer tuple; no shared global state."""
    return np.random.default_rng(np.random.SeedSequence([int(k) for k in key]))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from the phase-corrected QR of a complex Gaussian."""
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_complex(dim: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    Z = random_complex(dim, rng)
    return 0.5 * (Z + Z.conj().T)


def random_pd(dim: int, spectrum_range: tuple[float, float] = (0.1, 10.0), seed: int = 0) -> np.ndarray:
    """Random positive definite ``Q diag(lam) Q*``.

    Eigenvalues are log-uniform in ``spectrum_range`` and ``Q`` is Haar
    unitary; the result is a deterministic function of ``seed``.
    """
    lo, hi = spectrum_range
    if dim < 1:
        raise ValueError("dim must be positive")
    if not (0 < lo <= hi) or not np.isfinite(hi):
        raise ValueError(f"invalid spectrum range {spectrum_range}")
    rng = make_rng(seed)
    return _random_pd(dim, lo, hi, rng)


def _random_pd(dim: int, lo: float, hi: float, rng: np.random.Generator) -> np.ndarray:
    lam = np.exp(rng.uniform(np.log(lo), np.log(hi), size=dim))
    Q = random_unitary(dim, rng)
    M = (Q * lam) @ Q.conj().T
    return 0.5 * (M + M.conj().T)


def random_pd_from(rng: np.random.Generator, dim: int, spectrum_range: tuple[float, float]) -> np.ndarray:
    """Like :func:`random_pd` but drawing from an existing generator."""
    lo, hi = spectrum_range
    if not (0 < lo <= hi):
        raise ValueError(f"invalid spectrum range {spectrum_range}")
    return _random_pd(dim, lo, hi, rng)


# -- file format -------------------------------------------------------------


def matrix_to_json(M) -> dict:
    X = as_matrix(M)
    return {
        "dim": int(X.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in X.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise ValueError('expected an object with "dim" and "entries"')
    dim = obj["dim"]
    entries = obj["entries"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError(f"invalid dim {dim!r}")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise ValueError(f"expected {dim * dim} entries")
    vals = []
    for pair in entries:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError("each entry must be a [re, im] pair")
        vals.append(complex(float(pair[0]), float(pair[1])))
    return as_matrix(np.array(vals, dtype=np.complex128).reshape(dim, dim))


def read_matrix(path) -> np.ndarray:
    path = Path(path)
    try:
        return matrix_from_json(json.loads(path.read_text()))
    except (OSError, ValueError, TypeError) as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc


def write_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n")

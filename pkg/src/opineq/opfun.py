"""Spectral functional calculus and Daleckii-Krein Frechet derivatives."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .funcat import CONFLUENT_DELTA, FunctionSpec, _dd_sorted, catalog_get
from .hermitian import (
    SpectralDecomposition,
    as_hermitian,
    as_matrix,
    eig_hermitian,
    make_rng,
    random_hermitian,
)
from .norms import NormKind, norm, norm_identity

MAX_ORDER = 3


def decompose_in_domain(spec: FunctionSpec, A) -> SpectralDecomposition:
    """Eigendecompose ``A`` and check its spectrum against ``spec.domain``.

    On half-line domains the smallest eigenvalue must also clear the
    positive-definiteness floor ``1e-10 * max|lambda|``.
    """
    dec = eig_hermitian(A)
    w = dec.eigenvalues
    lo, _ = spec.domain
    if lo == 0.0 and not w[0] > 1e-10 * float(np.max(np.abs(w))):
        raise DomainError(f"{spec.id} needs a positive definite argument (lambda_min = {w[0]:.3e})")
    spec.check_domain(w, "spectrum")
    return dec


def matrix_function(spec: FunctionSpec, A, n: int = 0) -> np.ndarray:
    """``f^(n)(A) = U f^(n)(Lambda) U*`` (``n = 0`` gives ``f(A)``)."""
    dec = decompose_in_domain(spec, A)
    return dec.reconstruct(spec.deriv(n, dec.eigenvalues))


def mpower(A, p: float) -> np.ndarray:
    """``A^p`` for positive definite ``A``."""
    return matrix_function(catalog_get(f"pow:{float(p)!r}"), A)


def derivative_norm(spec: FunctionSpec, A, n: int = 1) -> float:
    """Operator norm ``||f^(n)(A)||``."""
    dec = decompose_in_domain(spec, A)
    return float(np.max(np.abs(spec.deriv(n, dec.eigenvalues))))


@dataclass(frozen=True)
class LoewnerMatrix:
    base_eigenvalues: np.ndarray
    entries: np.ndarray


def divided_difference_tensor(spec: FunctionSpec, eigenvalues, order: int) -> np.ndarray:
    """Tensor ``T[i0, ..., in] = f[lam_i0, ..., lam_in]``."""
    lam = np.asarray(eigenvalues, dtype=float)
    if order == 1:
        return _loewner_entries(spec, lam)
    d = lam.size
    T = np.empty((d,) * (order + 1))
    cache: dict[tuple[float, ...], float] = {}
    for idx in itertools.product(range(d), repeat=order + 1):
        key = tuple(sorted(lam[list(idx)]))
        val = cache.get(key)
        if val is None:
            val = cache[key] = _dd_sorted(spec, key)
        T[idx] = val
    return T


def _loewner_entries(spec: FunctionSpec, lam: np.ndarray) -> np.ndarray:
    # vectorized form of funcat's order-1 rule, same confluence threshold
    fx = spec.eval(lam)
    gap = lam[:, None] - lam[None, :]
    scale = 1.0 + np.maximum(np.abs(lam)[:, None], np.abs(lam)[None, :])
    close = np.abs(gap) < CONFLUENT_DELTA * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        L = (fx[:, None] - fx[None, :]) / gap
    if np.any(close):
        mean = 0.5 * (lam[:, None] + lam[None, :])
        L[close] = spec.deriv(1, mean[close])
    return L


def loewner_matrix(spec: FunctionSpec, A) -> LoewnerMatrix:
    """First divided differences ``f[lam_i, lam_j]`` in the eigenbasis of ``A``."""
    dec = decompose_in_domain(spec, A)
    return LoewnerMatrix(dec.eigenvalues, divided_difference_tensor(spec, dec.eigenvalues, 1))


_CONTRACT = {
    1: "ij,ij->ij",
    2: "ikj,ik,kj->ij",
    3: "iklj,ik,kl,lj->ij",
}


class DaleckiiKrein:
    """The n-linear map ``D^n f(A)`` for fixed ``spec``, ``A`` and ``n``.

    Eigendecomposition and divided-difference tensor are computed once, so
    repeated evaluation over many direction tuples is cheap.
    """

    def __init__(self, spec: FunctionSpec, A, order: int):
        if not 1 <= order <= MAX_ORDER:
            raise ValueError(f"Frechet derivative order must be in 1..{MAX_ORDER}")
        self.spec = spec
        self.order = order
        self.dec = decompose_in_domain(spec, A)
        self.dim = self.dec.eigenvalues.size
        self.tensor = divided_difference_tensor(spec, self.dec.eigenvalues, order)

    def __call__(self, dirs) -> np.ndarray:
        dirs = list(dirs)
        if len(dirs) != self.order:
            raise ValueError(f"expected {self.order} directions, got {len(dirs)}")
        U = self.dec.unitary
        Uh = U.conj().T
        rotated = []
        for B in dirs:
            B = as_hermitian(B)
            if B.shape[0] != self.dim:
                raise ValueError("direction dimension does not match A")
            rotated.append(Uh @ B @ U)
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        spec = _CONTRACT[self.order]
        for perm in itertools.permutations(range(self.order)):
            out += np.einsum(spec, self.tensor, *(rotated[p] for p in perm))
        M = U @ out @ Uh
        return 0.5 * (M + M.conj().T)


def frechet_derivative_n(spec: FunctionSpec, A, dirs) -> np.ndarray:
    """``D^n f(A)(B_1, ..., B_n)`` for ``n = len(dirs) <= 3``."""
    dirs = list(dirs)
    return DaleckiiKrein(spec, A, len(dirs))(dirs)


def frechet_derivative(spec: FunctionSpec, A, B) -> np.ndarray:
    """``Df(A)(B) = U [f^[1](Lambda) o (U* B U)] U*``."""
    return frechet_derivative_n(spec, A, [B])


def _sample_direction(dim: int, rng: np.random.Generator, rank_one: bool) -> np.ndarray:
    if rank_one:
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        return sign * np.outer(v, v.conj())
    return random_hermitian(dim, rng)


def sample_multilinear_norm(spec: FunctionSpec, A, n: int, kind: NormKind,
                            samples: int, seed: int) -> float:
    """Lower bound on ``|||D^n f(A)|||`` by maximizing over sampled directions.

    The identity tuple ``(I/|||I|||, ...)`` is always included. Sample ``i``
    draws from a generator keyed on ``(seed, i)``, so adding samples can only
    increase the result.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    dk = DaleckiiKrein(spec, A, n)
    dim = dk.dim
    ident = np.eye(dim) / norm_identity(dim, kind)
    best = norm(dk([ident] * n), kind)
    for i in range(samples):
        rng = make_rng(seed, i)
        dirs = []
        for _ in range(n):
            B = _sample_direction(dim, rng, rank_one=bool(i % 2))
            dirs.append(B / norm(B, kind))
        best = max(best, norm(dk(dirs), kind))
    return best


def commutator_map(spec: FunctionSpec, A, B, X) -> np.ndarray:
    """``f(A) X - X f(B)``."""
    X = as_matrix(X)
    return matrix_function(spec, A) @ X - X @ matrix_function(spec, B)


def heinz_difference(A, B, X, nu: float) -> np.ndarray:
    """``A^nu X B^(1-nu) - A^(1-nu) X B^nu`` for positive definite ``A``, ``B``."""
    X = as_matrix(X)
    da = decompose_in_domain(catalog_get("log"), A)
    db = decompose_in_domain(catalog_get("log"), B)
    wa, wb = da.eigenvalues, db.eigenvalues
    return (da.reconstruct(wa ** nu) @ X @ db.reconstruct(wb ** (1.0 - nu))
            - da.reconstruct(wa ** (1.0 - nu)) @ X @ db.reconstruct(wb ** nu))


def block_embedding(A, B, X) -> tuple[np.ndarray, np.ndarray]:
    """``T = diag(A, B)`` and ``Y = [[0, X], [0, 0]]``.

    ``f(T) Y - Y f(T)`` carries ``f(A) X - X f(B)`` in its upper-right block.
    """
    A, B, X = as_hermitian(A), as_hermitian(B), as_matrix(X)
    n = A.shape[0]
    T = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    T[:n, :n] = A
    T[n:, n:] = B
    Y = np.zeros_like(T)
    Y[:n, n:] = X
    return T, Y

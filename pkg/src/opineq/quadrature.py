"""Matrix-valued integrals along the segment ``(1-t)A + tB`` and Simpson rules."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .errors import NonConvergenceError
from .funcat import FunctionSpec
from .gauss import composite_nodes
from .hermitian import as_hermitian
from .opfun import decompose_in_domain, frechet_derivative, matrix_function

DEFAULT_TOL = 1e-9
MAX_PANELS = 2 ** 10
GL_ORDER = 16

SIMPSON_13_CONSTANT = 5.0 / 32.0
SIMPSON_38_CONSTANT = 25.0 / 288.0


class SegmentIntegralResult(NamedTuple):
    value: np.ndarray
    refinement_levels: int
    est_error: float


def integrate_segment(F: Callable[[float], np.ndarray], tol: float = DEFAULT_TOL,
                      max_panels: int = MAX_PANELS) -> SegmentIntegralResult:
    """Composite 16-point Gauss-Legendre for ``int_0^1 F(t) dt``.

    The panel count doubles from 1 until two successive estimates differ by
    less than ``tol`` in Frobenius norm. Nodes are summed in index order.
    """
    prev = None
    panels = 1
    level = 0
    while panels <= max_panels:
        nodes, weights = composite_nodes(panels, GL_ORDER)
        total = None
        for t, w in zip(nodes, weights):
            term = w * F(float(t))
            total = term if total is None else total + term
        if prev is not None:
            err = float(np.linalg.norm(total - prev))
            if err < tol:
                return SegmentIntegralResult(total, level, err)
        prev = total
        panels *= 2
        level += 1
    raise NonConvergenceError(f"segment quadrature did not reach tol={tol:g} with {max_panels} panels")


def segment_point(A, B, t: float) -> np.ndarray:
    return (1.0 - t) * A + t * B


def _check_segment(spec: FunctionSpec, A, B) -> None:
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        decompose_in_domain(spec, segment_point(A, B, t))


def hh_integral(spec: FunctionSpec, A, B, tol: float = DEFAULT_TOL) -> SegmentIntegralResult:
    """``int_0^1 f((1-t)A + tB) dt``."""
    A, B = as_hermitian(A), as_hermitian(B)
    if A.shape != B.shape:
        raise ValueError("dimension mismatch")
    _check_segment(spec, A, B)
    return integrate_segment(lambda t: matrix_function(spec, segment_point(A, B, t)), tol)


class WeightMoments(NamedTuple):
    m0: float   # int |t - nu| dt
    m1: float   # int |t - nu| t dt
    m1c: float  # int |t - nu| (1 - t) dt
    ms: float   # int |t - nu| t^s dt
    msc: float  # int |t - nu| (1 - t)^s dt


def _ms(nu: float, s: float) -> float:
    return 1.0 / (s + 2.0) - nu / (s + 1.0) + 2.0 * nu ** (s + 2.0) / ((s + 1.0) * (s + 2.0))


def weight_moments(nu: float, s: float = 1.0) -> WeightMoments:
    """Closed-form moments of the weight ``|t - nu|`` on ``[0, 1]``."""
    if not 0.0 <= nu <= 1.0:
        raise ValueError(f"nu={nu} outside [0, 1]")
    if not 0.0 < s <= 1.0:
        raise ValueError(f"s={s} outside (0, 1]")
    mu = 1.0 - nu
    return WeightMoments(
        m0=nu * nu - nu + 0.5,
        m1=(2.0 * nu ** 3 - 3.0 * nu + 2.0) / 6.0,
        m1c=(2.0 * mu ** 3 - 3.0 * mu + 2.0) / 6.0,
        ms=_ms(nu, s),
        msc=_ms(mu, s),
    )


def simpson_13(spec: FunctionSpec, A, B) -> np.ndarray:
    """``(f(A) + 4 f((A+B)/2) + f(B)) / 6``."""
    A, B = as_hermitian(A), as_hermitian(B)
    return (matrix_function(spec, A) + 4.0 * matrix_function(spec, 0.5 * (A + B))
            + matrix_function(spec, B)) / 6.0


def simpson_38(spec: FunctionSpec, A, B) -> np.ndarray:
    """``(f(A) + 3 f((2A+B)/3) + 3 f((A+2B)/3) + f(B)) / 8``."""
    A, B = as_hermitian(A), as_hermitian(B)
    return (matrix_function(spec, A) + 3.0 * matrix_function(spec, (2.0 * A + B) / 3.0)
            + 3.0 * matrix_function(spec, (A + 2.0 * B) / 3.0) + matrix_function(spec, B)) / 8.0


def lemma1_sides(spec: FunctionSpec, A, B, nus,
                 tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the weighted identity for each ``nu`` in ``nus``.

    Left: ``nu f(A) + (1-nu) f(B) - int f((1-t)A + tB) dt``.
    Right: ``int (t - nu) Df((1-t)A + tB)(B - A) dt``, assembled from the two
    moments ``int t Df dt`` and ``int Df dt`` of a separate quadrature.
    Returns stacked arrays of shape ``(len(nus), n, n)``.
    """
    A, B = as_hermitian(A), as_hermitian(B)
    nus = np.atleast_1d(np.asarray(nus, dtype=float))
    integral = hh_integral(spec, A, B, tol).value
    fa, fb = matrix_function(spec, A), matrix_function(spec, B)
    left = np.stack([nu * fa + (1.0 - nu) * fb - integral for nu in nus])
    E = B - A

    def moments(t):
        D = frechet_derivative(spec, segment_point(A, B, t), E)
        return np.stack([t * D, D])

    j1, j0 = integrate_segment(moments, tol).value
    right = np.stack([j1 - nu * j0 for nu in nus])
    return left, right


def lemma1_residuals(spec: FunctionSpec, A, B, nus, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Frobenius residual of the identity at each ``nu`` (see :func:`lemma1_sides`)."""
    left, right = lemma1_sides(spec, A, B, nus, tol)
    return np.linalg.norm(left - right, axis=(1, 2))


def lemma1_residual(spec: FunctionSpec, A, B, nu: float, tol: float = DEFAULT_TOL) -> float:
    return float(lemma1_residuals(spec, A, B, [nu], tol)[0])

"""Unitarily invariant norms computed from singular values."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hermitian import as_matrix, eig_hermitian

_TAGS = ("operator", "trace", "frobenius", "schatten", "kyfan")


@dataclass(frozen=True)
class NormKind:
    """One member of the unitarily invariant family.

    ``param`` is the exponent ``p >= 1`` for ``schatten`` and the count ``k``
    for ``kyfan``; unused otherwise.
    """

    tag: str
    param: float | int | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown norm kind {self.tag!r}")
        if self.tag == "schatten":
            if self.param is None or not float(self.param) >= 1.0:
                raise ValueError("schatten norm needs p >= 1")
        elif self.tag == "kyfan":
            k = self.param
            if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
                raise ValueError("ky fan norm needs an integer k >= 1")
        elif self.param is not None:
            raise ValueError(f"{self.tag} norm takes no parameter")

    @property
    def label(self) -> str:
        if self.tag == "schatten":
            return f"s:{_fmt(self.param)}"
        if self.tag == "kyfan":
            return f"kf:{self.param}"
        return {"operator": "op", "trace": "tr", "frobenius": "fro"}[self.tag]

    def __str__(self) -> str:
        return self.label


def _fmt(x) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


OPERATOR = NormKind("operator")
TRACE = NormKind("trace")
FROBENIUS = NormKind("frobenius")


def parse_norm(text: str) -> NormKind:
    """Parse ``op``, ``tr``, ``fro``, ``s:<p>`` or ``kf:<k>``."""
    s = text.strip()
    simple = {"op": OPERATOR, "tr": TRACE, "fro": FROBENIUS}
    if s in simple:
        return simple[s]
    head, _, arg = s.partition(":")
    try:
        if head == "s" and arg:
            return NormKind("schatten", float(arg))
        if head == "kf" and arg:
            return NormKind("kyfan", int(arg))
    except ValueError as exc:
        raise ValueError(f"bad norm spec {text!r}: {exc}") from exc
    raise ValueError(f"bad norm spec {text!r}")


def singular_values(X) -> np.ndarray:
    """Singular values in descending order.

    Hermitian input uses ``|lambda_i|``; otherwise square roots of the
    eigenvalues of ``X* X`` with negative rounding clamped to zero.
    """
    X = as_matrix(X)
    if np.array_equal(X, X.conj().T):
        s = np.abs(eig_hermitian(X).eigenvalues)
    else:
        w = eig_hermitian(X.conj().T @ X).eigenvalues
        s = np.sqrt(np.clip(w, 0.0, None))
    return np.sort(s)[::-1]


def norm_of_singular_values(s: np.ndarray, kind: NormKind) -> float:
    if kind.tag == "operator":
        return float(s[0])
    if kind.tag == "trace":
        return float(np.sum(s))
    if kind.tag == "frobenius":
        return float(np.sqrt(np.sum(s * s)))
    if kind.tag == "schatten":
        p = float(kind.param)
        top = s[0]
        if top == 0.0:
            return 0.0
        return float(top * np.sum((s / top) ** p) ** (1.0 / p))
    k = int(kind.param)
    if k > s.size:
        raise ValueError(f"ky fan k={k} exceeds dimension {s.size}")
    return float(np.sum(s[:k]))


def norm(X, kind: NormKind = OPERATOR) -> float:
    if kind.tag == "frobenius":
        X = as_matrix(X)
        return float(np.sqrt(np.vdot(X, X).real))
    return norm_of_singular_values(singular_values(X), kind)


def op_norm(X) -> float:
    return norm(X, OPERATOR)


def norm_identity(dim: int, kind: NormKind) -> float:
    """Norm of the ``dim x dim`` identity."""
    if kind.tag == "operator":
        return 1.0
    if kind.tag == "trace":
        return float(dim)
    if kind.tag == "frobenius":
        return math.sqrt(dim)
    if kind.tag == "schatten":
        return float(dim) ** (1.0 / float(kind.param))
    if kind.param > dim:
        raise ValueError(f"ky fan k={kind.param} exceeds dimension {dim}")
    return float(kind.param)


def fits(kind: NormKind, dim: int) -> bool:
    """Whether ``kind`` is defined at this dimension (ky fan needs ``k <= dim``)."""
    return kind.tag != "kyfan" or int(kind.param) <= dim

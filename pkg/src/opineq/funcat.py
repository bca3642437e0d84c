"""Catalog of scalar functions used as matrix-function generators.

Each entry carries its derivatives up to order 4, the open interval it lives
on, and the structural facts the norm bounds depend on: operator
monotonicity, membership of the class where ``||Df(A)|| = ||f'(A)||``, and
the convexity type of ``A -> ||f'(A)||``. Those facts are hard-coded from the
literature rather than detected.

Function ids::

    pow:<r>  log  exp  square  square_minus_one  product:<id>:<id>
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError
from .gauss import adaptive_integrate

MAX_DERIV = 4
CONFLUENT_DELTA = 1e-7
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class RepresentationMeasure:
    """``beta`` and the density of ``mu`` in ``f'(t) = beta + int (lam + t)^-2 dmu(lam)``."""

    beta: float
    density: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be non-negative")


@dataclass(frozen=True)
class FunctionSpec:
    id: str
    domain: tuple[float, float]
    derivs: tuple[Callable[[np.ndarray], np.ndarray], ...] = field(repr=False)
    operator_monotone: bool = False
    # True / False when known from the literature, None when unknown.
    d1_member: bool | None = None
    # Largest s for which ||f'(.)|| is s-convex; 1.0 means convex.
    s_convex_order: float | None = None
    measure: RepresentationMeasure | None = field(default=None, repr=False)

    @property
    def fprime_norm_convex(self) -> bool:
        return self.s_convex_order == 1.0

    def eval(self, t):
        return self.derivs[0](np.asarray(t, dtype=float))

    def __call__(self, t):
        return self.eval(t)

    def deriv(self, n: int, t):
        if not 0 <= n <= MAX_DERIV:
            raise ValueError(f"derivative order {n} outside 0..{MAX_DERIV}")
        return self.derivs[n](np.asarray(t, dtype=float))

    def contains(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        lo, hi = self.domain
        return (t > lo) & (t < hi)

    def check_domain(self, t, what: str = "argument") -> None:
        if not np.all(self.contains(t)):
            raise DomainError(f"{what} outside the domain {self.domain} of {self.id}")


# -- constructors ------------------------------------------------------------

_REALS = (-math.inf, math.inf)
_HALFLINE = (0.0, math.inf)


def _falling(r: float, n: int) -> float:
    out = 1.0
    for k in range(n):
        out *= r - k
    return out


def _power(r: float) -> FunctionSpec:
    is_nonneg_int = r >= 0 and float(r).is_integer()

    def make(n):
        c = _falling(r, n)
        if c == 0.0:
            return lambda t: np.zeros_like(t)
        e = r - n
        if is_nonneg_int:
            e = int(e)
            return lambda t: c * t ** e
        return lambda t: c * np.power(t, e)

    if r <= 1 or r >= 2:
        d1 = True
    elif r < _SQRT2:
        d1 = False
    else:
        d1 = None
    measure = None
    if 0 < r < 1:
        k = math.sin(r * math.pi) / math.pi
        measure = RepresentationMeasure(0.0, lambda lam: k * np.power(lam, r))
    return FunctionSpec(
        id=f"pow:{_fmt_num(r)}",
        domain=_REALS if is_nonneg_int else _HALFLINE,
        derivs=tuple(make(n) for n in range(MAX_DERIV + 1)),
        operator_monotone=0 <= r <= 1,
        d1_member=d1,
        s_convex_order=(r - 1.0) if 1 < r < 2 else 1.0,
        measure=measure,
    )


def _log() -> FunctionSpec:
    def make(n):
        if n == 0:
            return np.log
        c = (-1.0) ** (n + 1) * math.factorial(n - 1)
        return lambda t: c * np.power(t, -float(n))

    return FunctionSpec(
        id="log",
        domain=_HALFLINE,
        derivs=tuple(make(n) for n in range(MAX_DERIV + 1)),
        operator_monotone=True,
        d1_member=True,
        s_convex_order=1.0,
        measure=RepresentationMeasure(0.0, lambda lam: np.ones_like(lam)),
    )


def _exp() -> FunctionSpec:
    return FunctionSpec(
        id="exp",
        domain=_REALS,
        derivs=(np.exp,) * (MAX_DERIV + 1),
        d1_member=True,
        s_convex_order=1.0,
    )


def _square(shift: float, name: str) -> FunctionSpec:
    return FunctionSpec(
        id=name,
        domain=_REALS,
        derivs=(
            lambda t: t * t - shift,
            lambda t: 2.0 * t,
            lambda t: np.full_like(t, 2.0),
            lambda t: np.zeros_like(t),
            lambda t: np.zeros_like(t),
        ),
        d1_member=True,
        s_convex_order=1.0,
    )


def _product(f: FunctionSpec, g: FunctionSpec) -> FunctionSpec:
    def make(n):
        terms = [(math.comb(n, k), f.derivs[k], g.derivs[n - k]) for k in range(n + 1)]
        return lambda t: sum(c * fk(t) * gk(t) for c, fk, gk in terms)

    return FunctionSpec(
        id=f"product:{f.id}:{g.id}",
        domain=(max(f.domain[0], g.domain[0]), min(f.domain[1], g.domain[1])),
        derivs=tuple(make(n) for n in range(MAX_DERIV + 1)),
    )


def _fmt_num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


_FIXED = {
    "log": _log,
    "exp": _exp,
    "square": lambda: _square(0.0, "square"),
    "square_minus_one": lambda: _square(1.0, "square_minus_one"),
}


@lru_cache(maxsize=256)
def catalog_get(fid: str) -> FunctionSpec:
    """Look up a function by id (see module docstring for the grammar)."""
    fid = fid.strip()
    if fid in _FIXED:
        return _FIXED[fid]()
    if fid.startswith("pow:"):
        try:
            r = float(fid[4:])
        except ValueError:
            raise ValueError(f"malformed exponent in {fid!r}") from None
        if not math.isfinite(r):
            raise ValueError(f"malformed exponent in {fid!r}")
        return _power(r)
    if fid.startswith("product:"):
        rest = fid[len("product:"):]
        parts = rest.split(":")
        for cut in range(1, len(parts)):
            left, right = ":".join(parts[:cut]), ":".join(parts[cut:])
            try:
                f, g = catalog_get(left), catalog_get(right)
            except ValueError:
                continue
            return _product(f, g)
        raise ValueError(f"malformed product id {fid!r}")
    raise ValueError(f"unknown function id {fid!r}")


# -- divided differences -----------------------------------------------------


def divided_difference(spec: FunctionSpec, points) -> float:
    """``f[x_0, ..., x_n]`` for ``n <= 3``.

    Points are sorted first, so the value is exactly symmetric. A cluster
    ``x_i..x_j`` narrower than ``1e-7 * (1 + max|x|)`` is replaced by
    ``f^(j-i)(mean) / (j-i)!``.
    """
    xs = sorted(float(x) for x in points)
    n = len(xs) - 1
    if not 0 <= n <= 3:
        raise ValueError("divided differences are supported up to order 3")
    spec.check_domain(xs, "divided-difference point")
    return _dd_sorted(spec, tuple(xs))


def _dd_sorted(spec: FunctionSpec, xs: tuple[float, ...]) -> float:
    thresh = CONFLUENT_DELTA * (1.0 + max(abs(x) for x in xs))
    memo: dict[tuple[int, int], float] = {}

    def dd(i: int, j: int) -> float:
        key = (i, j)
        if key in memo:
            return memo[key]
        k = j - i
        if k == 0:
            val = float(spec.eval(xs[i]))
        elif xs[j] - xs[i] < thresh:
            mean = sum(xs[i:j + 1]) / (k + 1)
            val = float(spec.deriv(k, mean)) / math.factorial(k)
        else:
            val = (dd(i + 1, j) - dd(i, j - 1)) / (xs[j] - xs[i])
        memo[key] = val
        return val

    return dd(0, len(xs) - 1)


# -- representation measures ------------------------------------------------


def measure_derivative(spec: FunctionSpec, t: float, rtol: float = 1e-8) -> float:
    """``beta + int_0^inf density(lam) / (lam + t)^2 dlam``.

    The half-line is mapped to ``(0, 1)`` by ``lam = u / (1 - u)``; the upper
    half ``u > 1/2`` is evaluated through ``v = 1 - u`` so that nodes near
    ``u = 1`` stay representable.
    """
    if spec.measure is None:
        raise ValueError(f"{spec.id} has no representation measure")
    if not t > 0:
        raise DomainError("measure derivative needs t > 0")
    dens = spec.measure.density

    def lower(u):
        lam = u / (1.0 - u)
        # (lam + t) * (1 - u) == u + t * (1 - u)
        return dens(lam) / (u + t * (1.0 - u)) ** 2

    def upper(v):
        lam = (1.0 - v) / v
        return dens(lam) / ((1.0 - v) + t * v) ** 2

    total = adaptive_integrate(lower, 0.0, 0.5, rtol=rtol) + adaptive_integrate(upper, 0.0, 0.5, rtol=rtol)
    return spec.measure.beta + total

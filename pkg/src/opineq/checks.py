"""Numerical checkers for norm inequalities of operator monotone functions.

Every checker evaluates both sides of one inequality on concrete matrices and
returns an :class:`IneqReport`. ``||.||`` on the right-hand side of a bound
is always the operator norm; ``|||.|||`` is the caller's :class:`NormKind`.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError, IneligibleError, NonConvergenceError
from .funcat import FunctionSpec, catalog_get
from .hermitian import as_hermitian, as_matrix, make_rng, random_complex, random_pd_from
from .norms import OPERATOR, NormKind, fits, norm, parse_norm
from .opfun import (
    commutator_map,
    decompose_in_domain,
    derivative_norm,
    heinz_difference,
    matrix_function,
    mpower,
    sample_multilinear_norm,
)
from .quadrature import (
    DEFAULT_TOL,
    SIMPSON_13_CONSTANT,
    SIMPSON_38_CONSTANT,
    hh_integral,
    simpson_13,
    simpson_38,
    weight_moments,
)

TOL_MARGIN_REL = 1e-8
REFINEMENT_TOL = 1e-10

HH_MODES = ("convex", "quasiconvex", "sconvex")
PERTURBATION_MODES = ("convex", "quasiconvex", "sconvex", "refinement")
SIMPSON_RULES = {"onethird": SIMPSON_13_CONSTANT, "threeeighth": SIMPSON_38_CONSTANT}
COMMUTATOR_VARIANTS = ("t3", "t4", "heinz", "kapil_r", "kapil_alpha", "eq420")


@dataclass
class IneqReport:
    check_id: str
    lhs: float
    rhs: float
    witness: dict
    expected_fail: bool = False
    details: dict = field(default_factory=dict)
    error: str | None = None
    # extra conditions that must hold besides the margin
    side_conditions: bool = True
    margin: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.margin = self.rhs - self.lhs
        tol = TOL_MARGIN_REL * (1.0 + abs(self.rhs))
        self.passed = (self.error is None and self.side_conditions
                       and bool(self.margin >= -tol))

    @property
    def unexpected(self) -> bool:
        return self.error is not None or self.passed == self.expected_fail

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        if self.expected_fail:
            return "expected-fail" if not self.passed else "unexpected-pass"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "margin": _num(self.margin),
            "pass": self.passed,
            "expected_fail": self.expected_fail,
            "status": self.status,
            "witness": self.witness,
            "details": {k: _num(v) for k, v in self.details.items()},
            "error": self.error,
        }

    def sort_key(self) -> tuple:
        return (self.check_id, json.dumps(self.witness, sort_keys=True))


def _num(x):
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    return x


def _report(check_id, lhs, rhs, witness, **kw) -> IneqReport:
    return IneqReport(check_id, float(lhs), float(rhs), dict(witness), **kw)


# -- eligibility ---------------------------------------------------------------


def require_operator_monotone(*specs: FunctionSpec) -> None:
    for spec in specs:
        if not spec.operator_monotone:
            raise IneligibleError(f"{spec.id} is not operator monotone")


def bound_eligible(spec: FunctionSpec, kind: NormKind, mode: str, s: float | None = None) -> bool:
    """Whether the weighted bounds in ``mode`` are known to apply to ``spec``.

    Operator monotone functions qualify for every mode and norm. Otherwise
    only the operator norm is allowed, ``spec`` must not be known to lie
    outside the class where ``||Df(A)|| = ||f'(A)||``, and the declared
    convexity of ``||f'(.)||`` must cover ``mode``.
    """
    if mode == "refinement":
        return spec.operator_monotone
    if spec.operator_monotone:
        return True
    if kind != OPERATOR or spec.d1_member is False or spec.s_convex_order is None:
        return False
    if mode in ("convex", "quasiconvex"):
        return spec.fprime_norm_convex
    if mode == "sconvex":
        return s is not None and s <= spec.s_convex_order
    raise ValueError(f"unknown mode {mode!r}")


def _require_eligible(spec, kind, mode, s=None):
    if not bound_eligible(spec, kind, mode, s):
        raise IneligibleError(f"{mode} bound not established for {spec.id} in norm {kind.label}")


def _spec(f) -> FunctionSpec:
    return f if isinstance(f, FunctionSpec) else catalog_get(f)


def _endpoint_fprime(spec, A, B) -> tuple[float, float]:
    return derivative_norm(spec, A, 1), derivative_norm(spec, B, 1)


# -- quasi-convexity of ||f^(n)(.)|| -------------------------------------------


def check_quasiconvex_fn_norm(spec, A, B, nu: float, n: int, expect_fail: bool = False) -> IneqReport:
    """``||f^(n)((1-nu)A + nu B)|| <= max(||f^(n)(A)||, ||f^(n)(B)||)``.

    ``n = 0`` checks ``||f(.)||`` itself.
    """
    spec = _spec(spec)
    if not expect_fail:
        require_operator_monotone(spec)
    if not 0 <= n <= 3:
        raise ValueError("n must be in 0..3")
    A, B = as_hermitian(A), as_hermitian(B)
    C = (1.0 - nu) * A + nu * B
    lhs = derivative_norm(spec, C, n)
    rhs = max(derivative_norm(spec, A, n), derivative_norm(spec, B, n))
    w = {"function": spec.id, "nu": nu, "n": n}
    return _report("quasiconvex_fn_norm", lhs, rhs, w, expected_fail=expect_fail)


def check_square_minus_one_counterexample() -> IneqReport:
    """``f(t) = t^2 - 1`` at ``A = -I``, ``B = I``, ``nu = 1/2``: lhs 1, rhs 0."""
    eye = np.eye(2)
    return check_quasiconvex_fn_norm("square_minus_one", -eye, eye, 0.5, 0, expect_fail=True)


# -- Frechet derivative norm ------------------------------------------------------


def check_frechet_norm_bound(spec, A, n: int, kind: NormKind, samples: int, seed: int) -> IneqReport:
    """Sampled ``|||D^n f(A)|||`` against ``||f^(n)(A)||``."""
    spec = _spec(spec)
    require_operator_monotone(spec)
    lhs = sample_multilinear_norm(spec, A, n, kind, samples, seed)
    rhs = derivative_norm(spec, A, n)
    w = {"function": spec.id, "n": n, "norm": kind.label, "direction_samples": samples}
    return _report("frechet_norm_bound", lhs, rhs, w)


# -- weighted Hermite-Hadamard bounds ------------------------------------------------


def check_hh_weighted(spec, A, B, nu: float, mode: str, kind: NormKind = OPERATOR,
                      s: float | None = None, integral: np.ndarray | None = None,
                      tol: float = DEFAULT_TOL) -> IneqReport:
    """``|||nu f(A) + (1-nu) f(B) - int f((1-t)A + tB) dt|||`` against the
    convex, quasi-convex or s-convex weighted bound."""
    spec = _spec(spec)
    if mode not in HH_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "sconvex" and s is None:
        raise ValueError("sconvex mode needs s")
    _require_eligible(spec, kind, mode, s)
    A, B = as_hermitian(A), as_hermitian(B)
    if integral is None:
        integral = hh_integral(spec, A, B, tol).value
    X = nu * matrix_function(spec, A) + (1.0 - nu) * matrix_function(spec, B) - integral
    lhs = norm(X, kind)
    fa, fb = _endpoint_fprime(spec, A, B)
    d = norm(B - A, kind)
    m = weight_moments(nu, s if s is not None else 1.0)
    if mode == "convex":
        rhs = (m.m1c * fa + m.m1 * fb) * d
    elif mode == "quasiconvex":
        rhs = m.m0 * d * max(fa, fb)
    else:
        rhs = (m.msc * fa + m.ms * fb) * d
    w = {"function": spec.id, "nu": nu, "mode": mode, "norm": kind.label}
    if s is not None:
        w["s"] = s
    return _report("hh_weighted", lhs, rhs, w)


def _product_rhs_factor(f, g, A, B) -> float:
    fa1, fb1 = _endpoint_fprime(f, A, B)
    ga1, gb1 = _endpoint_fprime(g, A, B)
    fa0, fb0 = derivative_norm(f, A, 0), derivative_norm(f, B, 0)
    ga0, gb0 = derivative_norm(g, A, 0), derivative_norm(g, B, 0)
    return max(fa1, fb1) * max(ga0, gb0) + max(fa0, fb0) * max(ga1, gb1)


def check_product_hh(f, g, A, B, nu: float, kind: NormKind = OPERATOR,
                     integral: np.ndarray | None = None, tol: float = DEFAULT_TOL) -> IneqReport:
    """Weighted bound for the product ``fg`` of two operator monotone functions."""
    f, g = _spec(f), _spec(g)
    require_operator_monotone(f, g)
    fg = catalog_get(f"product:{f.id}:{g.id}")
    A, B = as_hermitian(A), as_hermitian(B)
    if integral is None:
        integral = hh_integral(fg, A, B, tol).value
    X = nu * matrix_function(fg, A) + (1.0 - nu) * matrix_function(fg, B) - integral
    lhs = norm(X, kind)
    rhs = weight_moments(nu).m0 * norm(B - A, kind) * _product_rhs_factor(f, g, A, B)
    w = {"functions": [f.id, g.id], "nu": nu, "norm": kind.label}
    return _report("product_hh", lhs, rhs, w)


def check_product_perturbation(f, g, A, B, kind: NormKind = OPERATOR) -> IneqReport:
    """``|||f(A)g(A) - f(B)g(B)|||`` against the product perturbation bound."""
    f, g = _spec(f), _spec(g)
    require_operator_monotone(f, g)
    fg = catalog_get(f"product:{f.id}:{g.id}")
    lhs = norm(matrix_function(fg, A) - matrix_function(fg, B), kind)
    rhs = norm(as_hermitian(B) - as_hermitian(A), kind) * _product_rhs_factor(f, g, A, B)
    return _report("product_perturbation", lhs, rhs, {"functions": [f.id, g.id], "norm": kind.label})


# -- commutator-type bounds ------------------------------------------------------


def _max_power_norm(A, B, p: float) -> float:
    return max(norm(mpower(A, p), OPERATOR), norm(mpower(B, p), OPERATOR))


def check_commutator_bounds(variant: str, A, B, X, kind: NormKind = OPERATOR, f=None, g=None,
                            nu: float | None = None, r: float | None = None,
                            alpha: float | None = None) -> IneqReport:
    """Commutator and Heinz-type bounds for positive definite ``A``, ``B``.

    ``t3``: ``|||f(A)g(A)X - Xf(B)g(B)|||`` (needs ``f``, ``g``);
    ``t4``: ``|||f(A)X - Xf(B)|||`` (needs ``f``);
    ``heinz``: difference Heinz inequality (needs ``nu`` in ``[0, 1]``);
    ``kapil_r``: ``|||A^r X - X B^r|||`` (needs ``0 < r <= 1``);
    ``kapil_alpha``: weighted Heinz bound (needs ``alpha >= 1`` and
    ``(1-alpha)/2 <= nu <= (1+alpha)/2``);
    ``eq420``: ``|||AX - XB|||`` against ``|||A^alpha X - X B^alpha|||``.
    """
    if variant not in COMMUTATOR_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    A, B, X = as_hermitian(A), as_hermitian(B), as_matrix(X)
    log = catalog_get("log")
    decompose_in_domain(log, A)
    decompose_in_domain(log, B)
    ax_xb = norm(A @ X - X @ B, kind)
    w: dict = {"variant": variant, "norm": kind.label}
    if variant in ("t3", "t4"):
        if f is None or (variant == "t3" and g is None):
            raise ValueError(f"{variant} needs function(s)")
        f = _spec(f)
        if variant == "t4":
            require_operator_monotone(f)
            lhs = norm(commutator_map(f, A, B, X), kind)
            rhs = max(_endpoint_fprime(f, A, B)) * ax_xb
            w["function"] = f.id
        else:
            g = _spec(g)
            require_operator_monotone(f, g)
            lhs = norm(commutator_map(catalog_get(f"product:{f.id}:{g.id}"), A, B, X), kind)
            rhs = ax_xb * _product_rhs_factor(f, g, A, B)
            w["functions"] = [f.id, g.id]
    elif variant == "heinz":
        if nu is None or not 0.0 <= nu <= 1.0:
            raise ValueError("heinz needs nu in [0, 1]")
        lhs = norm(heinz_difference(A, B, X, nu), kind)
        rhs = abs(2.0 * nu - 1.0) * ax_xb
        w["nu"] = nu
    elif variant == "kapil_r":
        if r is None or not 0.0 < r <= 1.0:
            raise ValueError("kapil_r needs 0 < r <= 1")
        lhs = norm(mpower(A, r) @ X - X @ mpower(B, r), kind)
        rhs = r * _max_power_norm(A, B, r - 1.0) * ax_xb
        w["r"] = r
    else:
        if alpha is None or not alpha >= 1.0:
            raise ValueError(f"{variant} needs alpha >= 1")
        pa = norm(mpower(A, alpha) @ X - X @ mpower(B, alpha), kind)
        cap = _max_power_norm(A, B, 1.0 - alpha)
        w["alpha"] = alpha
        if variant == "eq420":
            lhs = ax_xb
            rhs = cap * pa / alpha
        else:
            if nu is None or not (1.0 - alpha) / 2.0 <= nu <= (1.0 + alpha) / 2.0:
                raise ValueError("kapil_alpha needs (1-alpha)/2 <= nu <= (1+alpha)/2")
            lhs = alpha * norm(heinz_difference(A, B, X, nu), kind)
            rhs = abs(2.0 * nu - 1.0) * cap * pa
            w["nu"] = nu
    return _report("commutator_" + variant, lhs, rhs, w)


# -- perturbation bounds -------------------------------------------------------------


def check_perturbation(spec, A, B, mode: str, kind: NormKind = OPERATOR,
                       s: float | None = None, a: float | None = None) -> IneqReport:
    """``|||f(B) - f(A)|||`` against ``|||B - A|||`` times a derivative bound.

    ``refinement`` compares ``max(||f'(A)||, ||f'(B)||)`` with ``f'(a)`` for a
    common lower bound ``A, B >= a`` (default ``min(lambda_min(A),
    lambda_min(B))``); that comparison must also be non-negative for the
    report to pass.
    """
    spec = _spec(spec)
    if mode not in PERTURBATION_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "sconvex" and s is None:
        raise ValueError("sconvex mode needs s")
    _require_eligible(spec, kind, mode, s)
    A, B = as_hermitian(A), as_hermitian(B)
    lhs = norm(matrix_function(spec, B) - matrix_function(spec, A), kind)
    fa, fb = _endpoint_fprime(spec, A, B)
    d = norm(B - A, kind)
    w = {"function": spec.id, "mode": mode, "norm": kind.label}
    if mode == "convex":
        return _report("perturbation", lhs, 0.5 * (fa + fb) * d, w)
    if mode == "quasiconvex":
        return _report("perturbation", lhs, max(fa, fb) * d, w)
    if mode == "sconvex":
        w["s"] = s
        return _report("perturbation", lhs, (fa + fb) * d / (s + 1.0), w)
    floor = min(decompose_in_domain(spec, A).eigenvalues[0], decompose_in_domain(spec, B).eigenvalues[0])
    if a is None:
        a = floor
    elif not 0.0 < a <= floor:
        raise ValueError(f"a={a} is not a positive lower bound for A and B (lambda_min = {floor:.6g})")
    fpa = float(spec.deriv(1, a))
    gap = fpa - max(fa, fb)
    details = {"a": float(a), "fprime_a": fpa, "rhs_fprime_a": fpa * d, "refinement_margin": gap}
    return _report("perturbation", lhs, max(fa, fb) * d, w, details=details,
                   side_conditions=gap >= -REFINEMENT_TOL)


# -- Simpson rules ---------------------------------------------------------------------


def check_simpson(spec, A, B, rule: str, kind: NormKind = OPERATOR,
                  integral: np.ndarray | None = None, tol: float = DEFAULT_TOL) -> IneqReport:
    """Error of the 1/3 or 3/8 Simpson rule against ``C |||B-A||| max ||f'||``."""
    spec = _spec(spec)
    if rule not in SIMPSON_RULES:
        raise ValueError(f"unknown rule {rule!r}")
    require_operator_monotone(spec)
    A, B = as_hermitian(A), as_hermitian(B)
    if integral is None:
        integral = hh_integral(spec, A, B, tol).value
    est = simpson_13(spec, A, B) if rule == "onethird" else simpson_38(spec, A, B)
    lhs = norm(est - integral, kind)
    const = SIMPSON_RULES[rule]
    rhs = const * norm(B - A, kind) * max(_endpoint_fprime(spec, A, B))
    details = {"constant": const, "ratio": lhs / rhs if rhs > 0 else 0.0}
    return _report("simpson", lhs, rhs, {"function": spec.id, "rule": rule, "norm": kind.label},
                   details=details)


# -- sweeps ----------------------------------------------------------------------------------


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    dims: list = field(default_factory=lambda: [2, 3, 4, 5, 6])
    samples: int = 100
    seed: int = 42
    functions: list = field(default_factory=lambda: ["pow:0.5", "log"])
    norms: list = field(default_factory=lambda: ["op", "tr", "fro", "s:3", "kf:2"])
    nu_grid: list = field(default_factory=lambda: [0.0, 0.25, 0.5, 0.75, 1.0])
    spectrum_range: tuple = (0.25, 4.0)
    direction_samples: int = 20
    s_grid: list = field(default_factory=lambda: [0.5])
    r_grid: list = field(default_factory=lambda: [0.3, 0.5, 0.9])
    alpha_grid: list = field(default_factory=lambda: [1.0, 1.5, 2.0])
    derivative_orders: list = field(default_factory=lambda: [1, 2, 3])
    frechet_orders: list = field(default_factory=lambda: [1, 2])
    tol: float = DEFAULT_TOL

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        d = asdict(self)
        d["spectrum_range"] = list(self.spectrum_range)
        return d

    def validate(self) -> None:
        for name in ("dims", "functions", "norms", "nu_grid"):
            val = getattr(self, name)
            if not isinstance(val, (list, tuple)) or len(val) == 0:
                raise ConfigError(f"{name}: must be a non-empty list")
        if any(not isinstance(d, int) or d < 1 for d in self.dims):
            raise ConfigError("dims: entries must be positive integers")
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ConfigError("samples: must be a positive integer")
        if not isinstance(self.direction_samples, int) or self.direction_samples < 1:
            raise ConfigError("direction_samples: must be a positive integer")
        if not isinstance(self.seed, int):
            raise ConfigError("seed: must be an integer")
        for fid in self.functions:
            try:
                catalog_get(fid)
            except ValueError as exc:
                raise ConfigError(f"functions: {exc}") from exc
        for text in self.norms:
            try:
                parse_norm(text)
            except ValueError as exc:
                raise ConfigError(f"norms: {exc}") from exc
        if any(not 0.0 <= nu <= 1.0 for nu in self.nu_grid):
            raise ConfigError("nu_grid: values must lie in [0, 1]")
        if any(not 0.0 < s <= 1.0 for s in self.s_grid):
            raise ConfigError("s_grid: values must lie in (0, 1]")
        if any(not 0.0 < r <= 1.0 for r in self.r_grid):
            raise ConfigError("r_grid: values must lie in (0, 1]")
        if any(not a >= 1.0 for a in self.alpha_grid):
            raise ConfigError("alpha_grid: values must be >= 1")
        if any(n not in (0, 1, 2, 3) for n in self.derivative_orders):
            raise ConfigError("derivative_orders: values must be in 0..3")
        if any(n not in (1, 2, 3) for n in self.frechet_orders):
            raise ConfigError("frechet_orders: values must be in 1..3")
        try:
            lo, hi = self.spectrum_range
        except (TypeError, ValueError):
            raise ConfigError("spectrum_range: must be a pair") from None
        if not 0.0 < lo <= hi:
            raise ConfigError("spectrum_range: need 0 < lo <= hi")
        if not self.tol > 0:
            raise ConfigError("tol: must be positive")


def _guard(check_id: str, witness: dict, fn, *args, **kwargs) -> IneqReport:
    try:
        rep = fn(*args, **kwargs)
    except (DomainError, NonConvergenceError, IneligibleError, ValueError, np.linalg.LinAlgError) as exc:
        return _report(check_id, math.nan, math.nan, witness, error=f"{type(exc).__name__}: {exc}")
    rep.witness = {**witness, **rep.witness}
    return rep


def _sub_seed(*key: int) -> int:
    return int(np.random.SeedSequence([int(k) for k in key]).generate_state(1)[0])


def sweep_instance(cfg: SweepConfig, dim: int, index: int):
    """The ``(A, B, X)`` triple for one sweep cell."""
    rng = make_rng(cfg.seed, dim, index)
    A = random_pd_from(rng, dim, tuple(cfg.spectrum_range))
    B = random_pd_from(rng, dim, tuple(cfg.spectrum_range))
    X = random_complex(dim, rng)
    return A, B, X


def _cell_reports(cfg: SweepConfig, dim: int, index: int, specs, all_kinds) -> list[IneqReport]:
    A, B, X = sweep_instance(cfg, dim, index)
    kinds = [k for k in all_kinds if fits(k, dim)]
    base = {"seed": cfg.seed, "dim": dim, "sample": index}
    out: list[IneqReport] = []
    add = out.append

    for fi, spec in enumerate(specs):
        wf = {**base, "function": spec.id}
        integral = None
        needs_integral = spec.operator_monotone or any(
            bound_eligible(spec, k, m, s) for k in kinds for m, s in _hh_modes(cfg))
        if needs_integral:
            try:
                integral = hh_integral(spec, A, B, cfg.tol).value
            except (DomainError, NonConvergenceError) as exc:
                add(_report("hh_integral", math.nan, math.nan, wf, error=f"{type(exc).__name__}: {exc}"))
                continue
        if spec.operator_monotone:
            for n in cfg.derivative_orders:
                for nu in cfg.nu_grid:
                    add(_guard("quasiconvex_fn_norm", wf, check_quasiconvex_fn_norm, spec, A, B, nu, n))
            for n in cfg.frechet_orders:
                for ki, kind in enumerate(kinds):
                    seed = _sub_seed(cfg.seed, dim, index, fi, n, ki)
                    add(_guard("frechet_norm_bound", wf, check_frechet_norm_bound, spec, A, n, kind,
                               cfg.direction_samples, seed))
            for kind in kinds:
                for rule in SIMPSON_RULES:
                    add(_guard("simpson", wf, check_simpson, spec, A, B, rule, kind, integral=integral))
                add(_guard("commutator_t4", wf, check_commutator_bounds, "t4", A, B, X, kind, f=spec))
                add(_guard("perturbation", wf, check_perturbation, spec, A, B, "refinement", kind))
        for mode, s in _hh_modes(cfg):
            for kind in kinds:
                if not bound_eligible(spec, kind, mode, s):
                    continue
                for nu in cfg.nu_grid:
                    add(_guard("hh_weighted", wf, check_hh_weighted, spec, A, B, nu, mode, kind,
                               s=s, integral=integral))
                add(_guard("perturbation", wf, check_perturbation, spec, A, B, mode, kind, s=s))

    monotone = [s for s in specs if s.operator_monotone]
    for f in monotone:
        for g in monotone:
            if f.id == g.id:
                continue
            wp = {**base, "functions": [f.id, g.id]}
            fg = catalog_get(f"product:{f.id}:{g.id}")
            try:
                integral = hh_integral(fg, A, B, cfg.tol).value
            except (DomainError, NonConvergenceError) as exc:
                add(_report("hh_integral", math.nan, math.nan, wp, error=f"{type(exc).__name__}: {exc}"))
                continue
            for kind in kinds:
                for nu in cfg.nu_grid:
                    add(_guard("product_hh", wp, check_product_hh, f, g, A, B, nu, kind, integral=integral))
                add(_guard("product_perturbation", wp, check_product_perturbation, f, g, A, B, kind))
                add(_guard("commutator_t3", wp, check_commutator_bounds, "t3", A, B, X, kind, f=f, g=g))

    for kind in kinds:
        for nu in cfg.nu_grid:
            add(_guard("commutator_heinz", base, check_commutator_bounds, "heinz", A, B, X, kind, nu=nu))
        for r in cfg.r_grid:
            add(_guard("commutator_kapil_r", base, check_commutator_bounds, "kapil_r", A, B, X, kind, r=r))
        for alpha in cfg.alpha_grid:
            add(_guard("commutator_eq420", base, check_commutator_bounds, "eq420", A, B, X, kind,
                       alpha=alpha))
            for nu in cfg.nu_grid:
                add(_guard("commutator_kapil_alpha", base, check_commutator_bounds, "kapil_alpha",
                           A, B, X, kind, nu=nu, alpha=alpha))
    return out


def _hh_modes(cfg: SweepConfig):
    yield "convex", None
    yield "quasiconvex", None
    for s in cfg.s_grid:
        yield "sconvex", s


def run_sweep(config: SweepConfig) -> list[IneqReport]:
    """Deterministic sweep of every applicable checker over random PD pairs.

    Reports are sorted by check id and witness. If ``square_minus_one`` is
    among the functions, the known counterexample to quasi-convexity of
    ``||f(.)||`` is added once as an expected failure.
    """
    config.validate()
    specs = [catalog_get(fid) for fid in config.functions]
    kinds = [parse_norm(k) for k in config.norms]
    reports: list[IneqReport] = []
    for dim in config.dims:
        for index in range(config.samples):
            reports.extend(_cell_reports(config, dim, index, specs, kinds))
    if any(s.id == "square_minus_one" for s in specs):
        reports.append(_guard("quasiconvex_fn_norm", {"example": "square_minus_one"}, check_square_minus_one_counterexample))
    reports.sort(key=IneqReport.sort_key)
    return reports


def summarize(reports: list[IneqReport]) -> dict:
    total = len(reports)
    passed = sum(1 for r in reports if r.passed and not r.expected_fail)
    expected = sum(1 for r in reports if r.expected_fail and not r.unexpected)
    unexpected = sum(1 for r in reports if r.unexpected)
    return {"total": total, "pass": passed, "expected_fail": expected, "unexpected_fail": unexpected}

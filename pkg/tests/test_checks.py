import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import pd_pairs, pd_triples
from opineq.checks import (
    ConfigError,
    IneqReport,
    SweepConfig,
    bound_eligible,
    check_commutator_bounds,
    check_square_minus_one_counterexample,
    check_frechet_norm_bound,
    check_hh_weighted,
    check_perturbation,
    check_product_hh,
    check_product_perturbation,
    check_quasiconvex_fn_norm,
    check_simpson,
    run_sweep,
    summarize,
)
from opineq.errors import IneligibleError
from opineq.funcat import catalog_get
from opineq.hermitian import make_rng, random_pd, random_pd_from
from opineq.norms import FROBENIUS, OPERATOR, TRACE, NormKind, parse_norm
from opineq.quadrature import hh_integral, simpson_13, simpson_38

KINDS = [parse_norm(k) for k in ("op", "tr", "fro", "s:3", "kf:2")]
MONOTONE = ["pow:0.3", "pow:0.5", "log"]


def _pair(dim=3, seed=0):
    rng = make_rng(seed)
    return random_pd_from(rng, dim, (0.25, 4.0)), random_pd_from(rng, dim, (0.25, 4.0))


def test_report_margin_rule():
    r = IneqReport("x", lhs=1.0, rhs=1.0 - 1e-9, witness={})
    assert r.passed and r.margin == pytest.approx(-1e-9)
    r = IneqReport("x", lhs=1.0, rhs=1.0 - 1e-7, witness={})
    assert not r.passed and r.status == "fail" and r.unexpected
    r = IneqReport("x", lhs=math.nan, rhs=math.nan, witness={}, error="boom")
    assert not r.passed and r.unexpected and r.status == "error"


# -- quasi-convexity of ||f^(n)||

def test_quasiconvex_equal_endpoints():
    A = random_pd(3, seed=1)
    for n in range(4):
        r = check_quasiconvex_fn_norm("log", A, A, 0.37, n)
        assert r.passed and r.margin == pytest.approx(0.0, abs=1e-12)


def test_quasiconvex_log_diag_example():
    r = check_quasiconvex_fn_norm("log", np.diag([1.0, 2.0]), np.diag([3.0, 4.0]), 0.5, 1)
    assert r.lhs == pytest.approx(0.5, rel=1e-14)
    assert r.rhs == pytest.approx(1.0, rel=1e-14)
    assert r.passed


def test_square_minus_one_counterexample():
    r = check_square_minus_one_counterexample()
    assert r.lhs == pytest.approx(1.0, abs=1e-15)
    assert r.rhs == pytest.approx(0.0, abs=1e-15)
    assert r.passed is False and r.expected_fail is True
    assert r.status == "expected-fail" and not r.unexpected


def test_quasiconvex_refuses_non_monotone():
    with pytest.raises(IneligibleError):
        check_quasiconvex_fn_norm("square", np.eye(2), np.eye(2), 0.5, 1)


@given(st.sampled_from(MONOTONE), pd_pairs(), st.floats(0, 1), st.integers(1, 3))
def test_quasiconvex_property(fid, pair, nu, n):
    assert check_quasiconvex_fn_norm(fid, *pair, nu, n).passed


# -- Frechet norm bound

def test_frechet_bound_examples():
    r = check_frechet_norm_bound("log", np.eye(3), 1, OPERATOR, 50, 0)
    assert r.rhs == pytest.approx(1.0) and r.passed
    r = check_frechet_norm_bound("pow:0.5", np.diag([4.0, 9.0]), 1, OPERATOR, 200, 1)
    assert r.rhs == pytest.approx(0.25, rel=1e-14) and r.lhs <= 0.25 + 1e-8
    r = check_frechet_norm_bound("log", random_pd(3, seed=2), 2, OPERATOR, 200, 2)
    assert r.passed


# -- weighted Hermite-Hadamard bounds

def test_hh_weighted_equal_endpoints():
    A = random_pd(3, seed=3)
    for mode, s in (("convex", None), ("quasiconvex", None), ("sconvex", 0.5)):
        r = check_hh_weighted("log", A, A, 0.3, mode, TRACE, s=s)
        assert r.lhs <= 1e-9 and r.passed


def test_hh_weighted_scalar_log_example():
    r = check_hh_weighted("log", np.eye(2), 3 * np.eye(2), 0.5, "quasiconvex", OPERATOR)
    expected = abs(0.5 * math.log(3) - (3 * math.log(3) - 2) / 2)
    assert r.lhs == pytest.approx(expected, abs=1e-9)
    assert r.rhs == pytest.approx(0.5, rel=1e-14)
    assert r.passed


@given(st.sampled_from(MONOTONE), pd_pairs(max_dim=5), st.floats(0, 1),
       st.sampled_from(KINDS), st.sampled_from([("convex", None), ("quasiconvex", None),
                                                ("sconvex", 0.25), ("sconvex", 1.0)]))
def test_hh_weighted_property(fid, pair, nu, kind, mode_s):
    A, B = pair
    if not kind.tag == "kyfan" or kind.param <= A.shape[0]:
        mode, s = mode_s
        assert check_hh_weighted(fid, A, B, nu, mode, kind, s=s).passed


@pytest.mark.parametrize("nu", [0.0, 1.0])
@pytest.mark.parametrize("fid", MONOTONE)
def test_hh_endpoint_reduces_to_half_perturbation_bound(nu, fid):
    A, B = _pair(4, 7)
    for kind in KINDS:
        hh = check_hh_weighted(fid, A, B, nu, "quasiconvex", kind)
        pert = check_perturbation(fid, A, B, "quasiconvex", kind)
        assert hh.rhs == pytest.approx(0.5 * pert.rhs, rel=1e-10, abs=1e-14)


def test_hh_weighted_pow15_operator_norm_only():
    A, B = _pair(3, 8)
    r = check_hh_weighted("pow:1.5", A, B, 0.3, "sconvex", OPERATOR, s=0.5)
    assert r.passed
    with pytest.raises(IneligibleError):
        check_hh_weighted("pow:1.5", A, B, 0.3, "sconvex", TRACE, s=0.5)
    with pytest.raises(IneligibleError):
        check_hh_weighted("pow:1.5", A, B, 0.3, "quasiconvex", OPERATOR)


def test_eligibility_rules():
    assert bound_eligible(catalog_get("log"), TRACE, "quasiconvex")
    assert bound_eligible(catalog_get("exp"), OPERATOR, "convex")
    assert not bound_eligible(catalog_get("exp"), TRACE, "convex")
    assert not bound_eligible(catalog_get("pow:1.2"), OPERATOR, "sconvex", 0.1)
    assert bound_eligible(catalog_get("pow:1.7"), OPERATOR, "sconvex", 0.5)
    assert not bound_eligible(catalog_get("pow:1.7"), OPERATOR, "sconvex", 0.8)
    assert bound_eligible(catalog_get("pow:1.5"), OPERATOR, "sconvex", 0.5)
    assert not bound_eligible(catalog_get("pow:1.5"), OPERATOR, "sconvex", 0.6)
    assert not bound_eligible(catalog_get("exp"), OPERATOR, "refinement")


# -- products

def test_product_hh_with_constant_factor_matches_quasiconvex():
    A, B = _pair(4, 9)
    for fid in MONOTONE:
        for kind in KINDS:
            prod = check_product_hh(fid, "pow:0", A, B, 0.3, kind)
            single = check_hh_weighted(fid, A, B, 0.3, "quasiconvex", kind)
            assert prod.lhs == pytest.approx(single.lhs, abs=1e-10)
            assert prod.rhs == pytest.approx(single.rhs, abs=1e-10)


def test_product_hh_examples():
    A = random_pd(3, seed=10)
    assert check_product_hh("pow:0.5", "log", A, A, 0.4).lhs <= 1e-9
    A, B = _pair(4, 11)
    assert check_product_hh("pow:0.5", "log", A, B, 0.3, TRACE).passed


@given(st.sampled_from(MONOTONE), st.sampled_from(MONOTONE), pd_pairs(max_dim=5), st.sampled_from(KINDS[:4]))
def test_product_perturbation_property(f, g, pair, kind):
    assert check_product_perturbation(f, g, *pair, kind).passed


def test_product_refuses_non_monotone():
    with pytest.raises(IneligibleError):
        check_product_hh("exp", "log", np.eye(2), 2 * np.eye(2), 0.5)


# -- commutator bounds

def test_commutator_zero_x():
    A, B = _pair(3, 12)
    Z = np.zeros((3, 3))
    for variant, kw in (("t3", {"f": "pow:0.5", "g": "log"}), ("t4", {"f": "log"}), ("heinz", {"nu": 0.2}),
                        ("kapil_r", {"r": 0.5}), ("kapil_alpha", {"nu": 0.2, "alpha": 1.5}),
                        ("eq420", {"alpha": 2.0})):
        r = check_commutator_bounds(variant, A, B, Z, TRACE, **kw)
        assert r.lhs == 0.0 and r.passed


def test_commutator_heinz_half():
    A, B = _pair(3, 13)
    X = np.ones((3, 3))
    r = check_commutator_bounds("heinz", A, B, X, OPERATOR, nu=0.5)
    assert r.lhs <= 1e-12 and r.rhs == 0.0 and r.passed


def test_commutator_t4_scalar_example():
    r = check_commutator_bounds("t4", np.diag([4.0]), np.diag([9.0]), np.ones((1, 1)), OPERATOR, f="pow:0.5")
    assert r.lhs == pytest.approx(1.0, rel=1e-14)
    assert r.rhs == pytest.approx(1.25, rel=1e-14)
    assert r.passed


@pytest.mark.parametrize("variant, kw", [("heinz", {}), ("kapil_r", {"r": 1.5}), ("kapil_r", {"r": 0.0}),
                                         ("kapil_alpha", {"alpha": 0.5, "nu": 0.5}),
                                         ("kapil_alpha", {"alpha": 1.0, "nu": 1.5}), ("eq420", {}),
                                         ("t4", {}), ("bogus", {})])
def test_commutator_parameter_errors(variant, kw):
    A, B = _pair(2, 14)
    with pytest.raises(ValueError):
        check_commutator_bounds(variant, A, B, np.eye(2), OPERATOR, **kw)


@given(pd_triples(max_dim=5), st.sampled_from(KINDS[:4]), st.floats(0, 1), st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_commutator_property(triple, kind, t, alpha):
    A, B, X = triple
    nu_alpha = (1 - alpha) / 2 + t * alpha
    reports = [
        check_commutator_bounds("heinz", A, B, X, kind, nu=t),
        check_commutator_bounds("kapil_r", A, B, X, kind, r=max(t, 0.05)),
        check_commutator_bounds("kapil_alpha", A, B, X, kind, nu=nu_alpha, alpha=alpha),
        check_commutator_bounds("eq420", A, B, X, kind, alpha=alpha),
        check_commutator_bounds("t3", A, B, X, kind, f="pow:0.5", g="log"),
        check_commutator_bounds("t4", A, B, X, kind, f="pow:0.3"),
    ]
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_scale_consistency(c):
    for seed in range(20):
        rng = make_rng(300, seed)
        A, B = random_pd_from(rng, 3, (0.25, 4.0)), random_pd_from(rng, 3, (0.25, 4.0))
        X = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        for kind in KINDS[:4]:
            for variant, kw, degree in (("heinz", {"nu": 0.3}, 2.0), ("t4", {"f": "pow:0.5"}, 1.5)):
                r1 = check_commutator_bounds(variant, A, B, X, kind, **kw)
                r2 = check_commutator_bounds(variant, c * A, c * B, c * X, kind, **kw)
                assert r1.passed == r2.passed
                assert r2.margin == pytest.approx(c ** degree * r1.margin, rel=1e-8, abs=1e-12)


# -- perturbation bounds

def test_perturbation_equal_endpoints():
    A = random_pd(3, seed=15)
    for mode, s in (("convex", None), ("quasiconvex", None), ("sconvex", 0.5), ("refinement", None)):
        assert check_perturbation("pow:0.5", A, A, mode, TRACE, s=s).lhs <= 1e-12


@pytest.mark.parametrize("r", [0.3, 0.5, 0.9])
def test_refinement_strict_for_scalar_multiple(r):
    b, a = 2.0, 0.5
    A = B = b * np.eye(3)
    rep = check_perturbation(f"pow:{r}", A, B, "refinement", OPERATOR, a=a)
    assert rep.details["refinement_margin"] == pytest.approx(r * a ** (r - 1) - r * b ** (r - 1), rel=1e-12)
    assert rep.details["refinement_margin"] > 0 and rep.passed


def test_refinement_rejects_bad_lower_bound():
    A, B = _pair(3, 16)
    with pytest.raises(ValueError):
        check_perturbation("log", A, B, "refinement", OPERATOR, a=10.0)


@given(st.sampled_from(MONOTONE), pd_pairs(), st.sampled_from(KINDS[:4]))
def test_perturbation_property(fid, pair, kind):
    A, B = pair
    for mode, s in (("convex", None), ("quasiconvex", None), ("sconvex", 0.5), ("refinement", None)):
        rep = check_perturbation(fid, A, B, mode, kind, s=s)
        assert rep.passed
    assert rep.details["refinement_margin"] >= -1e-10


@given(pd_pairs(lo=0.5, hi=3.0))
def test_perturbation_pow15_sconvex(pair):
    assert check_perturbation("pow:1.5", *pair, "sconvex", OPERATOR, s=0.5).passed


def test_perturbation_log_identity_example():
    rep = check_perturbation("log", np.eye(2), 3 * np.eye(2), "quasiconvex", OPERATOR)
    assert rep.lhs == pytest.approx(math.log(3), rel=1e-14)
    assert rep.rhs == pytest.approx(2.0, rel=1e-14)


# -- Simpson rules

def test_simpson_equal_endpoints_and_constants():
    A = random_pd(3, seed=17)
    r13 = check_simpson("log", A, A, "onethird")
    r38 = check_simpson("log", A, A, "threeeighth")
    assert r13.lhs <= 1e-9 and r38.lhs <= 1e-9
    assert r13.details["constant"] == 5 / 32 and r38.details["constant"] == 25 / 288


@given(st.sampled_from(MONOTONE), pd_pairs(), st.sampled_from(KINDS[:4]), st.sampled_from(["onethird", "threeeighth"]))
def test_simpson_property(fid, pair, kind, rule):
    rep = check_simpson(fid, *pair, rule, kind)
    assert rep.passed and rep.details["ratio"] <= 1.0


@pytest.mark.parametrize("fid", MONOTONE + ["exp"])
@pytest.mark.parametrize("rule", [simpson_13, simpson_38])
def test_simpson_halving_order(fid, rule):
    # composite error over two halves shrinks by ~16 for a fourth-order rule
    spec = catalog_get(fid)
    for seed in range(10):
        A, B = _pair(3, 400 + seed)
        M = 0.5 * (A + B)
        ref = hh_integral(spec, A, B, 1e-12).value
        whole = np.linalg.norm(rule(spec, A, B) - ref, 2)
        halves = np.linalg.norm(0.5 * (rule(spec, A, M) + rule(spec, M, B)) - ref, 2)
        assert whole >= 3.6 * halves


# -- sweep

def test_sweep_count_and_determinism():
    cfg = SweepConfig(dims=[2], samples=1, functions=["pow:0.5"])
    r1, r2 = run_sweep(cfg), run_sweep(SweepConfig(dims=[2], samples=1, functions=["pow:0.5"]))
    assert [r.to_json() for r in r1] == [r.to_json() for r in r2]
    counts = Counter(r.check_id for r in r1)
    assert counts == {
        "quasiconvex_fn_norm": 3 * 5,
        "frechet_norm_bound": 2 * 5,
        "simpson": 2 * 5,
        "commutator_t4": 5,
        "perturbation": 5 + 3 * 5,
        "hh_weighted": 3 * 5 * 5,
        "commutator_heinz": 5 * 5,
        "commutator_kapil_r": 3 * 5,
        "commutator_eq420": 3 * 5,
        "commutator_kapil_alpha": 3 * 5 * 5,
    }
    assert len(r1) == 265
    assert summarize(r1)["unexpected_fail"] == 0


def test_sweep_skips_kyfan_beyond_dim():
    reps = run_sweep(SweepConfig(dims=[2], samples=1, functions=["log"], norms=["kf:3", "op"]))
    assert {r.witness["norm"] for r in reps if "norm" in r.witness} == {"op"}


def test_sweep_counterexample_expected_fail():
    reps = run_sweep(SweepConfig(dims=[2], samples=1, functions=["square_minus_one"], norms=["op"]))
    s = summarize(reps)
    assert s["expected_fail"] == 1 and s["unexpected_fail"] == 0


def test_sweep_product_pairs():
    reps = run_sweep(SweepConfig(dims=[3], samples=2, functions=["pow:0.5", "log"], norms=["op"]))
    ids = Counter(r.check_id for r in reps)
    assert ids["product_hh"] == 2 * 2 * 5 and ids["commutator_t3"] == 2 * 2
    assert summarize(reps)["unexpected_fail"] == 0


@pytest.mark.parametrize("bad", [{"functions": []}, {"dims": []}, {"samples": 0}, {"nu_grid": [1.5]},
                                 {"norms": ["s:0.5"]}, {"functions": ["nope"]}, {"spectrum_range": (2.0, 1.0)},
                                 {"bogus": 1}, {"direction_samples": 0}])
def test_sweep_config_validation(bad):
    with pytest.raises(ConfigError):
        SweepConfig.from_dict(bad)


def test_sweep_config_round_trip():
    cfg = SweepConfig(dims=[2, 3], samples=4)
    assert SweepConfig.from_dict(cfg.to_dict()) == SweepConfig(**{**cfg.to_dict(), "spectrum_range": [0.25, 4.0]})

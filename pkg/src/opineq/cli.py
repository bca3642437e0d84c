"""Command-line front end.

Exit codes: 0 success, 1 unexpected inequality failure, 2 input or config
error, 3 domain error, 4 numerical non-convergence.

Flags given on the command line override values from ``--config``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import (
    PERTURBATION_MODES,
    SIMPSON_RULES,
    ConfigError,
    SweepConfig,
    bound_eligible,
    check_perturbation,
    run_sweep,
    summarize,
)
from .errors import DomainError, IneligibleError, MatrixFormatError, NonConvergenceError
from .funcat import catalog_get
from .hermitian import as_hermitian, matrix_to_json, read_matrix
from .norms import OPERATOR, norm, parse_norm
from .opfun import derivative_norm
from .quadrature import hh_integral, simpson_13, simpson_38

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN, EXIT_NONCONV = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _csv(cast):
    def parse(text):
        try:
            return [cast(x) for x in text.split(",") if x.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opineq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the randomized inequality sweep")
    v.add_argument("--config", type=Path, help="JSON file with sweep settings")
    v.add_argument("--dims", type=_csv(int))
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--functions", type=_csv(str))
    v.add_argument("--norms", type=_csv(str))
    v.add_argument("--nu", dest="nu_grid", type=_csv(float))
    v.add_argument("--spectrum-range", dest="spectrum_range", type=_csv(float))
    v.add_argument("--direction-samples", dest="direction_samples", type=int)
    v.add_argument("--out", type=Path, help="report file (JSON array); stdout if omitted")

    b = sub.add_parser("bound", help="perturbation bounds for |||f(B) - f(A)|||")
    b.add_argument("--f", required=True, dest="function")
    b.add_argument("--A", required=True, dest="a_path", type=Path)
    b.add_argument("--B", required=True, dest="b_path", type=Path)
    b.add_argument("--norms", type=_csv(str), default=["op"])
    b.add_argument("--mode", choices=("all",) + PERTURBATION_MODES, default="all")
    b.add_argument("--s", type=float, default=0.5, help="exponent for the s-convex bound")
    b.add_argument("--out", type=Path)

    q = sub.add_parser("quadrature", help="Simpson estimates against the reference integral")
    q.add_argument("--f", required=True, dest="function")
    q.add_argument("--A", required=True, dest="a_path", type=Path)
    q.add_argument("--B", required=True, dest="b_path", type=Path)
    q.add_argument("--tol", type=float, default=1e-9)
    q.add_argument("--rules", type=_csv(str), default=list(SIMPSON_RULES))
    q.add_argument("--norms", type=_csv(str), default=["op"])
    q.add_argument("--out", type=Path)
    return p


def _emit(doc, out: Path | None) -> None:
    text = json.dumps(doc, indent=1) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _load_pair(args):
    A = read_matrix(args.a_path)
    B = read_matrix(args.b_path)
    if A.shape != B.shape:
        raise MatrixFormatError(f"{args.b_path}: dimension {B.shape[0]} differs from {args.a_path}")
    for path, M in ((args.a_path, A), (args.b_path, B)):
        try:
            as_hermitian(M)
        except ValueError as exc:
            raise MatrixFormatError(f"{path}: {exc}") from None
    return as_hermitian(A), as_hermitian(B)


def _parse_kinds(texts):
    try:
        return [parse_norm(t) for t in texts]
    except ValueError as exc:
        raise ConfigError(f"norms: {exc}") from None


def _get_function(fid):
    try:
        return catalog_get(fid)
    except ValueError as exc:
        raise ConfigError(f"f: {exc}") from None


def cmd_verify(args) -> int:
    data = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"{args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{args.config}: expected a JSON object")
    for name in ("dims", "samples", "seed", "functions", "norms", "nu_grid",
                 "spectrum_range", "direction_samples"):
        val = getattr(args, name)
        if val is not None:
            data[name] = val
    if "spectrum_range" in data:
        data["spectrum_range"] = tuple(data["spectrum_range"])
    try:
        cfg = SweepConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    reports = run_sweep(cfg)
    # JSON array with one report per line; diff-friendly and byte-stable
    lines = [json.dumps(r.to_json(), sort_keys=True) for r in reports]
    text = "[\n" + ",\n".join(lines) + "\n]\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    s = summarize(reports)
    line = (f"total={s['total']} pass={s['pass']} expected_fail={s['expected_fail']} "
            f"unexpected_fail={s['unexpected_fail']}")
    print(line, file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK if s["unexpected_fail"] == 0 else EXIT_FAIL


def cmd_bound(args) -> int:
    spec = _get_function(args.function)
    kinds = _parse_kinds(args.norms)
    A, B = _load_pair(args)
    modes = PERTURBATION_MODES if args.mode == "all" else (args.mode,)
    lhs = {}
    bounds = []
    for kind in kinds:
        lhs[kind.label] = None
        for mode in modes:
            s = args.s if mode == "sconvex" else None
            if not bound_eligible(spec, kind, mode, s):
                continue
            rep = check_perturbation(spec, A, B, mode, kind, s=s)
            lhs[kind.label] = rep.lhs
            bounds.append(rep.to_json())
    if not bounds:
        raise IneligibleError(f"no perturbation bound is established for {spec.id} in the requested norms")
    _emit({"function": spec.id, "lhs": lhs, "bounds": bounds}, args.out)
    return EXIT_OK if all(b["pass"] for b in bounds) else EXIT_FAIL


def cmd_quadrature(args) -> int:
    spec = _get_function(args.function)
    kinds = _parse_kinds(args.norms)
    for rule in args.rules:
        if rule not in SIMPSON_RULES:
            raise ConfigError(f"rules: unknown rule {rule!r}")
    if not args.tol > 0:
        raise ConfigError("tol: must be positive")
    A, B = _load_pair(args)
    ref = hh_integral(spec, A, B, args.tol)
    fprime = max(derivative_norm(spec, A, 1), derivative_norm(spec, B, 1))
    rules = {}
    for rule in args.rules:
        est = simpson_13(spec, A, B) if rule == "onethird" else simpson_38(spec, A, B)
        entry = {"constant": SIMPSON_RULES[rule], "estimate": matrix_to_json(est),
                 "error": {}, "bound": {}, "ratio": {}}
        for kind in kinds:
            err = norm(est - ref.value, kind)
            entry["error"][kind.label] = err
            if spec.operator_monotone:
                bound = SIMPSON_RULES[rule] * norm(B - A, kind) * fprime
                entry["bound"][kind.label] = bound
                entry["ratio"][kind.label] = err / bound if bound > 0 else 0.0
            else:
                entry["bound"][kind.label] = None
                entry["ratio"][kind.label] = None
        rules[rule] = entry
    doc = {
        "function": spec.id,
        "operator_monotone": spec.operator_monotone,
        "tol": args.tol,
        "max_fprime_norm": fprime,
        "reference": {"integral": matrix_to_json(ref.value), "refinement_levels": ref.refinement_levels,
                      "est_error": ref.est_error, "norm": {k.label: norm(ref.value, k) for k in kinds}},
        "rules": rules,
    }
    _emit(doc, args.out)
    over = any(r is not None and r > 1.0 + 1e-8 for e in rules.values() for r in e["ratio"].values())
    return EXIT_FAIL if over else EXIT_OK


_COMMANDS = {"verify": cmd_verify, "bound": cmd_bound, "quadrature": cmd_quadrature}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (UsageError, ConfigError, MatrixFormatError, IneligibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV


if __name__ == "__main__":
    sys.exit(main())

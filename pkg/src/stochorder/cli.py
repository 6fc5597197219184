"""Command-line front end.

Exit codes: 0 order holds / success, 1 order fails, 2 input error,
3 a theorem corpus produced an inconsistent instance.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .convexfn import ConvexFunctionRep, expected_utility, expected_utility_direct
from .dist import DiscreteDistribution, JointDiscreteDistribution, mean, stop_loss, tvar
from .distortion import (
    Distortion,
    UnsupportedDistortionError,
    rho_quantile,
    rho_survival,
    rho_tvar,
)
from .io import SchemaError, dist_from_doc, dist_to_doc, dumps, functional_from_doc, joint_to_doc, load_document
from .orders import (
    check_convex,
    check_stop_loss,
    check_supermodular_bivariate,
    check_tvar_spectrum,
    comonotonic_joint,
    comonotonic_sum,
    supermodular_falsify,
)
from .theorems import THEOREM_IDS, gap_counterexample, run_corpus

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


@dataclass
class RunConfig:
    seed: int = 42
    trials: int = 200
    tol: float = 1e-12
    format: str = "json"


class InputError(Exception):
    pass


def _univariate(ref: str, what: str) -> DiscreteDistribution:
    D = dist_from_doc(load_document(ref), what)
    if not isinstance(D, DiscreteDistribution):
        raise SchemaError(f"{what}: expected a univariate distribution, got a joint one")
    return D


def _joint(ref: str, what: str) -> JointDiscreteDistribution:
    J = dist_from_doc(load_document(ref), what)
    if not isinstance(J, JointDiscreteDistribution):
        raise SchemaError(f"{what}: expected a joint distribution")
    return J


def _emit(obj, cfg: RunConfig) -> None:
    if cfg.format == "table":
        _table(obj if isinstance(obj, dict) else obj.to_dict(), "")
    else:
        sys.stdout.write(dumps(obj) + "\n")


def _table(d: dict, prefix: str) -> None:
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            _table(v, key + ".")
        else:
            print(f"{key:<40} {dumps(v, indent=0).replace(chr(10), '')}")


def cmd_measure(args, cfg: RunConfig) -> int:
    D = _univariate(args.dist, "dist")
    out: dict = {"dist": dist_to_doc(D), "mean": mean(D)}
    if args.tvar:
        out["tvar"] = [{"p": p, "value": tvar(D, p)} for p in args.tvar]
    if args.stoploss:
        out["stop_loss"] = [{"d": d, "value": stop_loss(D, d)} for d in args.stoploss]
    if args.distortion:
        g = functional_from_doc(load_document(args.distortion), D.lower, D.upper)
        if not isinstance(g, Distortion):
            raise SchemaError("distortion: document describes a utility")
        routes = {"survival": rho_survival(g, D), "quantile": rho_quantile(g, D)}
        block = {"doc": g.to_doc(), "rho_survival": routes["survival"], "rho_quantile": routes["quantile"]}
        try:
            routes["tvar"] = rho_tvar(g, D)
            block["rho_tvar"] = routes["tvar"]
        except UnsupportedDistortionError as exc:
            block["rho_tvar"] = None
            block["rho_tvar_unsupported"] = str(exc)
        vals = list(routes.values())
        block["max_discrepancy"] = max(vals) - min(vals)
        out["distortion"] = block
    if args.utility:
        U = functional_from_doc(load_document(args.utility), D.lower, D.upper)
        if not isinstance(U, ConvexFunctionRep):
            raise SchemaError("utility: document describes a distortion")
        out["utility"] = {
            "expected_utility": expected_utility(U, D),
            "direct_sum": expected_utility_direct(U, D),
        }
    _emit(out, cfg)
    return EXIT_OK


def cmd_order(args, cfg: RunConfig) -> int:
    if args.order == "sm":
        JX, JY = _joint(args.x, "x"), _joint(args.y, "y")
        if JX.dim != JY.dim:
            raise SchemaError("x/y: dimension mismatch")
        if JX.dim == 2:
            rep = check_supermodular_bivariate(JX, JY, cfg.tol)
        else:
            rep = supermodular_falsify(JX, JY, cfg.trials, cfg.seed, cfg.tol)
    else:
        X, Y = _univariate(args.x, "x"), _univariate(args.y, "y")
        check = {"cx": check_convex, "sl": check_stop_loss, "tvar": check_tvar_spectrum}[args.order]
        rep = check(X, Y, tol=cfg.tol)
    _emit(rep, cfg)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_comonotone(args, cfg: RunConfig) -> int:
    doc = load_document(args.marginals)
    if isinstance(doc, dict) and "marginals" in doc:
        doc = doc["marginals"]
    if not isinstance(doc, list) or not doc:
        raise SchemaError("marginals: expected a nonempty list of distributions")
    marginals = []
    for i, m in enumerate(doc):
        D = dist_from_doc(m, f"marginals[{i}]")
        if not isinstance(D, DiscreteDistribution):
            raise SchemaError(f"marginals[{i}]: expected a univariate distribution")
        marginals.append(D)
    if args.sum:
        _emit(dist_to_doc(comonotonic_sum(marginals)), cfg)
    else:
        _emit(joint_to_doc(comonotonic_joint(marginals)), cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    functional = load_document(args.functional) if args.functional else None
    if functional is not None and not isinstance(functional, dict):
        raise SchemaError("functional: expected an object")
    summary = run_corpus(args.theorem, cfg.trials, cfg.seed, functional)
    _emit(summary, cfg)
    return EXIT_OK if summary.consistent else EXIT_INCONSISTENT


def cmd_counterexample(args, cfg: RunConfig) -> int:
    bundle = gap_counterexample(args.kind)
    text = dumps(bundle)
    if args.out:
        Path(args.out).write_text(text + "\n")
    _emit(bundle, cfg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--tol", type=float, default=1e-12, help="order-check slack")
    common.add_argument("--format", choices=["json", "table"], default="json")

    p = argparse.ArgumentParser(prog="stochorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", parents=[common], help="risk measures of one distribution")
    m.add_argument("--dist", required=True, help="distribution document (file, file#key or inline JSON)")
    m.add_argument("--distortion")
    m.add_argument("--utility")
    m.add_argument("--tvar", type=float, action="append")
    m.add_argument("--stoploss", type=float, action="append")
    m.set_defaults(func=cmd_measure)

    o = sub.add_parser("order", parents=[common], help="check a stochastic order")
    o.add_argument("order", choices=["cx", "sl", "sm", "tvar"])
    o.add_argument("--x", required=True)
    o.add_argument("--y", required=True)
    o.set_defaults(func=cmd_order)

    c = sub.add_parser("comonotone", parents=[common], help="comonotonic coupling of marginals")
    c.add_argument("--marginals", required=True)
    c.add_argument("--sum", action="store_true", help="emit the comonotonic sum instead of the coupling")
    c.set_defaults(func=cmd_comonotone)

    v = sub.add_parser("verify", parents=[common], help="run a generated theorem corpus")
    v.add_argument("theorem", choices=THEOREM_IDS)
    v.add_argument("--functional")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("counterexample", parents=[common], help="emit a gap counterexample bundle")
    x.add_argument("kind", choices=["utility-gap", "distortion-gap"])
    x.add_argument("--out", help="also write the bundle to this file")
    x.set_defaults(func=cmd_counterexample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    cfg = RunConfig(args.seed, args.trials, args.tol, args.format)
    try:
        return args.func(args, cfg)
    except (SchemaError, UnsupportedDistortionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

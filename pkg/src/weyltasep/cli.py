"""Command-line front end.

Subcommands: stationary, corr, partition, limdir, walk, verify.  Outputs
are machine-readable (JSON by default, CSV where tabular); rationals are
always rendered exactly as p/q, with optional decimal companions.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from . import closedform as cf
from . import tworow as tr
from . import verify as verify_mod
from .markov import exact_stationary
from .models import (
    DStarParams,
    build_dstar,
    build_multi,
    build_semipermeable,
    build_two_species,
    state_sort_key,
)
from .ratio import R, fmt_ratio, parse_ratio
from .walk import estimate_direction, svg_trajectory
from .weyl import WeylKind

FAMILY_FLAGS = {
    "b": "B",
    "c": "C",
    "d": "D",
    "bcheck": "Bcheck",
    "ccheck": "Ccheck",
}


def _default_seed() -> int:
    return int(os.environ.get("WEYLTASEP_SEED", "0"))


def _meta(args, **params) -> dict:
    return {
        "version": __version__,
        "seed": getattr(args, "seed", None),
        "parameters": params,
    }


def _emit(obj, args) -> None:
    if getattr(args, "format", "json") == "json":
        json.dump(obj, sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    else:
        _emit_csv(obj)


def _emit_csv(obj) -> None:
    rows = obj.get("dist") or obj.get("cells") or obj.get("rows") or []
    if rows:
        header = list(rows[0])
        print(",".join(header))
        for row in rows:
            print(",".join(str(row[h]) for h in header))
    else:
        print(json.dumps(obj, default=str))


def _with_decimal(text: str, digits: int | None) -> str:
    if not digits:
        return text
    val = parse_ratio(text)
    return f"{text} ({float(val):.{digits}f})"


def _params_from(args) -> DStarParams:
    return DStarParams(
        parse_ratio(args.alpha),
        parse_ratio(args.alpha_star),
        parse_ratio(args.beta),
        parse_ratio(args.beta_star),
    )


def _cmd_stationary(args) -> int:
    kind = WeylKind(FAMILY_FLAGS[args.kind], args.n) if args.kind else None
    if args.model == "multi":
        kernel = build_multi(kind, args.n)
    elif args.model == "two":
        kernel = build_two_species(kind, args.n, args.n0)
    elif args.model == "dstar":
        kernel = build_dstar(args.n, args.n0, _params_from(args))
    elif args.model == "semiperm":
        kernel = build_semipermeable(
            args.n, args.n0, parse_ratio(args.alpha), parse_ratio(args.beta)
        )
    else:  # tworow
        dist, z = tr.stationary(args.n, args.n0, _params_from(args))
        out = _meta(args, model="tworow", n=args.n, n0=args.n0)
        out["partition"] = fmt_ratio(z)
        out["dist"] = dist.to_json_obj(
            state_key=lambda c: (state_sort_key(c[0]), state_sort_key(c[1]))
        )
        _emit(out, args)
        return 0
    dist = exact_stationary(kernel)
    out = _meta(args, model=args.model, kind=args.kind, n=args.n, n0=args.n0)
    out["dist"] = dist.to_json_obj(state_key=state_sort_key)
    _emit(out, args)
    return 0


def _cmd_corr(args) -> int:
    fam = FAMILY_FLAGS[args.kind]
    corr = cf.pair_correlations(fam, args.n)
    cells = [
        {"i": i, "j": j, "p": _with_decimal(fmt_ratio(p), args.decimal)}
        for (i, j), p in sorted(corr.items())
    ]
    out = _meta(args, kind=args.kind, n=args.n)
    out["cells"] = cells
    _emit(out, args)
    return 0


def _cmd_partition(args) -> int:
    if args.model == "b":
        val = R(cf.z_b(args.n, args.n0))
    elif args.model == "d":
        val = R(cf.z_d(args.n, args.n0))
    elif args.model == "semiperm":
        val = cf.z_semiperm(
            args.n, args.n0, parse_ratio(args.alpha), parse_ratio(args.beta)
        )
    else:  # tworow
        val = tr.partition_sum(args.n, args.n0, _params_from(args))
    if args.format == "json":
        out = _meta(args, model=args.model, n=args.n, n0=args.n0)
        out["partition"] = fmt_ratio(val)
        _emit(out, args)
    else:
        print(_with_decimal(fmt_ratio(val), args.decimal))
    return 0


def _cmd_limdir(args) -> int:
    kind = WeylKind(FAMILY_FLAGS[args.kind], args.n)
    if args.method == "closed":
        vec = cf.limdir_closed(kind, args.n)
    elif args.method == "lam":
        vec = cf.limdir_exact_lam(kind, args.n)
    else:  # walk
        est = estimate_direction(kind, args.n, args.steps, args.trials, args.seed)
        print(", ".join(f"{v:.6f}" for v in est.direction))
        return 0
    text = ", ".join(_with_decimal(fmt_ratio(c), args.decimal) for c in vec.coeffs)
    if args.format == "json":
        out = _meta(args, kind=args.kind, n=args.n, method=args.method)
        out["coefficients"] = [fmt_ratio(c) for c in vec.coeffs]
        out["normalized"] = [fmt_ratio(c) for c in vec.normalized().coeffs]
        _emit(out, args)
    else:
        print(text)
    return 0


def _cmd_walk(args) -> int:
    kind = WeylKind(FAMILY_FLAGS[args.kind], args.n)
    est = estimate_direction(kind, args.n, args.steps, args.trials, args.seed)
    out = _meta(
        args, kind=args.kind, n=args.n, steps=args.steps, trials=args.trials
    )
    out["direction_estimate"] = list(est.direction)
    out["cosine_vs_closed_form"] = est.cosine_vs_closed_form
    out["acceptance_rate"] = est.acceptance_rate
    out["chambers"] = {str(list(k)): v for k, v in sorted(est.chamber_counts.items())}
    if args.svg:
        svg_trajectory(kind, args.n, min(args.steps, 2000), args.seed, args.svg)
        out["svg"] = args.svg
    _emit(out, args)
    return 0


def _cmd_verify(args) -> int:
    kwargs = {}
    if args.suite == "identities" and args.k_max:
        kwargs["k_max"] = args.k_max
    if args.suite == "lumping" and args.n_max:
        kwargs["n_max"] = args.n_max
    if args.suite == "conjecture-b" and args.n_max:
        kwargs["n"] = args.n_max
    report = verify_mod.run_suite(args.suite, **kwargs)
    _emit(report, args)
    return 0 if report["pass"] else 1


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="weyltasep",
        description="Exact exclusion processes, two-row models and alcove walks "
        "on the classical Weyl groups",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n0=True, rates=False, kind=None):
        sp.add_argument("--n", type=int, required=True)
        if n0:
            sp.add_argument("--n0", type=int, default=0)
        if kind is not None:
            sp.add_argument("--kind", choices=sorted(FAMILY_FLAGS), **kind)
        if rates:
            sp.add_argument("--alpha", default="1")
            sp.add_argument("--alpha-star", dest="alpha_star", default="1")
            sp.add_argument("--beta", default="1")
            sp.add_argument("--beta-star", dest="beta_star", default="1")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--decimal", type=int, default=0, metavar="DIGITS")

    sp = sub.add_parser("stationary", help="exact stationary distribution")
    sp.add_argument(
        "--model",
        choices=("multi", "two", "dstar", "semiperm", "tworow"),
        required=True,
    )
    common(sp, rates=True, kind={"default": None})
    sp.set_defaults(func=_cmd_stationary)

    sp = sub.add_parser("corr", help="final-pair correlations, multispecies chain")
    common(sp, n0=False, kind={"required": True})
    sp.set_defaults(func=_cmd_corr)

    sp = sub.add_parser("partition", help="partition functions")
    sp.add_argument(
        "--model", choices=("b", "d", "semiperm", "tworow"), required=True
    )
    common(sp, rates=True)
    sp.set_defaults(func=_cmd_partition, format="text")

    sp = sub.add_parser("limdir", help="limiting direction of the reduced walk")
    sp.add_argument(
        "--method", choices=("closed", "lam", "walk"), default="closed"
    )
    sp.add_argument("--steps", type=int, default=100_000)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=_default_seed())
    common(sp, n0=False, kind={"required": True})
    sp.set_defaults(func=_cmd_limdir, format="text")

    sp = sub.add_parser("walk", help="Monte Carlo alcove walk")
    sp.add_argument("--steps", type=int, default=100_000)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--svg", metavar="PATH", default=None)
    common(sp, n0=False, kind={"required": True})
    sp.set_defaults(func=_cmd_walk)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument(
        "--suite",
        choices=sorted(verify_mod.SUITES),
        required=True,
    )
    sp.add_argument("--n-max", dest="n_max", type=int, default=0)
    sp.add_argument("--k-max", dest="k_max", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_verify)

    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: stiefel, framed-model, immersion, map-sphere, cohomology,
verify.  Every command is deterministic: identical inputs produce
byte-identical outputs (verify prints wall-clock timings, which are
explicitly marked non-canonical).

Exit codes: 0 resolved, 2 input error, 3 theorem-hypothesis failure,
4 symbolic mapping-space factor; verify exits nonzero on any failed check.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bundles import framed_bundle_model, stiefel_model
from .cdga import FiniteCdga, FreeCdga, RelativeModel, cohomology
from .errors import RatimmError
from .immersions import description_to_dict, immersion_components
from .io import load_manifold, load_cdga
from .mapping import odd_sphere_mapping, sphere_map_null_model
from .series import em_series, series_product, PoincareSeries
from .sweeps import DEFAULT_SEED, run_suites

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_SYMBOLIC = 4


def _write(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _betti_lines(dims: list[int]) -> list[str]:
    degree_row = " ".join(f"{n:>3}" for n in range(len(dims)))
    rank_row = " ".join(f"{b:>3}" for b in dims)
    return [f"degree: {degree_row}", f"rank:   {rank_row}"]


def _generator_lines(cdga) -> list[str]:
    lines = []
    if isinstance(cdga, FreeCdga):
        for g in cdga.algebra.generators:
            d = cdga.differential_of_generator(g.name)
            lines.append(f"generator: {g.name}  degree {g.degree}  d = {d}")
    elif isinstance(cdga, RelativeModel):
        for g in cdga.fiber.generators:
            d = cdga.twist_of(g.name)
            lines.append(f"generator: {g.name}  degree {g.degree}  D = {d}")
    return lines


def _generator_dicts(cdga) -> list[dict]:
    out = []
    if isinstance(cdga, FreeCdga):
        for g in cdga.algebra.generators:
            out.append({"name": g.name, "degree": g.degree,
                        "differential": str(cdga.differential_of_generator(g.name))})
    elif isinstance(cdga, RelativeModel):
        for g in cdga.fiber.generators:
            out.append({"name": g.name, "degree": g.degree,
                        "differential": str(cdga.twist_of(g.name))})
    return out


def cmd_stiefel(args) -> int:
    model = stiefel_model(args.m, args.k)
    table = cohomology(model, args.max_degree, representatives=False)
    if args.format == "json":
        payload = {
            "command": "stiefel", "m": args.m, "k": args.k,
            "max_degree": args.max_degree, "label": model.label,
            "generators": _generator_dicts(model),
            "betti": list(table.dims),
        }
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"model: {model.label}"]
        lines += _generator_lines(model)
        lines += _betti_lines(table.dims)
        lines.append(f"nonzero degrees: {table.support()}")
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_framed_model(args) -> int:
    M = load_manifold(args.manifold)
    model = framed_bundle_model(M, args.k)
    table = cohomology(model, args.max_degree, representatives=False)
    if args.format == "json":
        payload = {
            "command": "framed-model", "manifold": M.name, "m": M.dimension,
            "k": args.k, "max_degree": args.max_degree, "label": model.label,
            "base": M.model.label,
            "fiber": _generator_dicts(model),
            "betti": list(table.dims),
        }
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"model: {model.label}",
                 f"base: {M.model.label or M.name}"]
        lines += _generator_lines(model)
        lines += _betti_lines(table.dims)
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_immersion(args) -> int:
    M = load_manifold(args.manifold)
    desc = immersion_components(M, args.k, args.max_degree)
    payload = description_to_dict(desc)
    if args.format == "json":
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"immersions of {M.name} in R^{M.dimension + args.k} "
                 f"(k={args.k}, N={args.max_degree})"]
        for h in desc.hypotheses:
            lines.append(f"hypothesis {h.name}: {h.status}  ({h.detail})")
        lines.append(f"connectivity: {desc.connectivity}")
        if desc.status == "hypothesis-failed":
            lines.append("no description: hypotheses failed")
        else:
            for f in desc.em_factors:
                lines.append(f"factor: {f}")
            if desc.sphere_factor is not None:
                lines.append(f"factor: Map(M,S^{desc.sphere_factor.k}) "
                             f"[{desc.sphere_factor.status}]")
            if desc.series is not None:
                lines.append(f"series: {desc.series}")
            else:
                lines.append(f"series (EM part only): {desc.em_part_series}")
            lines.append(f"growth: {desc.growth}")
        _write("\n".join(lines) + "\n", args.out)
    if desc.status == "hypothesis-failed":
        return EXIT_HYPOTHESIS
    if desc.status == "symbolic-sphere":
        return EXIT_SYMBOLIC
    return EXIT_OK


def cmd_map_sphere(args) -> int:
    M = load_manifold(args.manifold)
    if args.k % 2:
        betti = M.betti(args.k)
        factors = odd_sphere_mapping(betti, args.k)
        series = PoincareSeries.one(args.max_degree)
        for f in factors:
            series = series_product(series,
                                    em_series(f.degree, f.coefficient_dim,
                                              args.max_degree))
        if args.format == "json":
            payload = {
                "command": "map-sphere", "manifold": M.name, "k": args.k,
                "max_degree": args.max_degree, "component": "any",
                "factors": [{"kind": "em", "degree": f.degree,
                             "multiplicity": f.coefficient_dim} for f in factors],
                "betti": series.extend(args.max_degree),
            }
            _write(json.dumps(payload, indent=2) + "\n", args.out)
        else:
            lines = [f"Map({M.name}, S^{args.k}) is an Eilenberg-MacLane product:"]
            lines += [f"factor: {f}" for f in factors]
            lines.append(f"series: {series}")
            _write("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    model = sphere_map_null_model(M.model, args.k)
    table = cohomology(model, args.max_degree, representatives=False)
    if args.format == "json":
        payload = {
            "command": "map-sphere", "manifold": M.name, "k": args.k,
            "max_degree": args.max_degree, "component": "null",
            "generators": _generator_dicts(model),
            "betti": list(table.dims),
        }
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"model: {model.label} (null component)"]
        lines += _generator_lines(model)
        lines += _betti_lines(table.dims)
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_cohomology(args) -> int:
    cdga = load_cdga(args.file)
    table = cohomology(cdga, args.max_degree, representatives=False)
    dense = cohomology(cdga, args.max_degree, representatives=False, engine="dense")
    if table.dims != dense.dims:
        raise RatimmError("sparse and dense eliminators disagree; please report")
    if args.format == "json":
        payload = {
            "command": "cohomology", "label": cdga.label,
            "max_degree": args.max_degree, "betti": list(table.dims),
        }
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"model: {cdga.label or '(unnamed)'}"]
        lines += _betti_lines(table.dims)
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suites(args.suite, seed=args.seed)
    lines = [f"verification suite: {args.suite} "
             "(timings are informational, non-canonical)"]
    lines += [r.line() for r in results]
    failures = sum(1 for r in results if not r.ok)
    lines.append(f"checks: {len(results)}  failures: {failures}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratimm",
        description="Exact rational-homotopy computations for Stiefel bundles "
                    "and spaces of immersions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--max-degree", type=int, default=20,
                       help="truncation degree for Betti tables (default 20)")
        p.add_argument("--format", choices=["table", "json"], default="table")
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("stiefel", help="model and Betti table of V_m(R^{m+k})")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_stiefel)

    p = sub.add_parser("framed-model",
                       help="relative model of the framed tangent bundle")
    p.add_argument("--manifold", required=True, help="manifold spec file")
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_framed_model)

    p = sub.add_parser("immersion",
                       help="component description of Imm(M, R^{m+k})")
    p.add_argument("--manifold", required=True, help="manifold spec file")
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_immersion)

    p = sub.add_parser("map-sphere",
                       help="model of Map(M, S^k) (null component for k even)")
    p.add_argument("--manifold", required=True, help="manifold spec file")
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_map_sphere)

    p = sub.add_parser("cohomology", help="Betti table of a CDGA file")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("verify", help="run the invariant verification suites")
    p.add_argument("--suite", choices=["core", "models", "immersion", "all"],
                   default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_degree", 0) < 0:
        print("error: --max-degree must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except (RatimmError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

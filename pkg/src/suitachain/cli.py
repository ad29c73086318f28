"""Command-line surface: analyze domains, run the validation corpus, sweep grids.

Exit codes: 0 success, 2 spec/argument parse error, 3 solver fault,
4 chain ordering violation, 5 validation suite failure.  All randomness
flows from --seed; identical arguments produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, replace

import numpy as np

from . import __version__
from .bergman import build_model, build_quadrature_adapted, kernel_at
from .chain import (
    disc_chain_oracle,
    evaluate_chain,
    evaluate_chain_multi,
    isoperimetric_deficit,
    monotonicity_check,
    report_csv_header,
    report_csv_row,
    report_to_json,
)
from .errors import (
    BasisDegenerate,
    ChainViolation,
    ContourNotFound,
    DomainSpecError,
    InvalidCount,
    PointOutsideDomain,
    PoleEvaluation,
    PoleOutsideDomain,
    RadiusTooLarge,
    ResolutionTooLow,
    SolveFailed,
)
from .geometry import (
    Annulus,
    Ball,
    Disc,
    Ellipse,
    FourierCurve,
    Polydisc,
    Polygon,
    load_domain,
)
from .green import (
    SolverConfig,
    capacity_circle_mean,
    capacity_robin,
    disc_oracle,
    profile_to_csv,
    solve,
    sublevel_profile,
)
from .multidim import azukawa_volume, kernel_distance_gap, kernel_indicatrix_gap

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_SOLVER = 3
EXIT_CHAIN = 4
EXIT_VALIDATE = 5

SOLVER_ERRORS = (SolveFailed, ContourNotFound, BasisDegenerate, ResolutionTooLow,
                 RadiusTooLarge, PoleOutsideDomain, PointOutsideDomain,
                 PoleEvaluation, InvalidCount)

DEFAULT_T_GRID = (-3.0, -0.2, 8)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="suitachain",
        description="Bergman kernel / capacity / sublevel-volume chain verification")
    sub = p.add_subparsers(dest="command", required=True)
    for name, blurb in (("analyze", "chain report and sublevel profile per point"),
                        ("validate", "run the built-in invariant suite"),
                        ("sweep", "chain rows over a point list and level grid")):
        q = sub.add_parser(name, help=blurb)
        q.add_argument("--spec", help="domain spec JSON file")
        q.add_argument("--points", help="comma-separated complex points, e.g. '0.5,0.3+0.2j'")
        q.add_argument("--t-grid", dest="t_grid", help="level grid 'min,max,count' with min<max<0")
        q.add_argument("--seed", type=int, default=20260817, help="RNG seed (default 20260817)")
        q.add_argument("--out", help="output directory (default $SUITACHAIN_OUT or '.')")
        q.add_argument("--resolution", type=int, help="contour/quadrature resolution override")
        q.add_argument("--degree", type=int, help="Bergman basis degree override")
        q.add_argument("--tol", type=float, help="equality/defect tolerance override")
        q.add_argument("--collocation", type=int, help="boundary collocation count override")
    return p


def _parse_points(text):
    if text is None:
        raise DomainSpecError("--points is required")
    pts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            pts.append(complex(tok))
        except ValueError as exc:
            raise DomainSpecError(f"bad point {tok!r}: {exc}") from exc
    if not pts:
        raise DomainSpecError("point list is empty")
    return pts


def _parse_t_grid(text):
    if text is None:
        lo, hi, n = DEFAULT_T_GRID
    else:
        try:
            lo_s, hi_s, n_s = text.split(",")
            lo, hi, n = float(lo_s), float(hi_s), int(n_s)
        except ValueError as exc:
            raise DomainSpecError(f"bad --t-grid {text!r}: expected min,max,count") from exc
    if not (lo < hi < 0.0) or n < 2:
        raise DomainSpecError("--t-grid needs min < max < 0 and count >= 2")
    return np.linspace(lo, hi, n)


def _config(args) -> SolverConfig:
    kw = {"seed": args.seed}
    if args.resolution is not None:
        kw["contour_resolution"] = args.resolution
        kw["bergman_resolution"] = args.resolution
    if args.degree is not None:
        kw["bergman_degree"] = args.degree
    if args.tol is not None:
        kw["equality_tol"] = args.tol
        kw["defect_tol"] = args.tol
    if args.collocation is not None:
        kw["collocation_count"] = args.collocation
        kw["validation_count"] = 2 * args.collocation + 1
    return SolverConfig(**kw)


def _out_dir(args) -> str:
    out = args.out or os.environ.get("SUITACHAIN_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _audit(args, config: SolverConfig, extra=None) -> dict:
    ident = {"command": args.command, "config": asdict(config),
             "points": args.points, "t_grid": args.t_grid}
    if extra:
        ident.update(extra)
    return {
        "version": __version__,
        "config_hash": hashlib.sha256(_canonical(ident).encode()).hexdigest()[:16],
        "seed": config.seed,
        "defect_tol": config.defect_tol,
        "equality_tol": config.equality_tol,
    }


def _write_json(path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def cmd_analyze(args) -> int:
    try:
        domain = load_domain(args.spec) if args.spec else None
        if domain is None:
            raise DomainSpecError("--spec is required")
        points = _parse_points(args.points)
        grid = _parse_t_grid(args.t_grid)
    except (DomainSpecError, OSError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC

    config = _config(args)
    out = _out_dir(args)
    audit = _audit(args, config, {"spec": args.spec})
    try:
        for i, z in enumerate(points):
            report = evaluate_chain(domain, z, float(grid[0]), float(grid[-1]), config)
            doc = report_to_json(report)
            doc["audit"] = audit
            _write_json(os.path.join(out, f"chain_point_{i:02d}.json"), doc)

            sol = solve(domain, z, config)
            profile = sublevel_profile(sol, grid, config)
            profile_to_csv(profile, os.path.join(out, f"profile_point_{i:02d}.csv"),
                           audit)
    except ChainViolation as exc:
        print(f"chain violation at link {exc.link}: magnitude {exc.magnitude:.3e}",
              file=sys.stderr)
        return EXIT_CHAIN
    except SOLVER_ERRORS as exc:
        print(f"solver fault: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        domain = load_domain(args.spec) if args.spec else None
        if domain is None:
            raise DomainSpecError("--spec is required")
        points = _parse_points(args.points)
        grid = _parse_t_grid(args.t_grid)
    except (DomainSpecError, OSError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC

    config = _config(args)
    out = _out_dir(args)
    audit = _audit(args, config, {"spec": args.spec})
    rows = []
    try:
        for z in points:
            for rep in evaluate_chain_multi(domain, z, list(grid), config):
                rows.append(report_csv_row(rep))
    except ChainViolation as exc:
        print(f"chain violation at link {exc.link}: magnitude {exc.magnitude:.3e}",
              file=sys.stderr)
        return EXIT_CHAIN
    except SOLVER_ERRORS as exc:
        print(f"solver fault: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    with open(os.path.join(out, "sweep.csv"), "w") as fh:
        for key in sorted(audit):
            fh.write(f"# {key}: {audit[key]}\n")
        fh.write(report_csv_header() + "\n")
        fh.write("\n".join(rows) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate: the built-in invariant corpus


def _corpus_domains():
    square = Polygon((1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j))
    blob = FourierCurve((0.0, 0.08, 0.0, 1.0, 0.12))
    return [
        ("disc", Disc(0.0, 1.0), 0.5 + 0.0j),
        ("ellipse", Ellipse(0.0, 2.0, 1.0), 0.0j),
        ("square", square, 0.3 + 0.2j),
        ("blob", blob, 0.1 + 0.0j),
    ]


def _run_checks(config: SolverConfig):
    checks = []

    def record(name, passed, margin, limit, detail=""):
        checks.append({"name": name, "passed": bool(passed),
                       "margin": float(margin), "limit": float(limit),
                       "detail": detail})

    def guarded(name, limit, fn):
        try:
            passed, margin, detail = fn()
            record(name, passed, margin, limit, detail)
        except Exception as exc:  # a crash in a check is a failure, not an abort
            record(name, False, float("nan"), limit, f"{type(exc).__name__}: {exc}")

    corpus = _corpus_domains()
    # deep grid: central differences resolve dVol/dt for the co-area check;
    # full grid: top level close enough to 0 for the f endpoint limits
    levels_deep = np.linspace(-3.0, -0.3, 20)
    levels_full = np.linspace(-3.0, -0.003, 20)
    solutions = {}
    profiles = {}
    profiles_deep = {}

    def solve_corpus():
        worst = 0.0
        for name, dom, pole in corpus:
            sol = solve(dom, pole, config)
            solutions[name] = sol
            worst = max(worst, sol.residual)
        return worst < config.defect_tol, config.defect_tol - worst, \
            f"max boundary defect {worst:.3e}"

    guarded("boundary-defect", config.defect_tol, solve_corpus)

    def negativity():
        rng = np.random.default_rng(np.random.SeedSequence(config.seed + 1))
        worst = -np.inf
        for name, dom, pole in corpus:
            if name not in solutions:
                raise SolveFailed("no solution available")
            sol = solutions[name]
            xmin, xmax, ymin, ymax = dom.bounding_box()
            pts = []
            while len(pts) < 1000:
                cand = (rng.uniform(xmin, xmax, 4000)
                        + 1j * rng.uniform(ymin, ymax, 4000))
                cand = cand[dom.contains_many(cand)]
                cand = cand[np.abs(cand - pole) > 1e-6]
                pts.extend(cand.tolist())
            worst = max(worst, float(np.max(sol.evaluate_many(np.array(pts[:1000])))))
        return worst < 0.0, -worst, f"max interior G {worst:.3e}"

    guarded("green-negativity", 0.0, negativity)

    def oracle_agreement():
        sol = solutions["disc"]
        oracle = disc_oracle(0.0, 1.0, 0.5)
        g = np.linspace(-0.95, 0.95, 20)
        zz = (g[:, None] + 1j * g[None, :]).ravel()
        zz = zz[np.abs(zz) < 0.93]
        zz = zz[np.abs(zz - 0.5) > 1e-3]
        diff = float(np.max(np.abs(sol.evaluate_many(zz) - oracle.evaluate_many(zz))))
        return diff < 1e-6, 1e-6 - diff, f"max |G_solve - G_oracle| {diff:.3e}"

    guarded("disc-oracle-agreement", 1e-6, oracle_agreement)

    def capacity_cross():
        worst = 0.0
        for name in ("disc", "ellipse"):
            sol = solutions[name]
            delta = sol.domain.boundary_distance(sol.pole)
            robin = capacity_robin(sol)
            for frac in (0.2, 0.45, 0.7):
                mean = capacity_circle_mean(sol, frac * delta)
                worst = max(worst, abs(robin - mean))
        return worst < 1e-5, 1e-5 - worst, f"max estimator split {worst:.3e}"

    guarded("capacity-cross-estimators", 1e-5, capacity_cross)

    def build_profiles():
        for name, dom, pole in corpus:
            profiles[name] = sublevel_profile(solutions[name], levels_full, config)
            profiles_deep[name] = sublevel_profile(solutions[name], levels_deep, config)
        return True, 0.0, \
            f"{len(corpus)} domains x ({len(levels_full)} + {len(levels_deep)}) levels"

    guarded("profiles-resolved", 0.0, build_profiles)

    def flux_identity():
        worst = 0.0
        for name in profiles_deep:
            worst = max(worst,
                        float(np.max(np.abs(profiles_deep[name].flux - 2 * np.pi))))
        return worst < 1e-3, 1e-3 - worst, f"max |flux - 2pi| {worst:.3e}"

    guarded("flux-identity", 1e-3, flux_identity)

    def coarea():
        worst = 0.0
        for name in profiles_deep:
            pr = profiles_deep[name]
            rel = np.abs(pr.dvol_dt[1:-1] - pr.coarea[1:-1]) / pr.coarea[1:-1]
            worst = max(worst, float(np.max(rel)))
        return worst < 0.05, 0.05 - worst, f"max interior co-area residual {worst:.2%}"

    guarded("coarea-consistency", 0.05, coarea)

    def monotonic_f():
        count = sum(len(monotonicity_check(profiles[name], 1e-3)) for name in profiles)
        return count == 0, float(-count), f"{count} violating level pairs"

    guarded("f-monotonicity", 1e-3, monotonic_f)

    def endpoints():
        worst = 0.0
        for name in profiles:
            pr = profiles[name]
            sol = solutions[name]
            hi = abs(pr.f[-1] * sol.domain.area() / np.pi - 1.0)
            c2 = capacity_robin(sol) ** 2
            lo = abs(pr.f[0] / c2 - 1.0)
            worst = max(worst, hi, lo)
        return worst < 0.02, 0.02 - worst, f"max endpoint deviation {worst:.2%}"

    guarded("f-endpoints", 0.02, endpoints)

    def isoperimetric():
        worst = np.inf
        for name in profiles:
            worst = min(worst, float(np.min(isoperimetric_deficit(profiles[name]))),
                        float(np.min(isoperimetric_deficit(profiles_deep[name]))))
        return worst > -1e-3, worst + 1e-3, f"min deficit {worst:.3e}"

    guarded("isoperimetric", -1e-3, isoperimetric)

    def mc_agreement():
        bad = sum(int(np.count_nonzero(~profiles[name].reliable))
                  + int(np.count_nonzero(~profiles_deep[name].reliable))
                  for name in profiles)
        return bad == 0, float(-bad), f"{bad} levels flagged by grid/MC cross-check"

    guarded("volume-cross-check", 0.0, mc_agreement)

    def _combined(rep):
        return [max(rss, config.equality_tol * max(abs(rep.values[i]),
                                                   abs(rep.values[i + 1])))
                for i, rss in enumerate(rep.link_tolerances)]

    def suita_strict():
        ann = Annulus(0.0, 0.2, 1.0)
        rep = evaluate_chain(ann, 0.5, -2.5, -1.9, config)
        gap = rep.gaps[1]
        need = 10.0 * _combined(rep)[1]
        return bool(rep.strict[1]), gap - need, \
            f"pi K - c^2 = {gap:.3e} vs 10x tol {need:.3e}"

    guarded("suita-strict-annulus", 0.0, suita_strict)

    def chain_ordering():
        # an ordering fault is treated as under-resolution: retry harder once
        worst = np.inf
        retried = 0
        for name, dom, pole in corpus:
            try:
                rep = evaluate_chain(dom, pole, -2.0, -1.0, config)
            except ChainViolation:
                hard = replace(config,
                               bergman_degree=config.bergman_degree + 18,
                               contour_resolution=config.contour_resolution * 3 // 2)
                rep = evaluate_chain(dom, pole, -2.0, -1.0, hard)
                retried += 1
            worst = min(worst, min(g / c for g, c in zip(rep.gaps, _combined(rep))))
        return True, worst, f"min gap/tolerance {worst:.3f}, {retried} retried"

    guarded("chain-ordering", 0.0, chain_ordering)

    def multidim_exact():
        worst = max(
            abs(kernel_distance_gap(Ball((0, 0), 1.0), (0, 0))),
            abs(kernel_distance_gap(Polydisc((0, 0), (1, 1)), (0, 0)) - 1 / np.pi ** 2),
            abs(azukawa_volume(Ball((0, 0), 1.0), (0, 0)).gap),
            abs(azukawa_volume(Polydisc((0, 0), (1, 1)), (0, 0)).gap - np.pi ** 2 / 2),
            abs(kernel_indicatrix_gap(Ball((0, 0), 1.0), (0, 0))),
            abs(kernel_indicatrix_gap(Polydisc((0, 0), (1, 1)), (0, 0))),
        )
        return worst < 1e-12, 1e-12 - worst, f"max closed-form deviation {worst:.3e}"

    guarded("multidim-closed-forms", 1e-12, multidim_exact)
    checks[-1]["ndim"] = 2  # C^n results carry their complex dimension

    def scale_covariance():
        base = np.array(disc_chain_oracle(0.0, 1.0, 0.0, -2.0, -1.0).values)
        worst = 0.0
        for r in (0.5, 2.0, 3.5):
            scaled = np.array(disc_chain_oracle(0.0, r, 0.0, -2.0, -1.0).values)
            worst = max(worst, float(np.max(np.abs(scaled * r ** 2 - base))))
        return worst < 1e-12, 1e-12 - worst, f"max covariance defect {worst:.3e}"

    guarded("scale-covariance", 1e-12, scale_covariance)

    def kernel_oracle():
        rule = build_quadrature_adapted(Disc(0.0, 1.0), config.bergman_resolution)
        model = build_model(Disc(0.0, 1.0), 0.0, config.bergman_degree, rule)
        worst = 0.0
        for rr in (0.0, 0.3, 0.55, 0.75):
            z = rr * np.exp(0.7j)
            exact = 1.0 / (np.pi * (1.0 - rr * rr) ** 2)
            worst = max(worst, abs(kernel_at(model, z) - exact) / exact)
        return worst < 1e-5, 1e-5 - worst, f"max relative kernel error {worst:.3e}"

    guarded("kernel-disc-oracle", 1e-5, kernel_oracle)

    return checks


def cmd_validate(args) -> int:
    config = _config(args)
    out = _out_dir(args)
    audit = _audit(args, config)
    checks = _run_checks(config)

    for c in checks:
        tag = "PASS" if c["passed"] else "FAIL"
        print(f"{tag} {c['name']}: {c['detail']} (margin {c['margin']:.3e})")

    _write_json(os.path.join(out, "validate_report.json"),
                {"schema": "suitachain-validate/1", "audit": audit,
                 "passed": all(c["passed"] for c in checks), "checks": checks})

    failing = [c["name"] for c in checks if not c["passed"]]
    if failing:
        print(f"validate failed: {failing[0]}", file=sys.stderr)
        return EXIT_VALIDATE
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        handler = {"analyze": cmd_analyze, "validate": cmd_validate,
                   "sweep": cmd_sweep}[args.command]
        return handler(args)
    except ValueError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())

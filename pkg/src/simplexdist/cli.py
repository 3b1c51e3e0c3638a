"""Command-line interface.

Subcommands: pdf, sample, moments, logratio, poly, norm, verify.
Parameter documents are JSON files with the fields
family, alpha, beta, gamma, n, sigma, tau, kappa, lambda, a, b, c
(absent fields omitted).  Exit codes: 0 success, 1 data or verification
failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analytics as an
from . import normalization as nz
from . import sympoly as sp
from .distributions import (FamilyParams, G4B, Dirichlet, DirichletMixture,
                            InverseSchlomilch, Schlomilch, SchlomilchMixture,
                            Superellipsoid, log_pdf, params_from_dict, sample)
from .errors import SimplexDistError
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2


def _fmt(x: float) -> str:
    """17 significant digits: round-trip exact for doubles."""
    return format(float(x), ".17g")


def _load_params(path: str) -> FamilyParams:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return params_from_dict(doc)


def _point_columns(params: FamilyParams) -> int:
    if isinstance(params, Superellipsoid):
        return params.dim - 1
    return params.dim


def _parse_point(text: str, ncols: int) -> np.ndarray:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != ncols:
        raise ValueError(f"expected {ncols} coordinates, got {len(parts)}")
    return np.array([float(p) for p in parts])


def _iter_point_records(args, ncols: int):
    """Yield (record_id, text) pairs from --points file and/or inline points."""
    if args.points:
        with open(args.points, "r", encoding="utf-8") as fh:
            first = fh.read(1)
            fh.seek(0)
            if first == "[":
                for i, row in enumerate(json.load(fh)):
                    yield f"{args.points}:{i}", ",".join(str(v) for v in row)
            else:
                for i, line in enumerate(fh):
                    line = line.strip()
                    if not line or line.lower().startswith(("x1,", "x1 ")):
                        continue
                    yield f"{args.points}:{i}", line
    for i, text in enumerate(args.point or []):
        yield f"arg:{i}", text


def cmd_pdf(args) -> int:
    params = _load_params(args.params)
    ncols = _point_columns(params)
    bad = 0
    rows = []
    for rec_id, text in _iter_point_records(args, ncols):
        try:
            pt = _parse_point(text, ncols)
            val = log_pdf(params, pt)
        except (ValueError, SimplexDistError) as exc:
            print(f"error: record {rec_id}: {exc}", file=sys.stderr)
            bad += 1
            continue
        rows.append((pt, val))
    if args.output == "json":
        doc = [{"point": list(map(float, pt)), "log_pdf": val} for pt, val in rows]
        print(json.dumps(doc, indent=2))
    else:
        header = [f"x{i+1}" for i in range(ncols)] + ["log_pdf"]
        print(",".join(header))
        for pt, val in rows:
            print(",".join([_fmt(v) for v in pt] + [_fmt(val)]))
    if not rows and bad == 0:
        print("error: no points supplied (use --points or positional points)",
              file=sys.stderr)
        return EXIT_USAGE
    return EXIT_DATA if bad else EXIT_OK


def cmd_sample(args) -> int:
    params = _load_params(args.params)
    pts = sample(params, args.seed, args.count)
    ncols = pts.shape[1]
    if args.output == "json":
        print(json.dumps({"family": type(params).__name__.lower(),
                          "seed": args.seed,
                          "count": args.count,
                          "samples": [[float(v) for v in row] for row in pts]}))
    else:
        print(",".join(f"x{i+1}" for i in range(ncols)))
        for row in pts:
            print(",".join(_fmt(v) for v in row))
    return EXIT_OK


def _moments_report(params: FamilyParams, args) -> dict:
    if isinstance(params, Dirichlet):
        mean, cov = an.dirichlet_moments(params.alpha.array)
        return {"mean": {"value": mean.tolist(), "method": "closed"},
                "covariance": {"value": cov.tolist(), "method": "closed"}}
    if an.is_tilt_family(params) and params.n in (1, 2):
        mean, cov = an.sm_tilt_covariance(params.alpha.array, params.beta.array, params.n)
        second_method = "closed" if params.n == 2 else "integral1d"
        return {"mean": {"value": mean.tolist(), "method": "closed"},
                "covariance": {"value": cov.tolist(), "method": second_method}}
    if an.is_tilt_family(params):
        mean = an.sm_tilt_mean(params.alpha.array, params.beta.array, params.n)
        mean_method = "closed" if params.n >= 1 else "integral1d"
        k = params.dim
        eye = np.eye(k, dtype=int)
        second = np.array([[an.sm_tilt_moment(params.alpha.array, params.beta.array,
                                              params.n, eye[i] + eye[j])
                            for j in range(k)] for i in range(k)])
        cov = second - np.outer(mean, mean)
        method = "closed" if 2 <= params.n else "integral1d"
        return {"mean": {"value": mean.tolist(), "method": mean_method},
                "covariance": {"value": cov.tolist(), "method": method}}
    # generic families: Monte Carlo
    k = _point_columns(params)
    ests = [an.mc_estimate(params, lambda p, i=i: p[:, i], args.count, args.seed)
            for i in range(k)]
    mean = [e.estimate for e in ests]
    se = [e.std_error for e in ests]
    pts = sample(params, args.seed, args.count)
    cov = np.cov(pts.T, ddof=1)
    return {"mean": {"value": mean, "std_error": se, "method": "mc",
                     "n_samples": args.count, "seed": args.seed},
            "covariance": {"value": np.atleast_2d(cov).tolist(), "method": "mc"}}


def cmd_moments(args) -> int:
    params = _load_params(args.params)
    report = {"family": json.load(open(args.params))["family"]}
    report.update(_moments_report(params, args))
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _parse_quads(text: str, k: int) -> list[tuple[int, int, int, int]]:
    quads = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        idx = [int(v) for v in chunk.split(",")]
        if len(idx) != 4:
            raise ValueError(f"expected i,j,k,l got {chunk!r}")
        if any(v < 1 or v > k for v in idx):
            raise ValueError(f"indices must be in 1..{k}: {chunk!r}")
        quads.append(tuple(v - 1 for v in idx))
    return quads


def cmd_logratio(args) -> int:
    params = _load_params(args.params)
    if not isinstance(params, (Dirichlet, Schlomilch, DirichletMixture, SchlomilchMixture)):
        print("error: log-ratio statistics apply to the simplex mixture families",
              file=sys.stderr)
        return EXIT_USAGE
    k = params.dim
    if args.pairs:
        quads = _parse_quads(args.pairs, k)
    else:
        quads = [(i, k - 1, j, k - 1) for i in range(k - 1) for j in range(i, k - 1)]
    stats = an.logratio_stats(params, quads)
    report = {
        "family": json.load(open(args.params))["family"],
        "method": stats.method,
        "means": [{"i": i + 1, "j": j + 1, "value": v}
                  for (i, j), v in sorted(stats.means.items())],
        "covariances": [{"i": i + 1, "j": j + 1, "k": kk + 1, "l": ll + 1, "value": v}
                        for (i, j, kk, ll), v in sorted(stats.covariances.items())],
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _parse_vector(text: str) -> np.ndarray:
    return np.array([float(v) for v in text.split(",") if v.strip()])


def cmd_poly(args) -> int:
    gamma = _parse_vector(args.gamma)
    k = gamma.size
    alpha = _parse_vector(args.alpha) if args.alpha else np.ones(k)
    if alpha.size != k:
        print("error: alpha and gamma must have equal length", file=sys.stderr)
        return EXIT_USAGE
    standard = bool(np.all(alpha == 1.0))
    z = args.degree
    report = {"alpha": alpha.tolist(), "gamma": gamma.tolist(), "degree": z,
              "standard": standard}
    if float(z) == int(z) and z >= 0:
        n = int(z)
        report["h"] = {"value": sp.deformed_h(alpha, gamma, n), "method": "closed"}
        report["power_sums"] = [sp.power_sum(alpha, gamma, d) for d in range(1, max(n, 1) + 1)]
        if standard:
            report["q"] = {"value": sp.symmetric_mean_q(gamma, n), "method": "closed"}
    else:
        if not standard:
            print("error: fractional degree is defined for the standard "
                  "(alpha = 1) polynomials only", file=sys.stderr)
            return EXIT_USAGE
        report["h"] = {"value": sp.fractional_h(gamma, z, rel_tol=args.tol),
                       "method": "quadrature"}
        report["q"] = {"value": sp.fractional_q(gamma, z, rel_tol=args.tol),
                       "method": "quadrature"}
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_norm(args) -> int:
    alpha = _parse_vector(args.alpha)
    gamma = _parse_vector(args.gamma)
    if alpha.size != gamma.size:
        print("error: alpha and gamma must have equal length", file=sys.stderr)
        return EXIT_USAGE
    n, sigma = args.n, args.sigma
    values = {"multinomial": nz.i_multinomial(alpha, gamma, n, sigma)}
    if sigma == 1.0:
        values["closed_sigma1"] = nz.i_closed_sigma1(alpha, gamma, n)
    quad = nz.i_quadrature(alpha, gamma, n, sigma, rel_tol=args.tol)
    values["quadrature"] = quad.value
    values["dual"] = nz.i_dual(alpha, gamma, n, sigma, rel_tol=args.tol)
    vals = list(values.values())
    max_dev = max(abs(a - b) / max(abs(a), abs(b))
                  for i, a in enumerate(vals) for b in vals[i + 1:])
    report = {"alpha": alpha.tolist(), "gamma": gamma.tolist(), "n": n, "sigma": sigma,
              "values": values, "max_pairwise_rel_deviation": max_dev,
              "quadrature_error_estimate": quad.error_estimate,
              "quadrature_converged": quad.converged}
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else None
    try:
        results = run_suites(names, draws=args.count, tol=args.tol, seed=args.seed)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    failures = [r for r in results if not r.passed]
    if args.output == "json":
        print(json.dumps({
            "checks": [{"suite": r.suite, "name": r.name, "passed": r.passed,
                        "detail": r.detail} for r in results],
            "n_checks": len(results),
            "n_failed": len(failures),
        }, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} [{r.suite}] {r.name}: {r.detail}")
        print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    if failures:
        for r in failures:
            print(f"error: failed identity: [{r.suite}] {r.name} ({r.detail})",
                  file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexdist",
        description="Densities, samplers, moments and verification for "
                    "distribution families on the probability simplex.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, params=True):
        if params:
            p.add_argument("--params", required=True, help="JSON parameter document")
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--output", choices=("csv", "json"), default="csv")

    p = sub.add_parser("pdf", help="evaluate log-densities at points")
    add_common(p)
    p.add_argument("--points", help="CSV or JSON file of points, one per record")
    p.add_argument("point", nargs="*", help="inline points like 0.2,0.3,0.5")
    p.set_defaults(func=cmd_pdf)

    p = sub.add_parser("sample", help="draw seeded samples")
    add_common(p)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("moments", help="means and covariances")
    add_common(p)
    p.add_argument("--count", type=int, default=100_000,
                   help="Monte Carlo sample size for families without closed forms")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("logratio", help="log-ratio means and covariances")
    add_common(p)
    p.add_argument("--pairs", help="semicolon-separated 1-based quads i,j,k,l")
    p.set_defaults(func=cmd_logratio)

    p = sub.add_parser("poly", help="symmetric polynomial evaluation")
    p.add_argument("--gamma", required=True, help="comma-separated arguments")
    p.add_argument("--alpha", help="optional weights (default all ones)")
    p.add_argument("--degree", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--output", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("norm", help="normalization constant by every method")
    p.add_argument("--alpha", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--output", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", help=f"one of {sorted(SUITES)} (default: all)")
    p.add_argument("--count", type=int, default=1000, help="draws per fuzzed identity")
    p.add_argument("--tol", type=float, default=None, help="tolerance override")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: malformed parameter document: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SimplexDistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

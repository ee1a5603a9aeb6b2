"""Command-line front end.

Commands: list, verify, scan, suite, sample, density, moments.  Stochastic
runs require an explicit --seed; reports are JSON (or CSV for the grid
emitters) with the seed and package version stamped in.

Exit codes: 0 pass, 1 verification failure, 2 configuration error,
3 backend error.
"""

import argparse
import json
import sys
import time

import numpy as np

__all__ = ["main"]

VERSION = "0.1.0"


class ConfigError(ValueError):
    pass


def _parse_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        try:
            return complex(text)
        except ValueError:
            return text


def _parse_sets(pairs):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        val = _parse_value(v)
        if isinstance(val, list):
            val = tuple(val)
        out[k] = val
    return out


def _write(doc, out, fmt):
    text = json.dumps(doc, indent=2, sort_keys=True) if fmt == "json" else doc
    if out:
        with open(out, "w") as fh:
            fh.write(text if isinstance(text, str) else str(text))
            fh.write("\n")
    else:
        print(text)


def cmd_list(args):
    from .catalog import registry

    rows = []
    for rid in sorted(registry()):
        rec = registry()[rid]
        defaults = ", ".join(f"{k}={v}" for k, v in sorted(rec.defaults.items()))
        rows.append((rid, rec.eq, rec.anchor, defaults))
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    for rid, eq, anchor, defaults in rows:
        print(f"{rid:<{widths[0]}} | {eq:<{widths[1]}} | {anchor:<{widths[2]}} | {defaults}")
    return 0


def _budget(args):
    from .catalog import Budget

    if args.seed is None:
        raise ConfigError("stochastic runs need an explicit --seed")
    return Budget(samples=args.samples, seed=args.seed)


def cmd_verify(args):
    from .catalog import Budget, NotFound, ParamOutOfDomain, verify

    overrides = _parse_sets(args.set)
    if args.backend:
        overrides["backend_lhs"] = args.backend
    try:
        budget = _budget(args)
        report = verify(args.id, overrides, budget)
    except (NotFound, ParamOutOfDomain, ConfigError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # backend failures
        print(f"backend error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    doc = report.to_json()
    doc["version"] = VERSION
    _write(doc, args.out, "json")
    return 0 if report.passed else 1


def cmd_scan(args):
    from .catalog import scan

    overrides = _parse_sets(args.set)
    grid_param = args.grid_param
    values = [_parse_value(v) for v in args.grid_values.split(",")]
    grid = [{**overrides, grid_param: v} for v in values]
    try:
        budget = _budget(args)
        reports = scan(args.id, grid, budget)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"backend error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    docs = [r.to_json() for r in reports]
    passed = sum(1 for r in reports if r.passed)
    out = {"reports": docs, "pass_rate": passed / len(reports), "version": VERSION}
    _write(out, args.out, "json")
    return 0 if passed == len(reports) else 1


def _suite_items(name):
    """(label, callable) pairs; callables return (passed, detail)."""
    from . import suite as suite_mod

    return suite_mod.items(name)


def cmd_suite(args):
    try:
        items = _suite_items(args.name)
        if args.seed is None:
            raise ConfigError("the suite needs an explicit --seed")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    failures = 0
    t0 = time.time()
    results = []
    for label, fn in items:
        t = time.time()
        try:
            ok, detail = fn(args.seed)
        except Exception as exc:
            ok, detail = False, f"error: {type(exc).__name__}: {exc}"
        failures += 0 if ok else 1
        line = f"{'PASS' if ok else 'FAIL'}  {label}  ({time.time() - t:.1f}s)  {detail}"
        print(line)
        results.append({"item": label, "pass": ok, "detail": detail})
    print(f"{len(items) - failures}/{len(items)} passed in {time.time() - t0:.0f}s")
    if args.out:
        _write({"suite": args.name, "results": results, "seed": args.seed,
                "version": VERSION}, args.out, "json")
    return 1 if failures else 0


def cmd_sample(args):
    from .ensembles import EnsembleSpec, make_rng, sample_eigs_batch, write_samples

    if args.seed is None:
        print("configuration error: sampling needs --seed", file=sys.stderr)
        return 2
    params = _parse_sets(args.set)
    beta = params.pop("beta", 2.0)
    N = int(params.pop("N", 4))
    spec = EnsembleSpec(args.family, N, beta, params)
    rng = make_rng(args.seed)
    try:
        samples = sample_eigs_batch(spec, rng, args.samples)
    except Exception as exc:
        print(f"backend error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if args.out:
        write_samples(args.out, spec, args.seed, samples)
    else:
        for row in samples[:20]:
            print(",".join(f"{v:.10g}" for v in row))
    return 0


def cmd_density(args):
    from .exact import density_limit, density_support

    params = _parse_sets(args.set)
    lo, hi = density_support(args.family, **params)
    pad = 0.05 * (hi - lo)
    xs = np.linspace(lo - pad, hi + pad, args.grid)
    rho = density_limit(args.family, xs, **params)
    lines = ["x,density"]
    lines += [f"{x:.12g},{r:.12g}" for x, r in zip(xs, rho)]
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_moments(args):
    from fractions import Fraction

    from .exact import moment_poly

    params = _parse_sets(args.set)
    tag = args.tag
    N = params.get("N", 10)
    beta = params.get("beta", 2.0)
    gamma = params.get("gamma", 0)
    tau = Fraction(beta).limit_denominator(10**6) / 2
    lines = ["k,value"]
    for k in range(0, args.kmax + 1):
        poly = moment_poly(tag, k)
        if tag in ("GOE-Ledoux", "GSE-Ledoux"):
            val = poly.eval(N)
        else:
            val = poly.eval(N, tau, Fraction(gamma).limit_denominator(10**6))
        lines.append(f"{k},{float(val):.12g}")
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rmduality",
        description="Verification laboratory for random-matrix duality identities",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the identity registry")

    v = sub.add_parser("verify", help="verify one identity")
    v.add_argument("--id", required=True)
    v.add_argument("--set", action="append", metavar="key=value")
    v.add_argument("--samples", type=int, default=200000)
    v.add_argument("--seed", type=int)
    v.add_argument("--backend", choices=["quadrature", "matrixMC", "mcmc"])
    v.add_argument("--out")
    v.add_argument("--format", choices=["json"], default="json")

    s = sub.add_parser("scan", help="verify across a parameter grid")
    s.add_argument("--id", required=True)
    s.add_argument("--grid-param", required=True)
    s.add_argument("--grid-values", required=True, help="comma separated")
    s.add_argument("--set", action="append", metavar="key=value")
    s.add_argument("--samples", type=int, default=100000)
    s.add_argument("--seed", type=int)
    s.add_argument("--out")
    s.add_argument("--format", choices=["json"], default="json")

    su = sub.add_parser("suite", help="run the acceptance suite")
    su.add_argument("name", choices=["fast", "full"])
    su.add_argument("--seed", type=int)
    su.add_argument("--out")

    sa = sub.add_parser("sample", help="draw eigenvalue samples")
    sa.add_argument("--family", required=True)
    sa.add_argument("--set", action="append", metavar="key=value")
    sa.add_argument("--samples", type=int, default=100)
    sa.add_argument("--seed", type=int)
    sa.add_argument("--out")

    d = sub.add_parser("density", help="limiting density on a grid, CSV")
    d.add_argument("--family", required=True,
                   choices=["WignerSC", "MarchenkoPastur", "Wachter"])
    d.add_argument("--set", action="append", metavar="key=value")
    d.add_argument("--grid", type=int, default=101)
    d.add_argument("--out")

    m = sub.add_parser("moments", help="moment polynomials, CSV")
    m.add_argument("--tag", required=True,
                   choices=["GOE-Ledoux", "GSE-Ledoux", "GaussianBetaScaled",
                            "LaguerreBetaScaled"])
    m.add_argument("--set", action="append", metavar="key=value")
    m.add_argument("--kmax", type=int, default=3)
    m.add_argument("--out")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {
        "list": cmd_list,
        "verify": cmd_verify,
        "scan": cmd_scan,
        "suite": cmd_suite,
        "sample": cmd_sample,
        "density": cmd_density,
        "moments": cmd_moments,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

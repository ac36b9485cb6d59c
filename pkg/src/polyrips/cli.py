"""Command-line front end.

Subcommands: barcode, analyze, stars, sample, gh, verify.  Exit codes are
stable: 0 success, 1 verification mismatch, 2 usage error, 3 regime not
certifiable, 4 scale outside the cyclic regime, 5 resource budget.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import cyclic, geometry, gh, oracle, predictor, render, sampler, stars
from .errors import (
    CyclicityError,
    InputError,
    NotCertifiableError,
    ResourceBudgetError,
)

_CONVENTIONS = {"lt": "strict", "leq": "closed"}


def _write_out(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_barcode(args) -> int:
    if args.n < 4:
        rn = geometry.cyclicity_threshold(args.n) if args.n >= 3 else 0.0
        print(f"r_{args.n} = {rn:g}: no cyclic regime", file=sys.stderr)
        return 2
    conv = _CONVENTIONS[args.convention]
    bc = predictor.barcode(args.n, conv, validate=args.validate)
    if args.format == "text":
        _write_out(predictor.to_text(bc), args.out)
    elif args.format == "json":
        _write_out(predictor.to_json(bc) + "\n", args.out)
    else:
        _write_out(render.barcode_svg(bc), args.out)
    return 0


def cmd_analyze(args) -> int:
    n, pts = sampler.read_sample(args.points)
    conv = _CONVENTIONS[args.convention]
    rn = geometry.cyclicity_threshold(n)
    if args.scale >= rn:
        witness = geometry.threshold_witness(n)
        print(
            f"non-cyclic at scale: r={args.scale:g} >= r_n={rn:.12g}; the ball "
            f"at arc t={witness:.6f} of radius r meets P_{n} in a "
            f"disconnected set",
            file=sys.stderr,
        )
        return 4
    graph = cyclic.from_points(n, pts, args.scale, conv)
    rep = cyclic.analyze(graph)
    htype = cyclic.homotopy_type_from_fraction(rep.winding_fraction, rep.orbit_count)
    counts = {
        tag: sum(1 for c in rep.classification if c == tag)
        for tag in ("periodic", "fast", "slow")
    }
    if args.format == "json":
        doc = {
            "n": n,
            "points": len(pts),
            "scale": args.scale,
            "convention": conv,
            "winding_fraction": [rep.winding, rep.length],
            "orbit_length": rep.length,
            "orbit_winding": rep.winding,
            "orbit_count": rep.orbit_count,
            "homotopy_type": htype.describe(),
            "classification_counts": counts,
        }
        _write_out(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _write_out(
            f"n={n} points={len(pts)} scale={args.scale:g} convention={conv}\n"
            f"wf={rep.winding_fraction} ell={rep.length} omega={rep.winding} "
            f"P={rep.orbit_count}\n"
            f"type={htype.describe()}\n"
            f"classification: periodic={counts['periodic']} "
            f"fast={counts['fast']} slow={counts['slow']}\n",
            args.out,
        )
    return 0


def cmd_stars(args) -> int:
    th = stars.thresholds(args.n, args.l, require_certified=False)
    expected = math.lcm(args.n, 2 * args.l + 1)
    vcross, mcross = stars._crossing_positions(args.n, args.l)
    lines = [
        f"n={args.n} winding={args.l}",
        f"side_min={th.side_min:.12g} side_max={th.side_max:.12g} "
        f"exact={'yes' if th.exact else 'no'}"
        + (" at_threshold" if th.at_threshold else ""),
        f"crossings: {len(vcross)}/{expected} vertex, "
        f"{len(mcross)}/{expected} midpoint",
    ]
    if args.validate:
        rep = stars.validate_monotonic(args.n, args.l, args.grid)
        lines.append(
            f"monotonic: {'PASS' if rep.passed else 'FAIL'} "
            f"(grid={args.grid}, worst violation={rep.worst_violation:.3g})"
        )
    _write_out("\n".join(lines) + "\n", args.out)
    return 0


def cmd_sample(args) -> int:
    spec = sampler.SampleSpec(
        args.n, args.l, args.z, args.eps, args.scale, args.seed
    )
    pts = sampler.construct(spec)
    sampler.write_sample(args.out, args.n, pts)
    dens = sampler.density(pts, args.n)
    print(
        f"wrote {len(pts)} points to {args.out} "
        f"(density {dens:.6g} <= {args.eps:g}, orbits {args.z})"
    )
    return 0


def cmd_gh(args) -> int:
    rep = gh.gh_report(args.n, grid=args.grid)
    lo, hi = rep.interval
    lines = [
        f"GH(P_{args.n}, S^1) in [{lo:.12g}, {hi:.12g}]",
        f"hausdorff upper bound: {rep.hausdorff_upper:.12g}",
        f"barcode lower bound: "
        + (f"{rep.ph_lower:.12g}" if rep.ph_lower is not None
           else "not applicable (needs 3 | n)"),
        f"metric weak bound: {rep.metric_weak:.12g}",
        f"metric strong bound (radial corr., +-2/{args.grid}): "
        f"{rep.metric_strong_radial:.12g}",
    ]
    if rep.ph_dominates is not None:
        lines.append(
            "barcode bound dominates the metric bound"
            if rep.ph_dominates
            else "metric bound dominates the barcode bound"
        )
    _write_out("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    n, w, r = args.n, args.l, args.scale
    rn = geometry.cyclicity_threshold(n)
    if r >= rn:
        witness = geometry.threshold_witness(n)
        print(
            f"non-cyclic at scale: r={r:g} >= r_n={rn:.12g}; the ball at arc "
            f"t={witness:.6f} of radius r meets P_{n} in a disconnected set",
            file=sys.stderr,
        )
        return 4
    cs = stars.crossings(n, w, r)
    arc_gap = 0.95 * args.density / (n * math.sin(math.pi / n))
    k = max(3 * n, int(math.ceil(1.0 / arc_gap)))
    pts = sorted(set(cs.points) | {i / k for i in range(k)})
    pts = [t for i, t in enumerate(pts) if i == 0 or t - pts[i - 1] > 1e-9]
    graph = cyclic.from_points(n, pts, r, "closed")
    rep = cyclic.analyze(graph)
    htype = cyclic.homotopy_type_from_fraction(rep.winding_fraction, rep.orbit_count)
    predicted = htype.betti(args.max_dim)
    dist = np.array(
        [[geometry.euclid(n, a, b) for b in pts] for a in pts]
    )
    observed = oracle.betti(
        oracle.vr_complex(dist, r, "closed", max_dim=args.max_dim)
    )
    print(
        f"sample: {len(pts)} points, wf={rep.winding_fraction}, "
        f"P={rep.orbit_count}, predicted type {htype.describe()}"
    )
    ok = True
    for d in range(args.max_dim):
        match = predicted[d] == observed[d]
        ok = ok and match
        print(
            f"b_{d}: predicted {predicted[d]}, oracle {observed[d]}: "
            f"{'MATCH' if match else 'MISMATCH'}"
        )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polyrips",
        description="Rips filtration of regular polygons: barcodes, star "
        "scans, verified samples, GH bounds.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("barcode", help="persistence barcode of the polygon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--convention", choices=("lt", "leq"), default="lt")
    p.add_argument("--format", choices=("text", "json", "svg"), default="text")
    p.add_argument("--out", default=None)
    p.add_argument(
        "--validate", action="store_true",
        help="extend coverage by validating uncertified winding levels",
    )
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("analyze", help="analyze a sample file at a scale")
    p.add_argument("--points", required=True)
    p.add_argument("--scale", type=float, required=True)
    p.add_argument("--convention", choices=("lt", "leq"), default="leq")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("stars", help="star thresholds and landscape scan")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--grid", type=int, default=10_000)
    p.add_argument("--validate", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stars)

    p = sub.add_parser("sample", help="construct a dense sample with a "
                       "prescribed orbit count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--scale", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("gh", help="Gromov-Hausdorff bounds vs the circle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=10_000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gh)

    p = sub.add_parser("verify", help="predict and verify Betti numbers of "
                       "a certified sample")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--scale", type=float, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--max-dim", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotCertifiableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CyclicityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands
-----------
tension      surface-tension values on a slope grid            -> CSV (s, t, sigma)
free-energy  grand free energy on an (X, Y) grid               -> CSV (X, Y, F, s_star)
arctic       arctic-boundary polylines for a named shape       -> CSV per piece (+ SVG)
shape        interior surface samples (x, y, H) for a shape    -> CSV
simulate     heat-bath Monte Carlo run on the hexagon          -> JSON manifest + CSV heights
verify       algebraic-vs-oracle and identity suites           -> JSON records

Outputs carry a JSON header block with the full parameter set; identical
invocations (including seeds) produce byte-identical files.  A JSON config
file may supply argument defaults; explicit flags win.  The default output
directory honours FIVEVERTEX_OUTDIR.

Exit codes: 0 success, 2 invalid parameters, 3 infeasible slope,
4 regime-unsupported request, 5 solver nonconvergence, 1 other errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, bethe, emit, limitshape, mcmc, thermo
from .bethe import ModelParams
from .errors import (
    DomainError,
    FiveVertexError,
    InfeasibleSlopeError,
    NonconvergenceError,
    RangeError,
    SizeError,
    UnsupportedRegimeError,
)

EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_UNSUPPORTED = 4
EXIT_NONCONVERGED = 5


def _boundary(shape: str, params: ModelParams) -> limitshape.BoundaryFunction:
    if shape == "quadratic":
        return limitshape.quadratic_boundary(params)
    if shape == "bpp":
        return limitshape.bpp_boundary(params)
    if shape == "zero":
        return limitshape.zero_boundary()
    raise DomainError(f"unknown shape '{shape}'")


def _cmd_tension(args) -> int:
    params = ModelParams(args.r)
    outdir = emit.resolve_outdir(args.out)
    ss, ts, sig = [], [], []
    grid = np.linspace(0.0, 1.0, args.grid + 1)
    for s in grid:
        for t in grid:
            if s + t > 1.0 + 1e-12:
                continue
            val = thermo.surface_tension(thermo.SlopePoint(s, t), params)
            ss.append(s)
            ts.append(t)
            sig.append(val)
    meta = {"command": "tension", "r": args.r, "grid": args.grid}
    path = os.path.join(outdir, "tension.csv")
    if args.format == "json":
        path = os.path.join(outdir, "tension.json")
        emit.write_json(path, meta, {"s": ss, "t": ts, "sigma": sig})
    else:
        emit.write_csv(path, meta, {"s": ss, "t": ts, "sigma": sig})
    print(path)
    return 0


def _cmd_free_energy(args) -> int:
    outdir = emit.resolve_outdir(args.out)
    xs = np.linspace(args.xmin, args.xmax, args.grid)
    ys = np.linspace(args.ymin, args.ymax, args.grid)
    X, Y, F, S = [], [], [], []
    for x in xs:
        for y in ys:
            res = thermo.free_energy(ModelParams(args.r, x, y))
            X.append(x)
            Y.append(y)
            F.append(res.value)
            S.append(res.s_star)
    meta = {"command": "free-energy", "r": args.r, "grid": args.grid,
            "xmin": args.xmin, "xmax": args.xmax,
            "ymin": args.ymin, "ymax": args.ymax}
    path = os.path.join(outdir, "free_energy.csv")
    emit.write_csv(path, meta, {"X": X, "Y": Y, "F": F, "s_star": S})
    print(path)
    return 0


def _cmd_arctic(args) -> int:
    params = ModelParams(args.r)
    bf = _boundary(args.shape, params)
    curve = limitshape.arctic_boundary(bf, params,
                                       samples_per_piece=args.samples,
                                       span=args.span)
    outdir = emit.resolve_outdir(args.out)
    meta = {"command": "arctic", "shape": args.shape, "r": args.r,
            "samples": args.samples, "regime": curve.regime}
    written = []
    for piece in curve.pieces:
        path = os.path.join(outdir, f"arctic_{args.shape}_{piece.name}.csv")
        emit.write_csv(path, {**meta, "piece": piece.name},
                       {"p": piece.p, "x": piece.x, "y": piece.y})
        written.append(path)
    if args.svg:
        svg_path = os.path.join(outdir, f"arctic_{args.shape}.svg")
        emit.write_svg_polylines(svg_path, meta,
                                 [(p.name, p.x, p.y) for p in curve.pieces])
        written.append(svg_path)
    for path in written:
        print(path)
    return 0


def _cmd_shape(args) -> int:
    params = ModelParams(args.r)
    bf = _boundary(args.shape, params)
    outdir = emit.resolve_outdir(args.out)
    re_grid = np.linspace(args.umin, args.umax, args.grid)
    im_grid = np.linspace(args.im_min, args.im_max, args.grid)
    ure, uim, xs, ys, hs = [], [], [], [], []
    for a in re_grid:
        for b in im_grid:
            try:
                smp = limitshape.interior_map(bf, complex(a, b), params,
                                              scale=args.scale)
            except (DomainError, UnsupportedRegimeError):
                continue
            ure.append(a)
            uim.append(b)
            xs.append(smp.x)
            ys.append(smp.y)
            hs.append(smp.H)
    if args.shape != "zero" and params.big_r:
        raise UnsupportedRegimeError(
            "interior map for general boundary data needs r < 1")
    meta = {"command": "shape", "shape": args.shape, "r": args.r,
            "grid": args.grid, "scale": args.scale}
    path = os.path.join(outdir, f"shape_{args.shape}.csv")
    emit.write_csv(path, meta, {"u_re": ure, "u_im": uim,
                                "x": xs, "y": ys, "H": hs})
    print(path)
    return 0


def _cmd_simulate(args) -> int:
    outdir = emit.resolve_outdir(args.out)
    cfg = mcmc.ChainConfig(r=args.r, sweeps=args.sweeps,
                           burnin=args.burnin if args.burnin is not None
                           else min(10 * args.n * args.n, args.sweeps // 2),
                           seed=args.seed,
                           thinning=args.thin if args.thin is not None else args.n)
    domain = mcmc.HexDomain(args.n)
    result = mcmc.sample_mean_height(domain, cfg)
    manifest = {"command": "simulate", "n": args.n, "r": args.r,
                "seed": cfg.seed, "sweeps": cfg.sweeps, "burnin": cfg.burnin,
                "thinning": cfg.thinning, "n_samples": result.n_samples,
                "backend": result.backend}
    man_path = os.path.join(outdir, f"simulate_n{args.n}_seed{args.seed}.json")
    emit.write_json(man_path, manifest, {"kernel": result.backend})
    csv_path = os.path.join(outdir, f"heights_n{args.n}_seed{args.seed}.csv")
    emit.write_csv(csv_path, manifest,
                   {"i": domain.face_i, "j": domain.face_j,
                    "mean_h": result.mean, "stderr": result.stderr})
    print(man_path)
    print(csv_path)
    return 0


def _cmd_verify(args) -> int:
    outdir = emit.resolve_outdir(args.out)
    params = ModelParams(args.r, args.X, args.Y)
    records: list[dict] = []
    if args.suite == "bethe":
        rec = bethe.verify_record(args.N, args.n, params)
        records.append(rec)
        ok = rec["rel_err"] < args.tol
    elif args.suite == "completeness":
        rep = bethe.spectrum_completeness(args.N, args.n, params)
        records.append({"N": rep.big_n, "n": rep.n, "r": params.r,
                        "X": params.X, "Y": params.Y,
                        "expected": rep.expected, "solved": rep.solved,
                        "max_match_distance": rep.max_match_distance,
                        "spectrum_scale": rep.spectrum_scale})
        ok = rep.solved == rep.expected and rep.max_match_distance < 1e-6
    elif args.suite == "identities":
        from .complexfn import b_fn, bloch_wigner, dilog
        rng = np.random.default_rng(args.seed)
        worst = 0.0
        for _ in range(200):
            z = complex(rng.uniform(-2, 2), rng.uniform(1e-3, 2))
            worst = max(worst, abs(bloch_wigner(z) - bloch_wigner(1 - 1 / z)))
            worst = max(worst, abs(b_fn(z) - np.log(abs(z)) - b_fn(1 - 1 / z)))
        records.append({"suite": "identities", "samples": 200,
                        "max_residual": worst, "seed": args.seed})
        ok = worst < 1e-10
    else:
        raise DomainError(f"unknown suite '{args.suite}'")
    path = os.path.join(outdir, f"verify_{args.suite}.json")
    emit.write_json(path, {"command": "verify", "suite": args.suite},
                    {"records": records, "ok": bool(ok)})
    print(path)
    for rec in records:
        print(json.dumps(rec, sort_keys=True, default=emit._json_default))
    return 0 if ok else EXIT_NONCONVERGED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fivevertex",
                                description="asymmetric five-vertex model toolkit")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", type=str, default=None,
                   help="JSON file with argument defaults (flags win)")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tension", help="surface-tension grid")
    t.add_argument("--r", type=float, required=True)
    t.add_argument("--grid", type=int, default=20)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out", type=str, default=None)
    t.set_defaults(func=_cmd_tension)

    f = sub.add_parser("free-energy", help="grand free energy grid")
    f.add_argument("--r", type=float, required=True)
    f.add_argument("--grid", type=int, default=15)
    f.add_argument("--xmin", type=float, default=-2.0)
    f.add_argument("--xmax", type=float, default=2.0)
    f.add_argument("--ymin", type=float, default=-2.0)
    f.add_argument("--ymax", type=float, default=2.0)
    f.add_argument("--out", type=str, default=None)
    f.set_defaults(func=_cmd_free_energy)

    a = sub.add_parser("arctic", help="arctic boundary polylines")
    a.add_argument("--shape", choices=("quadratic", "bpp"), required=True)
    a.add_argument("--r", type=float, required=True)
    a.add_argument("--samples", type=int, default=200)
    a.add_argument("--span", type=float, default=3.0)
    a.add_argument("--svg", action="store_true")
    a.add_argument("--out", type=str, default=None)
    a.set_defaults(func=_cmd_arctic)

    s = sub.add_parser("shape", help="interior surface samples")
    s.add_argument("--shape", choices=("quadratic", "bpp", "zero"), required=True)
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--grid", type=int, default=40)
    s.add_argument("--umin", type=float, default=-2.0)
    s.add_argument("--umax", type=float, default=2.0)
    s.add_argument("--im-min", type=float, default=1e-3)
    s.add_argument("--im-max", type=float, default=2.0)
    s.add_argument("--scale", type=float, default=1.0)
    s.add_argument("--out", type=str, default=None)
    s.set_defaults(func=_cmd_shape)

    m = sub.add_parser("simulate", help="Monte Carlo run")
    m.add_argument("--shape", choices=("bpp",), default="bpp")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--r", type=float, required=True)
    m.add_argument("--sweeps", type=int, default=100000)
    m.add_argument("--burnin", type=int, default=None)
    m.add_argument("--thin", type=int, default=None)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out", type=str, default=None)
    m.set_defaults(func=_cmd_simulate)

    v = sub.add_parser("verify", help="verification suites")
    v.add_argument("--suite", choices=("bethe", "completeness", "identities"),
                   required=True)
    v.add_argument("--N", type=int, default=8)
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--r", type=float, default=0.7)
    v.add_argument("--X", type=float, default=0.0)
    v.add_argument("--Y", type=float, default=0.0)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", type=str, default=None)
    v.set_defaults(func=_cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    # two-phase parse so a config file can supply defaults while flags win
    pre, _ = parser.parse_known_args(argv)
    if pre.config:
        with open(pre.config) as fh:
            defaults = json.load(fh)
        parser.set_defaults(**defaults)
        for sp in parser._subparsers._group_actions[0].choices.values():  # type: ignore[union-attr]
            sp.set_defaults(**{k: v for k, v in defaults.items()})
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleSlopeError as exc:
        print(json.dumps({"error": "infeasible-slope", "detail": str(exc)}),
              file=sys.stderr)
        return EXIT_INFEASIBLE
    except UnsupportedRegimeError as exc:
        print(json.dumps({"error": "regime-unsupported", "detail": str(exc)}),
              file=sys.stderr)
        return EXIT_UNSUPPORTED
    except NonconvergenceError as exc:
        print(json.dumps({"error": "nonconvergence", "detail": str(exc)}),
              file=sys.stderr)
        return EXIT_NONCONVERGED
    except (DomainError, RangeError, SizeError, ValueError) as exc:
        print(json.dumps({"error": "invalid-parameters", "detail": str(exc)}),
              file=sys.stderr)
        return EXIT_INVALID
    except FiveVertexError as exc:
        print(json.dumps({"error": "failure", "detail": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

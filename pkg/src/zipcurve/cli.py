"""Command line entry point: ``zipcurve <verb> ...``.

Exit status: 0 on success, 1 when a check fails, 2 on usage or config errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import attractor, catalog, dendrite, parametrize
from .config import ConfigError, SystemConfig, dumps_config, entry_config, load_config
from .render import cloud_drawing, curve_drawing, render_svg, write_curve_csv
from .zipper import validate_zipper

GLOBALS = {"tol": 1e-9, "budget": attractor.DEFAULT_BUDGET, "seed": 0}


class UsageError(Exception):
    pass


def _resolve(source: str) -> SystemConfig:
    """A config path, or the name of a catalog entry."""
    p = Path(source)
    if p.exists():
        return load_config(p)
    if source in catalog.CATALOG:
        return entry_config(catalog.get_example(source))
    raise ConfigError(f"no such file, and not a catalog name ({', '.join(catalog.CATALOG)})", source)


def _need_zipper(cfg: SystemConfig):
    if cfg.zipper is None:
        raise ConfigError("this command needs a zipper config (vertices + signature)", cfg.name)
    return cfg.zipper, cfg.partition


def cmd_validate(args) -> int:
    cfg = _resolve(args.config)
    if cfg.zipper is None:
        for j, r in enumerate(cfg.ifs.ratios, start=1):
            print(f"map {j}\tratio {r:.12g}")
        print("PASS (plain IFS, all maps contracting)")
        return 0
    rep = validate_zipper(cfg.zipper, args.tol)
    for c in rep.maps:
        print(f"map {c.index}\tstart {c.start_residual:.3e}\tend {c.end_residual:.3e}\t"
              f"ratio {c.ratio:.12g}")
    for msg in rep.failures():
        print(f"FAIL {msg}")
    print(f"{'PASS' if rep.passed else 'FAIL'} max residual {rep.max_residual:.3e}")
    return 0 if rep.passed else 1


def cmd_curve(args) -> int:
    cfg = _resolve(args.config)
    z, p = _need_zipper(cfg)
    poly = parametrize.curve_polyline(z, p, args.level, budget=args.budget)
    out = Path(args.out)
    if out.suffix == ".csv":
        write_curve_csv(poly, out)
    elif out.suffix == ".svg":
        render_svg(curve_drawing([poly], cfg.style), out)
    else:
        raise UsageError("--out must end in .svg or .csv")
    print(f"{len(poly)} vertices -> {out}")
    return 0


def cmd_attract(args) -> int:
    cfg = _resolve(args.config)
    if args.mode == "iterate":
        if args.depth is None:
            raise UsageError("--mode iterate needs --depth")
        seed = cfg.zipper.vertices[0] if cfg.zipper is not None else cfg.ifs.fixed_points()[0]
        cloud = attractor.iterate_addresses(cfg.ifs, args.depth, seed, budget=args.budget)
    else:
        if args.n is None:
            raise UsageError("--mode chaos needs -n")
        cloud = attractor.chaos_game(cfg.ifs, args.n, args.seed, args.burn_in)
    out = Path(args.out)
    if out.suffix == ".csv":
        attractor.write_cloud_csv(cloud, out)
    elif out.suffix == ".svg":
        render_svg(cloud_drawing(cloud.points, cfg.style), out)
    else:
        raise UsageError("--out must end in .svg or .csv")
    print(f"{len(cloud)} points -> {out}")
    return 0


def cmd_param_eval(args) -> int:
    cfg = _resolve(args.config)
    z, p = _need_zipper(cfg)
    if not 0.0 <= args.t <= 1.0:
        raise UsageError("-t must lie in [0, 1]")
    x, y = parametrize.gamma(z, p, args.t, args.depth)
    print(f"{x:.17g} {y:.17g}")
    return 0


def cmd_param_holder(args) -> int:
    cfg = _resolve(args.config)
    z, p = _need_zipper(cfg)
    est = parametrize.estimate_holder(z, p, args.samples, args.depth, args.seed)
    print(f"exponent {est.exponent:.6f}\tpairs {est.n_pairs}\th in [{est.h_min:.3g}, {est.h_max:.3g}]")
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.list_examples():
            e = catalog.get_example(name)
            print(f"{name}\tm={e.m}{'  (experimental)' if e.experimental else ''}")
        return 0
    if not args.name:
        raise UsageError("catalog show needs a name")
    try:
        entry = catalog.get_example(args.name)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None
    sys.stdout.write(dumps_config(entry_config(entry)))
    return 0


def cmd_dendrite(args) -> int:
    checks = dendrite.verify(args.depth)
    print("name\texpected\tobserved\tpass")
    for c in checks:
        print(c.row())
    return 0 if all(c.passed for c in checks) else 1


def cmd_graph(args) -> int:
    cfg = _resolve(args.config)
    extra = cfg.zipper.vertices if cfg.zipper is not None else ()
    seed = attractor.attractor_seed_cloud(cfg.ifs, args.extra_depth, extra)
    g = attractor.cell_adjacency_graph(cfg.ifs, args.depth, seed_cloud=seed, budget=args.budget)
    v, e, c = attractor.touch_vertex_counts(g)
    print(f"nodes {g.n_nodes}\tedges {g.n_edges}\tcomponents {g.n_components()}\t"
          f"{'acyclic' if v - e == c else 'cyclic'}")
    if args.depth == 1 or args.edges:
        for a, b in sorted(g.edge_words()):
            print(f"edge {attractor.address_string(a)}-{attractor.address_string(b)}")
    if args.remove:
        try:
            x, y, r = (float(s) for s in args.remove.split(","))
        except ValueError:
            raise UsageError("--remove expects x,y,r") from None
        print(f"components after removal {attractor.components_after_removal(g, (x, y), r)}")
    return 0


def _add_globals(p, top: bool):
    kw = {} if top else {"default": argparse.SUPPRESS}
    p.add_argument("--tol", type=float, help="validation tolerance", **kw)
    p.add_argument("--budget", type=int, help="maximum number of generated points", **kw)
    p.add_argument("--seed", type=int, help="random seed", **kw)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zipcurve", description=__doc__.splitlines()[0])
    _add_globals(ap, True)
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        _add_globals(p, False)
        p.set_defaults(fn=fn)
        return p

    p = verb("validate", cmd_validate, help="check the zipper equalities")
    p.add_argument("config")
    p = verb("curve", cmd_curve, help="polygonal approximation of the parametrization")
    p.add_argument("config")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--out", required=True)
    p = verb("attract", cmd_attract, help="sample the attractor")
    p.add_argument("config")
    p.add_argument("--mode", choices=("iterate", "chaos"), default="iterate")
    p.add_argument("--depth", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("--burn-in", type=int, default=40)
    p.add_argument("--out", required=True)
    p = verb("param", None, help="evaluate the parametrization")
    psub = p.add_subparsers(dest="action", required=True)
    pe = psub.add_parser("eval")
    _add_globals(pe, False)
    pe.add_argument("config")
    pe.add_argument("-t", type=float, required=True)
    pe.add_argument("--depth", type=int, default=None)
    pe.set_defaults(fn=cmd_param_eval)
    ph = psub.add_parser("holder")
    _add_globals(ph, False)
    ph.add_argument("config")
    ph.add_argument("--samples", type=int, default=100_000)
    ph.add_argument("--depth", type=int, default=40)
    ph.set_defaults(fn=cmd_param_holder)
    p = verb("catalog", cmd_catalog, help="built-in examples")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p = verb("dendrite", cmd_dendrite, help="checks for the five-map dendrite")
    p.add_argument("action", choices=("verify",))
    p.add_argument("--depth", type=int, default=3)
    p = verb("graph", cmd_graph, help="cell adjacency graph")
    p.add_argument("config")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--extra-depth", type=int, default=2)
    p.add_argument("--remove", help="x,y,r: delete cells meeting this disk")
    p.add_argument("--edges", action="store_true", help="list edges")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for k, v in GLOBALS.items():
        if getattr(args, k, None) is None:
            setattr(args, k, v)
    try:
        return args.fn(args)
    except (ConfigError, UsageError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

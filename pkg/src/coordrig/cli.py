"""Command-line front end.

Commands: check, motions, stresses, gen, draw, rank.  All machine output is
JSON on stdout; diagnostics go to stderr.  Exit codes: 0 for a "rigid"
decision or plain success, 1 for a "flexible" decision, 2 for input or
usage errors.  The environment variable COORDRIG_SEED supplies the default
seed; the same file, flags and seed always produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import generic, linalg
from .cgraph import GraphError, parse_coloured_graph, serialize
from .corpus import random_coloured_graph
from .draw import render_svg
from .generic import OracleParams, decide_generic_coordinated_rigidity
from .laman import decide_plane, henneberg_k1_sample, union_rank_d2
from .pebble import sparsity_rank

USAGE_ERROR = 2


class CliError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("COORDRIG_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"COORDRIG_SEED must be an integer, got {raw!r}")


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    try:
        return parse_coloured_graph(text)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}")


def _emit(payload: dict, compact: bool) -> None:
    if compact:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    else:
        text = json.dumps(payload, sort_keys=True, indent=2)
    sys.stdout.write(text + "\n")


def _round(x, nd: int = 12):
    if isinstance(x, (list, tuple)):
        return [_round(v, nd) for v in x]
    return round(float(x), nd)


def _coords_for(g, args, d: int):
    if getattr(args, "coords", "random") == "from-file":
        if g.coords is None:
            raise CliError("--coords from-file requires a 'coords' entry in the input")
        if len(g.coords[0]) != d:
            raise CliError(
                f"file coords have dimension {len(g.coords[0])}, expected {d}"
            )
        return np.array(g.coords, dtype=float)
    return linalg.random_configuration(g.n, d, args.seed)


def cmd_check(args) -> int:
    g = _load(args.file)
    method = args.method
    if method == "combinatorial" and args.dim != 2:
        raise CliError("combinatorial decisions are only available for --dim 2")
    if method == "auto":
        method = "combinatorial" if args.dim == 2 else "numeric"
    if method == "combinatorial":
        verdict = decide_plane(g)
    else:
        params = OracleParams(d=args.dim, trials=args.trials, seed=args.seed)
        verdict = decide_generic_coordinated_rigidity(g, params)
    _emit(verdict.to_json(), args.json)
    return 0 if verdict.rigid else 1


def cmd_motions(args) -> int:
    g = _load(args.file)
    p = _coords_for(g, args, args.dim)
    try:
        report = linalg.infinitesimal_motions(g, p, tol=args.tol)
    except ValueError as exc:
        raise CliError(str(exc))
    payload = {
        "n": g.n,
        "m": g.m,
        "k": g.k,
        "d": args.dim,
        "seed": args.seed,
        "coords": _round(p.tolist()),
        "nullity": report.nullity,
        "trivial_dim": report.trivial_dim,
        "nontrivial_dim": report.nontrivial_dim,
        "basis": _round(report.basis.tolist()),
        "nontrivial_basis": _round(report.nontrivial_basis.tolist()),
    }
    if args.dump_matrix:
        payload["coordinated_matrix"] = _round(
            linalg.coordinated_matrix(g, p).array.tolist()
        )
    _emit(payload, args.json)
    return 0


def cmd_stresses(args) -> int:
    g = _load(args.file)
    p = _coords_for(g, args, args.dim)
    basis = linalg.equilibrium_stresses(g, p, tol=args.tol)
    payload = {
        "n": g.n,
        "m": g.m,
        "k": g.k,
        "d": args.dim,
        "seed": args.seed,
        "coords": _round(p.tolist()),
        "edges": [list(e) for e in g.edges],
        "dim_stress_space": int(basis.shape[0]),
        "basis": _round(basis.tolist()),
    }
    if args.dump_matrix:
        payload["rigidity_matrix"] = _round(linalg.rigidity_matrix(g, p).array.tolist())
    _emit(payload, args.json)
    return 0


def cmd_gen(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.mode == "henneberg-k1":
        if args.k != 1:
            raise CliError("henneberg-k1 generation requires --k 1")
        if args.n < 4:
            raise CliError("henneberg-k1 generation requires --n >= 4")
    files = []
    for i in range(args.count):
        seed_i = args.seed + i
        if args.mode == "henneberg-k1":
            g = henneberg_k1_sample(args.n, seed_i)
        else:
            g = random_coloured_graph(args.n, args.k, seed_i)
        name = f"{args.mode}_n{args.n}_k{args.k}_s{seed_i}.json"
        path = out_dir / name
        path.write_text(serialize(g) + "\n")
        files.append(str(path))
    _emit({"files": files, "seed": args.seed, "count": args.count}, args.json)
    return 0


def cmd_draw(args) -> int:
    g = _load(args.file)
    out = args.out or str(Path(args.file).with_suffix(".svg"))
    svg = render_svg(g)
    Path(out).write_text(svg)
    _emit({"out": out, "n": g.n, "m": g.m, "k": g.k}, args.json)
    return 0


def cmd_rank(args) -> int:
    g = _load(args.file)
    params = OracleParams(d=args.dim, trials=args.trials, seed=args.seed)
    payload = {
        "n": g.n,
        "m": g.m,
        "k": g.k,
        "d": args.dim,
        "seed": args.seed,
        "trials": args.trials,
    }
    payload.update(generic.rank_summary(g, params))
    if args.dim == 2:
        rank23, _ = sparsity_rank(g)
        payload["pebble_rank_23"] = rank23
        rep = union_rank_d2(g)
        payload["union_rank"] = rep.union_rank
        payload["union_deficiency"] = rep.deficiency
    if args.dump_matrix:
        p = _coords_for(g, args, args.dim)
        payload["coords"] = _round(p.tolist())
        payload["rigidity_matrix"] = _round(linalg.rigidity_matrix(g, p).array.tolist())
        payload["coordinated_matrix"] = _round(
            linalg.coordinated_matrix(g, p).array.tolist()
        )
    _emit(payload, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coordrig",
        description="Decide generic rigidity of coordinated bar-joint frameworks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None,
                       help="root seed (default: COORDRIG_SEED or 0)")
        p.add_argument("--json", action="store_true",
                       help="compact single-line JSON output")

    p = sub.add_parser("check", help="decide rigid/flexible with a certificate")
    p.add_argument("file")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--method", choices=["auto", "combinatorial", "numeric"],
                   default="auto")
    p.add_argument("--trials", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("motions", help="infinitesimal motion basis")
    p.add_argument("file")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--coords", choices=["random", "from-file"], default="random")
    p.add_argument("--tol", type=float, default=None,
                   help="numerical rank tolerance (default: the standard "
                        "max(shape) * eps * sigma_max rule)")
    p.add_argument("--dump-matrix", action="store_true")
    common(p)
    p.set_defaults(func=cmd_motions)

    p = sub.add_parser("stresses", help="equilibrium stress basis")
    p.add_argument("file")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--coords", choices=["random", "from-file"], default="random")
    p.add_argument("--tol", type=float, default=None,
                   help="numerical rank tolerance (default: the standard "
                        "max(shape) * eps * sigma_max rule)")
    p.add_argument("--dump-matrix", action="store_true")
    common(p)
    p.set_defaults(func=cmd_stresses)

    p = sub.add_parser("gen", help="generate graph files")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=["henneberg-k1", "random"],
                   default="henneberg-k1")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default=".")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("draw", help="render the graph to SVG")
    p.add_argument("file")
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("rank", help="rank report across all engines")
    p.add_argument("file")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--coords", choices=["random", "from-file"], default="random")
    p.add_argument("--dump-matrix", action="store_true")
    common(p)
    p.set_defaults(func=cmd_rank)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except generic.BackendError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

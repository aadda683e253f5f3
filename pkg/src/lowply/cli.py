"""Command-line entry point: ``lowply <command> ...``; every command prints one JSON report.

Exit status: 0 on success, 1 on usage or input errors, 2 when an audit fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, builders, generators, io
from .cycle_space import InvalidInput, PreconditionError
from .graph import GraphError
from .path_decomp import SizeError, exact_pathwidth, normalize, validate
from .verification import (
    AuditReport,
    old_skeleton_edge_audit,
    forest_path_ply_audit,
    verify_generating,
    verify_ply_bound,
)

METHODS = ("pw4t", "adhesion", "fh", "maxply", "fundamental")
BAG_BASES = ("fundamental", "fh", "maxply", "exact", "auto")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _family_call(spec: str, rng):
    """``family:a,b,...`` with integer arguments; grids take ``RxC``."""
    family, _, rest = spec.partition(":")
    args = [a for a in rest.replace("x", ",").split(",") if a]
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise UsageError(f"bad family arguments in {spec!r}") from None
    if family not in generators.FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {sorted(generators.FAMILIES)}")
    randomized = family in ("tree", "random_interval", "cactus", "block_chain", "random_adhesion")
    try:
        return generators.generate(family, *nums, rng) if randomized else generators.generate(family, *nums)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"cannot build {spec!r}: {exc}") from None


def load_instance(spec: str, seed: int):
    """A graph file path, or a generator spec such as ``grid:4x4`` or ``random_interval:20,3``."""
    path = Path(spec)
    if path.is_file():
        return io.parse_graph(path.read_text()), None, {"file": spec}
    rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(1)[0])
    g, d = _family_call(spec, rng)
    return g, d, {"family": spec, "seed": seed}


def _method_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(2)[1])


def _report(args, instance, method, params, B, audits: list[AuditReport], t0, extra=None):
    res = {
        "ply": None if B is None else B.ply,
        "size": None if B is None else len(B),
        "generating": None,
        "audits": [c.to_dict() for a in audits for c in a.checks],
        "wall_ms": None if args.no_timing else round((time.perf_counter() - t0) * 1000, 3),
    }
    gen = [c for a in audits for c in a.checks if c.name in ("eulerian", "rank")]
    if gen:
        res["generating"] = all(c.passed for c in gen)
    if extra:
        res.update(extra)
    base = {"n": None, "m": None, "t": None, "k": None, "b": None, "seed": args.seed}
    base.update(params)
    return {"version": __version__, "instance": instance, "method": method, "params": base, "result": res}


def _decomposition(args, g, d_gen):
    if getattr(args, "decomposition", None):
        d = io.parse_decomposition(Path(args.decomposition).read_text())
    elif d_gen is not None and not getattr(args, "auto_pw", False):
        d = d_gen
    elif getattr(args, "auto_pw", False):
        _, d = exact_pathwidth(g, cap=args.pw_cap)
    else:
        return None
    check = validate(g, d)
    if not check:
        raise UsageError(f"invalid decomposition: {check.reason}")
    return d


def cmd_pw_exact(args):
    t0 = time.perf_counter()
    g, _, inst = load_instance(args.instance, args.seed)
    t, d = exact_pathwidth(g, cap=args.pw_cap)
    if args.output_decomposition:
        Path(args.output_decomposition).write_text(io.emit_decomposition(d))
    extra = {"pathwidth": t, "bags": [sorted(b) for b in d]}
    return _report(args, inst, "pw-exact", {"n": g.n, "m": g.m, "t": t}, None, [], t0, extra), 0


def cmd_construct(args):
    t0 = time.perf_counter()
    g, d_gen, inst = load_instance(args.instance, args.seed)
    rng = _method_seed(args.seed)
    params = {"n": g.n, "m": g.m}
    audits = []
    extra = {}
    if args.method == "pw4t":
        d = _decomposition(args, g, d_gen)
        if d is None:
            raise UsageError("pw4t needs --decomposition, a generator that supplies one, or --auto-pw")
        if not d.is_normal:
            d = normalize(g, d)
        B, F, trace = builders.build_pw4t(g, d)
        params["t"] = trace.width
        audits.append(verify_generating(g, B))
        audits.append(verify_ply_bound(B, 4 * trace.width))
        audits.append(forest_path_ply_audit(g, trace, B))
    elif args.method == "adhesion":
        if args.k is None or args.bag_basis is None:
            raise UsageError("adhesion needs --k and --bag-basis")
        d = _decomposition(args, g, d_gen)
        if d is None:
            raise UsageError("adhesion needs --decomposition, a generator that supplies one, or --auto-pw")
        provider = builders.make_provider(args.bag_basis, seed=int(rng.integers(2**32)))
        B, F, trace = builders.build_adhesion(g, d, provider, k=args.k, b=args.b, seed=int(rng.integers(2**32)))
        params.update(k=args.k, b=trace.b)
        bound = trace.b if trace.degenerate else trace.b + (2 * trace.k - 2) * trace.d_max
        extra["d_max"] = trace.d_max
        audits.append(verify_generating(g, B))
        audits.append(verify_ply_bound(B, bound))
        if not trace.degenerate:
            audits.append(old_skeleton_edge_audit(g, d, trace, B))
    elif args.method == "fh":
        B = builders.fh_generating_set(g, seed=rng, verify=False)
        audits.append(verify_generating(g, B))
    elif args.method == "maxply":
        B = builders.maxply_generating_set(g, mode=args.mode, seed=rng, verify=False)
        audits.append(verify_generating(g, B))
    else:
        B = builders.fundamental_generating_set(g)
        audits.append(verify_generating(g, B))
    if args.output_basis:
        Path(args.output_basis).write_text(io.emit_basis(B))
    rep = _report(args, inst, args.method, params, B, audits, t0, extra)
    return rep, 0 if all(audits) else 2


def cmd_verify(args):
    t0 = time.perf_counter()
    g, _, inst = load_instance(args.instance, args.seed)
    B = io.parse_basis(Path(args.basis).read_text(), g)
    audits = [verify_generating(g, B)]
    if args.bound is not None:
        audits.append(verify_ply_bound(B, args.bound))
    rep = _report(args, inst, "verify", {"n": g.n, "m": g.m}, B, audits, t0)
    return rep, 0 if all(audits) else 2


def _bench_instance(family: str, n: int, t: int, rng):
    if family == "grid":
        return generators.grid(n, n)[0]
    if family in ("complete", "cycle"):
        return generators.generate(family, n)[0]
    if family == "random_interval":
        return generators.random_interval(n, t, rng)[0]
    if family in ("cactus", "tree"):
        return generators.generate(family, n, rng)[0]
    raise UsageError(f"bench does not support family {family!r}")


def cmd_bench(args):
    t0 = time.perf_counter()
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = set(methods) - {"fh", "maxply", "maxply-rand", "fundamental"}
    if unknown:
        raise UsageError(f"unknown bench methods {sorted(unknown)}")
    seeds = np.random.SeedSequence(args.seed).spawn(args.trials)
    plies = {m: [] for m in methods}
    failures = 0
    n_inst = m_inst = None
    for trial, ss in enumerate(seeds):
        inst_ss, meth_ss = ss.spawn(2)
        g = _bench_instance(args.family, args.n, args.t, np.random.default_rng(inst_ss))
        n_inst, m_inst = g.n, g.m
        for j, method in enumerate(methods):
            rng = np.random.default_rng(meth_ss.spawn(len(methods))[j])
            if method == "fh":
                B = builders.fh_generating_set(g, seed=rng, verify=False)
            elif method == "maxply":
                B = builders.maxply_generating_set(g, verify=False)
            elif method == "maxply-rand":
                B = builders.maxply_generating_set(g, mode="randomized", seed=rng, verify=False)
            else:
                B = builders.fundamental_generating_set(g)
            if not verify_generating(g, B):
                failures += 1
            plies[method].append(B.ply)
    summary = {}
    for method, vals in plies.items():
        hist = {str(k): int(v) for k, v in zip(*np.unique(vals, return_counts=True))}
        summary[method] = {"histogram": hist, "min": min(vals), "max": max(vals), "mean": round(float(np.mean(vals)), 4)}
    audit = AuditReport()
    audit.add("generating", 0, failures, failures == 0)
    inst = {"family": args.family, "n": args.n, "trials": args.trials, "seed": args.seed}
    params = {"n": n_inst, "m": m_inst, "t": args.t if args.family == "random_interval" else None}
    rep = _report(args, inst, "bench:" + ",".join(methods), params, None, [audit], t0, {"methods": summary})
    return rep, 0 if audit else 2


def cmd_generate(args):
    g, d, _ = load_instance(args.instance, args.seed)
    sys.stdout.write(io.emit_graph(g))
    if args.output_decomposition:
        if d is None:
            raise UsageError(f"{args.instance} does not come with a decomposition")
        Path(args.output_decomposition).write_text(io.emit_decomposition(d))
    return None, 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lowply", description="Low-ply cycle-space generating sets.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("instance", help="graph file, or a generator spec like grid:4x4, complete:8, random_interval:20,3")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--no-timing", action="store_true", help="report wall_ms as null (byte-stable output)")
        sp.add_argument("--pw-cap", type=int, default=18, help="vertex cap for exact pathwidth")

    sp = sub.add_parser("pw-exact", help="exact pathwidth with a witness decomposition")
    common(sp)
    sp.add_argument("--output-decomposition")
    sp.set_defaults(func=cmd_pw_exact)

    sp = sub.add_parser("construct", help="build a generating set and audit it")
    common(sp)
    sp.add_argument("--method", choices=METHODS, required=True)
    sp.add_argument("--decomposition", help="decomposition file, one bag per line")
    sp.add_argument("--auto-pw", action="store_true", help="use an exact-pathwidth decomposition")
    sp.add_argument("--k", type=int)
    sp.add_argument("--b", type=int)
    sp.add_argument("--bag-basis", choices=BAG_BASES)
    sp.add_argument("--mode", choices=("deterministic", "randomized"), default="deterministic")
    sp.add_argument("--output-basis")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="audit a generating-set file")
    common(sp)
    sp.add_argument("basis")
    sp.add_argument("--bound", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="ply histograms of the shortest-cycle heuristics")
    sp.add_argument("--methods", default="fh,maxply")
    sp.add_argument("--family", default="complete")
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--t", type=int, default=3)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-timing", action="store_true")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("generate", help="print a generated graph")
    sp.add_argument("instance")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output-decomposition")
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except (UsageError, io.ParseError, GraphError, InvalidInput, SizeError, PreconditionError, OSError) as exc:
        print(f"lowply: error: {exc}", file=sys.stderr)
        return 1
    if report is not None:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line harness: generate or load instances, run algorithms, report.

Every report line is ``key=value`` pairs in a fixed order, so two runs with
the same flags give byte-identical output (wall time only with --timing).
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .approx import approx_general, default_subroutine, subquadratic_approx
from .dense import controlled_density_approx, derandomized_4eps, integer_eps
from .generators import KINDS, WEIGHT_KINDS, generate
from .graph import GraphError, format_edge_list, read_edge_list, validate_cycle
from .oracle import exact_girth
from .poly_approx import poly_girth

ALGORITHMS = ("exact", "approx2", "approx2eps", "poly", "dense8", "approx4")


def _fmt(x):
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.12g}"
    return str(x)


def _line(tag, pairs):
    return " ".join([tag] + [f"{k}={_fmt(v)}" for k, v in pairs])


@dataclass
class RunReport:
    """One instance's descriptor plus a result row per algorithm."""

    instance: list
    results: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return all(dict(r).get("valid", 1) and dict(r).get("within", 1) for r in self.results)

    def lines(self):
        out = [_line("instance", self.instance)]
        out += [_line("result", r) for r in self.results]
        out += [_line("note", n) for n in self.notes]
        return out


def run_algorithm(name, g, eps=0.1, r=None, M=None, small="exact"):
    """Dispatch one algorithm; returns ``(GirthEstimate, declared_factor)``."""
    stats = Counter()
    sub = default_subroutine(small)
    if name == "exact":
        est = exact_girth(g)
        return est, 1.0
    if name == "approx2":
        if not g.is_int:
            raise GraphError("approx2 needs an integer-mode graph")
        est = subquadratic_approx(g, M=M, r=r, stats=stats)
        return est, 2.0
    if name == "approx2eps":
        est = approx_general(g, eps, r=r, sub=sub, stats=stats)
        return est, 2.0 + eps
    if name == "poly":
        est, F = poly_girth(g, sub=sub, r=r, stats=stats)
        return est, F
    if name == "dense8":
        est = controlled_density_approx(g, eps, stats=stats)
        return est, 8.0 + eps
    if name == "approx4":
        if eps == 0:
            if not g.is_int:
                raise GraphError("approx4 with --eps 0 needs an integer-mode graph")
            # integer weights round the (4 + 1/(M(n+1))) bound down to 4
            est = derandomized_4eps(g, integer_eps(g), r=r, stats=stats)
            return est, 4.0
        est = derandomized_4eps(g, eps, r=r, stats=stats)
        return est, 4.0 + eps
    raise ValueError(f"unknown algorithm {name!r}")


def _ratio(weight, opt):
    if opt == 0:
        return 1.0 if weight == 0 else math.inf
    return weight / opt


def evaluate(g, algos, descriptor, eps=0.1, r=None, M=None, small="exact",
             oracle_cap=200, timing=False) -> RunReport:
    """Run ``algos`` on ``g``, validate each cycle, compare with the oracle."""
    rep = RunReport(list(descriptor) + [("n", g.n), ("m", g.m), ("mode", g.mode)]
                    + ([("M", g.M)] if g.is_int else []))
    opt = None
    if g.n <= oracle_cap:
        opt = exact_girth(g).weight
    else:
        rep.notes.append([("oracle", "skipped"), ("reason", f"n>{oracle_cap}")])
    for name in algos:
        t0 = time.perf_counter()
        est, factor = run_algorithm(name, g, eps, r, M, small)
        dt = time.perf_counter() - t0
        row = [("algo", name), ("weight", est.weight), ("factor", factor), ("label", est.label)]
        row.append(("valid", est.cycle is None or bool(validate_cycle(g, est.cycle))))
        if est.cycle is not None:
            row.append(("length", len(est.cycle.vertices)))
        if opt is not None:
            if math.isinf(opt):
                row.append(("ratio", 1.0 if est.cycle is None else math.inf))
                row.append(("within", est.cycle is None))
            else:
                ratio = _ratio(est.weight, opt)
                row.append(("ratio", ratio))
                row.append(("within", ratio <= factor * (1 + 1e-9)))
        for k in sorted(est.stats):
            row.append((k, est.stats[k]))
        if timing:
            row.append(("seconds", round(dt, 6)))
        rep.results.append(row)
    return rep


def _instance(args, index):
    """The ``index``-th batch item: a file or a generated graph."""
    if args.input:
        return read_edge_list(args.input), [("id", index), ("source", args.input)]
    seed = args.seed + index
    params = {}
    if args.p is not None:
        params["p"] = args.p
    if args.girth is not None:
        params["girth"] = args.girth
    g = generate(args.kind, args.n, seed=seed, weights=args.weights, M=args.max_weight,
                 lo=args.lo, hi=args.hi, **params)
    return g, [("id", index), ("source", "gen:" + args.kind), ("seed", seed), ("weights", args.weights)]


def _run_item(args, algos, index):
    g, desc = _instance(args, index)
    return evaluate(g, algos, desc, eps=args.eps, r=args.r, M=args.M, small=args.small_girth,
                    oracle_cap=args.oracle_cap, timing=args.timing)


def _batch(args, algos):
    count = 1 if args.input else args.count
    if args.workers > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            futs = [pool.submit(_run_item, args, algos, i) for i in range(count)]
            return [f.result() for f in futs]
    return [_run_item(args, algos, i) for i in range(count)]


def _emit(lines, output):
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_algorithm(args):
    algos = [args.command]
    if args.command != "exact" and args.compare_exact:
        algos = ["exact"] + algos
    reports = _batch(args, algos)
    _emit([ln for rep in reports for ln in rep.lines()], args.output)
    return 0 if all(r.ok for r in reports) else 1


def cmd_validate(args):
    reports = []
    for rep in _batch(args, _validate_algos(args)):
        reports.append(rep)
    lines = [ln for rep in reports for ln in rep.lines()]
    bad = sum(not r.ok for r in reports)
    lines.append(_line("summary", [("instances", len(reports)), ("failures", bad)]))
    _emit(lines, args.output)
    return 0 if bad == 0 else 1


def _validate_algos(args):
    algos = ["exact", "approx2eps", "poly", "dense8", "approx4"]
    if args.input:
        g = read_edge_list(args.input)
        is_int = g.is_int
    else:
        is_int = args.weights != "real"
    if is_int:
        algos.insert(1, "approx2")
    return algos


def cmd_gen(args):
    g, _ = _instance(args, 0)
    _emit([format_edge_list(g).rstrip("\n")], args.output)
    return 0


def cmd_bench(args):
    from .bench import backend_comparison, fit_exponent, scaling_rows

    sizes = [int(x) for x in args.sizes.split(",")]
    rows = scaling_rows(sizes, seed=args.seed, eps=args.eps, p=args.p if args.p is not None else 0.5,
                        timing=args.timing)
    lines = [_line("bench", row) for row in rows]
    beta = fit_exponent([dict(r)["n"] for r in rows], [dict(r)["hbd_visited"] for r in rows])
    lines.append(_line("fit", [("counter", "hbd_visited"), ("beta", round(beta, 4)),
                               ("limit", args.beta_limit), ("pass", beta <= args.beta_limit)]))
    if args.backends:
        for row in backend_comparison(min(sizes), seed=args.seed):
            lines.append(_line("backend", row))
    _emit(lines, args.output)
    return 0 if beta <= args.beta_limit else 1


def build_parser():
    p = argparse.ArgumentParser(prog="girthkit", description="Weighted girth approximation toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="edge-list file (header 'n m mode')")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="generator seed of the first item")
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--r", type=int, default=None, help="nearest-set size (default floor(n^(1/3)))")
    common.add_argument("--oracle-cap", type=int, default=200,
                        help="largest n for which the exact oracle is run")
    common.add_argument("--workers", type=int, default=1, help="processes for batch items")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to reports")

    gen = argparse.ArgumentParser(add_help=False)
    gen.add_argument("--kind", choices=KINDS, default="erdos-renyi")
    gen.add_argument("--n", type=int, default=50)
    gen.add_argument("--count", type=int, default=1, help="batch size (seeds seed..seed+count-1)")
    gen.add_argument("--weights", choices=WEIGHT_KINDS, default="int")
    gen.add_argument("--max-weight", type=int, default=10, help="M for integer weights")
    gen.add_argument("--lo", type=float, default=1.0, help="real weights: lower bound")
    gen.add_argument("--hi", type=float, default=2.0, help="real weights: upper bound")
    gen.add_argument("--p", type=float, default=None, help="edge probability")
    gen.add_argument("--girth", type=int, default=None, help="planted cycle length")

    helps = {
        "exact": "exact girth",
        "approx2": "2-approximation (integer weights)",
        "approx2eps": "(2+eps)-approximation",
        "poly": "poly-factor estimate with certified factor",
        "dense8": "(8+eps)-approximation on the lightest edges",
        "approx4": "(4+eps)-approximation; --eps 0 on integer input gives factor 4",
    }
    for name in ALGORITHMS:
        sp = sub.add_parser(name, parents=[common, gen], help=helps[name])
        sp.add_argument("--M", type=int, default=None, help="weight bound for approx2")
        sp.add_argument("--small-girth", choices=("exact", "hbd-sweep"), default="exact")
        sp.add_argument("--compare-exact", action="store_true", help="also report the exact girth")
        sp.set_defaults(func=cmd_algorithm)

    sp = sub.add_parser("validate", parents=[common, gen], help="run everything against the oracle")
    sp.add_argument("--M", type=int, default=None)
    sp.add_argument("--small-girth", choices=("exact", "hbd-sweep"), default="exact")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("gen", parents=[common, gen], help="write a generated instance")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", parents=[common], help="HBD work scaling of the (4+eps) algorithm")
    sp.add_argument("--sizes", default="128,256,512,1024")
    sp.add_argument("--p", type=float, default=None, help="edge probability (default 0.5)")
    sp.add_argument("--beta-limit", type=float, default=1.85)
    sp.add_argument("--backends", action="store_true", help="also time numba against plain Python")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"girthkit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

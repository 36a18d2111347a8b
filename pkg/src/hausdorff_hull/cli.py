"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
import warnings
from pathlib import Path
from typing import Optional

from .convex_mineps import solve_cx_mineps
from .convex_mink import solve_cx_mink
from .general_solver import (
    approx2_mineps,
    approx2_mink,
    plus_one_mineps,
    plus_one_mink,
    solve_mineps,
    solve_mink,
)
from .geom_core import ConvexChain, convex_hull
from .io import FORMATS, KINDS, InputError, RunRecord, digest, emit, gen_instance, parse_points

PROBLEMS = ("mink", "mineps", "cx-mink", "cx-mineps",
            "approx2-mink", "approx2-mineps", "plus1-mink", "plus1-mineps")
EXIT_USAGE = 2
EXIT_INPUT = 3


class UsageError(Exception):
    pass


def _wants_eps(problem: str) -> bool:
    return problem.endswith("mink")


def _convex_chain(points) -> tuple[ConvexChain, list[int]]:
    chain, idx = convex_hull(points)
    if chain.n != len(points):
        raise InputError(f"{len(points) - chain.n} point(s) are not in strictly convex position")
    return chain, idx


def solve_problem(problem: str, points, eps=None, k=None, backend="canonical", seed=0):
    """Dispatch to a solver. Returns (Solution, indices into ``points``)."""
    if problem in ("cx-mink", "cx-mineps"):
        chain, idx = _convex_chain(points)
        if problem == "cx-mink":
            sol = solve_cx_mink(chain, eps, backend=backend)
        else:
            sol = solve_cx_mineps(chain, k, rng=seed, backend=backend)
        return sol, [idx[i] for i in sol.indices]
    table = {
        "mink": lambda: solve_mink(points, eps),
        "mineps": lambda: solve_mineps(points, k),
        "approx2-mink": lambda: approx2_mink(points, eps, backend=backend),
        "approx2-mineps": lambda: approx2_mineps(points, k, rng=seed, backend=backend),
        "plus1-mink": lambda: plus_one_mink(points, eps),
        "plus1-mineps": lambda: plus_one_mineps(points, k),
    }
    sol = table[problem]()
    return sol, list(sol.indices)


def _check_budget(problem: str, eps, k) -> None:
    if _wants_eps(problem):
        if k is not None:
            raise UsageError(f"--k does not apply to {problem}; give --eps")
        if eps is None:
            raise UsageError(f"{problem} needs --eps")
        if eps < 0:
            raise UsageError("--eps must be non-negative")
    else:
        if eps is not None:
            raise UsageError(f"--eps does not apply to {problem}; give --k")
        if k is None:
            raise UsageError(f"{problem} needs --k")
        if k < 1:
            raise UsageError("--k must be at least 1")


def _parse_gen(text: str):
    parts = text.split(":")
    if len(parts) != 3 or parts[0] not in KINDS:
        raise UsageError(f"--gen expects KIND:N:SEED with KIND in {', '.join(KINDS)}; got {text!r}")
    try:
        return parts[0], int(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--gen expects integer N and SEED; got {text!r}") from None


def _load(args) -> list:
    if (args.input is None) == (args.gen is None):
        raise UsageError("give exactly one of --input and --gen")
    if args.gen is not None:
        return gen_instance(*_parse_gen(args.gen))
    if not Path(args.input).exists():
        raise InputError(f"no such file: {args.input}")
    return parse_points(args.input, args.format)


def _record(problem, points, eps, k, backend, seed) -> RunRecord:
    t0 = time.perf_counter()
    sol, idx = solve_problem(problem, points, eps=eps, k=k, backend=backend, seed=seed)
    ms = int(round((time.perf_counter() - t0) * 1000))
    meta = dict(sol.meta)
    return RunRecord(
        problem=problem, n=len(points), input_digest=digest(points),
        eps_in=eps, k_in=k, indices=[int(i) for i in idx], k=sol.k, eps=float(sol.eps),
        backend=meta.pop("backend", backend if problem.startswith(("cx", "approx2")) else None),
        seed=seed if problem in ("cx-mineps", "approx2-mineps") else None,
        elapsed_ms=ms, cost0_queries=meta.pop("cost0_queries", None), meta=meta,
    )


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_solve(args, problem: Optional[str] = None) -> None:
    problem = problem or args.problem
    _check_budget(problem, args.eps, args.k)
    points = _load(args)
    _write(_record(problem, points, args.eps, args.k, args.backend, args.seed).to_json(), args.out)


def cmd_approx(args) -> None:
    cmd_solve(args, f"{args.method}-{args.problem}")


def cmd_gen(args) -> None:
    pts = gen_instance(args.kind, args.n, args.seed)
    if args.out:
        emit(pts, args.out, args.format)
    else:
        fmt = args.format or "csv"
        if fmt == "csv":
            sys.stdout.write("".join(f"{p.x!r},{p.y!r}\n" for p in pts))
        else:
            sys.stdout.write(json.dumps([[p.x, p.y] for p in pts]) + "\n")


def _parse_sizes(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        mult = 1
        if tok.endswith("k"):
            mult, tok = 1000, tok[:-1]
        elif tok.endswith("m"):
            mult, tok = 1000000, tok[:-1]
        try:
            out.append(int(tok) * mult)
        except ValueError:
            raise UsageError(f"bad size {tok!r} in --sizes") from None
    return out


def cmd_bench(args) -> None:
    problem = args.problem
    eps = args.eps if args.eps is not None or not _wants_eps(problem) else 0.01
    k = args.k if args.k is not None or _wants_eps(problem) else 16
    _check_budget(problem, eps, k)
    kind = args.kind or ("convex-circle" if problem.startswith(("cx", "approx2")) else "uniform-square")
    rows = [("n", "elapsed_ms", "query_count", "k", "eps")]
    for n in _parse_sizes(args.sizes):
        rec = _record(problem, gen_instance(kind, n, args.seed), eps, k, args.backend, args.seed)
        rows.append((n, rec.elapsed_ms, "" if rec.cost0_queries is None else rec.cost0_queries,
                     rec.k, f"{rec.eps:.12g}"))
    _write_csv(rows, args.out)


def _write_csv(rows, out: Optional[str]) -> None:
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        csv.writer(fh, lineterminator="\n").writerows(rows)
    finally:
        if out:
            fh.close()


def cmd_export_plot(args) -> None:
    if (args.record is None) == (args.bench is None):
        raise UsageError("give exactly one of --record and --bench")
    if args.bench is not None:
        with open(args.bench, newline="") as fh:
            data = list(csv.DictReader(fh))
        try:
            rows = [("n", "elapsed_ms", "query_count")] + [
                (r["n"], r["elapsed_ms"], r["query_count"]) for r in data]
        except KeyError as e:
            raise InputError(f"bench table lacks column {e}") from None
        _write_csv(rows, args.out)
        return
    try:
        rec = json.loads(Path(args.record).read_text())
        chosen = set(rec["indices"])
    except (OSError, ValueError, KeyError) as e:
        raise InputError(f"unreadable run record: {e}") from None
    points = _load(args)
    rows = [("index", "x", "y", "chosen")] + [
        (i, repr(p.x), repr(p.y), int(i in chosen)) for i, p in enumerate(points)]
    _write_csv(rows, args.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hausdorff-hull", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def source(p):
        p.add_argument("--input", help="point file (csv lines 'x,y' or json [[x,y],...])")
        p.add_argument("--gen", metavar="KIND:N:SEED", help=f"generate points; KIND in {', '.join(KINDS)}")
        p.add_argument("--format", choices=FORMATS, help="input format (default: from extension)")

    def common(p):
        p.add_argument("--eps", type=float)
        p.add_argument("--k", type=int)
        p.add_argument("--backend", choices=("naive", "canonical"), default="canonical")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--apsp", choices=("bfs",), default="bfs")
        p.add_argument("--out")

    p = sub.add_parser("solve", help="solve one instance exactly")
    p.add_argument("--problem", choices=PROBLEMS, required=True)
    source(p)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("approx", help="approximate solvers")
    p.add_argument("--problem", choices=("mink", "mineps"), required=True)
    p.add_argument("--method", choices=("approx2", "plus1"), default="approx2")
    source(p)
    common(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time a solver over several sizes (CSV)")
    p.add_argument("--problem", choices=PROBLEMS, required=True)
    p.add_argument("--sizes", required=True, help="comma list, e.g. 1k,4k,16k")
    p.add_argument("--kind", choices=KINDS)
    common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-plot", help="CSV tables for external plotting")
    p.add_argument("--record", help="run record JSON; emits (point, chosen) rows")
    p.add_argument("--bench", help="bench CSV; emits (n, elapsed_ms, query_count) rows")
    source(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_plot)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **kw: print(f"warning: {msg}", file=sys.stderr)
            args.func(args)
    except UsageError as e:
        print(f"{ap.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, ValueError, OSError) as e:
        print(f"{ap.prog}: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

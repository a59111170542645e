"""Command-line front end: solve an instance file, generate one, or run a benchmark suite.

Exit codes: 0 solved to proven optimality (or requested artifact produced),
2 a node/time limit stopped the search early (or a benchmark was
interrupted; partial rows are flushed), 3 bad input, 4 an internal
invariant failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bnb import SolveOptions, solve
from .heuristic import primal_heuristic
from .instances import (GeneratorSpec, InstanceFormatError, read_instance,
                        write_instance)
from .model import Instance
from .relax import continuous_relaxation_bound

EXIT_OK = 0
EXIT_LIMIT = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

CSV_COLUMNS = ["instance", "class", "q", "mode", "optimum", "heuristic", "root_bound",
               "nodes", "bound_evals", "wall_ms", "optimal_flag"]


class CliError(Exception):
    """Bad command line or bad input file."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which collides with the
    # limit-reached code; route usage problems to the input-error exit instead
    def error(self, message):
        raise CliError(message)


@dataclass
class RunReport:
    instance: str
    klass: str
    q: int
    mode: str
    optimum: float | None
    heuristic: float
    root_bound: float
    active: dict
    x: dict
    nodes: int
    bound_evals: int
    incumbent_updates: int
    wall_ms: float
    status: str

    def text(self) -> str:
        lines = [
            f"instance:          {self.instance}",
            f"class:             {self.klass}  (q={self.q}, mode={self.mode})",
        ]
        if self.optimum is not None:
            lines.append(f"optimum:           {self.optimum:.12g}")
        lines += [
            f"heuristic:         {self.heuristic:.12g}",
            f"root bound:        {self.root_bound:.12g}",
            "active (group:copies): "
            + " ".join(f"{g}:{k}" for g, k in sorted(self.active.items())),
            "fractions (copy=x):    "
            + " ".join(f"{i}={v:.6g}" for i, v in sorted(self.x.items())),
            f"nodes:             {self.nodes}",
            f"bound evals:       {self.bound_evals}",
            f"incumbent updates: {self.incumbent_updates}",
            f"wall:              {self.wall_ms:.2f} ms",
            f"status:            {self.status}",
        ]
        return "\n".join(lines)

    def row(self) -> list:
        return [self.instance, self.klass, self.q, self.mode,
                "" if self.optimum is None else f"{self.optimum:.12g}",
                f"{self.heuristic:.12g}", f"{self.root_bound:.12g}",
                self.nodes, self.bound_evals, f"{self.wall_ms:.3f}",
                int(self.status == "optimal")]


def _active_counts(instance: Instance, allocation):
    counts = {}
    for i in sorted(allocation.active):
        g = int(instance.copy_group[i])
        counts[g] = counts.get(g, 0) + 1
    return counts


def cmd_solve(args) -> int:
    try:
        instance = read_instance(args.path)
    except (OSError, InstanceFormatError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT

    name = str(args.path).rsplit("/", 1)[-1].rsplit(".", 1)[0]
    root = continuous_relaxation_bound(instance)
    heur = primal_heuristic(instance)

    if args.heuristic_only:
        report = RunReport(
            instance=name, klass="file", q=instance.q, mode="heuristic",
            optimum=None, heuristic=heur.value, root_bound=root.bound,
            active=_active_counts(instance, heur),
            x={int(i): float(heur.x[i]) for i in sorted(heur.active)},
            nodes=1, bound_evals=1, incumbent_updates=1, wall_ms=0.0,
            status="heuristic",
        )
        if heur.value < root.bound - 1e-9 * max(1.0, abs(heur.value)):
            print("error: heuristic value undercuts the root lower bound", file=sys.stderr)
            return EXIT_INTERNAL
        _emit(report, args.format)
        return EXIT_OK

    options = SolveOptions(
        branching="binary" if args.binary_branching else "nary",
        node_limit=args.node_limit,
        time_limit=args.time_limit,
        trace=sys.stderr if args.trace else None,
    )
    alloc, stats = solve(instance, options)

    slack = 1e-9 * max(1.0, abs(alloc.value))
    sandwich_ok = (heur.value >= alloc.value - slack
                   and (stats.status != "optimal" or alloc.value >= root.bound - slack))
    if not sandwich_ok:
        print("error: heuristic >= optimum >= bound sandwich violated", file=sys.stderr)
        return EXIT_INTERNAL

    report = RunReport(
        instance=name, klass="file", q=instance.q,
        mode="binary" if args.binary_branching else "nary",
        optimum=alloc.value if stats.status == "optimal" else None,
        heuristic=heur.value, root_bound=root.bound,
        active=_active_counts(instance, alloc),
        x={int(i): float(alloc.x[i]) for i in sorted(alloc.active)},
        nodes=stats.nodes, bound_evals=stats.bound_evals,
        incumbent_updates=stats.incumbent_updates,
        wall_ms=stats.wall_time * 1000.0, status=stats.status,
    )
    _emit(report, args.format)
    return EXIT_OK if stats.status == "optimal" else EXIT_LIMIT


def _emit(report: RunReport, fmt: str) -> None:
    if fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(CSV_COLUMNS)
        writer.writerow(report.row())
    else:
        print(report.text())


def cmd_generate(args) -> int:
    try:
        if args.klass == "partition":
            weights = tuple(int(w) for w in args.spec.split())
            if not weights:
                raise CliError("partition needs a nonempty weight list, e.g. \"2 3 5 4\"")
            gen = GeneratorSpec(kind="partition", weights=weights)
            comments = [f"partition weights {' '.join(str(w) for w in weights)} "
                        f"(W={sum(weights)})"]
        else:
            try:
                q = int(args.spec)
            except ValueError:
                raise CliError(f"expected an integer q for class {args.klass}, "
                               f"got {args.spec!r}") from None
            gen = GeneratorSpec(kind=args.klass, q=q, seed=args.seed, exponent=args.exponent)
            comments = [f"{args.klass} instance q={q}"
                        + (f" seed={args.seed}" if args.klass == "random" else "")]
        instance = gen.build()
        write_instance(instance, args.out, comments=comments)
    except (CliError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {gen.label()}: {len(instance.groups)} groups, q={instance.q} -> {args.out}")
    return EXIT_OK


def _bench_jobs(suite: dict):
    """Expand a suite spec into an ordered list of (label, GeneratorSpec, mode)."""
    jobs = []
    for entry in suite.get("entries", []):
        klass = entry["class"]
        modes = entry.get("modes", ["nary"])
        if klass == "partition":
            weights = tuple(int(w) for w in entry["weights"])
            specs = [GeneratorSpec(kind="partition", weights=weights)]
        else:
            sizes = entry.get("sizes") or [entry["q"]]
            if klass == "random":
                seeds = entry.get("seeds")
                if seeds is None:
                    seeds = list(range(1, int(entry.get("repetitions", 1)) + 1))
                specs = [GeneratorSpec(kind="random", q=int(q), seed=int(s),
                                       exponent=float(entry.get("exponent", 1.0)))
                         for q in sizes for s in seeds]
            else:
                specs = [GeneratorSpec(kind="base", q=int(q)) for q in sizes]
        for spec in specs:
            for mode in modes:
                jobs.append((spec.label(), spec, mode))
    return jobs


def _run_job(job):
    label, spec, mode = job
    instance = spec.build()
    root = continuous_relaxation_bound(instance)
    heur = primal_heuristic(instance)
    alloc, stats = solve(instance, SolveOptions(branching=mode))
    return RunReport(
        instance=label, klass=spec.kind, q=instance.q, mode=mode,
        optimum=alloc.value if stats.status == "optimal" else None,
        heuristic=heur.value, root_bound=root.bound,
        active=_active_counts(instance, alloc),
        x={}, nodes=stats.nodes, bound_evals=stats.bound_evals,
        incumbent_updates=stats.incumbent_updates,
        wall_ms=stats.wall_time * 1000.0, status=stats.status,
    )


def cmd_bench(args) -> int:
    try:
        with open(args.suite, "r", encoding="utf-8") as fh:
            suite = json.load(fh)
        jobs = _bench_jobs(suite)
    except (OSError, ValueError, KeyError) as err:
        print(f"error: bad suite spec: {err}", file=sys.stderr)
        return EXIT_INPUT
    if not jobs:
        print("error: suite spec contains no jobs", file=sys.stderr)
        return EXIT_INPUT

    reports = []
    interrupted = False
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        try:
            if args.workers > 1:
                with ProcessPoolExecutor(max_workers=args.workers) as pool:
                    for report in pool.map(_run_job, jobs):
                        reports.append(report)
                        writer.writerow(report.row())
                        fh.flush()
            else:
                for job in jobs:
                    report = _run_job(job)
                    reports.append(report)
                    writer.writerow(report.row())
                    fh.flush()
        except KeyboardInterrupt:
            interrupted = True
        # summary rows mirror the per-(class, size, mode) averages
        groups = {}
        for r in reports:
            groups.setdefault((r.klass, r.q, r.mode), []).append(r)
        for (klass, q, mode), rs in groups.items():
            n = len(rs)
            opt_vals = [r.optimum for r in rs if r.optimum is not None]
            writer.writerow([
                "average", klass, q, mode,
                f"{sum(opt_vals) / len(opt_vals):.12g}" if opt_vals else "",
                f"{sum(r.heuristic for r in rs) / n:.12g}",
                f"{sum(r.root_bound for r in rs) / n:.12g}",
                f"{sum(r.nodes for r in rs) / n:.6g}",
                f"{sum(r.bound_evals for r in rs) / n:.6g}",
                f"{sum(r.wall_ms for r in rs) / n:.3f}",
                int(all(r.status == "optimal" for r in rs)),
            ])
    done = len(reports)
    print(f"bench: {done}/{len(jobs)} jobs -> {args.out}"
          + (" (interrupted, partial)" if interrupted else ""))
    return EXIT_LIMIT if interrupted else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latalloc",
                     description="Split one unit of demand across congestible resources "
                                 "with fixed activation charges.")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve an instance file exactly")
    ps.add_argument("path")
    ps.add_argument("--binary-branching", action="store_true",
                    help="fix one copy per branch instead of a whole group")
    ps.add_argument("--heuristic-only", action="store_true",
                    help="report the heuristic allocation and root bound, skip the search")
    ps.add_argument("--trace", action="store_true",
                    help="log one line per evaluated node to stderr")
    ps.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    ps.add_argument("--node-limit", type=int, default=None, metavar="N")
    ps.add_argument("--format", choices=["text", "csv"], default="text")
    ps.set_defaults(func=cmd_solve)

    pg = sub.add_parser("generate", help="write an instance file")
    pg.add_argument("klass", choices=["base", "random", "partition"], metavar="class")
    pg.add_argument("spec", help="q for base/random, a quoted weight list for partition")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--exponent", type=float, default=1.0)
    pg.add_argument("--out", required=True)
    pg.set_defaults(func=cmd_generate)

    pb = sub.add_parser("bench", help="run a JSON suite spec, write a CSV")
    pb.add_argument("suite")
    pb.add_argument("--out", required=True)
    pb.add_argument("--workers", type=int, default=1)
    pb.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

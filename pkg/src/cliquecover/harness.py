"""Solver dispatch and G(n, p) ensemble runs with CSV reporting."""
from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from statistics import fmean

from .cover import cover_weight, is_cover, trivial_count
from .fpt import CFPT, MFPT, assignment_minimum, cfpt_decide, mfpt_decide, minimum_cover
from .graph import Graph, degeneracy_ordering, gnp_generate, read_edge_list, trivial_cliques
from .greedy import CliqueSelect, EdgeOrder, basic_greedy, degeneracy_greedy, improved_greedy
from .oracle import exact_minimum_size
from .stats import Deadline, RunStats, SearchStats, SolveTimeout

GREEDY = ("basic", "ccsg", "ccsd")
EXACT = (CFPT, MFPT, "amin", "oracle")
ALGORITHMS = GREEDY + EXACT

DEFAULT_TIME_LIMIT_MS = 60_000

OK = "OK"
TIMEOUT = "TIMEOUT"
NONE = "NONE"

SEARCH_COLUMNS = ["nodes", "max_depth", "max_branches", "branch_hist", "k_found"]
ROW_COLUMNS = ["instance", "status"] + RunStats.columns() + SEARCH_COLUMNS


@dataclass
class Outcome:
    status: str
    cover: object | None
    run: RunStats
    search: SearchStats | None = None

    def row(self, instance: str = "") -> dict:
        row = {"instance": instance, "status": self.status, **self.run.row()}
        if self.search is not None:
            srow = self.search.row()
            row.update({k: srow[k] for k in SEARCH_COLUMNS})
        else:
            row.update({k: "" for k in SEARCH_COLUMNS})
        return row


def solve(g: Graph, algo: str, order="degree", select="largest", seed: int = 0,
          k: int | None = None, time_limit_ms: float | None = None, graph_name: str = "") -> Outcome:
    """Run one solver and wrap its result; timeouts become an ``Outcome`` with status TIMEOUT."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
    deadline = Deadline(time_limit_ms)
    sel = CliqueSelect(select, seed)
    dv = degeneracy_ordering(g)
    base = RunStats(graph=graph_name, n=g.n, m=g.m, d=dv.degeneracy, max_degree=g.max_degree,
                    algorithm=algo, seed=seed)
    t0 = time.perf_counter()
    search = None
    try:
        if algo == "basic":
            cover, st = basic_greedy(g, order, sel, deadline=deadline)
        elif algo == "ccsg":
            cover, st = improved_greedy(g, order, sel, deadline=deadline)
        elif algo == "ccsd":
            cover, st = degeneracy_greedy(g, sel, dv=dv, deadline=deadline)
        else:
            cover, search = _exact(g, algo, dv, k, deadline)
            st = RunStats(policy="degeneracy" if algo != "oracle" else "")
    except SolveTimeout:
        base.policy = _policy(algo, order, sel)
        base.wall_ms = (time.perf_counter() - t0) * 1000.0
        return Outcome(TIMEOUT, None, base, search)
    base.policy = st.policy or _policy(algo, order, sel)
    base.ccs_max, base.ccs_tsi = st.ccs_max, st.ccs_tsi
    base.wall_ms = (time.perf_counter() - t0) * 1000.0
    if cover is None:
        return Outcome(NONE, None, base, search)
    trivial = trivial_cliques(g)
    base.cover_size = len(cover)
    base.nontrivial_size = len(cover) - trivial_count(g, cover, trivial)
    base.weight = cover_weight(cover)
    return Outcome(OK, cover, base, search)


def _policy(algo, order, sel):
    if algo in ("basic", "ccsg"):
        return f"{EdgeOrder(order).value}/{sel}"
    if algo == "ccsd":
        return f"degeneracy/{sel}"
    return "degeneracy" if algo != "oracle" else ""


def _exact(g, algo, dv, k, deadline):
    search = SearchStats()
    if algo == "oracle":
        deadline.check()
        t = time.perf_counter()
        res = exact_minimum_size(g)
        search.k_found = res.min_size
        search.wall_ms = (time.perf_counter() - t) * 1000.0
        return res.witness_cover, search
    if algo == "amin":
        deadline.check()
        cover = assignment_minimum(g, dv, deadline=deadline, stats=search)
        return cover, search
    if k is None:
        return minimum_cover(g, algo, dv=dv, deadline=deadline)
    deadline.check()
    decide = cfpt_decide if algo == CFPT else mfpt_decide
    cover = decide(g, dv, k, deadline=deadline, stats=search)
    search.k_found = len(cover) if cover is not None else -1
    return cover, search


@dataclass
class ExperimentSpec:
    """Everything needed to replay an ensemble: either G(n, p) parameters or a file list."""

    n: int = 0
    p: float = 0.0
    count: int = 0
    seed: int = 0
    files: list[str] = field(default_factory=list)
    roster: list[str] = field(default_factory=lambda: ["ccsg", MFPT])
    order: str = "degree"
    select: str = "largest"
    time_limit_ms: float | None = DEFAULT_TIME_LIMIT_MS
    baseline: str | None = None

    def instances(self):
        if self.files:
            return [(os.path.basename(f), f, None) for f in self.files]
        tag = f"gnp_{self.n}_{self.p:g}"
        return [(f"{tag}_s{self.seed + i}", None, self.seed + i) for i in range(self.count)]


def _run_instance(job):
    spec, (name, path, seed) = job
    g = read_edge_list(path) if path else gnp_generate(spec.n, spec.p, seed)
    rows = []
    for algo in spec.roster:
        out = solve(g, algo, spec.order, spec.select, seed if seed is not None else spec.seed,
                    time_limit_ms=spec.time_limit_ms, graph_name=name)
        if out.cover is not None and not is_cover(g, out.cover):
            raise AssertionError(f"{algo} produced an invalid cover on {name}")
        rows.append(out.row(name))
    return rows


def run_ensemble(spec: ExperimentSpec, workers: int | None = 1) -> list[dict]:
    """Per-instance rows in instance order then roster order."""
    jobs = [(spec, inst) for inst in spec.instances()]
    if workers == 1 or len(jobs) <= 1:
        chunks = map(_run_instance, jobs)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_instance, jobs))
    return [row for chunk in chunks for row in chunk]


def _gmean(xs):
    return math.exp(fmean(math.log(x) for x in xs)) if xs else float("nan")


def summarize(rows: list[dict], roster: list[str], baseline: str | None = None) -> list[dict]:
    """Summary metrics, one row per (metric, algorithm[, other]).

    Ratios and reductions use only instances where every compared algorithm
    finished; size ratios also skip instances whose nontrivial size is zero.
    """
    by = {}
    for r in rows:
        by.setdefault(r["instance"], {})[r["algorithm"]] = r
    insts = list(by)
    out = []

    def emit(metric, algo, value, other=""):
        out.append({"metric": metric, "algorithm": algo, "other": other,
                    "value": round(value, 6) if isinstance(value, float) else value})

    for a in roster:
        done = [by[i][a] for i in insts if by[i][a]["status"] == OK]
        emit("completion_rate", a, 100.0 * len(done) / len(insts) if insts else 0.0)
        if done:
            emit("mean_wall_ms", a, fmean(float(r["wall_ms"]) for r in done))
            emit("mean_cover_size", a, fmean(r["cover_size"] for r in done))
            nodes = [r["nodes"] for r in done if r["nodes"] != ""]
            if nodes:
                emit("mean_nodes", a, fmean(nodes))

    def both(a, b):
        return [i for i in insts if by[i][a]["status"] == OK and by[i][b]["status"] == OK]

    for a, b in combinations(roster, 2):
        common = both(a, b)
        ratios = [float(by[i][a]["wall_ms"]) / float(by[i][b]["wall_ms"]) for i in common
                  if float(by[i][b]["wall_ms"]) > 0 and float(by[i][a]["wall_ms"]) > 0]
        if ratios:
            emit("gmean_runtime_ratio", a, _gmean(ratios), b)
    if baseline:
        for a in roster:
            if a == baseline:
                continue
            pairs = [(by[i][a]["nontrivial_size"], by[i][baseline]["nontrivial_size"]) for i in both(a, baseline)]
            pairs = [(x, y) for x, y in pairs if x > 0 and y > 0]
            if pairs:
                emit("gmean_size_ratio", a, _gmean([x / y for x, y in pairs]), baseline)
                emit("relative_reduction_pct", a, fmean((1 - y / x) * 100 for x, y in pairs), baseline)
                emit("size_agreement", a, sum(x == y for x, y in pairs) / len(pairs), baseline)
    return out


def write_csv(path_or_fh, rows: list[dict], columns: list[str]) -> None:
    def dump(fh):
        w = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)

    if hasattr(path_or_fh, "write"):
        dump(path_or_fh)
    else:
        with open(path_or_fh, "w", newline="") as fh:
            dump(fh)

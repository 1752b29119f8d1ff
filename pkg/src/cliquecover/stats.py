"""Run instrumentation records and wall-clock deadlines shared by all solvers."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import asdict, dataclass, field, fields


class SolveTimeout(Exception):
    """A solver ran past its wall-clock limit."""


class Deadline:
    """Wall-clock budget; ``None`` limit means unbounded."""

    __slots__ = ("at",)

    def __init__(self, limit_ms: float | None = None):
        self.at = None if limit_ms is None else time.perf_counter() + limit_ms / 1000.0

    def check(self) -> None:
        if self.at is not None and time.perf_counter() >= self.at:
            raise SolveTimeout()


UNBOUNDED = Deadline(None)


@dataclass
class RunStats:
    graph: str = ""
    n: int = 0
    m: int = 0
    d: int = -1
    max_degree: int = 0
    algorithm: str = ""
    policy: str = ""
    cover_size: int = 0
    nontrivial_size: int = 0
    weight: int = 0
    ccs_max: int = 0
    ccs_tsi: int = 0
    wall_ms: float = 0.0
    seed: int = 0
    # final sum of candidate-set sizes; not part of the CSV row
    final_ccs: int = 0

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.name != "final_ccs"]

    def row(self) -> dict:
        row = asdict(self)
        row.pop("final_ccs")
        row["wall_ms"] = round(self.wall_ms, 3)
        return row


@dataclass
class SearchStats:
    """Search-tree counters; ``branches`` maps branch count to number of nodes."""

    nodes_visited: int = 0
    max_depth: int = 0
    branches: Counter = field(default_factory=Counter)
    k_found: int = -1
    wall_ms: float = 0.0
    iterations: int = 0
    # peak live candidate-set mass (candidate-set search only)
    ccs_peak: int = 0

    def visit(self, depth: int) -> None:
        self.nodes_visited += 1
        if depth > self.max_depth:
            self.max_depth = depth

    @property
    def max_branches(self) -> int:
        return max(self.branches, default=0)

    def merge(self, other: "SearchStats") -> None:
        self.nodes_visited += other.nodes_visited
        self.max_depth = max(self.max_depth, other.max_depth)
        self.branches.update(other.branches)
        self.iterations += other.iterations
        self.ccs_peak = max(self.ccs_peak, other.ccs_peak)

    def histogram_summary(self) -> str:
        return ";".join(f"{b}:{c}" for b, c in sorted(self.branches.items()))

    def row(self) -> dict:
        return {
            "nodes": self.nodes_visited,
            "max_depth": self.max_depth,
            "max_branches": self.max_branches,
            "branch_hist": self.histogram_summary(),
            "k_found": self.k_found,
            "wall_ms": round(self.wall_ms, 3),
        }

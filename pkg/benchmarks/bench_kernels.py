"""Compare jitted kernels against the pure Python paths.

    python benchmarks/bench_kernels.py [--repeat 3]

Kernels: degeneracy peeling, trivial-edge detection, and the candidate-set
search tree (array engine under numba vs the set-based search).
"""
import argparse
import time

import numpy as np

from cliquecover import _kernels
from cliquecover.fpt import CFPT, minimum_cover
from cliquecover.graph import gnp_generate


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAS_NUMBA:
        raise SystemExit("numba is unavailable or disabled; nothing to compare")
    _kernels.warmup()
    minimum_cover(gnp_generate(6, 0.5, 0), CFPT, engine="arrays")

    rows = []
    for n, p in ((2_000, 0.005), (20_000, 0.0005), (5_000, 0.01)):
        g = gnp_generate(n, p, 1)
        indptr, indices = g.csr()
        jit_t, a = best_of(lambda: _kernels.peel_order(indptr, indices, n, use_jit=True), args.repeat)
        py_t, b = best_of(lambda: _kernels.peel_order(indptr, indices, n, use_jit=False), args.repeat)
        assert np.array_equal(a[0], b[0]) and a[1] == b[1]
        rows.append((f"peel G({n},{p})", jit_t, py_t))

        es = np.asarray(g.edges(), dtype=np.int64)
        us, vs = es[:, 0].copy(), es[:, 1].copy()
        jit_t, a = best_of(lambda: _kernels.trivial_edge_mask(indptr, indices, us, vs, use_jit=True), args.repeat)
        py_t, b = best_of(lambda: _kernels.trivial_edge_mask(indptr, indices, us, vs, use_jit=False), args.repeat)
        assert np.array_equal(a, b)
        rows.append((f"trivial G({n},{p})", jit_t, py_t))

    for n, p, seed in ((10, 0.5, 10352), (11, 0.4, 11285), (11, 0.5, 11361)):
        g = gnp_generate(n, p, seed)
        jit_t, (ca, sa) = best_of(lambda: minimum_cover(g, CFPT, engine="arrays"), 1)
        py_t, (cb, sb) = best_of(lambda: minimum_cover(g, CFPT, engine="sets"), 1)
        assert ca.cliques == cb.cliques and sa.nodes_visited == sb.nodes_visited
        rows.append((f"cfpt G({n},{p}) s={seed} [{sa.nodes_visited} nodes]", jit_t, py_t))

    print(f"{'kernel':<44}{'numba s':>12}{'python s':>12}{'speedup':>10}")
    for name, jit_t, py_t in rows:
        print(f"{name:<44}{jit_t:>12.4f}{py_t:>12.4f}{py_t / jit_t:>9.1f}x")


if __name__ == "__main__":
    main()

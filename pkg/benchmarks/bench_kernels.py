"""Time the numba kernels against the pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--nodes 2000] [--repeat 3]

The extra cost of the first numba call (compilation, or loading the on-disk
cache) is reported separately.
"""
import argparse
import random
import sys
import time

import numpy as np

from keypartx import kernels
from keypartx.community import DirectedView, canonical_labels
from keypartx.graph import PerceptionGraph
from keypartx.normalize import load_lexicon
from keypartx.reduce import adjacency


def random_graph(n, avg_deg, seed):
    rng = random.Random(seed)
    g = PerceptionGraph()
    nouns = [f"n{i}2n" for i in range(n // 2)]
    mods = [f"a{i}2a" for i in range(n // 4)] + [f"v{i}2v" for i in range(n - n // 2 - n // 4)]
    for _ in range(n * avg_deg // 2):
        if rng.random() < 0.5:
            g.add_arc(rng.choice(mods), rng.choice(nouns), rng.randint(1, 3))
        else:
            u, v = rng.sample(nouns, 2)
            g.add_pair(u, v, rng.randint(1, 3))
    return g


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=2000)
    ap.add_argument("--degree", type=int, default=6)
    ap.add_argument("--queries", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    g = random_graph(args.nodes, args.degree, 0)
    view = DirectedView.from_graph(g)
    indptr, indices, weights = view.symmetric_csr()
    _, c_ptr, c_idx = adjacency(g)
    order = np.random.default_rng(0).permutation(view.n)

    lex = load_lexicon()
    lex.within("warm")  # builds the packed word index
    _, codes, lengths, _ = lex._index
    rng = random.Random(0)
    words = rng.sample(sorted(w for w in lex if len(w) > 4), args.queries)
    queries = [np.array([ord(c) for c in w[::-1]], dtype=np.int32) for w in words]

    def work(be):
        return {
            "osa (lexicon scan)": lambda: [be.osa_distances(q, codes, lengths, 2)
                                           for q in queries],
            "k-core peel (k=3)": lambda: be.core_mask(c_ptr, c_idx, 3),
            "local moving": lambda: be.move_nodes(indptr, indices, weights, view.k_out,
                                                  view.k_in, view.m, 1.0,
                                                  np.arange(view.n), order, 1e-12),
            "refinement": lambda: be.refine_nodes(
                indptr, indices, weights, view.k_out, view.k_in, view.m, 1.0,
                canonical_labels(np.arange(view.n) % 20), order, 1e-12),
        }

    print(f"graph: {view.n} nodes, {len(view.w)} arcs; lexicon: {len(lex)} words, "
          f"{args.queries} queries")
    npy = work(kernels.get_backend("numpy"))
    try:
        nb = work(kernels.get_backend("numba"))
    except ImportError:
        nb = None
    print(f"{'kernel':<22}{'numpy s':>10}{'numba s':>10}{'1st-call+ s':>11}{'speedup':>9}")
    for name, fn in npy.items():
        t_np = bench(fn, args.repeat)
        if nb is None:
            print(f"{name:<22}{t_np:>10.4f}{'-':>10}{'-':>11}{'-':>9}")
            continue
        t0 = time.perf_counter()
        nb[name]()
        first = time.perf_counter() - t0
        t_nb = bench(nb[name], args.repeat)
        print(f"{name:<22}{t_np:>10.4f}{t_nb:>10.4f}{max(first - t_nb, 0):>11.3f}"
              f"{t_np / t_nb:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

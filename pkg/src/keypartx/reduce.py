"""Graph downsizing: edge-weight threshold, k-core peeling, isolate removal."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import PerceptionGraph


@dataclass(frozen=True)
class ReduceParams:
    k_weight: int = 2
    k_core: int = 2

    def __post_init__(self):
        if self.k_weight < 1:
            raise ValueError(f"k_weight must be >= 1, got {self.k_weight}")
        if self.k_core < 0:
            raise ValueError(f"k_core must be >= 0, got {self.k_core}")


def k_weight_filter(g: PerceptionGraph, k: int) -> PerceptionGraph:
    """Drop edges lighter than k. Nodes are kept, even if left isolated."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return PerceptionGraph(
        dict(g.nodes),
        {e: w for e, w in g.directed.items() if w >= k},
        {e: w for e, w in g.undirected.items() if w >= k},
    )


def adjacency(g: PerceptionGraph):
    """Node labels (sorted) and a CSR of distinct neighbours, direction ignored."""
    labels = sorted(g.nodes)
    index = {n: i for i, n in enumerate(labels)}
    pairs = {(index[a], index[b]) for a, b in list(g.directed) + list(g.undirected)}
    pairs |= {(b, a) for a, b in pairs}
    if pairs:
        src, dst = np.array(sorted(pairs), dtype=np.int64).T
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    indptr = np.zeros(len(labels) + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return labels, np.cumsum(indptr), np.ascontiguousarray(dst)


def k_core(g: PerceptionGraph, k: int) -> PerceptionGraph:
    """Maximal subgraph whose nodes all touch at least k distinct edges."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return g.copy()
    labels, indptr, indices = adjacency(g)
    alive = kernels.core_mask(indptr, indices, k)
    return g.subgraph(n for n, a in zip(labels, alive) if a)


def remove_isolates(g: PerceptionGraph) -> PerceptionGraph:
    touched = set()
    for a, b in list(g.directed) + list(g.undirected):
        touched.add(a)
        touched.add(b)
    return g.subgraph(touched)


def reduce_graph(g: PerceptionGraph, params: ReduceParams | None = None,
                 stages: dict | None = None) -> PerceptionGraph:
    """k-weight, then k-core, then isolate removal.

    Pass a dict as ``stages`` to collect the counts after each step.
    """
    params = params or ReduceParams()
    g1 = k_weight_filter(g, params.k_weight)
    g2 = k_core(g1, params.k_core)
    g3 = remove_isolates(g2)
    if stages is not None:
        stages["k_weight"] = g1.counts()
        stages["k_core"] = g2.counts()
        stages["isolates_removed"] = g3.counts()
    return g3

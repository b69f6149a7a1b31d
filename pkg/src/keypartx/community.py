"""Directed modularity and Leiden-style community detection.

Quality is the unnormalized directed modularity

    Q = sum_ij (A_ij - gamma * k_i^out * k_j^in / m) * [c_i == c_j]

with undirected noun pairs entering as two opposite arcs. Q / m is the
familiar normalized value; both are reported.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import PerceptionGraph

MAX_ROUNDS = 100


@dataclass
class DirectedView:
    """Arc list over nodes 0..n-1 with weighted in/out degrees."""
    nodes: list[str]
    src: np.ndarray
    dst: np.ndarray
    w: np.ndarray
    k_out: np.ndarray = field(init=False)
    k_in: np.ndarray = field(init=False)
    m: float = field(init=False)

    def __post_init__(self):
        n = len(self.nodes)
        self.src = np.asarray(self.src, dtype=np.int64)
        self.dst = np.asarray(self.dst, dtype=np.int64)
        self.w = np.asarray(self.w, dtype=np.float64)
        self.k_out = np.bincount(self.src, weights=self.w, minlength=n).astype(np.float64)
        self.k_in = np.bincount(self.dst, weights=self.w, minlength=n).astype(np.float64)
        self.m = float(self.w.sum())

    @classmethod
    def from_arcs(cls, arcs: dict, nodes=None) -> "DirectedView":
        """Build from a {(src, dst): weight} map; ``nodes`` adds isolated nodes."""
        labels = sorted(set(nodes or ()) | {a for a, _ in arcs} | {b for _, b in arcs})
        index = {x: i for i, x in enumerate(labels)}
        items = sorted((index[a], index[b], float(w)) for (a, b), w in arcs.items() if w)
        for a, b, _ in items:
            if a == b:
                raise ValueError(f"self-loop on {labels[a]!r}")
        src, dst, w = (zip(*items) if items else ((), (), ()))
        return cls(labels, list(src), list(dst), list(w))

    @classmethod
    def from_graph(cls, g: PerceptionGraph) -> "DirectedView":
        arcs = dict(g.directed)
        for (u, v), w in g.undirected.items():
            arcs[(u, v)] = arcs.get((u, v), 0) + w
            arcs[(v, u)] = arcs.get((v, u), 0) + w
        return cls.from_arcs(arcs, g.nodes)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def symmetric_csr(self):
        """CSR of s_ij = A_ij + A_ji (i != j), neighbours ascending."""
        return _csr(self.n, self.src, self.dst, self.w)


def _csr(n, src, dst, w):
    keep = src != dst
    src, dst, w = src[keep], dst[keep], w[keep]
    rows = np.concatenate([src, dst])
    cols = np.concatenate([dst, src])
    vals = np.concatenate([w, w])
    if len(rows):
        key = rows * n + cols
        uniq, inv = np.unique(key, return_inverse=True)
        summed = np.bincount(inv, weights=vals)
        rows, cols, vals = uniq // n, uniq % n, summed
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    return (np.cumsum(indptr), np.ascontiguousarray(cols, dtype=np.int64),
            np.ascontiguousarray(vals, dtype=np.float64))


@dataclass
class Partition:
    assignment: dict[str, int]
    quality: float
    gamma: float = 1.0
    m: float = 0.0

    @property
    def q_normalized(self) -> float:
        return self.quality / self.m if self.m else 0.0

    @property
    def n_communities(self) -> int:
        return len(set(self.assignment.values()))

    def communities(self) -> list[list[str]]:
        groups = [[] for _ in range(self.n_communities)]
        for node in sorted(self.assignment):
            groups[self.assignment[node]].append(node)
        return groups


def _membership(view: DirectedView, p) -> np.ndarray:
    assign = p.assignment if isinstance(p, Partition) else p
    if isinstance(assign, dict):
        missing = [x for x in view.nodes if x not in assign]
        if missing:
            raise ValueError(f"partition misses nodes {missing[:5]}")
        return np.array([assign[x] for x in view.nodes], dtype=np.int64)
    return np.asarray(assign, dtype=np.int64)


def directed_modularity(view: DirectedView, p, gamma: float = 1.0) -> float:
    """Q for a partition (Partition, label->id dict, or per-node id array)."""
    if view.m == 0:
        return 0.0
    memb = _membership(view, p)
    inside = view.w[memb[view.src] == memb[view.dst]].sum()
    _, c = np.unique(memb, return_inverse=True)
    c_out = np.bincount(c, weights=view.k_out)
    c_in = np.bincount(c, weights=view.k_in)
    return float(inside - gamma * np.dot(c_out, c_in) / view.m)


def canonical_labels(memb: np.ndarray) -> np.ndarray:
    """Renumber so ids appear in order of each community's first node."""
    out = np.empty(len(memb), dtype=np.int64)
    seen = {}
    for i, c in enumerate(memb.tolist()):
        if c not in seen:
            seen[c] = len(seen)
        out[i] = seen[c]
    return out


def _aggregate(indptr, indices, weights, k_out, k_in, groups, n_groups):
    """Collapse nodes into ``groups``; internal weight becomes (ignored) self-loops."""
    rows = np.repeat(np.arange(len(k_out)), np.diff(indptr))
    a, b = groups[rows], groups[indices]
    keep = a != b
    key = a[keep] * n_groups + b[keep]
    if len(key):
        uniq, inv = np.unique(key, return_inverse=True)
        vals = np.bincount(inv, weights=weights[keep])
        r, c = uniq // n_groups, uniq % n_groups
    else:
        r = c = np.zeros(0, dtype=np.int64)
        vals = np.zeros(0)
    new_indptr = np.zeros(n_groups + 1, dtype=np.int64)
    np.add.at(new_indptr, r + 1, 1)
    return (np.cumsum(new_indptr), np.ascontiguousarray(c, dtype=np.int64),
            np.ascontiguousarray(vals, dtype=np.float64),
            np.bincount(groups, weights=k_out, minlength=n_groups),
            np.bincount(groups, weights=k_in, minlength=n_groups))


def _leiden_round(view, gamma, rng, tol, start):
    """One pass of move / refine / aggregate levels from the ``start`` membership."""
    indptr, indices, weights = view.symmetric_csr()
    k_out, k_in = view.k_out.copy(), view.k_in.copy()
    node_of = np.arange(view.n)  # base node -> current level node
    memb = start.copy()
    while True:
        n_level = len(k_out)
        order = rng.permutation(n_level)
        kernels.move_nodes(indptr, indices, weights, k_out, k_in, view.m, gamma,
                           memb, order, tol)
        memb = canonical_labels(memb)
        n_comm = int(memb.max()) + 1
        if n_comm == n_level:
            break
        refined = kernels.refine_nodes(indptr, indices, weights, k_out, k_in, view.m,
                                       gamma, memb, rng.permutation(n_level), tol)
        refined = canonical_labels(refined)
        n_ref = int(refined.max()) + 1
        if n_ref == n_level:
            # refinement found nothing to merge; aggregate the coarse partition
            refined, n_ref = memb, n_comm
        coarse = np.empty(n_ref, dtype=np.int64)
        coarse[refined] = memb
        indptr, indices, weights, k_out, k_in = _aggregate(
            indptr, indices, weights, k_out, k_in, refined, n_ref)
        node_of = refined[node_of]
        memb = coarse
    return canonical_labels(memb[node_of])


def detect_communities(g, gamma: float = 1.0, seed: int = 42) -> Partition:
    """Leiden-style partition maximizing directed modularity.

    Accepts a PerceptionGraph or a DirectedView. Node visiting orders come
    from a numpy generator seeded with ``seed``; move ties keep the node in
    place, otherwise the lowest community id wins. Rounds repeat until Q
    stops improving by more than a tolerance relative to the total weight.
    """
    view = g if isinstance(g, DirectedView) else DirectedView.from_graph(g)
    if view.n == 0:
        raise ValueError("cannot partition an empty graph")
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if view.m == 0:
        memb = np.arange(view.n)
        return Partition(dict(zip(view.nodes, memb.tolist())), 0.0, gamma, 0.0)

    tol = 1e-12 * max(1.0, view.m)
    rng = np.random.default_rng(seed)
    memb = np.arange(view.n)
    q = directed_modularity(view, memb, gamma)
    for _ in range(MAX_ROUNDS):
        new = _leiden_round(view, gamma, rng, tol, memb)
        q_new = directed_modularity(view, new, gamma)
        if q_new > q + tol:
            memb, q = new, q_new
        else:
            break

    one = np.zeros(view.n, dtype=np.int64)
    q_one = directed_modularity(view, one, gamma)
    if q_one > q + tol:
        memb, q = one, q_one
    memb = canonical_labels(memb)
    return Partition(dict(zip(view.nodes, memb.tolist())), q, gamma, view.m)


def community_pos_census(g: PerceptionGraph, p: Partition) -> list[dict]:
    """Node-kind counts per community; noun_only flags communities with no adj/verb."""
    rows = []
    for cid, members in enumerate(p.communities()):
        counts = {"adj": 0, "verb": 0, "noun": 0}
        for node in members:
            counts[g.nodes[node]] += 1
        rows.append({"id": cid, "nodes": members, **counts,
                     "noun_only": counts["adj"] + counts["verb"] == 0})
    return rows


def partition_json(g: PerceptionGraph, p: Partition) -> str:
    census = community_pos_census(g, p)
    payload = {
        "gamma": p.gamma,
        "Q_raw": p.quality,
        "Q_normalized": p.q_normalized,
        "communities": [{k: row[k] for k in ("id", "nodes", "adj", "verb", "noun")}
                        for row in census],
    }
    return json.dumps(payload, indent=1, ensure_ascii=False) + "\n"


def partition_from_json(text: str) -> Partition:
    d = json.loads(text)
    assign = {node: c["id"] for c in d["communities"] for node in c["nodes"]}
    q = d["Q_raw"]
    m = q / d["Q_normalized"] if d["Q_normalized"] else 0.0
    return Partition(assign, q, d["gamma"], m)

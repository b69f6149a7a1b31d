"""Hypothesis strategies and seeded generators for perception graphs."""
import random

from hypothesis import strategies as st

from keypartx.graph import PerceptionGraph


def random_graph(rng: random.Random, max_nodes=10, p=0.35, max_w=3) -> PerceptionGraph:
    n = rng.randint(1, max_nodes)
    kinds = [rng.choice(["adj", "verb", "noun", "noun"]) for _ in range(n)]
    suffix = {"adj": "2a", "verb": "2v", "noun": "2n"}
    labels = [f"w{i}{suffix[k]}" for i, k in enumerate(kinds)]
    g = PerceptionGraph()
    for lab, k in zip(labels, kinds):
        g.nodes[lab] = k
    for i in range(n):
        for j in range(n):
            if i == j or rng.random() > p:
                continue
            a, b = labels[i], labels[j]
            if kinds[i] in ("adj", "verb") and kinds[j] == "noun":
                g.add_arc(a, b, rng.randint(1, max_w))
            elif kinds[i] == kinds[j] == "noun" and i < j:
                g.add_pair(a, b, rng.randint(1, max_w))
    return g.canonical()


@st.composite
def graphs(draw, max_nodes=10, isolated=True):
    seed = draw(st.integers(0, 2**32 - 1))
    g = random_graph(random.Random(seed), max_nodes)
    if not isolated:
        from keypartx.reduce import remove_isolates
        g = remove_isolates(g)
    return g

import random

import numpy as np
import pytest

from keypartx import community, kernels
from keypartx.community import DirectedView, detect_communities
from keypartx.reduce import adjacency
from oracles import osa
from strategies import random_graph

NUMPY = kernels.get_backend("numpy")
try:
    NUMBA = kernels.get_backend("numba")
except ImportError:  # pragma: no cover
    NUMBA = None

needs_numba = pytest.mark.skipif(NUMBA is None, reason="numba not installed")


def test_backend_env(monkeypatch):
    import importlib
    monkeypatch.setenv(kernels.BACKEND_ENV, "numpy")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "numpy"
    finally:
        monkeypatch.delenv(kernels.BACKEND_ENV)
        importlib.reload(kernels)


def _codes(words):
    width = max(map(len, words))
    codes = np.full((len(words), width), -1, dtype=np.int32)
    for i, w in enumerate(words):
        codes[i, :len(w)] = [ord(c) for c in w]
    return codes, np.array([len(w) for w in words], dtype=np.int32)


@pytest.mark.parametrize("backend", [NUMPY, pytest.param(NUMBA, marks=needs_numba)])
def test_osa_against_oracle(backend):
    rng = random.Random(3)
    words = ["".join(rng.choice("abcd") for _ in range(rng.randint(1, 6))) for _ in range(60)]
    codes, lengths = _codes(words)
    for _ in range(30):
        q = "".join(rng.choice("abcd") for _ in range(rng.randint(1, 6)))
        d = backend.osa_distances(np.array([ord(c) for c in q], dtype=np.int32),
                                  codes, lengths, 2)
        want = [min(osa(q, w), 3) for w in words]
        assert d.tolist() == want


@needs_numba
def test_core_mask_equal():
    rng = random.Random(5)
    for _ in range(40):
        g = random_graph(rng, max_nodes=15)
        _, indptr, indices = adjacency(g)
        for k in range(4):
            assert np.array_equal(NUMPY.core_mask(indptr, indices, k),
                                  NUMBA.core_mask(indptr, indices, k))


@needs_numba
def test_move_and_refine_equal():
    rng = random.Random(11)
    for _ in range(40):
        g = random_graph(rng, max_nodes=15, p=0.4)
        v = DirectedView.from_graph(g)
        if v.m == 0:
            continue
        indptr, indices, weights = v.symmetric_csr()
        order = np.random.default_rng(rng.randrange(99)).permutation(v.n)
        outs = []
        for be in (NUMPY, NUMBA):
            memb = np.arange(v.n)
            moves = be.move_nodes(indptr, indices, weights, v.k_out, v.k_in, v.m, 1.0,
                                  memb, order, 1e-12)
            ref = be.refine_nodes(indptr, indices, weights, v.k_out, v.k_in, v.m, 1.0,
                                  memb.copy(), order, 1e-12)
            outs.append((moves, memb.tolist(), np.asarray(ref).tolist()))
        assert outs[0] == outs[1]


@needs_numba
def test_detect_equal_across_backends(monkeypatch):
    rng = random.Random(13)
    graphs = [random_graph(rng, max_nodes=40, p=0.15) for _ in range(10)]
    results = {}
    for name, be in (("numpy", NUMPY), ("numba", NUMBA)):
        monkeypatch.setattr(kernels, "move_nodes", be.move_nodes)
        monkeypatch.setattr(kernels, "refine_nodes", be.refine_nodes)
        results[name] = [detect_communities(g, seed=1).assignment for g in graphs
                         if g.m > 0]
    assert results["numpy"] == results["numba"]
    assert community.kernels is kernels


def test_benchmark_runs(capsys):
    import importlib.util
    from pathlib import Path
    path = Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--nodes", "80", "--queries", "2", "--repeat", "1"]) == 0
    assert "local moving" in capsys.readouterr().out

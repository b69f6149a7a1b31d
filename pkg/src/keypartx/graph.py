"""Perception graph: adjective/verb -> noun arcs plus noun-noun co-occurrence."""
from __future__ import annotations

import csv
import io
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable

from ._data import read_word_list
from .compound import NEGATION_WORDS
from .document import POS, Document
from .match import MatchPair, label_of

KINDS = {"2a": "adj", "2v": "verb", "2n": "noun"}

CONATIVE_VERBS = frozenset({
    "enjoy", "love", "like", "adore", "avoid", "revisit", "desire", "dislike", "hate",
    "wish", "hope", "appreciate", "value", "recommend", "unrecommend", "astonish",
    "impress", "please", "satisfy", "unsatisfy", "surprise", "mean", "mind",
})


class NNMode(str, Enum):
    OFF = "off"
    RESTRICTED = "restricted"
    GREEDY = "greedy"


class Unit(str, Enum):
    SENTENCE = "sentence"
    DOCUMENT = "document"


def kind_of(label: str) -> str:
    kind = KINDS.get(label[-2:])
    if kind is None or len(label) < 3:
        raise ValueError(f"node label {label!r} lacks a 2a/2v/2n suffix")
    return kind


def edge_kind(src: str, dst: str | None = None) -> str:
    """a2n / v2n for directed edges, nn for undirected ones (dst=None)."""
    if dst is None:
        return "nn"
    return "a2n" if kind_of(src) == "adj" else "v2n"


@dataclass
class PerceptionGraph:
    """Typed nodes, weighted arcs (adj/verb -> noun) and weighted noun pairs.

    Undirected keys are stored as sorted label tuples.
    """
    nodes: dict[str, str] = field(default_factory=dict)
    directed: dict[tuple[str, str], int] = field(default_factory=dict)
    undirected: dict[tuple[str, str], int] = field(default_factory=dict)

    def add_arc(self, src: str, dst: str, w: int = 1) -> None:
        if kind_of(src) not in ("adj", "verb") or kind_of(dst) != "noun":
            raise ValueError(f"arc {src}->{dst} must run from adj/verb to noun")
        self.nodes[src] = kind_of(src)
        self.nodes[dst] = "noun"
        self.directed[(src, dst)] = self.directed.get((src, dst), 0) + w

    def add_pair(self, u: str, v: str, w: int = 1) -> None:
        if u == v:
            raise ValueError(f"self-loop on {u}")
        if kind_of(u) != "noun" or kind_of(v) != "noun":
            raise ValueError(f"undirected edge {u}--{v} must join two nouns")
        key = (u, v) if u < v else (v, u)
        self.nodes[u] = self.nodes[v] = "noun"
        self.undirected[key] = self.undirected.get(key, 0) + w

    @property
    def m(self) -> int:
        return sum(self.directed.values()) + sum(self.undirected.values())

    @property
    def n_edges(self) -> int:
        return len(self.directed) + len(self.undirected)

    def kind_counts(self) -> dict[str, int]:
        c = Counter(self.nodes.values())
        return {k: c.get(k, 0) for k in ("adj", "verb", "noun")}

    def counts(self) -> dict:
        return {"nodes": len(self.nodes), **self.kind_counts(),
                "edges": self.n_edges, "directed": len(self.directed),
                "undirected": len(self.undirected), "total_weight": self.m}

    def edges(self):
        """(src, dst, kind, weight) in sorted order, arcs before noun pairs."""
        for (s, d), w in sorted(self.directed.items()):
            yield s, d, edge_kind(s, d), w
        for (u, v), w in sorted(self.undirected.items()):
            yield u, v, "nn", w

    def canonical(self) -> "PerceptionGraph":
        return PerceptionGraph(dict(sorted(self.nodes.items())),
                               dict(sorted(self.directed.items())),
                               dict(sorted(self.undirected.items())))

    def copy(self) -> "PerceptionGraph":
        return PerceptionGraph(dict(self.nodes), dict(self.directed), dict(self.undirected))

    def subgraph(self, keep: Iterable[str]) -> "PerceptionGraph":
        """Induced subgraph on ``keep``; nodes in ``keep`` stay even when isolated."""
        keep = set(keep)
        return PerceptionGraph(
            {n: k for n, k in self.nodes.items() if n in keep},
            {e: w for e, w in self.directed.items() if e[0] in keep and e[1] in keep},
            {e: w for e, w in self.undirected.items() if e[0] in keep and e[1] in keep},
        )

    def validate(self) -> None:
        for label, kind in self.nodes.items():
            if kind_of(label) != kind:
                raise ValueError(f"node {label} has kind {kind}")
        for (s, d), w in self.directed.items():
            if self.nodes.get(s) not in ("adj", "verb") or self.nodes.get(d) != "noun":
                raise ValueError(f"bad arc {s}->{d}")
            if not (isinstance(w, int) and w >= 1):
                raise ValueError(f"bad weight {w!r} on {s}->{d}")
        for (u, v), w in self.undirected.items():
            if not u < v or self.nodes.get(u) != "noun" or self.nodes.get(v) != "noun":
                raise ValueError(f"bad noun pair {u}--{v}")
            if not (isinstance(w, int) and w >= 1):
                raise ValueError(f"bad weight {w!r} on {u}--{v}")


def merge(a: PerceptionGraph, b: PerceptionGraph) -> PerceptionGraph:
    """Union of two graphs with edge weights added; associative and commutative."""
    out = a.copy()
    out.nodes.update(b.nodes)
    for e, w in b.directed.items():
        out.directed[e] = out.directed.get(e, 0) + w
    for e, w in b.undirected.items():
        out.undirected[e] = out.undirected.get(e, 0) + w
    return out.canonical()


@dataclass(frozen=True)
class ConativeFilter:
    """Keep only verbs whose lemma (negation prefix removed) is in ``verbs``."""
    verbs: frozenset = CONATIVE_VERBS
    enabled: bool = True
    negation_words: frozenset = NEGATION_WORDS

    @classmethod
    def from_file(cls, path, enabled: bool = True) -> "ConativeFilter":
        return cls(frozenset(read_word_list(path)), enabled)

    def keeps(self, modifier: str) -> bool:
        if not self.enabled or not modifier.endswith("2v"):
            return True
        lemma = modifier[:-2]
        if lemma in self.verbs:
            return True
        for neg in self.negation_words:
            if lemma.startswith(neg) and lemma[len(neg):] in self.verbs:
                return True
        return False


def filter_pairs(pairs: Iterable[MatchPair], flt: ConativeFilter | None) -> list[MatchPair]:
    if flt is None:
        return list(pairs)
    return [p for p in pairs if flt.keeps(p.modifier)]


def _unit_nouns(doc: Document, unit: Unit) -> dict[tuple, set[str]]:
    out = defaultdict(set)
    for si, sent in enumerate(doc.sentences):
        key = (doc.doc_id,) if unit is Unit.DOCUMENT else (doc.doc_id, si)
        for t in sent:
            if t.pos is POS.NOUN:
                out[key].add(label_of(t))
        out.setdefault(key, set())
    return out


def build_graph(pairs: Iterable[MatchPair], docs: Iterable[Document],
                nn_mode: NNMode | str = NNMode.GREEDY, unit: Unit | str = Unit.DOCUMENT,
                filter: ConativeFilter | None = None) -> PerceptionGraph:
    """Accumulate match pairs as weighted arcs and noun co-occurrence as noun pairs.

    Each unit (document or sentence) adds 1 to every unordered pair of
    distinct nouns it holds: all of them in greedy mode, only nouns seen in
    a surviving pair of that unit in restricted mode.
    """
    nn_mode, unit = NNMode(nn_mode), Unit(unit)
    docs = list(docs)
    ids = {d.doc_id for d in docs}
    if len(ids) != len(docs):
        raise ValueError("duplicate doc_id among documents")
    pairs = list(pairs)
    for p in pairs:
        if p.doc_id not in ids:
            raise ValueError(f"match pair refers to unknown doc_id {p.doc_id!r}")
    kept = filter_pairs(pairs, filter)

    g = PerceptionGraph()
    for p in kept:
        g.add_arc(p.modifier, p.noun)

    if nn_mode is not NNMode.OFF:
        paired = defaultdict(set)
        for p in kept:
            key = (p.doc_id,) if unit is Unit.DOCUMENT else (p.doc_id, p.sent_index)
            paired[key].add(p.noun)
        for doc in docs:
            for key, nouns in _unit_nouns(doc, unit).items():
                if nn_mode is NNMode.RESTRICTED:
                    nouns = nouns & paired.get(key, set())
                for u, v in combinations(sorted(nouns), 2):
                    g.add_pair(u, v)
    return g.canonical()


# ----------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class ReportRow:
    noun: str
    degree: int
    adjectives: tuple = ()
    verbs: tuple = ()
    nouns: tuple = ()


def _ranked(items):
    return tuple(sorted(items, key=lambda kv: (-kv[1], kv[0])))


def semantic_relations_report(g: PerceptionGraph, top_n: int | None = None,
                              weighted: bool = True) -> list[ReportRow]:
    """Per-noun neighbour lists, nouns ranked by degree.

    Degree is the summed weight of incident arcs and noun pairs, or the
    number of such edges when ``weighted`` is False.
    """
    if top_n is not None and top_n <= 0:
        raise ValueError(f"top_n must be positive, got {top_n}")
    adj, verb, nn = defaultdict(dict), defaultdict(dict), defaultdict(dict)
    for (s, d), w in g.directed.items():
        (adj if g.nodes[s] == "adj" else verb)[d][s] = w
    for (u, v), w in g.undirected.items():
        nn[u][v] = w
        nn[v][u] = w
    rows = []
    for noun in (n for n, k in g.nodes.items() if k == "noun"):
        parts = [adj[noun], verb[noun], nn[noun]]
        deg = sum(sum(p.values()) for p in parts) if weighted else sum(len(p) for p in parts)
        if deg == 0:
            continue
        rows.append(ReportRow(noun, deg, _ranked(adj[noun].items()),
                              _ranked(verb[noun].items()), _ranked(nn[noun].items())))
    rows.sort(key=lambda r: (-r.degree, r.noun))
    return rows[:top_n] if top_n else rows


def strip_suffix(label: str) -> str:
    return label[:-2] if label[-2:] in KINDS else label


def _cell(items) -> str:
    return "; ".join(f"{strip_suffix(k)}({w})" for k, w in items)


REPORT_COLUMNS = ("noun", "degree", "adjectives", "verbs", "nouns")


def report_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in rows:
        w.writerow([strip_suffix(r.noun), r.degree, _cell(r.adjectives), _cell(r.verbs),
                    _cell(r.nouns)])
    return buf.getvalue()


def report_text(rows: list[ReportRow]) -> str:
    table = [list(REPORT_COLUMNS)] + [
        [strip_suffix(r.noun), str(r.degree), _cell(r.adjectives), _cell(r.verbs), _cell(r.nouns)]
        for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(REPORT_COLUMNS))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
                     for row in table) + "\n"

"""Corpus ingestion (CSV, CoNLL-U) and graph export (JSON, GraphML, DOT)."""
from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from .document import POS, Document, make_token, reindex
from .graph import PerceptionGraph, edge_kind, kind_of


class SchemaError(ValueError):
    """Requested column is not in the CSV header."""


class CorpusParseError(ValueError):
    """Malformed input; carries the offending row or line number."""

    def __init__(self, msg, line=None):
        super().__init__(msg)
        self.line = line


@dataclass(frozen=True)
class RawCorpus:
    documents: tuple = ()

    def __post_init__(self):
        seen = set()
        for doc_id, _ in self.documents:
            if not doc_id:
                raise ValueError("empty doc_id")
            if doc_id in seen:
                raise ValueError(f"duplicate doc_id {doc_id!r}")
            seen.add(doc_id)

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)


def _pick_column(header, column, what):
    if isinstance(column, int) or (isinstance(column, str) and column.isdigit()
                                   and column not in header):
        idx = int(column)
        if not 0 <= idx < len(header):
            raise SchemaError(f"{what} index {idx} out of range; columns: {header}")
        return idx
    if column not in header:
        raise SchemaError(f"{what} {column!r} not found; available columns: {header}")
    return header.index(column)


def load_csv(path, text_column: str | int | None = None, id_column: str = "id") -> RawCorpus:
    """Read one document per data row of an RFC 4180 CSV file.

    ``text_column`` is a header name or 0-based index; None picks the first
    column that is not the id column. doc_id comes from ``id_column`` when
    the header has it, otherwise from the 0-based row index.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"corpus file not found: {path}")
    with open(path, encoding="utf-8", newline="") as f:
        text = f.read()
    if text.startswith("\ufeff"):
        text = text[1:]
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        header = next(reader, None)
        if header is None:
            return RawCorpus(())
        if text_column is None:
            rest = [i for i, h in enumerate(header) if h != id_column]
            if not rest:
                raise SchemaError(f"no text column; available columns: {header}")
            t_idx = rest[0]
        else:
            t_idx = _pick_column(header, text_column, "text column")
        id_idx = header.index(id_column) if id_column in header else None
        docs, seen = [], set()
        for row_no, row in enumerate(reader):
            if not row:
                continue
            if len(row) != len(header):
                raise CorpusParseError(
                    f"{path}: data row {row_no + 1} (line {reader.line_num}) has "
                    f"{len(row)} fields, expected {len(header)}", reader.line_num)
            doc_id = row[id_idx].strip() if id_idx is not None else str(row_no)
            if not doc_id or doc_id in seen:
                raise CorpusParseError(
                    f"{path}: data row {row_no + 1} has an empty or duplicate id {doc_id!r}",
                    reader.line_num)
            seen.add(doc_id)
            docs.append((doc_id, row[t_idx]))
    except csv.Error as e:
        raise CorpusParseError(f"{path}: line {reader.line_num}: {e}", reader.line_num) from e
    return RawCorpus(tuple(docs))


def write_csv(corpus: RawCorpus, path=None, id_column: str = "id",
              text_column: str = "text") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow([id_column, text_column])
    for doc_id, text in corpus:
        w.writerow([doc_id, text])
    out = buf.getvalue()
    if path is not None:
        Path(path).write_text(out, encoding="utf-8", newline="")
    return out


UPOS_MAP = {"ADJ": POS.ADJ, "VERB": POS.VERB, "AUX": POS.VERB, "NOUN": POS.NOUN,
            "PROPN": POS.NOUN, "PRON": POS.PRON}


def load_conllu(path) -> list[Document]:
    """Documents from a CoNLL-U file, keeping its lemmas and (mapped) UPOS tags.

    ``# newdoc id = X`` starts a document; sentences before any such marker
    go to a document with id "0". Multiword ranges and empty nodes are skipped.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"CoNLL-U file not found: {path}")
    docs: list[tuple[str, list]] = []
    sent: list = []

    def close_sentence():
        nonlocal sent
        if sent:
            if not docs:
                docs.append(("0", []))
            docs[-1][1].append(sent)
        sent = []

    with open(path, encoding="utf-8") as f:
        for n, line in enumerate(f, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                close_sentence()
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("newdoc"):
                    close_sentence()
                    _, _, doc_id = body.partition("=")
                    doc_id = doc_id.strip() or str(len(docs))
                    if any(d == doc_id for d, _ in docs):
                        raise CorpusParseError(f"{path}:{n}: duplicate newdoc id {doc_id!r}", n)
                    docs.append((doc_id, []))
                continue
            cols = line.split("\t")
            if len(cols) < 4:
                raise CorpusParseError(
                    f"{path}:{n}: expected at least ID, FORM, LEMMA, UPOS columns", n)
            tid, form, lemma, upos = cols[:4]
            if "-" in tid or "." in tid:
                continue
            if not tid.isdigit() or not form:
                raise CorpusParseError(f"{path}:{n}: bad token id {tid!r} or empty form", n)
            feats = cols[5] if len(cols) > 5 else "_"
            pos = UPOS_MAP.get(upos, POS.OTHER)
            lower = form.lower()
            sent.append(make_token(form, pos=pos,
                                   lemma=lower if lemma in ("", "_") else lemma.lower(),
                                   plural="Number=Plur" in feats))
    close_sentence()
    return [Document(doc_id, tuple(reindex(s, i) for i, s in enumerate(sents)), pretagged=True)
            for doc_id, sents in docs]


# ----------------------------------------------------------------------------
# graph export


@dataclass(frozen=True)
class GraphExport:
    format: str
    payload: bytes


FORMATS = ("json", "graphml", "dot")


def graph_to_json(g: PerceptionGraph) -> str:
    nodes = [{"id": n, "kind": g.nodes[n]} for n in sorted(g.nodes)]
    edges = [{"src": s, "dst": d, "kind": k, "weight": w} for s, d, k, w in g.edges()]
    return json.dumps({"nodes": nodes, "edges": edges}, ensure_ascii=False,
                      separators=(",", ":"))


def graph_from_json(text: str | bytes) -> PerceptionGraph:
    d = json.loads(text)
    g = PerceptionGraph()
    for node in d["nodes"]:
        if kind_of(node["id"]) != node["kind"]:
            raise ValueError(f"node {node['id']} has kind {node['kind']}")
        g.nodes[node["id"]] = node["kind"]
    for e in d["edges"]:
        w = int(e["weight"])
        if e["kind"] == "nn":
            g.add_pair(e["src"], e["dst"], w)
        else:
            if edge_kind(e["src"], e["dst"]) != e["kind"]:
                raise ValueError(f"edge {e['src']}->{e['dst']} has kind {e['kind']}")
            g.add_arc(e["src"], e["dst"], w)
    g.validate()
    return g.canonical()


def graph_to_graphml(g: PerceptionGraph) -> str:
    ns = "http://graphml.graphdrawing.org/xmlns"
    root = ET.Element("graphml", {"xmlns": ns})
    for kid, target, name, typ in (("d0", "node", "kind", "string"),
                                   ("d1", "edge", "kind", "string"),
                                   ("d2", "edge", "weight", "int")):
        ET.SubElement(root, "key", {"id": kid, "for": target, "attr.name": name,
                                    "attr.type": typ})
    graph = ET.SubElement(root, "graph", {"id": "G", "edgedefault": "directed"})
    for n in sorted(g.nodes):
        el = ET.SubElement(graph, "node", {"id": n})
        ET.SubElement(el, "data", {"key": "d0"}).text = g.nodes[n]
    for i, (s, d, k, w) in enumerate(g.edges()):
        attrs = {"id": f"e{i}", "source": s, "target": d}
        if k == "nn":
            attrs["directed"] = "false"
        el = ET.SubElement(graph, "edge", attrs)
        ET.SubElement(el, "data", {"key": "d1"}).text = k
        ET.SubElement(el, "data", {"key": "d2"}).text = str(w)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def graph_from_graphml(text: str | bytes) -> PerceptionGraph:
    root = ET.fromstring(text)
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    keys = {k.get("id"): (k.get("for"), k.get("attr.name")) for k in root.findall("g:key", ns)}
    g = PerceptionGraph()

    def data(el):
        return {keys[d.get("key")][1]: d.text for d in el.findall("g:data", ns)}

    graph = root.find("g:graph", ns)
    for el in graph.findall("g:node", ns):
        g.nodes[el.get("id")] = data(el)["kind"]
    for el in graph.findall("g:edge", ns):
        attrs = data(el)
        s, d, w = el.get("source"), el.get("target"), int(attrs["weight"])
        if attrs["kind"] == "nn":
            g.add_pair(s, d, w)
        else:
            g.add_arc(s, d, w)
    g.validate()
    return g.canonical()


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: PerceptionGraph) -> str:
    """DOT digraph; noun pairs are drawn without arrowheads (dir=none)."""
    lines = ["digraph perception {"]
    for n in sorted(g.nodes):
        lines.append(f"  {_dot_id(n)} [kind={g.nodes[n]}];")
    for s, d, k, w in g.edges():
        extra = ", dir=none" if k == "nn" else ""
        lines.append(f"  {_dot_id(s)} -> {_dot_id(d)} [kind={k}, weight={w}{extra}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graph(g: PerceptionGraph, format: str) -> GraphExport:
    if format == "json":
        text = graph_to_json(g)
    elif format == "graphml":
        text = graph_to_graphml(g)
    elif format == "dot":
        text = graph_to_dot(g)
    else:
        raise ValueError(f"unknown export format {format!r}; choose from {FORMATS}")
    return GraphExport(format, text.encode("utf-8"))


def load_graph(path) -> PerceptionGraph:
    """Read a JSON or GraphML graph export, chosen by file suffix."""
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() == ".graphml":
        return graph_from_graphml(data)
    return graph_from_json(data)

import json

import pytest
from hypothesis import given

from keypartx.corpus_io import (CorpusParseError, RawCorpus, SchemaError, export_graph,
                                graph_from_graphml, graph_from_json, graph_to_dot,
                                graph_to_graphml, graph_to_json, load_conllu, load_csv,
                                load_graph, write_csv)
from keypartx.document import POS
from keypartx.graph import PerceptionGraph
from strategies import graphs


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8", newline="")
    return p


def test_header_only(tmp_path):
    assert len(load_csv(write(tmp_path, "a.csv", "id,text\n"))) == 0


def test_quoted_comma_and_newline(tmp_path):
    c = load_csv(write(tmp_path, "a.csv", 'id,text\n1,"good, cheap"\n2,"two\nlines"\n'))
    assert list(c) == [("1", "good, cheap"), ("2", "two\nlines")]


def test_bom_and_column_choice(tmp_path):
    p = write(tmp_path, "a.csv", "\ufeffid,title,review\n7,t,body\n")
    assert list(load_csv(p)) == [("7", "t")]
    assert list(load_csv(p, "review")) == [("7", "body")]
    assert list(load_csv(p, 2)) == [("7", "body")]


def test_no_id_column_uses_row_index(tmp_path):
    c = load_csv(write(tmp_path, "a.csv", "text\nx\ny\n"))
    assert list(c) == [("0", "x"), ("1", "y")]


def test_missing_column(tmp_path):
    with pytest.raises(SchemaError, match="review"):
        load_csv(write(tmp_path, "a.csv", "id,text\n1,x\n"), "review")


def test_malformed_row(tmp_path):
    with pytest.raises(CorpusParseError) as e:
        load_csv(write(tmp_path, "a.csv", "id,text\n1,x\n2,y,z\n"))
    assert e.value.line == 3


def test_duplicate_id(tmp_path):
    with pytest.raises(CorpusParseError):
        load_csv(write(tmp_path, "a.csv", "id,text\n1,x\n1,y\n"))
    with pytest.raises(ValueError):
        RawCorpus((("a", "x"), ("a", "y")))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_csv(tmp_path / "nope.csv")


def test_csv_round_trip(tmp_path):
    c = RawCorpus((("1", 'he said "hi", then left'), ("2", "multi\nline"), ("3", "")))
    p = tmp_path / "c.csv"
    write_csv(c, p)
    assert load_csv(p) == c


CONLLU = """# newdoc id = r1
# text = The room was clean.
1\tThe\tthe\tDET\t_\t_
2\trooms\troom\tNOUN\t_\tNumber=Plur
3\twere\tbe\tAUX\t_\t_
4\tclean\tclean\tADJ\t_\t_
5\t.\t.\tPUNCT\t_\t_

# newdoc id = r2
1-2\tdon't\t_\t_\t_\t_
1\tdo\tdo\tAUX\t_\t_
2\tn't\tnot\tPART\t_\t_
3\tgo\tgo\tVERB\t_\t_
3.1\tx\tx\tX\t_\t_

"""


def test_conllu(tmp_path):
    docs = load_conllu(write(tmp_path, "a.conllu", CONLLU))
    assert [d.doc_id for d in docs] == ["r1", "r2"]
    s = docs[0].sentences[0]
    assert [t.pos for t in s] == [POS.OTHER, POS.NOUN, POS.VERB, POS.ADJ, POS.OTHER]
    assert s[1].lemma == "room" and s[1].plural and docs[0].pretagged
    assert [t.lower for t in docs[1].sentences[0]] == ["do", "n't", "go"]
    assert [t.tok_index for t in docs[1].sentences[0]] == [0, 1, 2]


def test_conllu_errors(tmp_path):
    with pytest.raises(CorpusParseError):
        load_conllu(write(tmp_path, "b.conllu", "1\tonly\n"))
    no_doc = load_conllu(write(tmp_path, "c.conllu", "1\tHi\thi\tINTJ\t_\t_\n"))
    assert [d.doc_id for d in no_doc] == ["0"]


def test_empty_graph_json():
    assert graph_to_json(PerceptionGraph()) == '{"nodes":[],"edges":[]}'


def _small():
    g = PerceptionGraph()
    g.add_arc("great2a", "thaifood2n")
    g.add_arc("love2v", "thaifood2n", 3)
    g.add_pair("thaifood2n", "beachresort2n", 2)
    return g


def test_json_shape():
    d = json.loads(graph_to_json(_small()))
    assert d["nodes"][0] == {"id": "beachresort2n", "kind": "noun"}
    assert {"src": "love2v", "dst": "thaifood2n", "kind": "v2n", "weight": 3} in d["edges"]
    assert {"src": "beachresort2n", "dst": "thaifood2n", "kind": "nn", "weight": 2} in d["edges"]


def test_dot():
    text = graph_to_dot(_small())
    assert text.startswith("digraph")
    assert '"beachresort2n" -> "thaifood2n" [kind=nn, weight=2, dir=none];' in text
    assert '"love2v" -> "thaifood2n" [kind=v2n, weight=3];' in text


def test_bad_json_rejected():
    with pytest.raises(ValueError):
        graph_from_json('{"nodes":[{"id":"x2n","kind":"adj"}],"edges":[]}')


def test_load_graph_by_suffix(tmp_path):
    g = _small()
    for fmt in ("json", "graphml"):
        p = tmp_path / f"g.{fmt}"
        p.write_bytes(export_graph(g, fmt).payload)
        assert load_graph(p) == g.canonical()
    with pytest.raises(ValueError):
        export_graph(g, "gexf")


@given(graphs(max_nodes=12))
def test_json_round_trip(g):
    assert graph_from_json(graph_to_json(g)) == g
    assert graph_to_json(graph_from_json(graph_to_json(g))) == graph_to_json(g)


@given(graphs(max_nodes=12))
def test_graphml_round_trip(g):
    assert graph_from_graphml(graph_to_graphml(g)) == g
    assert graph_to_graphml(graph_from_graphml(graph_to_graphml(g))) == graph_to_graphml(g)


@given(graphs(max_nodes=12))
def test_export_deterministic(g):
    shuffled = PerceptionGraph(dict(reversed(list(g.nodes.items()))),
                               dict(reversed(list(g.directed.items()))),
                               dict(reversed(list(g.undirected.items()))))
    for fmt in ("json", "graphml", "dot"):
        assert export_graph(g, fmt) == export_graph(shuffled, fmt)

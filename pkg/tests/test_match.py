from hypothesis import given, strategies as st

from conftest import EXAMPLE_TEXT
from keypartx.document import POS, Document, make_token, reindex
from keypartx.graph import ConativeFilter, filter_pairs
from keypartx.match import Pattern, label_of, map_suffixes, match_av2n, match_sentence
from keypartx.pipeline import process_text

EXPECTED = {("great2a", "thaifood2n"), ("delicious2a", "thaifood2n"),
            ("notexpensive2a", "thaifood2n"), ("love2v", "thaifood2n"),
            ("recommend2v", "beachresort2n")}


def pairs_of(text, res):
    _, pairs = process_text("d", text, res)
    return {(p.modifier, p.noun) for p in pairs}


def test_worked_example_pairs(example):
    _, pairs = example
    kept = filter_pairs(pairs, ConativeFilter())
    assert {(p.modifier, p.noun) for p in kept} == EXPECTED
    # the two non-conative verbs are matched, then dropped by the filter
    assert {(p.modifier, p.noun) for p in pairs} - EXPECTED == {
        ("visit2v", "beachresort2n"), ("have2v", "firevodka2n")}


def test_worked_example_patterns(example):
    _, pairs = example
    pat = {(p.modifier, p.noun): p.pattern for p in pairs}
    assert pat[("great2a", "thaifood2n")] is Pattern.N_COP_A
    assert pat[("notexpensive2a", "thaifood2n")] is Pattern.N_COP_A
    assert pat[("love2v", "thaifood2n")] is Pattern.V_N
    assert pat[("recommend2v", "beachresort2n")] is Pattern.N_PASS_V


def test_attributive(res):
    assert pairs_of("It was a lovely hotel.", res) == {("lovely2a", "hotel2n")}


def test_copular_verb_never_modifier(res):
    got = pairs_of("The room was clean.", res)
    assert got == {("clean2a", "room2n")}
    assert not any(m == "be2v" for m, _ in got)


def test_no_pattern(res):
    assert pairs_of("Ok.", res) == set()


def test_passive_with_adverb(res):
    assert ("recommend2v", "place2n") in pairs_of("The place is highly recommended.", res)


def test_labels_use_lemmas(res):
    doc, _ = process_text("d", "We loved the rooms.", res)
    labs = [label_of(t) for t in doc.tokens() if t.pos is POS.NOUN]
    assert labs == ["room2n"]


def _tok(w, pos, **kw):
    return make_token(w, pos=pos, lemma=w, **kw)


def test_match_sentence_hand_tagged():
    toks = reindex([_tok("staff", POS.NOUN), _tok("seem", POS.VERB, is_copular=True),
                    _tok("friendly", POS.ADJ)], 0)
    assert match_sentence(toks) == [(2, 0, Pattern.N_COP_A)]


ADJS = ["good", "clean", "big", "cheap"]
NOUNS = ["room", "pool", "view", "staff"]
VERBS = ["love", "enjoy", "like"]


@st.composite
def _tagged_sentences(draw):
    n = draw(st.integers(1, 10))
    toks = []
    for _ in range(n):
        kind = draw(st.sampled_from(["a", "n", "v", "cop", "o"]))
        if kind == "a":
            toks.append(_tok(draw(st.sampled_from(ADJS)), POS.ADJ))
        elif kind == "n":
            toks.append(_tok(draw(st.sampled_from(NOUNS)), POS.NOUN))
        elif kind == "v":
            toks.append(_tok(draw(st.sampled_from(VERBS)), POS.VERB))
        elif kind == "cop":
            toks.append(make_token("was", pos=POS.VERB, lemma="be", is_copular=True,
                                   is_passive_aux=True))
        else:
            toks.append(_tok(draw(st.sampled_from(["the", ",", "very"])), POS.OTHER))
    return map_suffixes(Document("d", (reindex(toks, 0),)))


@given(_tagged_sentences())
def test_pairs_point_to_nouns(doc):
    sent = doc.sentences[0]
    for a, k, _ in match_sentence(sent):
        assert sent[k].pos is POS.NOUN
        assert sent[a].pos in (POS.ADJ, POS.VERB)
        assert not sent[a].is_copular


@given(_tagged_sentences())
def test_match_deterministic(doc):
    assert match_av2n(doc) == match_av2n(doc)

import random
import re

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import EXAMPLE_TEXT
from keypartx.document import POS, make_token
from keypartx.normalize import (Lexicon, correct_spelling, normalize_text, segment_sentences,
                                tokenize)
from oracles import brute_correct, osa


def test_segment_example():
    sents = segment_sentences(EXAMPLE_TEXT)
    assert len(sents) == 3
    assert sents[0].endswith("loved it.")
    assert sents[1].endswith("recommended...")
    assert sents[2] == 'We had "Fire-Vodka" !!!'


def test_segment_simple():
    assert segment_sentences("") == []
    assert segment_sentences("   ") == []
    assert segment_sentences("a! b? c.") == ["a!", "b?", "c."]
    # no whitespace after the dot: not a boundary
    assert segment_sentences("it costs 3.50 baht. ok") == ["it costs 3.50 baht.", "ok"]


def test_segment_quoted_terminator_stays():
    assert segment_sentences('He said "wow!" and left.') == ['He said "wow!" and left.']


@given(st.text(alphabet="ab .!?…\n", max_size=40))
def test_segment_keeps_characters(text):
    joined = "".join(segment_sentences(text))
    assert re.sub(r"\s", "", joined) == re.sub(r"\s", "", text)


def test_tokenize_examples():
    toks = tokenize('We had "Fire-Vodka" !!!')
    assert [t.lower for t in toks] == ["we", "had", '"', "fire-vodka", '"', "!!!"]
    assert [t.lower for t in tokenize("not expensive, we loved it.")] == \
        ["not", "expensive", ",", "we", "loved", "it", "."]
    assert tokenize("") == []


def test_tokenize_pos_and_indices():
    toks = tokenize("We visited 3 beach resorts , don't worry", sent_index=2)
    assert [t.tok_index for t in toks] == list(range(len(toks)))
    assert all(t.sent_index == 2 for t in toks)
    by = {t.lower: t for t in toks}
    assert by["3"].pos is POS.OTHER and by[","].pos is POS.OTHER
    assert by["visited"].pos is POS.UNSET and by["visited"].lemma == ""
    assert "don't" in by


@given(st.text(max_size=60))
def test_tokenize_no_empty_tokens(text):
    for t in tokenize(text):
        assert t.surface and not t.surface.isspace()
        assert t.lower == t.surface.lower()


def test_lexicon_validation():
    with pytest.raises(ValueError):
        Lexicon({"Bad": 3})
    with pytest.raises(ValueError):
        Lexicon({"ok": 0})
    with pytest.raises(ValueError):
        Lexicon({"": 1})
    assert len(Lexicon({"a-b": 1, "c": 2})) == 2


def test_lexicon_keys_valid(lex):
    assert len(lex) > 50000
    assert all(re.fullmatch(r"[a-z]+(-[a-z]+)*", w) for w in lex)
    assert min(lex.entries.values()) >= 1


def test_step1_corrections(lex):
    assert lex.correct("delicousr") == "delicious"
    assert lex.correct("great") == "great"
    assert lex.correct("recomended") == "recommended"


def test_recomended_unique_best(lex):
    # brute-force scan: recommended is the only best distance-1 candidate
    assert brute_correct("recomended", lex) == "recommended"
    d1 = [w for w in lex if abs(len(w) - 10) <= 1 and osa("recomended", w) == 1]
    best = max(lex[w] for w in d1)
    assert [w for w in d1 if lex[w] == best] == ["recommended"]


def test_correct_matches_brute_force(lex):
    rng = random.Random(3)
    words = sorted(lex)
    probes = ["delicousr", "hotell", "breakfst", "xqzvw", "beautifull", "restaraunt", "thai"]
    for _ in range(12):
        w = list(rng.choice(words))
        i = rng.randrange(len(w))
        w[i] = rng.choice("abcdefghijklmnopqrstuvwxyz")
        probes.append("".join(w))
    top = sorted(lex, key=lambda w: (-lex[w], w))[:6000]
    small = Lexicon({w: lex[w] for w in top})
    for p in probes:
        assert small.correct(p) == brute_correct(p, small), p


def test_within_matches_oracle():
    lex = Lexicon({"abc": 5, "abd": 9, "ba": 2, "abcdef": 1, "xyz": 4, "acb": 3})
    d = lex.within("abc", 2)
    words = lex._index[0]
    for w, dist in zip(words, d):
        assert dist == min(osa("abc", w), 3)


def test_tie_breaks_lexicographic():
    lex = Lexicon({"cat": 5, "bat": 5, "rat": 5})
    assert lex.correct("aat") == "bat"


def test_no_candidate_keeps_word():
    lex = Lexicon({"hotel": 10})
    assert lex.correct("firevodka") == "firevodka"


def test_correct_spelling_token_rules(lex):
    t = make_token("Delicousr")
    assert correct_spelling(t, lex).lower == "delicious"
    assert correct_spelling(t, lex).surface == "Delicousr"
    num = make_token("3", pos=POS.OTHER)
    assert correct_spelling(num, lex) is num
    punct = make_token("!!!", pos=POS.OTHER)
    assert correct_spelling(punct, lex) is punct
    apos = make_token("don't")
    assert correct_spelling(apos, lex) is apos
    hyph = make_token("fire-vodkka")
    assert correct_spelling(hyph, lex).lower.startswith("fire-")


@given(st.sampled_from(["delicousr", "hotell", "recomended", "beautifull", "clena",
                        "breakfst", "zzzqqq", "thaifood", "firevodka", "resrt"]))
def test_correct_idempotent(lex, word):
    once = lex.correct(word)
    assert lex.correct(once) == once


@given(st.integers(0, 10**6))
def test_lexicon_words_fixed(lex, i):
    words = sorted(lex)
    w = words[i % len(words)]
    t = make_token(w)
    assert correct_spelling(t, lex) == t


def test_normalize_text_document(lex):
    doc = normalize_text("d1", EXAMPLE_TEXT, lex)
    assert doc.doc_id == "d1"
    assert len(doc.sentences) == 3
    assert "delicious" in doc.texts()[0]
    for si, s in enumerate(doc.sentences):
        assert [t.tok_index for t in s] == list(range(len(s)))
        assert all(t.sent_index == si for t in s)
    assert normalize_text("e", "", lex).sentences == ()


@given(st.text(alphabet="abcde .,!'-\"", max_size=50))
def test_normalize_idempotent(lex, text):
    once = normalize_text("x", text, lex)
    again = once.map_sentences(lambda toks, _: [correct_spelling(t, lex) for t in toks])
    assert again == once


def test_numpy_and_numba_distances_agree():
    from keypartx.kernels import get_backend
    rng = np.random.default_rng(0)
    words = rng.integers(97, 101, size=(300, 9)).astype(np.int32)
    lengths = rng.integers(1, 10, size=300).astype(np.int32)
    for i, L in enumerate(lengths):
        words[i, L:] = -1
    for q in ["abc", "abcdabcd", "d", "cabbage"]:
        query = np.array([ord(c) for c in q], dtype=np.int32)
        a = get_backend("numba").osa_distances(query, words, lengths, 2)
        b = get_backend("numpy").osa_distances(query, words, lengths, 2)
        assert np.array_equal(a, b)
        for k in range(0, 300, 37):
            w = "".join(chr(c) for c in words[k, :lengths[k]])
            assert a[k] == min(osa(q, w), 3)

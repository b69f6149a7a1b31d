"""The four adjective/verb-to-noun patterns and 2a/2v/2n node labels."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from ._data import data_path, read_word_list
from .compound import NEGATION_WORDS, is_adverb, is_contraction_negation
from .document import POS, Document, Token

SUFFIX = {POS.ADJ: "2a", POS.VERB: "2v", POS.NOUN: "2n"}

DETERMINERS = frozenset({"a", "an", "the", "this", "that", "these", "those", "my", "our",
                         "your", "his", "her", "its", "their", "some", "any", "every",
                         "each", "both", "another", "several", "many", "few"})
MODALS = frozenset({"will", "would", "shall", "should", "can", "could", "may", "might",
                    "must", "wo", "ca"})
# words that may sit inside a copular/passive chain without breaking it
CHAIN_VERBS = frozenset({"have", "do"})
ADJ_JOINERS = frozenset({",", "and", "or", "&", "but"})


class Pattern(str, Enum):
    N_COP_A = "N_COP_A"
    A_N = "A_N"
    V_N = "V_N"
    N_PASS_V = "N_PASS_V"


@dataclass(frozen=True)
class MatchPair:
    modifier: str
    noun: str
    pattern: Pattern
    doc_id: str
    sent_index: int


@lru_cache(maxsize=1)
def participles() -> frozenset:
    return frozenset(read_word_list(data_path("participles.txt")))


def label_of(tok: Token) -> str:
    if tok.label:
        return tok.label
    suffix = SUFFIX.get(tok.pos)
    return (tok.lemma or tok.lower) + suffix if suffix else ""


def map_suffixes(doc: Document) -> Document:
    """Label ADJ/VERB/NOUN tokens as lemma + 2a/2v/2n; other tokens get no label."""
    def run(toks, _):
        out = []
        for t in toks:
            suffix = SUFFIX.get(t.pos)
            lab = (t.lemma or t.lower) + suffix if suffix else ""
            out.append(t if t.label == lab else t.with_(label=lab))
        return out

    return doc.map_sentences(run)


def _strip_negation(word: str) -> str:
    for neg in sorted(NEGATION_WORDS, key=len, reverse=True):
        if word.startswith(neg) and len(word) > len(neg):
            return word[len(neg):]
    return word


def is_participle(tok: Token) -> bool:
    word = _strip_negation(tok.lower) if tok.negated else tok.lower
    return word.endswith(("ed", "en")) or word in participles()


class _Scanner:
    def __init__(self, toks, model=None):
        self.toks = toks
        self.copular = model.copular_list if model is not None else None
        self.passive = model.passive_aux_list if model is not None else None

    def pos(self, k):
        return self.toks[k].pos if k < len(self.toks) else None

    def is_cop(self, k):
        t = self.toks[k]
        if self.copular is None:
            return t.is_copular
        return t.pos is POS.VERB and t.lemma in self.copular

    def is_pass(self, k):
        t = self.toks[k]
        if self.passive is None:
            return t.is_passive_aux
        return t.lemma in self.passive

    def run(self, k, pos):
        j = k
        while j < len(self.toks) and self.toks[j].pos is pos:
            j += 1
        return j

    def chain(self, k, member):
        """End of an auxiliary chain from k holding at least one ``member`` verb."""
        j, hit = k, False
        while j < len(self.toks):
            t = self.toks[j]
            if member(j) and not t.negated:
                hit = True
            elif not (is_adverb(t) or t.lower in MODALS or is_contraction_negation(t)
                      or (t.pos is POS.VERB and t.lemma in CHAIN_VERBS)):
                break
            j += 1
        # trailing adverbs belong to what follows, not the chain
        while j > k and is_adverb(self.toks[j - 1]):
            j -= 1
        return j if hit else None

    def adj_run(self, k):
        """ADJ tokens from k, allowing commas, conjunctions and adverbs between them."""
        j = k
        while j < len(self.toks) and is_adverb(self.toks[j]):
            j += 1
        adjs = []
        while j < len(self.toks):
            t = self.toks[j]
            if t.pos is POS.ADJ:
                adjs.append(j)
            elif not adjs or not (t.lower in ADJ_JOINERS or is_adverb(t)):
                break
            j += 1
        return adjs, (adjs[-1] + 1 if adjs else None)

    def pattern1(self, n0, n1):
        c = self.chain(n1, self.is_cop)
        if c is None:
            return None
        adjs, end = self.adj_run(c)
        if not adjs:
            return None
        return adjs, end

    def pattern4(self, n0, n1):
        c = self.chain(n1, self.is_pass)
        if c is None:
            return None
        j = c
        while j < len(self.toks) and is_adverb(self.toks[j]):
            j += 1
        if j < len(self.toks) and self.toks[j].pos is POS.VERB and not self.is_cop(j) \
                and not self.is_pass(j) and is_participle(self.toks[j]):
            return j
        return None


def _is_numeral(t: Token) -> bool:
    return t.pos is POS.OTHER and not t.is_word and any(ch.isdigit() for ch in t.lower)


def match_sentence(toks, model=None) -> list[tuple[int, int, Pattern]]:
    """(modifier index, noun index, pattern) triples for one sentence, in scan order."""
    s = _Scanner(toks, model)
    out = []
    i, n = 0, len(toks)
    while i < n:
        t = toks[i]
        if t.pos is POS.NOUN:
            j = s.run(i, POS.NOUN)
            nouns = range(i, j)
            hit = s.pattern1(i, j)
            if hit:
                adjs, end = hit
                out += [(a, k, Pattern.N_COP_A) for a in adjs for k in nouns]
                i = end
                continue
            v = s.pattern4(i, j)
            if v is not None:
                out += [(v, k, Pattern.N_PASS_V) for k in nouns]
                i = v + 1
                continue
            i = j
        elif t.pos is POS.ADJ:
            j = s.run(i, POS.ADJ)
            if s.pos(j) is POS.NOUN:
                e = s.run(j, POS.NOUN)
                out += [(a, k, Pattern.A_N) for a in range(i, j) for k in range(j, e)]
                # the nouns may still anchor a following copular/passive pattern
            i = j
        elif t.pos is POS.VERB and not s.is_cop(i) and not s.is_pass(i):
            j = i + 1
            if j < n and (toks[j].lower in DETERMINERS or _is_numeral(toks[j])):
                j += 1
            if s.pos(j) is POS.NOUN:
                e = s.run(j, POS.NOUN)
                out += [(i, k, Pattern.V_N) for k in range(j, e)]
                i = j
            else:
                i += 1
        else:
            i += 1
    return out


def match_av2n(doc: Document, model=None) -> list[MatchPair]:
    """Scan every sentence of ``doc`` for the four patterns.

    With a model, copular and passive membership is read from its lists;
    otherwise the token flags set by the tagger are used.
    """
    pairs = []
    for si, sent in enumerate(doc.sentences):
        for a, k, pat in match_sentence(sent, model):
            pairs.append(MatchPair(label_of(sent[a]), label_of(sent[k]), pat, doc.doc_id, si))
    return pairs

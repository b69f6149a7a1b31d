"""Compound nouns, pronoun substitution and negation fusing.

The three transforms run in that order on tagged documents. Each one only
merges or rewrites tokens, so token counts never grow.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ._data import data_path, read_word_list
from .document import POS, Document, Token

NEGATION_WORDS = frozenset({"hardly", "scarcely", "barely", "no", "not", "none",
                            "neither", "nor", "never"})

# double quotes only; single quotes double as apostrophes in reviews
QUOTES = frozenset({'"', "“", "”", "``", "''"})
MAX_QUOTED = 3

SINGULAR_PRONOUNS = frozenset({"it", "this", "that"})
PLURAL_PRONOUNS = frozenset({"they", "them", "these", "those"})
DEMONSTRATIVES = frozenset({"this", "that", "these", "those"})

# adverbs that change meaning after a negation ("not only good" is not "notgood")
_NO_SKIP = frozenset({"only", "just", "even", "yet", "merely", "simply"})


@lru_cache(maxsize=1)
def adverbs() -> frozenset:
    return frozenset(read_word_list(data_path("adverbs.txt")))


@lru_cache(maxsize=1)
def nationalities() -> frozenset:
    return frozenset(read_word_list(data_path("nationalities.txt")))


def is_adverb(tok: Token) -> bool:
    return tok.pos is POS.OTHER and tok.lower in adverbs()


def is_contraction_negation(tok: Token) -> bool:
    return tok.lower.endswith(("n't", "n’t")) and len(tok.lower) > 3


@dataclass(frozen=True)
class CompoundRules:
    negation_words: frozenset = NEGATION_WORDS
    noun_noun_enabled: bool = True
    entity_heuristic_enabled: bool = True
    nationality_words: frozenset = field(default_factory=nationalities)

    def __post_init__(self):
        missing = NEGATION_WORDS - set(self.negation_words)
        if missing:
            raise ValueError(f"negation_words must include {sorted(missing)}")

    @classmethod
    def from_files(cls, negation_path=None, nationality_path=None, **kw) -> "CompoundRules":
        neg = NEGATION_WORDS
        if negation_path:
            neg = NEGATION_WORDS | frozenset(read_word_list(negation_path))
        nat = frozenset(read_word_list(nationality_path)) if nationality_path else nationalities()
        return cls(negation_words=neg, nationality_words=nat, **kw)


def _fuse(parts: list[Token], lower: str, lemma: str | None = None) -> Token:
    first, last = parts[0], parts[-1]
    surface = "".join(p.surface for p in parts)
    for q in QUOTES | {"-", "'", "’"}:
        surface = surface.replace(q, "")
    return first.with_(surface=surface or lower, lower=lower, lemma=lemma or lower,
                       pos=POS.NOUN, is_copular=False, is_passive_aux=False,
                       negated=False, plural=last.plural, label="")


def _hyphens(toks):
    out = []
    for t in toks:
        if t.is_word and "-" in t.lower:
            lower = t.lower.replace("-", "")
            lemma = (t.lemma or t.lower).replace("-", "")
            t = _fuse([t], lower, lemma)
        out.append(t)
    return out


def _closing_quote(toks, i):
    """Index of the quote closing a short all-word span opened at i, or None."""
    if toks[i].lower not in QUOTES:
        return None
    for j in range(i + 1, min(i + MAX_QUOTED + 2, len(toks))):
        if toks[j].lower in QUOTES:
            return j if j > i + 1 else None
        if not toks[j].is_word:
            return None
    return None


def _quoted(toks):
    out, i = [], 0
    while i < len(toks):
        j = _closing_quote(toks, i)
        if j is None:
            out.append(toks[i])
            i += 1
        else:
            inner = toks[i + 1:j]
            out.append(_fuse(inner, "".join(x.lower for x in inner)))
            i = j + 1
    return out


def _capitalized(t: Token) -> bool:
    s = t.surface
    # shouting ("GREAT FOOD") is not an entity; short acronyms still count
    return s[:1].isupper() and s.isalpha() and not (len(s) > 3 and s.isupper())


def _entities(toks):
    out, i = [], 0
    first_word = next((k for k, t in enumerate(toks) if t.is_word), None)
    while i < len(toks):
        j = i
        while (j < len(toks) and j != first_word and toks[j].pos is not POS.PRON
               and _capitalized(toks[j])):
            j += 1
        if j - i >= 2:
            run = toks[i:j]
            out.append(_fuse(run, "".join(x.lower for x in run)))
            i = j
        else:
            out.append(toks[i])
            i += 1
    return out


def _noun_runs(toks, nat):
    def nounish(k):
        t = toks[k]
        if t.pos is POS.NOUN:
            return True
        # a demonym counts when a noun follows ("thai food")
        return (t.lower in nat and t.pos in (POS.ADJ, POS.NOUN) and k + 1 < len(toks)
                and (toks[k + 1].pos is POS.NOUN or toks[k + 1].lower in nat))

    out, i = [], 0
    while i < len(toks):
        j = i
        while j < len(toks) and nounish(j):
            j += 1
        if j - i >= 2 and toks[j - 1].pos is POS.NOUN:
            run = toks[i:j]
            word = "".join(x.lemma or x.lower for x in run)
            out.append(_fuse(run, word))
            i = j
        else:
            out.append(toks[i])
            i += 1
    return out


def _compound_pass(toks, rules):
    toks = _hyphens(toks)
    toks = _quoted(toks)
    if rules.entity_heuristic_enabled:
        toks = _entities(toks)
    if rules.noun_noun_enabled:
        toks = _noun_runs(toks, rules.nationality_words)
    return toks


def form_compound_nouns(doc: Document, rules: CompoundRules | None = None) -> Document:
    """Fuse hyphenated words, short quoted spans, capitalized entities and noun runs.

    Passes repeat until nothing changes, which makes the transform idempotent
    (a fused noun run can bring a quoted span under the length limit).
    """
    rules = rules or CompoundRules()

    def run(toks, _):
        while True:
            new = _compound_pass(toks, rules)
            if new == toks:
                return new
            toks = new

    return doc.map_sentences(run)


def _pronominal(toks, k) -> bool:
    t = toks[k]
    if t.lower in ("it", "they", "them"):
        return True
    if t.lower not in DEMONSTRATIVES:
        return False
    # "this hotel" is a determiner; "the hotel that ..." is a relativizer
    nxt = toks[k + 1] if k + 1 < len(toks) else None
    prev = toks[k - 1] if k > 0 else None
    if nxt is not None and nxt.pos in (POS.NOUN, POS.ADJ):
        return False
    if prev is not None and prev.pos is POS.NOUN:
        return False
    return True


def resolve_coreference(doc: Document) -> Document:
    """Replace third-person pronouns by the nearest preceding noun.

    The window is the current and the previous sentence. Plural pronouns
    prefer the nearest plural noun and fall back to the nearest noun.
    """
    sents = [list(s) for s in doc.sentences]
    changed = False
    for si, sent in enumerate(sents):
        for k, t in enumerate(sent):
            if t.lower not in SINGULAR_PRONOUNS | PLURAL_PRONOUNS or not _pronominal(sent, k):
                continue
            window = (sents[si - 1] if si > 0 else []) + sent[:k]
            nouns = [x for x in window if x.pos is POS.NOUN]
            if not nouns:
                continue
            ante = nouns[-1]
            if t.lower in PLURAL_PRONOUNS:
                plural = [x for x in nouns if x.plural]
                if plural:
                    ante = plural[-1]
            sent[k] = t.with_(surface=ante.surface, lower=ante.lower, lemma=ante.lemma,
                              pos=POS.NOUN, plural=ante.plural, label=ante.label,
                              is_copular=False, is_passive_aux=False, negated=False)
            changed = True
    if not changed:
        return doc
    return doc.map_sentences(lambda toks, i: sents[i])


def _negate(neg: str, neg_tok: Token, target: Token) -> Token:
    return target.with_(surface=neg_tok.surface + target.surface if neg_tok.lower == neg
                        else neg + target.surface,
                        lower=neg + target.lower,
                        lemma=neg + (target.lemma or target.lower),
                        negated=True, is_copular=False, is_passive_aux=False, label="")


def compound_negation(doc: Document, rules: CompoundRules | None = None) -> Document:
    """Fuse a negation word with the adjective or verb right after it.

    One adverb may sit in between and is dropped ("not very good" ->
    "notgood"). An n't contraction negates the same way but stays in place
    as the auxiliary it is ("wasn't great" -> "wasn't notgreat").
    """
    rules = rules or CompoundRules()

    def target_at(toks, k):
        """Index of the fusable target after position k, or None."""
        for j in (k + 1, k + 2):
            if j >= len(toks):
                return None
            t = toks[j]
            if t.pos in (POS.ADJ, POS.VERB):
                # never stack negations, and keep auxiliaries out of it
                if t.negated or is_contraction_negation(t):
                    return None
                return j
            if j == k + 1 and is_adverb(t) and t.lower not in _NO_SKIP:
                continue
            return None
        return None

    def run(toks, _):
        out, i = [], 0
        while i < len(toks):
            t = toks[i]
            contraction = is_contraction_negation(t)
            if t.lower in rules.negation_words or contraction:
                j = target_at(toks, i)
                if j is not None:
                    fused = _negate("not" if contraction else t.lower, t, toks[j])
                    if contraction:
                        out.append(t)
                    out.append(fused)
                    i = j + 1
                    continue
            out.append(t)
            i += 1
        return out

    return doc.map_sentences(run)


def apply_compounding(doc: Document, rules: CompoundRules | None = None) -> Document:
    """Compound nouns, then coreference, then negation."""
    rules = rules or CompoundRules()
    doc = form_compound_nouns(doc, rules)
    doc = resolve_coreference(doc)
    return compound_negation(doc, rules)

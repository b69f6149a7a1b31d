"""Token and Document, the values passed between pipeline stages."""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Iterator


class POS(str, Enum):
    ADJ = "ADJ"
    VERB = "VERB"
    NOUN = "NOUN"
    PRON = "PRON"
    OTHER = "OTHER"
    UNSET = "UNSET"


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    sent_index: int = 0
    tok_index: int = 0
    pos: POS = POS.UNSET
    lemma: str = ""
    is_copular: bool = False
    is_passive_aux: bool = False
    negated: bool = False
    # set by the tagger (or CoNLL-U FEATS); drives plural pronoun agreement
    plural: bool = False
    # 2a/2v/2n node label, filled by match.map_suffixes
    label: str = ""

    @property
    def is_word(self) -> bool:
        return any(ch.isalpha() for ch in self.lower)

    @property
    def capitalized(self) -> bool:
        return self.surface[:1].isupper()

    def with_(self, **changes) -> "Token":
        return replace(self, **changes)


def make_token(surface: str, sent_index: int = 0, tok_index: int = 0, **kw) -> Token:
    return Token(surface=surface, lower=surface.lower(), sent_index=sent_index,
                 tok_index=tok_index, **kw)


def reindex(tokens: Iterable[Token], sent_index: int) -> tuple[Token, ...]:
    """Renumber tokens densely from 0 within sentence ``sent_index``."""
    out = []
    for i, t in enumerate(tokens):
        if t.tok_index != i or t.sent_index != sent_index:
            t = replace(t, tok_index=i, sent_index=sent_index)
        out.append(t)
    return tuple(out)


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[tuple[Token, ...], ...] = ()
    # True for CoNLL-U input: lemma/POS came from the file, skip correction and tagging
    pretagged: bool = False

    def tokens(self) -> Iterator[Token]:
        for sent in self.sentences:
            yield from sent

    def __len__(self) -> int:
        return sum(len(s) for s in self.sentences)

    def map_sentences(self, fn) -> "Document":
        """Apply ``fn(tokens, sent_index) -> tokens`` per sentence, re-densifying indices."""
        sents = tuple(reindex(fn(list(s), i), i) for i, s in enumerate(self.sentences))
        return replace(self, sentences=sents)

    def texts(self) -> list[list[str]]:
        return [[t.lower for t in s] for s in self.sentences]

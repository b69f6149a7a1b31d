"""Sentence segmentation, tokenization and lexicon-based spelling correction."""
from __future__ import annotations

import re
import unicodedata
from collections.abc import Mapping
from pathlib import Path

import numpy as np

from . import kernels
from ._data import data_path, read_tsv
from .document import POS, Document, Token, make_token, reindex

# a run of terminators ends a sentence only when whitespace or end-of-text follows
_SENT_END = re.compile(r"[.!?…]+(?=\s|$)")
_TOKEN = re.compile(
    r"\d+(?:[.,:/]\d+)+"                  # 3.5  10:30  1,000
    r"|[^\W_]+(?:['’\-][^\W_]+)*"    # words, keeping internal ' and -
    r"|_+"
    r"|([^\w\s])\1*"                      # punctuation runs of one character
)
_LEX_KEY = re.compile(r"[a-z]+(?:-[a-z]+)*")
_ALPHA = re.compile(r"[a-z]+")


def segment_sentences(text: str) -> list[str]:
    if not text:
        return []
    out, start = [], 0
    for m in _SENT_END.finditer(text):
        out.append(text[start:m.end()])
        start = m.end()
    out.append(text[start:])
    return [s.strip() for s in out if s.strip()]


def tokenize(sentence: str, sent_index: int = 0) -> list[Token]:
    """Split one sentence into tokens.

    Punctuation and numerals come out tagged OTHER; word tokens are UNSET
    until the tagger runs.
    """
    sentence = unicodedata.normalize("NFC", sentence)
    tokens = []
    for i, m in enumerate(_TOKEN.finditer(sentence)):
        surface = m.group(0)
        is_word = any(ch.isalpha() for ch in surface)
        tokens.append(make_token(surface, sent_index, i,
                                 pos=POS.UNSET if is_word else POS.OTHER))
    return tokens


class Lexicon(Mapping):
    """Word -> corpus frequency, with a padded code matrix for distance scans."""

    def __init__(self, entries: Mapping[str, int]):
        for w, c in entries.items():
            if not _LEX_KEY.fullmatch(w):
                raise ValueError(f"bad lexicon key {w!r}: expected lowercase letters and hyphens")
            if int(c) < 1:
                raise ValueError(f"lexicon frequency for {w!r} must be >= 1, got {c}")
        self.entries = {w: int(c) for w, c in entries.items()}
        self._index = None
        self._cache: dict[str, str] = {}

    @classmethod
    def from_file(cls, path) -> "Lexicon":
        entries = {}
        for row in read_tsv(path):
            if len(row) != 2:
                raise ValueError(f"{path}: expected word<TAB>count, got {row!r}")
            entries[row[0]] = int(row[1])
        return cls(entries)

    @classmethod
    def bundled(cls) -> "Lexicon":
        return cls.from_file(data_path("lexicon.tsv"))

    def __getitem__(self, word):
        return self.entries[word]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word in self.entries

    def _build_index(self):
        words = sorted(self.entries, key=lambda w: (len(w), w))
        lengths = np.array([len(w) for w in words], dtype=np.int32)
        width = int(lengths.max()) if len(words) else 1
        codes = np.full((len(words), width), -1, dtype=np.int32)
        for i, w in enumerate(words):
            codes[i, :len(w)] = [ord(ch) for ch in w]
        freqs = np.array([self.entries[w] for w in words], dtype=np.int64)
        self._index = (words, codes, lengths, freqs)

    def within(self, word: str, max_dist: int = 2) -> np.ndarray:
        """Distances from ``word`` to every lexicon word (capped at max_dist + 1)."""
        if self._index is None:
            self._build_index()
        words, codes, lengths, _ = self._index
        out = np.full(len(words), max_dist + 1, dtype=np.int32)
        lo = np.searchsorted(lengths, len(word) - max_dist, side="left")
        hi = np.searchsorted(lengths, len(word) + max_dist, side="right")
        if hi > lo:
            query = np.array([ord(ch) for ch in word], dtype=np.int32)
            out[lo:hi] = kernels.osa_distances(query, codes[lo:hi], lengths[lo:hi], max_dist)
        return out

    def correct(self, word: str) -> str:
        """Best lexicon word within edit distance 1, else 2, else ``word`` itself.

        Distance is Damerau-Levenshtein in its optimal-string-alignment form.
        Highest frequency wins; ties go to the alphabetically first candidate.
        """
        if word in self.entries or not word:
            return word
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        dist = self.within(word, 2)
        words, _, _, freqs = self._index
        best = word
        for d in (1, 2):
            idx = np.flatnonzero(dist == d)
            if len(idx):
                best = min((words[i] for i in idx), key=lambda w: (-self.entries[w], w))
                break
        self._cache[word] = best
        return best


def correct_spelling(tok: Token, lex: Lexicon) -> Token:
    if tok.pos is not POS.UNSET or not tok.is_word:
        return tok
    word = tok.lower
    if word in lex:
        return tok
    if _ALPHA.fullmatch(word):
        fixed = lex.correct(word)
    elif _LEX_KEY.fullmatch(word):
        fixed = "-".join(lex.correct(p) for p in word.split("-"))
    else:
        return tok
    return tok if fixed == word else tok.with_(lower=fixed)


def normalize_text(doc_id: str, text: str, lex: Lexicon | None = None) -> Document:
    """Segment, tokenize and (with a lexicon) spell-correct one document."""
    sents = []
    for i, s in enumerate(segment_sentences(text or "")):
        toks = tokenize(s, i)
        if lex is not None:
            toks = [correct_spelling(t, lex) for t in toks]
        sents.append(reindex(toks, i))
    return Document(doc_id=doc_id, sentences=tuple(sents))


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    return Lexicon.from_file(path) if path else Lexicon.bundled()

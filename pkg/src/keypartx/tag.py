"""Averaged-perceptron POS tagger over a 5-tag set, plus a rule-based lemmatizer."""
from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ._data import data_path, read_tsv, read_word_list
from .document import POS, Document, Token

TAGS = ("ADJ", "NOUN", "OTHER", "PRON", "VERB")

COPULAR = frozenset({"be", "get", "taste", "smell", "seem", "look", "feel", "sound",
                     "appear", "become", "stay", "remain"})
PASSIVE_AUX = frozenset({"be", "get"})

START = ("-START-", "-START2-")
END = ("-END-", "-END2-")


def word_shape(word: str) -> str:
    out = []
    for ch in word:
        c = "X" if ch.isupper() else "x" if ch.isalpha() else "d" if ch.isdigit() else ch
        if not out or out[-1] != c:
            out.append(c)
    return "".join(out)


def features(i: int, word: str, context: list[str], prev: str) -> list[str]:
    """Feature strings for position ``i``; ``context`` is padded with START/END."""
    j = i + len(START)
    return [
        "bias",
        "w=" + word,
        "s1=" + word[-1:],
        "s2=" + word[-2:],
        "s3=" + word[-3:],
        "pt=" + prev,
        "pw=" + context[j - 1],
        "nw=" + context[j + 1],
        "shape=" + word_shape(word),
    ]


@dataclass
class TagModel:
    weights: dict[str, dict[str, float]] = field(default_factory=dict)
    tagdict: dict[str, str] = field(default_factory=dict)
    copular_list: frozenset = COPULAR
    passive_aux_list: frozenset = PASSIVE_AUX
    classes: tuple = TAGS

    def predict(self, feats: list[str]) -> str:
        scores = dict.fromkeys(self.classes, 0.0)
        for f in feats:
            ws = self.weights.get(f)
            if ws:
                for tag, w in ws.items():
                    scores[tag] += w
        # classes are sorted, so ties resolve alphabetically
        return max(self.classes, key=lambda c: scores[c])

    def tag_words(self, words: list[str]) -> list[str]:
        context = list(START) + words + list(END)
        prev = START[-1]
        tags = []
        for i, w in enumerate(words):
            tag = self.tagdict.get(w)
            if tag is None:
                tag = self.predict(features(i, w, context, prev))
            tags.append(tag)
            prev = tag
        return tags

    def to_json(self) -> str:
        return json.dumps({
            "classes": list(self.classes),
            "tagdict": dict(sorted(self.tagdict.items())),
            "copular": sorted(self.copular_list),
            "passive_aux": sorted(self.passive_aux_list),
            "weights": {f: dict(sorted(ws.items())) for f, ws in sorted(self.weights.items())},
        }, ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "TagModel":
        d = json.loads(text)
        return cls(weights=d["weights"], tagdict=d["tagdict"],
                   copular_list=frozenset(d["copular"]),
                   passive_aux_list=frozenset(d["passive_aux"]),
                   classes=tuple(d["classes"]))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "TagModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def with_lists(self, copular=None, passive_aux=None) -> "TagModel":
        return TagModel(self.weights, self.tagdict,
                        frozenset(copular) if copular is not None else self.copular_list,
                        frozenset(passive_aux) if passive_aux is not None else self.passive_aux_list,
                        self.classes)


def load_treebank(path=None) -> list[list[tuple[str, str]]]:
    """Read a word<TAB>TAG file; blank lines separate sentences."""
    path = path or data_path("treebank.tsv")
    sents, cur = [], []
    with open(path, encoding="utf-8") as f:
        for n, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip():
                if cur:
                    sents.append(cur)
                cur = []
                continue
            if line.startswith("#") and "\t" not in line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or parts[1] not in TAGS:
                raise ValueError(f"{path}:{n}: expected word<TAB>tag with tag in {TAGS}")
            cur.append((parts[0].lower(), parts[1]))
    if cur:
        sents.append(cur)
    return sents


def closed_class() -> dict[str, str]:
    return {w.lower(): t for w, t in read_tsv(data_path("closed_class.tsv"))}


def _frequent_unambiguous(sentences, min_freq=20, min_share=0.97):
    counts = defaultdict(Counter)
    for sent in sentences:
        for w, t in sent:
            counts[w][t] += 1
    out = {}
    for w, c in counts.items():
        tag, k = c.most_common(1)[0]
        n = sum(c.values())
        if n >= min_freq and k / n >= min_share:
            out[w] = tag
    return out


def train_tagger(corpus, epochs: int = 8, seed: int = 0, tagdict: dict | None = None) -> TagModel:
    """Train an averaged perceptron on sentences of (word, tag) pairs."""
    corpus = [list(s) for s in corpus if s]
    if not corpus:
        raise ValueError("cannot train a tagger on an empty corpus")
    for sent in corpus:
        for _, t in sent:
            if t not in TAGS:
                raise ValueError(f"unknown gold tag {t!r}; expected one of {TAGS}")
    if tagdict is None:
        tagdict = {**_frequent_unambiguous(corpus), **closed_class()}

    weights: dict[str, dict[str, float]] = defaultdict(dict)
    totals: dict[tuple[str, str], float] = defaultdict(float)
    stamps: dict[tuple[str, str], int] = defaultdict(int)
    step = 0

    def bump(f, tag, v):
        key = (f, tag)
        w = weights[f].get(tag, 0.0)
        totals[key] += (step - stamps[key]) * w
        stamps[key] = step
        weights[f][tag] = w + v

    model = TagModel(weights=weights, tagdict=tagdict)
    rng = random.Random(seed)
    order = list(range(len(corpus)))
    for _ in range(epochs):
        rng.shuffle(order)
        for si in order:
            sent = corpus[si]
            words = [w for w, _ in sent]
            context = list(START) + words + list(END)
            prev = START[-1]
            for i, (w, gold) in enumerate(sent):
                guess = tagdict.get(w)
                if guess is None:
                    feats = features(i, w, context, prev)
                    guess = model.predict(feats)
                    if guess != gold:
                        for f in feats:
                            bump(f, gold, 1.0)
                            bump(f, guess, -1.0)
                    # weights after this update also count for this instance
                    step += 1
                # condition on the gold history while training
                prev = gold

    averaged = {}
    for f, ws in weights.items():
        row = {}
        for tag, w in ws.items():
            key = (f, tag)
            total = totals[key] + (step - stamps[key]) * w
            avg = round(total / max(step, 1), 4)
            if avg:
                row[tag] = avg
        if row:
            averaged[f] = row
    return TagModel(weights=averaged, tagdict=dict(tagdict))


def accuracy(model: TagModel, sentences) -> float:
    right = total = 0
    for sent in sentences:
        pred = model.tag_words([w for w, _ in sent])
        right += sum(p == g for p, (_, g) in zip(pred, sent))
        total += len(sent)
    return right / total if total else 0.0


@lru_cache(maxsize=1)
def bundled_model() -> TagModel:
    path = data_path("tagger.json")
    if path.exists():
        return TagModel.load(path)
    return train_tagger(load_treebank())


def load_model(path=None, copular_path=None) -> TagModel:
    model = TagModel.load(path) if path else bundled_model()
    if copular_path:
        model = model.with_lists(copular=read_word_list(copular_path))
    return model


# ----------------------------------------------------------------------------
# lemmatizer

@lru_cache(maxsize=1)
def _tables():
    irregular = {(form, pos): lemma for form, pos, lemma in read_tsv(data_path("irregular.tsv"))}
    index = defaultdict(set)
    for pos, lemma in read_tsv(data_path("lemma_index.tsv")):
        index[pos].add(lemma)
    return irregular, index


def _first_known(cands, known):
    for c in cands:
        if c and c in known:
            return c
    return None


def _undouble(stem):
    if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in "aeiouy":
        return stem[:-1]
    return None


def _verb_lemma(w, known):
    if w.endswith("ies") and len(w) > 4:
        cands = [w[:-3] + "y", w[:-1]]
    elif w.endswith("es"):
        cands = [w[:-1], w[:-2]]
    elif w.endswith("s") and not w.endswith("ss"):
        cands = [w[:-1]]
    elif w.endswith("ied") and len(w) > 4:
        cands = [w[:-3] + "y"]
    elif w.endswith("ed") and len(w) > 3:
        base = w[:-2]
        cands = [base + "e", base, _undouble(base)]
    elif w.endswith("ing") and len(w) > 4:
        base = w[:-3]
        cands = ([base[:-1] + "ie"] if base.endswith("y") else []) + [base + "e", base, _undouble(base)]
    else:
        return w
    hit = _first_known(cands, known)
    if hit:
        return hit
    # unknown verb: strip the suffix without e-restoration
    if w.endswith(("ed", "ing")):
        base = w[:-2] if w.endswith("ed") else w[:-3]
        return _undouble(base) or base
    return cands[0] if w.endswith("ies") else w[:-1] if not w.endswith("ss") else w


def _noun_lemma(w, known):
    if not w.endswith("s") or w.endswith("ss") or len(w) < 3:
        return w
    if w.endswith(("us", "is")):
        # bus, analysis; but taxis -> taxi
        return w[:-1] if w not in known and w[:-1] in known else w
    cands = []
    if w.endswith("ies") and len(w) > 4:
        cands.append(w[:-3] + "y")
    if w.endswith("ves"):
        cands += [w[:-3] + "f", w[:-3] + "fe"]
    cands.append(w[:-1])
    if w.endswith("es"):
        cands.append(w[:-2])
    hit = _first_known(cands, known)
    if hit:
        return hit
    return w if w in known else w[:-1]


def _adj_lemma(w, known):
    cands = []
    if w.endswith("iest"):
        cands.append(w[:-4] + "y")
    elif w.endswith("ier"):
        cands.append(w[:-3] + "y")
    if w.endswith("est"):
        cands += [w[:-3], w[:-2], _undouble(w[:-3])]
    elif w.endswith("er"):
        cands += [w[:-2], w[:-1], _undouble(w[:-2])]
    if not cands or w in known:
        return w
    return _first_known(cands, known) or w


def lemma_of(word: str, pos: POS) -> str:
    """Lemma of a lowercase word given its coarse POS."""
    if pos not in (POS.VERB, POS.NOUN, POS.ADJ):
        return word
    irregular, index = _tables()
    hit = irregular.get((word, pos.value))
    if hit:
        return hit
    if not word.isalpha():
        return word
    if pos is POS.VERB:
        return _verb_lemma(word, index["VERB"])
    if pos is POS.NOUN:
        return _noun_lemma(word, index["NOUN"])
    return _adj_lemma(word, index["ADJ"])


def lemmatize(tok: Token) -> Token:
    lemma = lemma_of(tok.lower, tok.pos)
    return tok if lemma == tok.lemma else tok.with_(lemma=lemma)


def annotate(tok: Token, model: TagModel) -> Token:
    """Set lemma-derived flags (copular, passive auxiliary, plural)."""
    tok = lemmatize(tok) if not tok.lemma else tok
    return tok.with_(
        is_copular=tok.pos is POS.VERB and tok.lemma in model.copular_list,
        is_passive_aux=tok.lemma in model.passive_aux_list,
        plural=tok.plural or (tok.pos is POS.NOUN and tok.lemma != tok.lower),
    )


def tag_tokens(doc: Document, model: TagModel) -> Document:
    """Assign POS, lemma and copular/passive flags to every token.

    Pre-tagged (CoNLL-U) documents keep their POS and lemma; only the flags
    are filled in.
    """
    if doc.pretagged:
        return doc.map_sentences(lambda toks, _: [annotate(t, model) for t in toks])

    def run(toks, _):
        tags = model.tag_words([t.lower for t in toks])
        out = []
        for t, tag in zip(toks, tags):
            pos = POS.OTHER if not t.is_word else POS(tag)
            t = t.with_(pos=pos, lemma="")
            t = lemmatize(t)
            out.append(annotate(t, model))
        return out

    return doc.map_sentences(run)

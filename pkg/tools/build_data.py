"""Regenerate the bundled data files under src/keypartx/data.

Not needed at runtime. Requires the ``data`` extra:

    pip install wordfreq spacy-lookups-data lemminflect textblob treebank

Outputs:
    lexicon.tsv      word<TAB>count from wordfreq (top 60k English words)
    irregular.tsv    form<TAB>POS<TAB>lemma from spaCy's English lemma exceptions
    lemma_index.tsv  POS<TAB>lemma of known base forms (spaCy lemma index,
                     restricted to words wordfreq knows)
    participles.txt  irregular past participles not ending in -ed/-en (lemminflect)
    adverbs.txt      words whose most frequent Penn tag is RB/RBR/RBS (Brill lexicon)
    treebank.tsv     mini treebank, word<TAB>TAG, blank line between sentences
"""
import argparse
import gzip
import json
import os
import random
import re
from pathlib import Path

WORD_RE = re.compile(r"[a-z]+(-[a-z]+)*")
ALPHA_RE = re.compile(r"[a-z]+")
DATA = Path(__file__).resolve().parents[1] / "src" / "keypartx" / "data"

NEGATION = {"hardly", "scarcely", "barely", "no", "not", "none", "neither", "nor", "never"}


def penn_to_coarse(tag):
    if tag.startswith("JJ"):
        return "ADJ"
    if tag.startswith("VB"):
        return "VERB"
    if tag.startswith("NN"):
        return "NOUN"
    if tag in ("PRP", "WP"):
        return "PRON"
    return "OTHER"


# --------------------------------------------------------------------------
# lexica

def build_lexicon(out, n=60000):
    import wordfreq

    rows = []
    for w in wordfreq.top_n_list("en", n):
        if WORD_RE.fullmatch(w):
            rows.append((w, max(1, round(wordfreq.word_frequency(w, "en") * 1e9))))
    rows.sort(key=lambda r: (-r[1], r[0]))
    with open(out, "w", encoding="utf-8") as f:
        f.write("# word<TAB>count; counts are wordfreq frequencies per 1e9 tokens\n")
        for w, c in rows:
            f.write(f"{w}\t{c}\n")
    return {w for w, _ in rows}


def spacy_table(name):
    import spacy_lookups_data

    path = Path(spacy_lookups_data.__file__).parent / "data" / f"en_{name}.json.gz"
    return json.loads(gzip.decompress(path.read_bytes()))


def build_irregular(out):
    exc = spacy_table("lemma_exc")
    rows = set()
    for pos in ("verb", "noun", "adj"):
        for form, lemmas in exc[pos].items():
            if ALPHA_RE.fullmatch(form) and lemmas and ALPHA_RE.fullmatch(lemmas[0]):
                if form != lemmas[0]:
                    rows.add((form, pos.upper(), lemmas[0]))
    for form, lemma in [("isn't", "be"), ("aren't", "be"), ("wasn't", "be"), ("weren't", "be"),
                        ("don't", "do"), ("doesn't", "do"), ("didn't", "do"),
                        ("hasn't", "have"), ("haven't", "have"), ("hadn't", "have"),
                        ("being", "be")]:
        rows.add((form, "VERB", lemma))
    with open(out, "w", encoding="utf-8") as f:
        f.write("# form<TAB>POS<TAB>lemma\n")
        for r in sorted(rows):
            f.write("\t".join(r) + "\n")


def build_lemma_index(out, known):
    idx = spacy_table("lemma_index")
    with open(out, "w", encoding="utf-8") as f:
        f.write("# POS<TAB>lemma\n")
        for pos in ("verb", "noun", "adj"):
            for w in sorted(set(idx[pos])):
                if ALPHA_RE.fullmatch(w) and w in known:
                    f.write(f"{pos.upper()}\t{w}\n")


def build_participles(out):
    import lemminflect

    path = Path(lemminflect.__file__).parent / "resources" / "infl_lu.csv.gz"
    parts = set()
    with gzip.open(path, "rt", encoding="utf-8") as f:
        for line in f:
            cols = line.rstrip("\n").split(",")
            if len(cols) < 6 or cols[1] != "verb":
                continue
            vbn = cols[3] or cols[2]
            for form in vbn.split("/"):
                form = form.lower()
                if ALPHA_RE.fullmatch(form) and not form.endswith(("ed", "en")):
                    parts.add(form)
    with open(out, "w", encoding="utf-8") as f:
        f.write("# irregular past participles (regular ones end in -ed/-en)\n")
        f.write("\n".join(sorted(parts)) + "\n")


# --------------------------------------------------------------------------
# a compact Brill tagger used only to silver-tag WSJ text

def textblob_file(name):
    import textblob

    return Path(textblob.__file__).parent / "en" / name


def load_brill():
    lex = {}
    for line in open(textblob_file("en-lexicon.txt"), encoding="utf-8"):
        if line.startswith(";;;") or not line.strip():
            continue
        word, tag = line.split()[:2]
        if word.lower() == word:
            lex[word] = tag
        else:
            lex.setdefault(word.lower() + "\x00cap", tag)
    rules = []
    for line in open(textblob_file("en-context.txt"), encoding="utf-8"):
        if line.startswith(";;;") or not line.strip():
            continue
        parts = line.split()
        rules.append((parts[0], parts[1], parts[2], [a.lower() if a.islower() or "'" in a else a for a in parts[3:]]))
    return lex, rules


def guess_tag(w):
    if re.fullmatch(r"[\d.,]+", w):
        return "CD"
    if w.endswith("ing"):
        return "VBG"
    if w.endswith("ed"):
        return "VBN"
    if w.endswith("ly"):
        return "RB"
    if "-" in w:
        return "JJ"
    if w.endswith(("able", "ible", "al", "ful", "ous", "ive", "ic", "less", "ary")):
        return "JJ"
    if w.endswith("s") and not w.endswith("ss"):
        return "NNS"
    return "NN"


def brill_tag(words, lex, rules):
    tags = []
    for w in words:
        t = lex.get(w) or lex.get(w + "\x00cap")
        if t is None:
            t = "NNP" if w + "\x00cap" in lex else guess_tag(w)
        tags.append(t)
    n = len(words)

    def T(i):
        return tags[i] if 0 <= i < n else "STAART"

    def W(i):
        return words[i] if 0 <= i < n else "STAART"

    for src, dst, kind, a in rules:
        for i in range(n):
            if tags[i] != src:
                continue
            hit = False
            if kind == "PREVTAG":
                hit = T(i - 1) == a[0]
            elif kind == "NEXTTAG":
                hit = T(i + 1) == a[0]
            elif kind == "PREV1OR2TAG":
                hit = a[0] in (T(i - 1), T(i - 2))
            elif kind == "PREV1OR2OR3TAG":
                hit = a[0] in (T(i - 1), T(i - 2), T(i - 3))
            elif kind == "NEXT1OR2TAG":
                hit = a[0] in (T(i + 1), T(i + 2))
            elif kind == "NEXT1OR2OR3TAG":
                hit = a[0] in (T(i + 1), T(i + 2), T(i + 3))
            elif kind == "SURROUNDTAG":
                hit = T(i - 1) == a[0] and T(i + 1) == a[1]
            elif kind == "PREVWD":
                hit = W(i - 1) == a[0]
            elif kind == "NEXTWD":
                hit = W(i + 1) == a[0]
            elif kind == "PREV1OR2WD":
                hit = a[0] in (W(i - 1), W(i - 2))
            elif kind == "NEXT1OR2WD":
                hit = a[0] in (W(i + 1), W(i + 2))
            elif kind == "CURWD":
                hit = W(i) == a[0]
            elif kind == "WDPREVTAG":
                hit = T(i - 1) == a[0] and W(i) == a[1]
            elif kind == "WDNEXTTAG":
                hit = W(i) == a[0] and T(i + 1) == a[1]
            elif kind == "RBIGRAM":
                hit = W(i) == a[0] and W(i + 1) == a[1]
            elif kind == "LBIGRAM":
                hit = W(i - 1) == a[0] and W(i) == a[1]
            elif kind == "PREVBIGRAM":
                hit = T(i - 2) == a[0] and T(i - 1) == a[1]
            elif kind == "NEXTBIGRAM":
                hit = T(i + 1) == a[0] and T(i + 2) == a[1]
            elif kind == "WDAND2AFT":
                hit = W(i) == a[0] and W(i + 2) == a[1]
            elif kind == "WDAND2TAGAFT":
                hit = W(i) == a[0] and T(i + 2) == a[1]
            elif kind == "WDAND2TAGBFR":
                hit = T(i - 2) == a[0] and W(i) == a[1]
            elif kind == "PREV2TAG":
                hit = T(i - 2) == a[0]
            elif kind == "NEXT2TAG":
                hit = T(i + 2) == a[0]
            if hit:
                tags[i] = dst
    return tags


def build_adverbs(out, lex):
    advs = sorted(w for w, t in lex.items()
                  if t in ("RB", "RBR", "RBS") and ALPHA_RE.fullmatch(w) and w not in NEGATION)
    with open(out, "w", encoding="utf-8") as f:
        f.write("# adverbs (most frequent Penn tag RB/RBR/RBS)\n")
        f.write("\n".join(advs) + "\n")


def wsj_sentences(lex, rules, rng, n):
    import treebank

    lines = [l.split() for l in treebank.penn["train"].split("\n")]
    lines = [l for l in lines if 6 <= len(l) <= 25 and "<unk>" not in l
             and not any(w.startswith("'") or w == "n't" for w in l)]
    rng.shuffle(lines)
    out = []
    for words in lines[:n]:
        words = [rng.choice(["2", "3", "10", "15", "100"]) if w == "N" else w for w in words]
        tags = brill_tag(words, lex, rules)
        coarse = ["OTHER" if w.isdigit() else penn_to_coarse(t) for w, t in zip(words, tags)]
        out.append(list(zip(words + ["."], coarse + ["OTHER"])))
    return out


# --------------------------------------------------------------------------
# review-domain sentences, tagged by construction

NOUNS = [("room", "rooms"), ("hotel", "hotels"), ("beach", "beaches"), ("food", "food"),
         ("restaurant", "restaurants"), ("staff", "staff"), ("service", "services"),
         ("pool", "pools"), ("view", "views"), ("breakfast", "breakfasts"), ("island", "islands"),
         ("market", "markets"), ("temple", "temples"), ("bed", "beds"), ("bathroom", "bathrooms"),
         ("water", "water"), ("location", "locations"), ("price", "prices"), ("taxi", "taxis"),
         ("driver", "drivers"), ("massage", "massages"), ("dish", "dishes"), ("curry", "curries"),
         ("trip", "trips"), ("holiday", "holidays"), ("night", "nights"), ("bar", "bars"),
         ("city", "cities"), ("shop", "shops"), ("guide", "guides"), ("tour", "tours"),
         ("boat", "boats"), ("resort", "resorts"), ("villa", "villas"), ("window", "windows"),
         ("fridge", "fridges"), ("shower", "showers"), ("drink", "drinks"), ("cocktail", "cocktails"),
         ("people", "people"), ("place", "places"), ("town", "towns"), ("street", "streets"),
         ("owner", "owners"), ("host", "hosts"), ("menu", "menus"), ("coffee", "coffee"),
         ("garden", "gardens"), ("balcony", "balconies"), ("sea", "seas"), ("sand", "sand"),
         ("weather", "weather"), ("experience", "experiences"), ("country", "countries"),
         ("elephant", "elephants"), ("noodle", "noodles"), ("soup", "soups"), ("fruit", "fruits"),
         ("wifi", "wifi"), ("airport", "airports"), ("ferry", "ferries"), ("hostel", "hostels"),
         ("kitchen", "kitchens"), ("stay", "stays"), ("lobby", "lobbies"), ("spa", "spas")]

ADJS = ["great", "good", "clean", "friendly", "delicious", "expensive", "cheap", "beautiful",
        "amazing", "nice", "small", "big", "dirty", "helpful", "comfortable", "noisy", "quiet",
        "spicy", "fresh", "lovely", "awesome", "terrible", "bad", "excellent", "busy", "hot",
        "perfect", "wonderful", "tasty", "crowded", "spacious", "modern", "old", "rude", "slow",
        "fantastic", "stunning", "cozy", "polite", "affordable", "overpriced", "warm", "cold",
        "huge", "tiny", "safe", "local", "authentic", "fine", "poor", "welcoming", "relaxing",
        "quick", "easy", "long", "short", "best", "worst", "better", "cleaner", "cheaper"]

NATIONALITIES = ["thai", "italian", "japanese", "indian", "chinese", "french", "mexican",
                 "korean", "vietnamese", "american", "english", "german"]

# base, past, participle, third person, gerund
VERBS = [("love", "loved", "loved", "loves", "loving"),
         ("like", "liked", "liked", "likes", "liking"),
         ("enjoy", "enjoyed", "enjoyed", "enjoys", "enjoying"),
         ("recommend", "recommended", "recommended", "recommends", "recommending"),
         ("visit", "visited", "visited", "visits", "visiting"),
         ("hate", "hated", "hated", "hates", "hating"),
         ("avoid", "avoided", "avoided", "avoids", "avoiding"),
         ("book", "booked", "booked", "books", "booking"),
         ("eat", "ate", "eaten", "eats", "eating"),
         ("try", "tried", "tried", "tries", "trying"),
         ("see", "saw", "seen", "sees", "seeing"),
         ("take", "took", "taken", "takes", "taking"),
         ("find", "found", "found", "finds", "finding"),
         ("buy", "bought", "bought", "buys", "buying"),
         ("appreciate", "appreciated", "appreciated", "appreciates", "appreciating"),
         ("adore", "adored", "adored", "adores", "adoring"),
         ("clean", "cleaned", "cleaned", "cleans", "cleaning"),
         ("serve", "served", "served", "serves", "serving"),
         ("impress", "impressed", "impressed", "impresses", "impressing"),
         ("please", "pleased", "pleased", "pleases", "pleasing"),
         ("satisfy", "satisfied", "satisfied", "satisfies", "satisfying"),
         ("surprise", "surprised", "surprised", "surprises", "surprising"),
         ("value", "valued", "valued", "values", "valuing"),
         ("revisit", "revisited", "revisited", "revisits", "revisiting"),
         ("dislike", "disliked", "disliked", "dislikes", "disliking"),
         ("need", "needed", "needed", "needs", "needing"),
         ("want", "wanted", "wanted", "wants", "wanting"),
         ("rent", "rented", "rented", "rents", "renting"),
         ("offer", "offered", "offered", "offers", "offering"),
         ("make", "made", "made", "makes", "making"),
         ("give", "gave", "given", "gives", "giving"),
         ("choose", "chose", "chosen", "chooses", "choosing"),
         ("miss", "missed", "missed", "misses", "missing"),
         ("explore", "explored", "explored", "explores", "exploring"),
         ("order", "ordered", "ordered", "orders", "ordering")]

COPULAS_PAST = ["was", "seemed", "looked", "tasted", "felt", "smelled", "became", "stayed", "remained"]
COPULAS_PRES = ["is", "seems", "looks", "tastes", "feels", "smells", "sounds"]
ADVS = ["very", "really", "so", "quite", "extremely", "highly", "pretty", "super", "absolutely",
        "definitely", "also", "always", "too", "totally", "incredibly", "truly"]
DETS = ["the", "a", "this", "our", "their", "my", "every", "that"]
SUBJ = ["we", "i", "they", "you", "he", "she"]
OBJ = ["it", "them", "us", "him", "her"]
PREPS = ["in", "at", "near", "on", "with", "for", "from", "by"]
NUMS = ["2", "3", "4", "10", "two", "three", "five"]


def review_sentences(rng, n):
    def O(w):
        return (w, "OTHER")

    def noun(plural=False):
        s, p = rng.choice(NOUNS)
        return (p if plural else s, "NOUN")

    def nphrase(plural=False):
        out = []
        r = rng.random()
        if r < 0.2:
            out.append((rng.choice(NATIONALITIES), "ADJ"))
        elif r < 0.4:
            out.append(noun())
        out.append(noun(plural))
        return out

    def adj():
        return (rng.choice(ADJS), "ADJ")

    def maybe_adv():
        return [O(rng.choice(ADVS))] if rng.random() < 0.4 else []

    def adj_run():
        k = rng.choice([1, 1, 2, 3])
        out = maybe_adv() + [adj()]
        for j in range(1, k):
            out.append(O("and") if j == k - 1 else O(","))
            if rng.random() < 0.25:
                out.append(O(rng.choice(["not", "never"])))
            out += maybe_adv() + [adj()]
        return out

    def det():
        return O(rng.choice(DETS))

    def verb(form):
        return (rng.choice(VERBS)[form], "VERB")

    def end():
        return O(rng.choice([".", ".", "!", "!!!", "..."]))

    templates = [
        lambda: [det()] + nphrase() + [("was", "VERB")] + adj_run() + [end()],
        lambda: [det()] + nphrase(True) + [("were", "VERB")] + adj_run() + [end()],
        lambda: nphrase() + [(rng.choice(COPULAS_PAST), "VERB")] + adj_run() + [end()],
        lambda: [det()] + nphrase() + [(rng.choice(COPULAS_PRES), "VERB")] + adj_run() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), verb(1), det()] + ([adj()] if rng.random() < 0.5 else []) + nphrase() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), verb(1)] + nphrase(rng.random() < 0.5) + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), verb(1), (rng.choice(OBJ), "PRON"), end()],
        lambda: [(rng.choice(SUBJ), "PRON"), verb(1), O(rng.choice(NUMS))] + nphrase(True) + [end()],
        lambda: [det()] + nphrase(True) + [("are", "VERB")] + maybe_adv() + [verb(2), end()],
        lambda: [det()] + nphrase() + [(rng.choice(["is", "was", "got"]), "VERB")] + maybe_adv() + [verb(2), end()],
        lambda: [("they", "PRON"), ("are", "VERB")] + maybe_adv() + [verb(2), end()],
        lambda: [("it", "PRON"), ("was", "VERB")] + maybe_adv() + [verb(2), O("by"), det()] + nphrase() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), ("had", "VERB"), det(), adj()] + nphrase() + [O(rng.choice(PREPS)), det()] + nphrase() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), ("had", "VERB"), O('"'), (rng.choice(["fire", "mango", "coco"]) + "-" + rng.choice(["vodka", "rice", "loco"]), "NOUN"), O('"'), end()],
        lambda: [(rng.choice(SUBJ), "PRON"), O(rng.choice(["would", "will", "can"]))] + maybe_adv() + [verb(0), det()] + nphrase() + [end()],
        lambda: [O("highly"), verb(2), end()],
        lambda: [(rng.choice(SUBJ), "PRON"), ("did", "VERB"), O("not"), verb(0), det()] + nphrase() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), verb(1), det()] + nphrase() + [O(","), ("it", "PRON"), ("was", "VERB")] + adj_run() + [end()],
        lambda: [det()] + nphrase() + [O(rng.choice(["of", "in", "at"])), det()] + nphrase() + [("was", "VERB")] + adj_run() + [end()],
        lambda: [O("there"), (rng.choice(["is", "are", "was", "were"]), "VERB"), adj()] + nphrase(True) + [O(rng.choice(PREPS)), det()] + nphrase() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), verb(1), det()] + nphrase() + [O("and"), det()] + nphrase() + [end()],
        lambda: [adj()] + nphrase(True) + [O(","), adj()] + nphrase() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), (rng.choice(["stayed", "went", "walked"]), "VERB"), O(rng.choice(PREPS)), det()] + nphrase() + [O("for"), O(rng.choice(NUMS)), ("nights", "NOUN"), end()],
        lambda: [(rng.choice(SUBJ), "PRON"), verb(3 if rng.random() < 0.5 else 0), det()] + nphrase() + [end()],
        lambda: [(rng.choice(SUBJ), "PRON"), ("was", "VERB"), verb(2), O("with"), det()] + nphrase() + [end()],
        lambda: [(rng.choice(["we", "i"]), "PRON"), O("really"), verb(1), (rng.choice(["our", "the"]), "OTHER"), ("stay", "NOUN"), end()],
        lambda: [verb(4), det()] + nphrase() + [("was", "VERB")] + adj_run() + [end()],
    ]
    return [rng.choice(templates)() for _ in range(n)]


def build_treebank(out, lex, rules, seed=13, n_wsj=3000, n_review=2200):
    rng = random.Random(seed)
    sents = wsj_sentences(lex, rules, rng, n_wsj) + review_sentences(rng, n_review)
    rng.shuffle(sents)
    with open(out, "w", encoding="utf-8") as f:
        f.write("# word<TAB>tag, blank line ends a sentence\n")
        for s in sents:
            for w, t in s:
                f.write(f"{w}\t{t}\n")
            f.write("\n")
    return len(sents)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(DATA))
    args = ap.parse_args()
    out = Path(args.out)
    os.makedirs(out, exist_ok=True)
    known = build_lexicon(out / "lexicon.tsv")
    import wordfreq

    known_wide = {w for w in wordfreq.top_n_list("en", 100000)}
    build_irregular(out / "irregular.tsv")
    build_lemma_index(out / "lemma_index.tsv", known_wide | known)
    build_participles(out / "participles.txt")
    lex, rules = load_brill()
    build_adverbs(out / "adverbs.txt", lex)
    n = build_treebank(out / "treebank.tsv", lex, rules)
    print(f"wrote data files to {out} ({n} treebank sentences)")


if __name__ == "__main__":
    main()

"""Train the bundled tagger from data/treebank.tsv and write data/tagger.json."""
import random
import sys

from keypartx._data import data_path
from keypartx.tag import accuracy, load_treebank, train_tagger


def main(seed=0):
    sents = load_treebank()
    order = list(range(len(sents)))
    random.Random(seed).shuffle(order)
    cut = int(0.9 * len(sents))
    held = train_tagger([sents[i] for i in order[:cut]], seed=seed)
    print(f"held-out accuracy: {accuracy(held, [sents[i] for i in order[cut:]]):.4f}")
    model = train_tagger(sents, seed=seed)
    out = data_path("tagger.json")
    model.save(out)
    print(f"wrote {out}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 0)

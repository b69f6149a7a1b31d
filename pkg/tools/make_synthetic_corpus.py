"""Write tests/data/synthetic_reviews.csv: seeded template reviews of a holiday trip.

Stand-in for a real review corpus in determinism tests and benchmarks.
"""
import csv
import random
import sys
from pathlib import Path

NOUNS = ["hotel", "room", "beach", "food", "staff", "pool", "breakfast", "island",
         "restaurant", "market", "temple", "view", "service", "massage", "boat trip",
         "night market", "street food", "taxi", "resort", "bar", "weather", "people",
         "guide", "price", "location", "spa", "water", "sunset", "bungalow", "shopping mall"]
ADJS = ["great", "beautiful", "clean", "friendly", "amazing", "cheap", "expensive", "lovely",
        "nice", "dirty", "crowded", "quiet", "delicious", "spicy", "helpful", "perfect",
        "comfortable", "noisy", "stunning", "wonderful", "small", "big", "fresh", "hot"]
VERBS = ["loved", "enjoyed", "liked", "recommend", "hated", "visited", "booked", "avoid",
         "appreciated", "had", "tried", "found"]
PLACES = ["Phuket", "Bangkok", "Chiang Mai", "Koh Samui", "Krabi", "Pattaya", "Hua Hin"]

TEMPLATES = [
    "The {n1} was {a1} and {a2}.",
    "We {v} the {n1}.",
    "{A1} {n1} and {a2} {n2}.",
    "The {n1} is {a1}, the {n2} was not {a2}.",
    "I would {v0} the {n1} in {p}.",
    "The {n1} were very {a1}, they were {a2}.",
    "Our {n1} in {p} was {a1}.",
    "We stayed at a {a1} {n1} near the {n2}.",
    "The {n1} was highly recommended.",
    "It was {a1}.",
    "The {n1} was never {a2} but the {n2} was {a1}.",
    "We had \"{n1}\" at the {n2} !!!",
    "{p} has {a1} {n1} and {a1} {n2}.",
]


def review(rng):
    parts = []
    for _ in range(rng.randint(2, 6)):
        t = rng.choice(TEMPLATES)
        a1, a2 = rng.sample(ADJS[:12] if rng.random() < 0.7 else ADJS, 2)
        s = t.format(n1=rng.choice(NOUNS[:12] if rng.random() < 0.6 else NOUNS),
                     n2=rng.choice(NOUNS), a1=a1, a2=a2, A1=a1.capitalize(),
                     v=rng.choice(VERBS), v0=rng.choice(["recommend", "avoid", "revisit"]),
                     p=rng.choice(PLACES))
        parts.append(s)
    return " ".join(parts)


def main(out="tests/data/synthetic_reviews.csv", n=150, seed=7):
    rng = random.Random(seed)
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f)
        w.writerow(["id", "review"])
        for i in range(n):
            w.writerow([f"r{i:04d}", review(rng)])
    print(f"wrote {n} reviews to {path}")


if __name__ == "__main__":
    main(*sys.argv[1:2])

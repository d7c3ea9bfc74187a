#!/usr/bin/env python3
"""Regenerate the bundled synthetic folk-tale corpus.

Produces pseudo-Bengali narrative text with exactly 2726 word tokens, the
scale of the Kiran Mala tale. Words are grouped into topic clusters and every
sentence stays inside one cluster, giving the corpus real co-occurrence
structure (like an actual tale) so skip-gram training has something to learn.
Core words all occur at least 10 times; a rare tail falls below that, so
min_count=10 exercises vocabulary filtering. Deterministic: fixed seed.
"""

import random
from collections import Counter
from pathlib import Path

TARGET_WORDS = 2726
SEED = 20124
CLUSTER_SIZE = 8
RARE_WORDS = 30
RARE_TOTAL = 90  # tokens spent on the rare tail (counts 1..5)

WORDS = [
    # characters
    "রাজা", "রানী", "রাজকুমার", "রাজকুমারী", "কিরণমালা", "অরুণ", "বরুণ",
    "রাক্ষস", "সন্ন্যাসী", "মন্ত্রী", "পাখি", "ঘোড়া", "বুড়ি", "রাখাল",
    # nouns
    "দেশ", "বন", "নদী", "পাহাড়", "সাগর", "গ্রাম", "বাড়ি", "প্রাসাদ", "সোনা",
    "রূপা", "হীরা", "মুক্তা", "ফুল", "গাছ", "পাতা", "আকাশ", "চাঁদ", "তারা",
    "রাত", "দিন", "সকাল", "সন্ধ্যা", "পথ", "মাঠ", "জল", "আগুন", "বাতাস",
    "মাটি", "স্বপ্ন", "কথা", "গান", "চোখ", "হাত", "মাথা", "মন", "তলোয়ার",
    "তীর", "ধনুক", "মুকুট", "সিংহাসন", "দরজা", "ঘর", "উঠান", "পুকুর",
    "ডালিম", "ভাই", "বোন", "ছেলে", "মেয়ে", "মানুষ", "খাবার", "ভাত", "দুধ",
    "আম", "জাদু", "আলো", "ছায়া", "ঝড়", "বৃষ্টি", "শীত", "গরম", "ডানা",
    "পালক", "খাঁচা", "দড়ি", "নৌকা", "হাট", "মেলা", "আয়না", "চাবি",
    # verbs
    "ছিল", "গেল", "এল", "বলল", "দেখল", "শুনল", "খেল", "দিল", "নিল", "করল",
    "হল", "থাকল", "ফিরল", "উঠল", "বসল", "চলল", "দাঁড়াল", "কাঁদল", "হাসল",
    "ঘুমাল", "জাগল", "পেল", "খুঁজল", "মারল", "বাঁচল", "উড়ল", "নামল", "ডাকল",
    "ভাবল", "চাইল", "পারল", "লুকাল", "আনল", "রাখল", "খুলল", "ধরল", "কাটল",
    # adjectives and misc
    "বড়", "ছোট", "ভাল", "মন্দ", "সুন্দর", "কালো", "সাদা", "লাল", "নীল",
    "সবুজ", "দূর", "কাছে", "গভীর", "উঁচু", "পুরনো", "নতুন", "গরিব", "ধনী",
    "মিষ্টি", "তেতো", "ঠান্ডা", "ভারী", "হালকা", "চুপ", "জোরে", "ধীরে",
    "প্রথম", "শেষ", "মাঝখানে", "ভিতরে", "বাইরে", "উপরে", "নিচে", "পাশে",
    "অনেকদিন", "হঠাৎ", "সত্যি", "মিথ্যা", "খুশি", "দুঃখ", "রাগ", "ভয়",
]


def main() -> None:
    rng = random.Random(SEED)
    words = WORDS[:]
    rng.shuffle(words)
    n_core = (len(words) - RARE_WORDS) // CLUSTER_SIZE * CLUSTER_SIZE
    core, rare = words[:n_core], words[n_core : n_core + RARE_WORDS]
    clusters = [core[i : i + CLUSTER_SIZE] for i in range(0, n_core, CLUSTER_SIZE)]

    rare_counts = {w: (i % 5) + 1 for i, w in enumerate(rare)}
    rare_budget = sum(rare_counts.values())
    assert rare_budget == RARE_TOTAL, rare_budget
    core_total = TARGET_WORDS - rare_budget

    # graded counts inside each cluster, exact per-cluster quota
    quotas = [core_total // len(clusters)] * len(clusters)
    for i in range(core_total - sum(quotas)):
        quotas[i] += 1
    pools = []
    for cluster, quota in zip(clusters, quotas):
        weights = [CLUSTER_SIZE + 4 - j for j in range(CLUSTER_SIZE)]
        total_w = sum(weights)
        counts = [max(10, round(quota * w / total_w)) for w in weights]
        counts[0] += quota - sum(counts)
        pool = [w for word, cnt in zip(cluster, counts) for w in [word] * cnt]
        rng.shuffle(pool)
        pools.append(pool)

    # cut each cluster pool into sentences, then interleave the topics
    sentences = []
    for pool in pools:
        i = 0
        while i < len(pool):
            length = min(rng.randint(5, 11), len(pool) - i)
            sentences.append(pool[i : i + length])
            i += length
    rng.shuffle(sentences)

    # sprinkle the rare tail into existing sentences
    rare_tokens = [w for w, cnt in rare_counts.items() for _ in range(cnt)]
    rng.shuffle(rare_tokens)
    for token in rare_tokens:
        sent = sentences[rng.randrange(len(sentences))]
        sent.insert(rng.randrange(len(sent) + 1), token)

    rendered = [
        " ".join(sent) + rng.choices(["।", "?", "!"], weights=[0.9, 0.05, 0.05])[0]
        for sent in sentences
    ]
    lines = []
    line: list[str] = []
    for sent in rendered:
        line.append(sent)
        if len(line) >= rng.randint(2, 4):
            lines.append(" ".join(line))
            line = []
    if line:
        lines.append(" ".join(line))
    text = "\n".join(lines) + "\n"

    out = Path(__file__).resolve().parents[1] / "src/folkbangla/data/kiranmala_synthetic.txt"
    out.write_text(text, encoding="utf-8")

    counts = Counter(w for sent in sentences for w in sent)
    total = sum(counts.values())
    kept = sum(1 for c in counts.values() if c >= 10)
    assert total == TARGET_WORDS, total
    print(f"wrote {out}")
    print(f"word tokens: {total}, distinct: {len(counts)}, with count>=10: {kept}")


if __name__ == "__main__":
    main()

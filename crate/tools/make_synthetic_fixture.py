#!/usr/bin/env python3
"""Regenerates the bundled synthetic fixtures under fixtures/.

Outputs:
  fixtures/synthetic_corpus.jsonl      160 labeled paper records
  fixtures/synthetic_embeddings.txt    16-dim chunk embeddings per paper
  fixtures/evaluate.conf               a ready-to-run evaluation config

Everything is driven by one fixed seed, so reruns are byte-identical.
Text is generated so the structural scanners (numbered algorithms,
display equations, pre-references repository mentions) recover the
intended counts, and badge-correlated metadata gives models real signal.
"""

import json
import random
from pathlib import Path

SEED = 20260815
DIM = 16
ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

# (count, badges, profile)
STRATA = [
    (50, [], "unbadged"),
    (20, ["Artifacts Available"], "available"),
    (20, ["Artifacts Available", "Artifacts Evaluated and Functional"], "functional"),
    (25, ["Artifacts Available", "Artifacts Evaluated and Reusable"], "reusable"),
    (
        30,
        [
            "Artifacts Available",
            "Artifacts Evaluated and Reusable",
            "Results Reproduced",
        ],
        "reproduced_reusable",
    ),
    (15, ["Results Reproduced"], "reproduced_only"),
]

# Per-stratum feature profile: count ranges, boolean probabilities, and a
# prose richness level (0 plain .. 2 dense) feeding readability/diversity.
PROFILES = {
    "unbadged": dict(
        algos=(0, 2), eqs=(0, 3), cites=(0, 15),
        checklist=0.06, mandatory=0.02, awards=0.00, corresp=0.05,
        zenodo=0.04, github=0.10, pwc_g=0.04, pwc_d=0.04, pwc_m=0.02,
        funding=0.30, supplemental=0.10, rich=0,
    ),
    "available": dict(
        algos=(1, 4), eqs=(1, 6), cites=(4, 30),
        checklist=0.25, mandatory=0.10, awards=0.05, corresp=0.20,
        zenodo=0.15, github=0.55, pwc_g=0.25, pwc_d=0.20, pwc_m=0.12,
        funding=0.45, supplemental=0.30, rich=1,
    ),
    "functional": dict(
        algos=(2, 5), eqs=(2, 7), cites=(6, 40),
        checklist=0.35, mandatory=0.15, awards=0.08, corresp=0.30,
        zenodo=0.22, github=0.65, pwc_g=0.35, pwc_d=0.25, pwc_m=0.18,
        funding=0.50, supplemental=0.40, rich=1,
    ),
    "reusable": dict(
        algos=(3, 8), eqs=(4, 10), cites=(15, 60),
        checklist=0.55, mandatory=0.30, awards=0.18, corresp=0.45,
        zenodo=0.35, github=0.85, pwc_g=0.55, pwc_d=0.40, pwc_m=0.30,
        funding=0.60, supplemental=0.55, rich=2,
    ),
    "reproduced_reusable": dict(
        algos=(5, 11), eqs=(5, 13), cites=(30, 110),
        checklist=0.75, mandatory=0.45, awards=0.30, corresp=0.65,
        zenodo=0.55, github=0.92, pwc_g=0.70, pwc_d=0.55, pwc_m=0.45,
        funding=0.70, supplemental=0.70, rich=2,
    ),
    "reproduced_only": dict(
        algos=(2, 6), eqs=(2, 8), cites=(10, 50),
        checklist=0.30, mandatory=0.12, awards=0.10, corresp=0.35,
        zenodo=0.20, github=0.45, pwc_g=0.25, pwc_d=0.20, pwc_m=0.15,
        funding=0.50, supplemental=0.35, rich=1,
    ),
}

VENUES = [
    "Journal of Systems Research",
    "Conference on Empirical Methods",
    "Workshop on Open Science",
    "Transactions on Computation",
    "Symposium on Data Practice",
]

PLAIN_WORDS = (
    "the model uses a small set of rules to pick the next step and it "
    "works well on most tasks we tried so far"
).split()
MID_WORDS = (
    "our approach combines gradient updates with structured sampling to "
    "balance coverage against runtime cost across heterogeneous corpora"
).split()
DENSE_WORDS = (
    "the proposed methodology systematically interleaves combinatorial "
    "regularization with asymptotically calibrated estimators thereby "
    "guaranteeing reproducibility characteristics under distributional "
    "perturbations of considerable magnitude"
).split()

TOPIC_WORDS = (
    "sampling caching pruning ranking hashing batching routing scaling "
    "encoding decoding indexing merging folding tracing probing scoring"
).split()


def sentence(rng, rich, topic_bias=0.3):
    pools = [PLAIN_WORDS, MID_WORDS, DENSE_WORDS]
    pool = pools[rich]
    length = rng.randint(8, 14) + 4 * rich
    words = []
    for _ in range(length):
        if rng.random() < topic_bias:
            words.append(rng.choice(TOPIC_WORDS))
        else:
            words.append(rng.choice(pool))
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def paragraph(rng, rich, n_sentences):
    return " ".join(sentence(rng, rich) for _ in range(n_sentences))


def make_text(rng, profile, n_algos, n_eqs, zenodo, github, decoy_refs):
    rich = profile["rich"]
    lines = [paragraph(rng, rich, 3)]
    lines.append("1 Introduction")
    lines.append(paragraph(rng, rich, rng.randint(3, 5)))
    lines.append("2 Method")
    lines.append(paragraph(rng, rich, 2))
    for k in range(1, n_algos + 1):
        lines.append(
            f"Algorithm {k} {rng.choice(['summarizes', 'details', 'lists'])} "
            f"the {rng.choice(TOPIC_WORDS)} procedure."
        )
    for j in range(1, n_eqs + 1):
        a, b, c = rng.sample(TOPIC_WORDS, 3)
        lines.append(f"{a}_{j} = {b}_{j} + {c}_{j}   ({j})")
    lines.append("3 Results")
    lines.append(paragraph(rng, rich, rng.randint(2, 4)))
    if github:
        lines.append(
            f"Our implementation is public at https://github.com/synlab/"
            f"{rng.choice(TOPIC_WORDS)}-{rng.randint(100, 999)}."
        )
    if zenodo:
        lines.append(
            f"The artifact bundle is archived at zenodo.org/record/{rng.randint(10000, 99999)}."
        )
    lines.append("References")
    for r in range(1, rng.randint(4, 9)):
        entry = f"[{r}] A. Author and B. Author, on {rng.choice(TOPIC_WORDS)}, {rng.randint(2005, 2023)}."
        if decoy_refs and r == 2:
            entry = f"[{r}] Tooling note, github.com/elsewhere/tool, {rng.randint(2015, 2023)}."
        lines.append(entry)
    return "\n".join(lines) + "\n"


def author_index(badges):
    if "Artifacts Evaluated and Reusable" in badges:
        return 2
    if "Artifacts Available" in badges or "Artifacts Evaluated and Functional" in badges:
        return 1
    return 0


def external_index(badges):
    reproduced = "Results Reproduced" in badges
    reusable = "Artifacts Evaluated and Reusable" in badges
    if reproduced and reusable:
        return 3
    if reproduced:
        return 2
    if badges:
        return 1
    return 0


def make_records(rng):
    records = []
    serial = 0
    for count, badges, profile_name in STRATA:
        profile = PROFILES[profile_name]
        for _ in range(count):
            serial += 1
            rid = f"syn-{serial:04d}"
            flag = lambda p: rng.random() < profile[p]
            n_algos = rng.randint(*profile["algos"])
            n_eqs = rng.randint(*profile["eqs"])
            zenodo = flag("zenodo")
            github = flag("github")
            decoy_refs = profile_name == "unbadged" and rng.random() < 0.3
            records.append(
                {
                    "id": rid,
                    "title": f"{rng.choice(TOPIC_WORDS).capitalize()} under "
                    f"{rng.choice(TOPIC_WORDS)} constraints {serial}",
                    "year": 2016 + serial % 8,
                    "venue": rng.choice(VENUES),
                    "full_text": make_text(
                        rng, profile, n_algos, n_eqs, zenodo, github, decoy_refs
                    ),
                    "badges": badges,
                    "citations": rng.randint(*profile["cites"]),
                    "checklist": flag("checklist"),
                    "mandatory_artifacts": flag("mandatory"),
                    "awards": flag("awards"),
                    "correspondence": flag("corresp"),
                    "funding": flag("funding"),
                    "supplemental": flag("supplemental"),
                    "pwc_github": flag("pwc_g"),
                    "pwc_datasets": flag("pwc_d"),
                    "pwc_methods": flag("pwc_m"),
                }
            )
    rng.shuffle(records)
    return records


def make_embeddings(rng, records):
    lines = [f"dim={DIM}"]
    for r in records:
        a_idx = author_index(r["badges"])
        e_idx = external_index(r["badges"])
        center = [0.0] * DIM
        center[a_idx] += 2.2
        center[3 + e_idx] += 2.2
        center[7 + (a_idx * 4 + e_idx) % 9] += 0.8
        for _ in range(rng.randint(1, 3)):
            chunk = [c + rng.gauss(0.0, 0.35) for c in center]
            values = ", ".join(f"{v:.6f}" for v in chunk)
            lines.append(f"{r['id']} | {values}")
    return "\n".join(lines) + "\n"


CONF = """\
# evaluation over the bundled synthetic corpus (paths relative to repo root)
corpus = fixtures/synthetic_corpus.jsonl
embeddings = fixtures/synthetic_embeddings.txt
embedding_dim = 16
framework = both
model = random_forest
features = X
seed = 42
output_dir = out
test_fraction = 0.2
n_bins = 10
forest_trees = 100
"""


def main():
    rng = random.Random(SEED)
    records = make_records(rng)
    FIXTURES.mkdir(exist_ok=True)
    corpus = "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)
    (FIXTURES / "synthetic_corpus.jsonl").write_text(corpus, encoding="utf-8")
    embeddings = make_embeddings(rng, records)
    (FIXTURES / "synthetic_embeddings.txt").write_text(embeddings, encoding="utf-8")
    (FIXTURES / "evaluate.conf").write_text(CONF, encoding="utf-8")
    print(f"wrote {len(records)} records, embeddings, and evaluate.conf under {FIXTURES}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Copyright 2026 The termmap Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes a small synthetic corpus of titles and abstracts in three fields."""

import random
import sys

FIELDS = {
    "bibliometrics": {
        "terms": ["citation analysis", "impact factor", "journal", "citation", "h index",
                  "research evaluation", "bibliometric indicator", "co-citation analysis",
                  "scientific collaboration", "publication output", "peer review",
                  "citation impact", "research performance", "self citation",
                  "science mapping", "author", "university ranking", "citation window",
                  "journal ranking", "funding agency", "patent citation", "open access"],
        "citations": (15, 60),
        "subset": 0.55,
    },
    "library": {
        "terms": ["academic library", "librarian", "student", "information literacy",
                  "library service", "digital library", "reference service", "library user",
                  "collection development", "public library", "library instruction",
                  "catalog", "library staff", "undergraduate student", "user satisfaction",
                  "library website", "electronic resource", "research support", "book loan",
                  "library budget"],
        "citations": (2, 20),
        "subset": 0.1,
    },
    "retrieval": {
        "terms": ["search engine", "query", "document", "test collection", "retrieval model",
                  "relevance feedback", "query expansion", "information retrieval", "ranking function",
                  "web page", "retrieval performance", "user query", "text classification",
                  "precision", "language model", "search result", "click model",
                  "snippet", "query log", "evaluation metric", "index structure"],
        "citations": (1, 25),
        "subset": 0.05,
    },
}

# Terms shared by neighbouring fields. Together with the fields they form a
# ring: bibliometrics, library, retrieval, back to bibliometrics.
BRIDGES = [
    ("bibliometrics", ["institutional repository", "scholarly communication",
                       "journal subscription"]),
    ("library", ["information seeking", "search behavior", "user study"]),
    ("retrieval", ["citation recommendation", "scholarly search", "citation context"]),
]

RING = []  # (term, field)
for name, shared in BRIDGES:
    RING += [(t, name) for t in FIELDS[name]["terms"]]
    RING += [(t, name) for t in shared]

GENERAL = ["paper", "new method", "interesting result", "analysis", "study", "approach",
           "problem", "result", "data"]

TITLES = [
    "A study of {a} and {b}",
    "{A} in the context of {b}",
    "Measuring {a} with {b}",
    "On the relation between {a} and {b}",
    "{A}: evidence from {b}",
]

SENTENCES = [
    "This {g} examines the role of {a} in {b}.",
    "We propose a {g} for {a} based on {b}.",
    "The {g} shows that {a} is strongly related to {b}.",
    "Our {g} of {a} reveals large differences in {b}.",
    "We compare {a} and {b} using {c}.",
    "In addition, {a} was highly correlated with {b}.",
    "Previous work on {a} has largely ignored {b}.",
    "Finally, we discuss implications of {a} for {b} and {c}.",
    "The {g} suggests that {a} depends on {b}.",
]


def plural(term):
    head = term.split()[-1]
    if head.endswith("sis"):
        return term[:-2] + "es"
    if head.endswith("y") and head[-2] not in "aeiou":
        return term[:-1] + "ies"
    if head.endswith(("s", "x", "h")):
        return term + "es"
    return term + "s"


def near(rng, center, spread):
    """A ring position drawn around center."""
    return int(round(rng.gauss(center, spread))) % len(RING)


def draw(rng, center, k):
    picked = []
    while len(picked) < k:
        term = RING[near(rng, center, 4.0)][0]
        if term not in picked:
            picked.append(term)
    return picked


def main():
    rng = random.Random(2011)
    out = sys.stdout
    out.write("id\ttitle\tabstract\tcitations\tleiden\n")
    for doc in range(200):
        center = rng.randrange(len(RING))
        field = FIELDS[RING[center][1]]
        a, b = draw(rng, center, 2)
        title = rng.choice(TITLES).format(a=a, b=b, A=a[0].upper() + a[1:])
        sentences = []
        for _ in range(rng.randint(4, 6)):
            a, b, c = draw(rng, center, 3)
            if rng.random() < 0.05:
                c = rng.choice(RING)[0]
            if rng.random() < 0.3:
                b = plural(b)
            text = rng.choice(SENTENCES).format(a=a, b=b, c=c, g=rng.choice(GENERAL))
            sentences.append(text[0].upper() + text[1:])
        lo, hi = field["citations"]
        citations = rng.randint(lo, hi)
        leiden = 1 if rng.random() < field["subset"] else 0
        out.write(f"D{doc + 1:03d}\t{title}\t{' '.join(sentences)}\t{citations}\t{leiden}\n")


if __name__ == "__main__":
    main()

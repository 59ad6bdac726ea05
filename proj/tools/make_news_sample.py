#!/usr/bin/env python3
# Copyright 2026 The slicekit Authors.
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
"""Generates data/news_sample.jsonl: synthetic news articles with reference
summaries. Each summary condenses a run of two or three consecutive article
sentences starting at a random offset, so summaries cover early, middle and
late parts of their articles.

Usage: make_news_sample.py [--n 200] [--seed 20261019] [--out data/news_sample.jsonl]
"""

import argparse
import json
import random

CITIES = ["Lisbon", "Nairobi", "Osaka", "Denver", "Hamburg", "Quito", "Perth", "Tunis", "Krakow", "Halifax",
          "Bergen", "Manila", "Austin", "Turin", "Accra", "Leeds", "Cusco", "Dakar", "Sendai", "Tampere"]
PEOPLE = ["Maria Okafor", "Daniel Brandt", "Aiko Tanaka", "Samuel Reyes", "Fatima Haddad", "Lena Novak",
          "Omar Castillo", "Grace Mensah", "Peter Lindqvist", "Nadia Rahman", "Tomas Ferreira", "Hana Sato",
          "Julian Weber", "Amara Diallo", "Sofia Marin", "Ravi Iyer"]
ROLES = ["the mayor", "a council member", "the project director", "a union spokesperson", "the chief engineer",
         "a local historian", "the school principal", "a hospital administrator", "the harbour master",
         "a regional economist"]
TOPICS = {
    "transit": ["tram line", "bus depot", "rail bridge", "cycle network", "metro extension", "ferry terminal"],
    "health": ["children's clinic", "vaccination drive", "emergency ward", "mental health service",
               "rural pharmacy", "blood bank"],
    "energy": ["solar farm", "wind park", "heat pump scheme", "grid upgrade", "battery plant", "hydro dam"],
    "schools": ["science wing", "reading program", "school canteen", "teacher training plan", "new campus",
                "sports hall"],
    "culture": ["city museum", "music festival", "public library", "film archive", "street art trail",
                "open air theatre"],
    "housing": ["apartment block", "rent support fund", "housing cooperative", "harbour district plan",
                "student residence", "renovation grant"],
}
VERBS_OPEN = ["opened", "unveiled", "approved", "completed", "launched", "announced"]
ADJ = ["long awaited", "controversial", "ambitious", "modest", "expensive", "popular", "delayed", "innovative"]
MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August", "September", "October",
          "November", "December"]

FILLER = [
    "Officials said the weather had been unusually {wx} for the season.",
    "A nearby bakery reported {n} more customers than on a typical {day}.",
    "Traffic on the ring road moved slowly during the {part} rush hour.",
    "The regional football club also confirmed its squad for the {ord} round of the cup.",
    "Volunteers handed out leaflets about the upcoming {event} at the central square.",
    "Several streets near the old market were closed for routine {work}.",
    "The local newspaper printed a letter from a reader complaining about {gripe}.",
    "Residents were reminded that recycling collection moves to {day} next week.",
    "A photography exhibition about coastal villages drew a steady crowd on {day}.",
    "Police said a lost dog had been returned to its owner after {n} hours.",
    "The botanical garden extended its opening hours until {hour} in the evening.",
    "Students from the technical college presented robots at a small fair on {day}.",
    "Shop owners in the arcade said sales of umbrellas had jumped by {n} percent.",
    "The tourist office counted {n} visitors at the lighthouse over the weekend.",
    "An amateur choir rehearsed in the cathedral ahead of a concert in {month}.",
    "The swimming pool reopened after repairs to its {part} heating system.",
]
WX = ["warm", "cold", "wet", "windy", "dry", "foggy"]
DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
PARTS = ["morning", "evening", "northern", "southern", "main"]
ORDS = ["second", "third", "fourth", "final"]
EVENTS = ["marathon", "flea market", "book fair", "harvest festival", "charity run", "night market"]
WORKS = ["resurfacing", "pipe repairs", "tree pruning", "cable work", "inspections"]
GRIPES = ["noisy scooters", "parking fees", "late buses", "broken streetlights", "pigeons", "litter"]


def fill(rng, template):
    return template.format(
        wx=rng.choice(WX), n=rng.randint(12, 480), day=rng.choice(DAYS), part=rng.choice(PARTS),
        ord=rng.choice(ORDS), event=rng.choice(EVENTS), work=rng.choice(WORKS), gripe=rng.choice(GRIPES),
        hour=rng.randint(8, 11), month=rng.choice(MONTHS))


def core_facts(rng, topic, thing, city):
    """Sentences about the story proper, as (full, condensed) pairs."""
    person, other = rng.sample(PEOPLE, 2)
    role = rng.choice(ROLES)
    verb = rng.choice(VERBS_OPEN)
    adj = rng.choice(ADJ)
    cost = rng.randint(3, 95)
    jobs = rng.randint(20, 900)
    month = rng.choice(MONTHS)
    year = rng.choice([2027, 2028, 2029, 2030])
    pct = rng.randint(5, 60)
    return [
        (f"The city of {city} {verb} the {adj} {thing} on {rng.choice(DAYS)}, ending months of debate about {topic}.",
         f"{city} {verb} the {thing} after months of debate."),
        (f"{person}, {role}, said the {thing} would cost about {cost} million euros and create {jobs} jobs.",
         f"{person} said it costs {cost} million euros and brings {jobs} jobs."),
        (f"Critics led by {other} argued that the money should have gone to older neighbourhoods instead.",
         f"{other} argued the money belonged in older neighbourhoods."),
        (f"Planners expect the {thing} to reach full capacity by {month} {year}, roughly {pct} percent later than first promised.",
         f"Full capacity is expected by {month} {year}, {pct} percent later than promised."),
        (f"A survey of {jobs * 3} residents found that most supported the {thing} but worried about rising {topic} costs.",
         f"Most of {jobs * 3} surveyed residents backed the {thing} despite cost worries."),
    ]


def article(rng, idx):
    city = rng.choice(CITIES)
    topic = rng.choice(sorted(TOPICS))
    thing = rng.choice(TOPICS[topic])
    facts = core_facts(rng, topic, thing, city)
    n_sent = rng.randint(9, 15)
    fillers = [fill(rng, t) for t in rng.sample(FILLER, n_sent)]
    sentences = list(fillers)
    # The story sits in a block of consecutive sentences somewhere in the article.
    k = rng.choice([2, 3])
    start = rng.randint(0, n_sent - k)
    chosen = facts[:k]
    for j, (full, _) in enumerate(chosen):
        sentences[start + j] = full
    summary = " ".join(short for _, short in chosen)
    return {
        "id": f"news-{idx:04d}",
        "article": " ".join(sentences),
        "summary": summary,
        "topic": topic,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20261019)
    ap.add_argument("--out", default="data/news_sample.jsonl")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        for i in range(args.n):
            f.write(json.dumps(article(rng, i), ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()

# Copyright 2026 The zebra-qa Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the JSONL fixtures in this directory.

Outputs are committed; rerunning must leave them unchanged.
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent


def dump_jsonl(name, rows):
    with open(HERE / name, "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def dump_json(name, obj):
    with open(HERE / name, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2, ensure_ascii=False)
        f.write("\n")


# (id, question, choices, gold, label the mock prefers)
EVAL = [
    ("e01", "Where would you keep fresh milk so it does not spoil?",
     ["refrigerator", "bookshelf", "mailbox", "garage", "attic"], "A", "A"),
    ("e02", "What do people usually use to cut paper?",
     ["spoon", "scissors", "pillow", "kettle", "rope"], "B", "B"),
    ("e03", "What happens to ice left in the sun?",
     ["it grows", "it sings", "it melts", "it hardens", "it rusts"], "C", "C"),
    ("e04", "Where does a pilot usually work?",
     ["submarine", "bakery", "library", "cockpit", "garden"], "D", "D"),
    ("e05", "What would you wear on your feet to go hiking?",
     ["gloves", "scarf", "hat", "belt", "boots"], "E", "E"),
    ("e06", "Which tool is best for driving a nail into wood?",
     ["hammer", "sponge", "feather", "napkin", "straw"], "A", "A"),
    ("e07", "Where do bees store their honey?",
     ["nest of twigs", "hive", "burrow", "shell", "puddle"], "B", "B"),
    ("e08", "What is a candle mostly made of?",
     ["glass", "steel", "wax", "paper", "stone"], "C", "A"),
    ("e09", "To open a jar with a stuck lid, what helps?",
     ["run the lid under hot water", "put the jar in the freezer"], "A", "B"),
    ("e10", "How can you dry wet hands quickly?",
     ["wave them near a candle", "rub them with a towel"], "B", "A"),
]


def mock_logprobs(n, preferred):
    labels = [chr(ord("A") + i) for i in range(n)]
    out = {}
    for i, l in enumerate(labels):
        # Mix bare and space-prefixed tokens as real top-logprob lists do.
        tok = l if i % 2 == 0 else " " + l
        out[tok] = -0.05 if l == preferred else -3.0 - 0.25 * i
    return out


def eval_fixture():
    rows, rules = [], []
    for qid, q, choices, gold, pref in EVAL:
        rows.append({"id": qid, "question": q, "choices": choices, "answer": gold,
                     "explanations": [], "topic": None})
        rules.append({"contains": q, "text": "", "top_logprobs": mock_logprobs(len(choices), pref)})
    for r in rows:
        del r["topic"]
    dump_jsonl("eval10.jsonl", rows)
    dump_json("eval10_mock.json", {"fallback_seed": 7, "model_name": "mock-eval",
                                   "supports_logprobs": True, "rules": rules})


KB = [
    ("k01", "Where is the best place to store ice cream?",
     ["oven", "freezer", "drawer"], "B", "food",
     ["A freezer keeps ice cream frozen.", "An oven would melt it."]),
    ("k02", "What keeps vegetables crisp for a week?",
     ["a sunny window", "a cold fridge"], "B", "food",
     ["Cold slows wilting of vegetables."]),
    ("k03", "Which object can cut thread?",
     ["scissors", "marble", "balloon"], "A", "tools",
     ["Scissors have sharp blades that cut thread."]),
    ("k04", "What do you use to tighten a screw?",
     ["screwdriver", "teaspoon", "candle"], "A", "tools",
     ["A screwdriver turns screws.", "A teaspoon is too soft and round."]),
    ("k05", "What makes snow turn into water?",
     ["warmth", "darkness", "silence"], "A", "weather",
     ["Warmth melts snow into water."]),
    ("k06", "What should you carry when rain is forecast?",
     ["umbrella", "sunglasses", "kite"], "A", "weather",
     ["An umbrella keeps rain off you."]),
]


def kb_fixture():
    rows = []
    for kid, q, choices, gold, topic, expl in KB:
        rows.append({"id": kid, "question": q, "choices": choices, "answer": gold,
                     "explanations": expl, "topic": topic})
    dump_jsonl("kb_small.jsonl", rows)

    rng = random.Random(11)
    vec = lambda: [round(rng.uniform(-1, 1), 6) for _ in range(6)]
    dump_jsonl("kb_small.vectors.jsonl", [{"id": r["id"], "vector": vec()} for r in rows])
    dump_jsonl("eval10.query_vectors.jsonl", [{"id": e[0], "vector": vec()} for e in EVAL])


def kb_build_fixture():
    # Silver generation input: the KB questions without explanations.
    rows, rules = [], []
    for kid, q, choices, gold, topic, _ in KB:
        rows.append({"id": kid, "question": q, "choices": choices, "answer": gold,
                     "explanations": [], "topic": topic})
        lines = []
        for i, c in enumerate(choices):
            l = chr(ord("A") + i)
            verdict = "fits" if l == gold else "does not fit"
            lines.append(f"{l}. The choice {c} {verdict} the question.")
        rules.append({"contains": q, "text": "\n".join(lines)})
    dump_jsonl("kb_build_dataset.jsonl", rows)
    dump_json("kb_build_mock.json", {"fallback_seed": 3, "model_name": "mock-silver",
                                     "rules": rules})


def separable_fixture():
    """20 examples, two topics, dim 8.

    Dim 0 carries the topic with a small margin; dim 1 is a large nuisance
    term with random sign, so raw dot-product neighbours ignore topics.
    """
    rng = random.Random(2024)
    rows, vecs = [], []
    for i in range(20):
        topic = "animals" if i < 10 else "weather"
        sign = 1.0 if topic == "animals" else -1.0
        v = [0.0] * 8
        v[0] = sign * (0.5 + 0.1 * rng.random())
        v[1] = rng.choice([-1.0, 1.0]) * (2.0 + rng.random())
        for d in range(2, 8):
            v[d] = rng.gauss(0.0, 0.15)
        eid = f"s{i:02d}"
        noun = ["owl", "fox", "cat", "eel", "ant", "elk", "yak", "bee", "cod", "emu",
                "fog", "hail", "sleet", "gale", "frost", "dew", "mist", "storm", "drizzle",
                "thaw"][i]
        rows.append({
            "id": eid,
            "question": f"Which statement about the {noun} is most accurate?",
            "choices": [f"the {noun} is common", f"the {noun} is imaginary",
                        f"the {noun} is made of glass"],
            "answer": "A",
            "explanations": [f"The {noun} is an ordinary part of the world."],
            "topic": topic,
        })
        vecs.append({"id": eid, "vector": [round(x, 6) for x in v]})
    dump_jsonl("separable.jsonl", rows)
    dump_jsonl("separable.vectors.jsonl", vecs)


if __name__ == "__main__":
    eval_fixture()
    kb_fixture()
    kb_build_fixture()
    separable_fixture()

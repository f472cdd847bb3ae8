"""Bundled synthetic corpora and their generators.

``synthetic_sentences.txt``
    2000 sentences where *cat*/*dog* share pet contexts and *bolt*/*nut*
    share hardware contexts. Used to sanity-check the trainer.
``pulse_comments.jsonl``
    60 survey comments planted from three topics (``feedback``,
    ``worklife``, ``office``); each record carries its ``topic`` label.
``pulse_background.txt`` / ``pulse_background.vec``
    A workplace-language corpus and the skip-gram vectors trained on it
    with :data:`BACKGROUND_CONFIG`; they stand in for a large pretrained model.

Regenerate everything with ``python -m pulsetags.datasets [outdir]``.
"""
from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .corpus import Corpus, ingest, preprocess
from .embedding import EmbeddingModel, TrainingConfig, load_word2vec_text, save_word2vec_text, train

SENTENCES_FILE = "synthetic_sentences.txt"
COMMENTS_FILE = "pulse_comments.jsonl"
BACKGROUND_FILE = "pulse_background.txt"
BACKGROUND_VECTORS = "pulse_background.vec"

BACKGROUND_CONFIG = TrainingConfig(mode="skipgram", dim=50, window=5, negative=5, epochs=5,
                                   initial_lr=0.025, min_count=3, subsample_t=1e-3, seed=42)


def data_path(name: str) -> Path:
    return Path(str(resources.files("pulsetags.data").joinpath(name)))


# ---------------------------------------------------------------------------
# pets vs hardware

_PET_SUBJECT = ["cat", "dog"]
_PET_VERBS = ["chased", "licked", "sniffed", "played with", "slept beside", "ate", "hid under"]
_PET_OBJECTS = ["ball", "bowl", "blanket", "treat", "leash", "toy", "basket", "bone", "collar"]
_PET_EXTRA = ["happily", "after dinner", "near the vet", "with its fur wet", "while the puppy barked",
              "in the garden", "beside the kitten"]

_HW_SUBJECT = ["bolt", "nut"]
_HW_VERBS = ["was tightened with", "was threaded onto", "rusted inside", "was torqued by",
             "was fastened to", "was stored in"]
_HW_OBJECTS = ["wrench", "bracket", "washer", "spanner", "steel frame", "toolbox", "clamp", "hinge"]
_HW_EXTRA = ["firmly", "at the workshop", "using a socket", "with thread locker", "on the assembly line",
             "before welding"]

_SHARED = ["old", "new", "small", "big", "yesterday", "again", "quickly", "slowly"]


def pet_hardware_sentences(n: int = 2000, seed: int = 42) -> list[str]:
    rng = np.random.default_rng(seed)
    pick = lambda xs: xs[rng.integers(len(xs))]  # noqa: E731
    out = []
    for i in range(n):
        if i % 2 == 0:
            subj, verbs, objs, extra = _PET_SUBJECT, _PET_VERBS, _PET_OBJECTS, _PET_EXTRA
        else:
            subj, verbs, objs, extra = _HW_SUBJECT, _HW_VERBS, _HW_OBJECTS, _HW_EXTRA
        words = [f"the {pick(_SHARED)} {pick(subj)}", pick(verbs), f"the {pick(objs)}"]
        if rng.random() < 0.7:
            words.append(pick(extra))
        out.append(" ".join(words))
    return out


# ---------------------------------------------------------------------------
# pulse survey topics

_TOPICS = {
    "feedback": {
        "templates": [
            "My manager rarely gives {adj} feedback on my {work}.",
            "I would like more {adj} feedback from my manager about {work}.",
            "Feedback during the {review} is not {adj} enough.",
            "We need {adj} feedback and {review} conversations with the manager.",
            "The manager should share {adj} feedback after every {review}.",
            "Getting {adj} feedback on {work} from my supervisor would help me grow.",
        ],
        "adj": ["regular", "constructive", "timely", "honest", "useful", "clear"],
        "work": ["performance", "projects", "deliverables", "targets", "progress"],
        "review": ["appraisal", "performance review", "one-on-one", "quarterly review"],
    },
    "worklife": {
        "templates": [
            "Work-life balance is hard with {hours} and {pressure}.",
            "I want better work-life balance so I can spend time with {family}.",
            "{hours} are ruining my work-life balance.",
            "Flexible {flex} would improve work-life balance for {family}.",
            "My work-life balance suffers because of {pressure}.",
            "Please support work-life balance with {flex} and fewer {hours}.",
        ],
        "hours": ["long hours", "weekend shifts", "late night calls", "constant overtime", "extra shifts"],
        "pressure": ["stress", "tight deadlines", "burnout", "exhaustion", "heavy workload"],
        "family": ["family", "kids", "children", "parents", "spouse"],
        "flex": ["schedules", "leave", "remote days", "timings", "holidays"],
    },
    "office": {
        "templates": [
            "The office environment makes conversation among team members {mood}.",
            "Our office {space} is {state} and the team members {act}.",
            "Team members {act} in the {state} office environment.",
            "The {space} in the office environment feels {state}.",
            "Conversation among team members in the office {space} is {mood}.",
            "A {state} office {space} helps team members {act}.",
        ],
        "mood": ["friendly", "pleasant", "lively", "cheerful", "warm"],
        "space": ["cafeteria", "workspace", "lounge", "desks", "meeting rooms"],
        "state": ["clean", "noisy", "crowded", "bright", "spacious", "cozy"],
        "act": ["chat", "collaborate", "socialize", "celebrate", "bond"],
    },
}

TOPIC_SIZES = {"feedback": 12, "worklife": 24, "office": 24}


def _fill(template: str, slots: dict, rng) -> str:
    out = template
    while "{" in out:
        key = out[out.index("{") + 1:out.index("}")]
        choices = slots[key]
        value = choices[rng.integers(len(choices))]
        out = out.replace("{" + key + "}", value, 1)
    return out[0].upper() + out[1:]


def pulse_comments(seed: int = 7) -> list[dict]:
    """60 labelled comments, topics interleaved, ids ``c01``..``c60``."""
    rng = np.random.default_rng(seed)
    labels = [t for t, n in TOPIC_SIZES.items() for _ in range(n)]
    labels = [labels[i] for i in rng.permutation(len(labels))]
    records = []
    for i, topic in enumerate(labels, 1):
        topic_def = _TOPICS[topic]
        tmpl = topic_def["templates"][rng.integers(len(topic_def["templates"]))]
        records.append({"id": f"c{i:02d}", "text": _fill(tmpl, topic_def, rng), "topic": topic})
    return records


_GENERIC = ["the company", "employees", "every week", "this year", "our department", "most people",
            "in general", "honestly", "lately", "at work"]


def pulse_background(n: int = 3000, seed: int = 11) -> list[str]:
    """Workplace sentences from the same topic vocabularies plus generic filler."""
    rng = np.random.default_rng(seed)
    topics = list(_TOPICS)
    out = []
    for _ in range(n):
        topic_def = _TOPICS[topics[rng.integers(len(topics))]]
        text = _fill(topic_def["templates"][rng.integers(len(topic_def["templates"]))], topic_def, rng)
        if rng.random() < 0.5:
            text = f"{_GENERIC[rng.integers(len(_GENERIC))]} {text[0].lower()}{text[1:]}"
        out.append(text)
    return out


# ---------------------------------------------------------------------------
# loaders

def load_sentences() -> list[list[str]]:
    lines = data_path(SENTENCES_FILE).read_text(encoding="utf-8").splitlines()
    return [preprocess(line) for line in lines]


def load_pulse_corpus() -> Corpus:
    return ingest(data_path(COMMENTS_FILE), "jsonl")


def planted_labels() -> dict[str, str]:
    with data_path(COMMENTS_FILE).open(encoding="utf-8") as fh:
        return {r["id"]: r["topic"] for r in map(json.loads, fh) if r}


def load_background_vectors() -> EmbeddingModel:
    return load_word2vec_text(data_path(BACKGROUND_VECTORS))


def train_background_vectors() -> EmbeddingModel:
    lines = data_path(BACKGROUND_FILE).read_text(encoding="utf-8").splitlines()
    return train([preprocess(line) for line in lines], BACKGROUND_CONFIG, deterministic=True)


def regenerate(outdir) -> None:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / SENTENCES_FILE).write_text("\n".join(pet_hardware_sentences()) + "\n", encoding="utf-8")
    with (outdir / COMMENTS_FILE).open("w", encoding="utf-8", newline="\n") as fh:
        for rec in pulse_comments():
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    background = pulse_background()
    (outdir / BACKGROUND_FILE).write_text("\n".join(background) + "\n", encoding="utf-8")
    model = train([preprocess(s) for s in background], BACKGROUND_CONFIG, deterministic=True)
    save_word2vec_text(model, outdir / BACKGROUND_VECTORS)


if __name__ == "__main__":
    regenerate(sys.argv[1] if len(sys.argv) > 1 else data_path(""))

import json
import random
from pathlib import Path

import pytest

from procmine.docmodel import DocNode, DocTree, Kind, parse_sdjson

REPO_ROOT = Path(__file__).resolve().parents[1]
CORPUS_DIR = REPO_ROOT / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


# ---------------------------------------------------------------------------
# Random document generation (valid by construction: generated documents go
# through the sdjson parser, so every invariant the parser enforces holds).

_WORDS = ("server", "network", "adapter", "console", "service", "instance",
          "cluster", "backup", "storage", "user", "password", "address")
_VERBS = ("Click", "Type", "Select", "Open", "Restart", "Verify", "Check")


def _sentence(rng: random.Random) -> str:
    verb = rng.choice(_VERBS)
    noun = rng.choice(_WORDS)
    extra = rng.choice(_WORDS)
    return f"{verb} the {noun} on the {extra}."


def _paragraph(rng: random.Random) -> dict:
    text = " ".join(_sentence(rng) for _ in range(rng.randint(1, 3)))
    return {"type": "paragraph", "text": text}


def _list_items(rng: random.Random, depth: int) -> list[dict]:
    items = []
    for _ in range(rng.randint(1, 4)):
        item = {"text": _sentence(rng)}
        if rng.random() < 0.2:
            item["image"] = True
        if depth < 2 and rng.random() < 0.3:
            item["sublist"] = {"ordered": rng.random() < 0.5,
                               "items": _list_items(rng, depth + 1)}
        items.append(item)
    return items


def random_sdjson(rng: random.Random, max_elements: int = 12) -> dict:
    elements = []
    level = 0
    for _ in range(rng.randint(0, max_elements)):
        roll = rng.random()
        if roll < 0.35:
            level = max(1, min(4, level + rng.choice((-1, 0, 1, 1))))
            elements.append({"type": "heading", "level": level,
                             "text": f"{rng.choice(_WORDS).title()} section"})
        elif roll < 0.7:
            elements.append(_paragraph(rng))
        else:
            elements.append({"type": "list", "ordered": rng.random() < 0.5,
                             "items": _list_items(rng, 0)})
    return {"version": "sdjson/1", "title": "Generated document",
            "elements": elements}


def random_tree(rng: random.Random, max_elements: int = 12) -> DocTree:
    return parse_sdjson(json.dumps(random_sdjson(rng, max_elements)))


def make_tree(nodes: list[DocNode], root: int = 0,
              source: str = "test") -> DocTree:
    return DocTree(nodes={n.id: n for n in nodes}, root=root, source_name=source)

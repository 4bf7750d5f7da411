#!/usr/bin/env python3
"""Regenerate the bundled actionable-statement corpus
(corpus/actionable_sentences.csv): 250 labeled non-imperative sentences,
deterministic for a fixed seed. The first 200 rows are the training split,
the last 50 the held-out split.

Positives describe an action someone performs (present, active, positive);
negatives are status reports, descriptions, and past/passive/negated
statements.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "corpus" / "actionable_sentences.csv"

ROLES = ["user", "administrator", "operator", "engineer", "technician"]
ACTION_VERBS = ["installs", "restarts", "configures", "enters", "opens",
                "selects", "types", "verifies", "checks", "enables",
                "mounts", "copies", "updates", "launches", "reviews"]
OBJECTS = ["package", "service", "adapter", "password", "console", "command",
           "certificate", "interface", "cluster", "volume", "firmware",
           "profile", "gateway", "snapshot", "agent"]
PLACES = ["on the server", "at the prompt", "in the console",
          "from the dashboard", "on the target node", "in the settings panel",
          "before the rollout", "during the maintenance window",
          "under the admin account", "on the standby host"]

STATE_NOUNS = ["report", "outage", "baseline", "incident", "backlog",
               "ticket", "window", "document", "release", "summary",
               "metric", "alert", "defect", "archive", "schedule"]
PARTICIPLES = ["generated", "delayed", "archived", "closed", "assigned",
               "collected", "completed", "caused", "reviewed", "escalated"]
AGENTS = ["scheduler", "support team", "monitoring agent", "review board",
          "night shift", "vendor", "upstream job", "automation runner"]
TIMES = ["yesterday", "overnight", "last week", "during the outage",
         "before the freeze", "in the previous cycle"]
STATIVES = ["contains", "describes", "represents", "summarizes", "lists",
            "covers"]


def positive(rng: random.Random) -> str:
    return (f"The {rng.choice(ROLES)} {rng.choice(ACTION_VERBS)} the "
            f"{rng.choice(OBJECTS)} {rng.choice(PLACES)}.")


def negative(rng: random.Random) -> str:
    # half the negatives stay present/active/positive so the classifier
    # cannot lean on the linguistic tail alone
    style = rng.randrange(6)
    if style == 0:  # past passive
        return (f"The {rng.choice(STATE_NOUNS)} was {rng.choice(PARTICIPLES)} "
                f"by the {rng.choice(AGENTS)} {rng.choice(TIMES)}.")
    if style == 1:  # negated availability
        return (f"The {rng.choice(OBJECTS)} is not available "
                f"{rng.choice(TIMES)}.")
    if style == 2:  # stative description
        return (f"The {rng.choice(STATE_NOUNS)} {rng.choice(STATIVES)} the "
                f"{rng.choice(STATE_NOUNS)} for the {rng.choice(OBJECTS)}.")
    if style == 3:  # stative, different frame
        return (f"The {rng.choice(STATE_NOUNS)} {rng.choice(STATIVES)} the "
                f"current {rng.choice(STATE_NOUNS)} across the "
                f"{rng.choice(STATE_NOUNS)} cycle.")
    if style == 4:  # heading-like noun fragment
        return rng.choice([
            f"Step {rng.randrange(1, 9)}",
            f"{rng.choice(STATE_NOUNS).title()} overview",
            f"{rng.choice(STATE_NOUNS).title()} and {rng.choice(STATE_NOUNS)} notes",
            f"Appendix for the {rng.choice(STATE_NOUNS)}",
        ])
    return (f"No {rng.choice(STATE_NOUNS)} was {rng.choice(PARTICIPLES)} "
            f"{rng.choice(TIMES)}.")


def main(seed: int = 20240901, total: int = 250) -> None:
    rng = random.Random(seed)
    rows = []
    for i in range(total):
        if i % 2 == 0:
            rows.append((positive(rng), 1))
        else:
            rows.append((negative(rng), 0))
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["text", "label"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} sentences to {OUT}")


if __name__ == "__main__":
    main()

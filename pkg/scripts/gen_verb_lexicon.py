#!/usr/bin/env python3
"""Regenerate the bundled verb inflection table (src/procmine/data/verbs.csv).

Regular inflections are derived by rule; irregular verbs and verbs that
double their final consonant are listed explicitly. Output is sorted by
base form so regeneration is deterministic.
"""

from __future__ import annotations

import csv
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "procmine" / "data" / "verbs.csv"

# base: (third, past, participle, gerund)
IRREGULAR = {
    "be": ("is", "was", "been", "being"),
    "have": ("has", "had", "had", "having"),
    "do": ("does", "did", "done", "doing"),
    "go": ("goes", "went", "gone", "going"),
    "get": ("gets", "got", "gotten", "getting"),
    "make": ("makes", "made", "made", "making"),
    "take": ("takes", "took", "taken", "taking"),
    "give": ("gives", "gave", "given", "giving"),
    "see": ("sees", "saw", "seen", "seeing"),
    "come": ("comes", "came", "come", "coming"),
    "know": ("knows", "knew", "known", "knowing"),
    "find": ("finds", "found", "found", "finding"),
    "put": ("puts", "put", "put", "putting"),
    "set": ("sets", "set", "set", "setting"),
    "run": ("runs", "ran", "run", "running"),
    "rerun": ("reruns", "reran", "rerun", "rerunning"),
    "begin": ("begins", "began", "begun", "beginning"),
    "keep": ("keeps", "kept", "kept", "keeping"),
    "hold": ("holds", "held", "held", "holding"),
    "write": ("writes", "wrote", "written", "writing"),
    "rewrite": ("rewrites", "rewrote", "rewritten", "rewriting"),
    "overwrite": ("overwrites", "overwrote", "overwritten", "overwriting"),
    "stand": ("stands", "stood", "stood", "standing"),
    "hear": ("hears", "heard", "heard", "hearing"),
    "let": ("lets", "let", "let", "letting"),
    "mean": ("means", "meant", "meant", "meaning"),
    "meet": ("meets", "met", "met", "meeting"),
    "pay": ("pays", "paid", "paid", "paying"),
    "read": ("reads", "read", "read", "reading"),
    "reread": ("rereads", "reread", "reread", "rereading"),
    "rise": ("rises", "rose", "risen", "rising"),
    "send": ("sends", "sent", "sent", "sending"),
    "resend": ("resends", "resent", "resent", "resending"),
    "sit": ("sits", "sat", "sat", "sitting"),
    "speak": ("speaks", "spoke", "spoken", "speaking"),
    "spend": ("spends", "spent", "spent", "spending"),
    "teach": ("teaches", "taught", "taught", "teaching"),
    "tell": ("tells", "told", "told", "telling"),
    "think": ("thinks", "thought", "thought", "thinking"),
    "understand": ("understands", "understood", "understood", "understanding"),
    "win": ("wins", "won", "won", "winning"),
    "show": ("shows", "showed", "shown", "showing"),
    "shut": ("shuts", "shut", "shut", "shutting"),
    "cut": ("cuts", "cut", "cut", "cutting"),
    "hit": ("hits", "hit", "hit", "hitting"),
    "quit": ("quits", "quit", "quit", "quitting"),
    "split": ("splits", "split", "split", "splitting"),
    "spread": ("spreads", "spread", "spread", "spreading"),
    "leave": ("leaves", "left", "left", "leaving"),
    "lose": ("loses", "lost", "lost", "losing"),
    "build": ("builds", "built", "built", "building"),
    "rebuild": ("rebuilds", "rebuilt", "rebuilt", "rebuilding"),
    "bind": ("binds", "bound", "bound", "binding"),
    "unbind": ("unbinds", "unbound", "unbound", "unbinding"),
    "bring": ("brings", "brought", "brought", "bringing"),
    "buy": ("buys", "bought", "bought", "buying"),
    "catch": ("catches", "caught", "caught", "catching"),
    "choose": ("chooses", "chose", "chosen", "choosing"),
    "draw": ("draws", "drew", "drawn", "drawing"),
    "redraw": ("redraws", "redrew", "redrawn", "redrawing"),
    "drive": ("drives", "drove", "driven", "driving"),
    "eat": ("eats", "ate", "eaten", "eating"),
    "fall": ("falls", "fell", "fallen", "falling"),
    "feed": ("feeds", "fed", "fed", "feeding"),
    "feel": ("feels", "felt", "felt", "feeling"),
    "forget": ("forgets", "forgot", "forgotten", "forgetting"),
    "freeze": ("freezes", "froze", "frozen", "freezing"),
    "grow": ("grows", "grew", "grown", "growing"),
    "hang": ("hangs", "hung", "hung", "hanging"),
    "hide": ("hides", "hid", "hidden", "hiding"),
    "lead": ("leads", "led", "led", "leading"),
    "light": ("lights", "lit", "lit", "lighting"),
    "ride": ("rides", "rode", "ridden", "riding"),
    "ring": ("rings", "rang", "rung", "ringing"),
    "seek": ("seeks", "sought", "sought", "seeking"),
    "sell": ("sells", "sold", "sold", "selling"),
    "shake": ("shakes", "shook", "shaken", "shaking"),
    "shine": ("shines", "shone", "shone", "shining"),
    "shoot": ("shoots", "shot", "shot", "shooting"),
    "sing": ("sings", "sang", "sung", "singing"),
    "sink": ("sinks", "sank", "sunk", "sinking"),
    "sleep": ("sleeps", "slept", "slept", "sleeping"),
    "slide": ("slides", "slid", "slid", "sliding"),
    "stick": ("sticks", "stuck", "stuck", "sticking"),
    "strike": ("strikes", "struck", "struck", "striking"),
    "sweep": ("sweeps", "swept", "swept", "sweeping"),
    "throw": ("throws", "threw", "thrown", "throwing"),
    "wake": ("wakes", "woke", "woken", "waking"),
    "break": ("breaks", "broke", "broken", "breaking"),
    "deal": ("deals", "dealt", "dealt", "dealing"),
    "dig": ("digs", "dug", "dug", "digging"),
    "undo": ("undoes", "undid", "undone", "undoing"),
    "redo": ("redoes", "redid", "redone", "redoing"),
    "reset": ("resets", "reset", "reset", "resetting"),
}

# Regular verbs that double the final consonant (-ed / -ing).
DOUBLING = {
    "stop", "plan", "scan", "rescan", "drop", "drag", "plug", "unplug", "log",
    "ship", "swap", "map", "remap", "trim", "grab", "commit", "submit",
    "resubmit", "format", "reformat", "refer", "occur", "tag", "untag", "pin",
    "unpin", "wrap", "unwrap", "strip", "skip", "flag", "zip", "unzip", "snap",
}

REGULAR = """
accept access acknowledge activate adapt add adjust administer allocate allow
analyze annotate append apply approve archive assemble assess assign attach
attempt audit authenticate authorize automate avoid backup benchmark block
boot browse bundle calculate calibrate call cancel capture change check
classify clean cleanup clear click clone close collect combine compare compile
complete compress compute concatenate configure confirm connect consolidate
construct consume contact contain continue convert copy correct count crawl
create customize debug decide declare decode decompress decrease decrypt
dedicate define delegate delete deliver demonstrate denote depend deploy
deprecate dequeue derive describe deselect deserialize design detach detect
determine develop diagnose differ direct disable discard disconnect discover
dismiss dispatch display distribute double-click downgrade download duplicate
echo edit eject emit enable encode encrypt enforce enqueue ensure enter
enumerate erase escalate establish estimate evaluate examine exceed exchange
exclude execute exist exit expand expect expire explain explore export expose
extend extract fail fetch fill filter finish fix flush focus follow force fork
forward free gather generate grant guide handle happen hash help highlight
identify ignore implement import improve include increase indicate initialize
initiate inject insert inspect install instantiate integrate intercept
interpret introduce invalidate invoke isolate iterate join launch learn
license lift limit link listen load locate lock login logout look lower
maintain manage mark match measure mention merge migrate minimize mirror
modify monitor mount move navigate need normalize note notice notify obtain
offer omit open optimize organize override owe own package parse partition
pass paste patch pause perform persist ping point poll populate post prepare
present preserve press prevent print prioritize process produce promote prompt
protect prove provide provision publish pull purge push qualify query raise
reach reactivate reattach reboot receive recommend reconfigure reconnect
record recover redeploy redirect redistribute reduce refresh regenerate
register reinstall reject relate release reload relocate rely remain remember
remind remount remove rename render renew reopen repair repeat replace
replicate reply report represent reproduce request require reschedule reserve
resize resolve respond restart restore restrict result resume retain retrieve
retry return reuse reverse revert review revoke roll rotate route save scale
schedule scroll search secure select separate serialize serve share signal
simplify simulate solve sort specify ssh stage start store stream subscribe
substitute succeed suggest supply support suppress suspend switch sync
synchronize tail tar terminate test toggle touch trace track transfer
transform translate transmit traverse trigger troubleshoot trust try tune turn
type uncheck uncomment uninstall unlock unmount unpack unregister unsubscribe
untar update upgrade upload use validate verify view visit wait walk want warn
watch wipe wish work zoom
""".split()


def third_person(base: str) -> str:
    if base.endswith(("s", "x", "z", "ch", "sh")):
        return base + "es"
    if base.endswith("y") and base[-2:-1] not in "aeiou":
        return base[:-1] + "ies"
    if base.endswith("o"):
        return base + "es"
    return base + "s"


def past(base: str) -> str:
    if base in DOUBLING:
        return base + base[-1] + "ed"
    if base.endswith("e"):
        return base + "d"
    if base.endswith("y") and base[-2:-1] not in "aeiou":
        return base[:-1] + "ied"
    return base + "ed"


def gerund(base: str) -> str:
    if base in DOUBLING:
        return base + base[-1] + "ing"
    if base.endswith("ie"):
        return base[:-2] + "ying"
    if base.endswith("e") and not base.endswith(("ee", "oe", "ye")):
        return base[:-1] + "ing"
    return base + "ing"


def main() -> None:
    rows = {}
    for base in REGULAR + sorted(DOUBLING):
        p = past(base)
        rows[base] = (third_person(base), p, p, gerund(base))
    rows.update(IRREGULAR)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["base", "third", "past", "participle", "gerund"])
        for base in sorted(rows):
            writer.writerow([base, *rows[base]])
    print(f"wrote {len(rows)} verbs to {OUT}")


if __name__ == "__main__":
    main()

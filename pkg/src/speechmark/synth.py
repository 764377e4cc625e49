"""Deterministic synthetic corpus generator.

Builds recording JSON files with controlled class differences: controls
speak fluently from a wide vocabulary; the impaired profiles insert long
pauses, repeat and substitute words, shrink the vocabulary, and shift
sentence length, each to a degree scaled by a per-recording severity from
which the synthetic AQ is derived. The bundled fixture corpus is the
frozen output of this module; regenerate with::

    python -m speechmark.synth --out-dir fixtures --seed 0
"""

import argparse
import json
import os

import numpy as np

from .phonemes import lexicon

NOUNS = [
    "man", "woman", "boy", "girl", "child", "house", "home", "door", "window",
    "kitchen", "garden", "table", "chair", "bed", "room", "car", "bus", "train",
    "street", "road", "city", "town", "store", "shop", "market", "school",
    "hospital", "doctor", "nurse", "teacher", "friend", "family", "mother",
    "father", "sister", "brother", "son", "daughter", "dog", "cat", "bird",
    "tree", "flower", "water", "coffee", "tea", "milk", "bread", "cheese",
    "apple", "dinner", "breakfast", "lunch", "morning", "evening", "night",
    "day", "week", "year", "time", "hand", "head", "eye", "foot", "book",
    "letter", "phone", "picture", "story", "word", "name", "money", "key",
    "bag", "coat", "shoe", "hat", "rain", "sun", "snow", "wind", "river",
    "hill", "park", "beach", "boat", "music", "song", "paper", "newspaper",
]
VERBS = [
    ("walked", "walk"), ("talked", "talk"), ("went", "go"), ("saw", "see"),
    ("made", "make"), ("took", "take"), ("ate", "eat"), ("drank", "drink"),
    ("ran", "run"), ("sat", "sit"), ("opened", "open"), ("closed", "close"),
    ("found", "find"), ("helped", "help"), ("worked", "work"), ("lived", "live"),
    ("played", "play"), ("wrote", "write"), ("cooked", "cook"), ("cleaned", "clean"),
    ("visited", "visit"), ("forgot", "forget"), ("thought", "think"), ("knew", "know"),
    ("wanted", "want"), ("needed", "need"), ("liked", "like"), ("loved", "love"),
    ("called", "call"), ("washed", "wash"), ("bought", "buy"), ("gave", "give"),
    ("told", "tell"), ("said", "say"), ("looked", "look"), ("watched", "watch"),
]
ADJS = [
    "good", "bad", "big", "small", "old", "young", "new", "happy", "sad",
    "warm", "cold", "hot", "nice", "long", "short", "red", "blue", "green",
    "white", "black", "little", "great", "beautiful", "tired", "busy",
    "quiet", "loud", "slow", "fast", "bright", "dark", "heavy", "light",
]
DETS = ["the", "a", "this", "that", "my", "his", "her", "our", "their"]
PRONS = ["i", "you", "he", "she", "we", "they", "it"]
ADPS = ["in", "on", "at", "with", "from", "to", "of", "by", "about", "over", "under", "near"]
CONJS = ["and", "but", "or", "because", "so", "while"]
ADVS = [
    "very", "quite", "slowly", "quickly", "often", "never", "always",
    "here", "there", "now", "then", "today", "really", "again", "soon",
]
FILLERS = ["uh", "um", "er"]

# Class signatures are deliberately near-orthogonal so the subtypes stay
# distinguishable after prototype-distance compression at this corpus size:
# anomic deviates on the pause dimensions only (word-finding pauses in
# otherwise fluent, grammatical speech); broca on timing and syntax (slow,
# telegraphic, agrammatic); wernicke on lexical diversity and pronunciation
# at a normal, even brisk, speech rate.
PROFILES = {
    "control": dict(
        sent_len=(8, 14), nouns=None, verbs=None, adjs=None, stretch=1.0,
        gap=(0.03, 0.15), pause_rate=0.03, pause_len=(0.35, 0.8),
        filler=0.015, substitute=0.02, repeat=0.004, insert_clean=0.004,
        grammar=(0.88, 0.04), det_drop=0.0,
    ),
    "anomic": dict(
        sent_len=(8, 13), nouns=None, verbs=None, adjs=None, stretch=1.0,
        gap=(0.03, 0.15), pause_rate=0.22, pause_len=(0.6, 2.0),
        filler=0.03, substitute=0.015, repeat=0.01, insert_clean=0.005,
        grammar=(0.87, 0.04), det_drop=0.0,
    ),
    "broca": dict(
        sent_len=(3, 5), nouns=22, verbs=8, adjs=5, stretch=1.9,
        gap=(0.10, 0.28), pause_rate=0.32, pause_len=(0.8, 3.0),
        filler=0.10, substitute=0.06, repeat=0.06, insert_clean=0.01,
        grammar=(0.40, 0.06), det_drop=0.5,
    ),
    "wernicke": dict(
        sent_len=(14, 20), nouns=12, verbs=10, adjs=6, stretch=0.88,
        gap=(0.02, 0.09), pause_rate=0.03, pause_len=(0.35, 0.8),
        filler=0.05, substitute=0.25, repeat=0.03, insert_clean=0.07,
        grammar=(0.60, 0.07), det_drop=0.08,
    ),
}

SEVERITY = {"anomic": (0.30, 0.42), "broca": (0.62, 0.78), "wernicke": (0.52, 0.66)}


def _phoneme_len(word):
    return len(lexicon().get(word, word))


def _pick(rng, seq):
    return seq[int(rng.integers(len(seq)))]


class _WordBank:
    def __init__(self, rng, profile):
        p = PROFILES[profile]
        self.nouns = (
            list(rng.choice(NOUNS, size=p["nouns"], replace=False))
            if p["nouns"] else list(NOUNS)
        )
        self.verbs = (
            [VERBS[i] for i in rng.choice(len(VERBS), size=p["verbs"], replace=False)]
            if p["verbs"] else list(VERBS)
        )
        self.adjs = (
            list(rng.choice(ADJS, size=p["adjs"], replace=False))
            if p["adjs"] else list(ADJS)
        )


def _sentence(rng, bank, length, det_drop):
    """One sentence as a list of (surface, pos, lemma)."""
    words = []

    def noun_phrase():
        if rng.random() > det_drop:
            words.append((_pick(rng, DETS), "DET", None))
        if rng.random() < 0.3:
            words.append((_pick(rng, bank.adjs), "ADJ", None))
        words.append((_pick(rng, bank.nouns), "NOUN", None))

    def verb_phrase():
        surface, lemma = _pick(rng, bank.verbs)
        words.append((surface, "VERB", lemma))
        if rng.random() < 0.25:
            words.append((_pick(rng, ADVS), "ADV", None))

    if rng.random() < 0.35:
        words.append((_pick(rng, PRONS), "PRON", None))
    else:
        noun_phrase()
    verb_phrase()
    while len(words) < length:
        kind = rng.random()
        if kind < 0.35:
            words.append((_pick(rng, ADPS), "ADP", None))
            noun_phrase()
        elif kind < 0.55:
            noun_phrase()
        elif kind < 0.7:
            words.append((_pick(rng, ADVS), "ADV", None))
        elif kind < 0.85:
            words.append((_pick(rng, CONJS), "CONJ", None))
            words.append((_pick(rng, PRONS), "PRON", None))
            verb_phrase()
        else:
            verb_phrase()
    return words[:length]


def generate_recording(
    recording_id,
    subject_id,
    profile,
    seed,
    target_words=500,
    label=None,
    severity=None,
    exact_sentences=None,
):
    """Build one recording document (a plain dict matching schema v1)."""
    rng = np.random.default_rng(seed)
    p = dict(PROFILES[profile])
    if severity is not None:
        # Severity scales the most AQ-relevant knobs around their profile value.
        scale = 0.7 + 0.6 * severity
        p["pause_rate"] = min(0.45, p["pause_rate"] * scale)
        p["substitute"] = min(0.30, p["substitute"] * scale)
        p["filler"] = min(0.30, p["filler"] * scale)
        p["stretch"] = p["stretch"] * (0.9 + 0.2 * severity)
    bank = _WordBank(rng, profile)

    sentences = []
    total = 0
    while total < target_words:
        if exact_sentences is not None:
            want = exact_sentences[len(sentences)]
        else:
            want = int(rng.integers(p["sent_len"][0], p["sent_len"][1] + 1))
        sent = _sentence(rng, bank, want, p["det_drop"])
        sentences.append(sent)
        total += len(sent)
        if exact_sentences is not None and len(sentences) == len(exact_sentences):
            break

    words = []
    for s_idx, sent in enumerate(sentences):
        for w_idx, (surface, pos, lemma) in enumerate(sent):
            text = surface
            if w_idx == 0:
                text = text.capitalize()
            if w_idx == len(sent) - 1:
                text += "."
            if lemma is None and rng.random() >= 0.02:
                lemma = surface
            ph = None
            if rng.random() < 0.05:
                ph = list(lexicon().get(surface, surface))
            words.append({"w": text, "sent": s_idx, "pos": pos, "lemma": lemma, "ph": ph})

    tokens = []
    cursor = round(float(rng.uniform(0.1, 0.4)), 3)

    def emit(token_text):
        nonlocal cursor
        dur = (0.05 + 0.055 * _phoneme_len(token_text)) * p["stretch"]
        dur *= float(rng.uniform(0.85, 1.2))
        start = cursor
        end = start + dur
        tokens.append({"t": token_text, "s": round(start, 3), "e": round(end, 3)})
        if rng.random() < p["pause_rate"]:
            gap = float(rng.uniform(*p["pause_len"]))
        else:
            gap = float(rng.uniform(*p["gap"]))
        cursor = round(end + gap, 3)

    all_surfaces = bank.nouns + [v[0] for v in bank.verbs] + bank.adjs
    prev_surface = None
    for word in words:
        surface = word["w"].rstrip(".").lower()
        if rng.random() < p["insert_clean"]:
            prev_surface = surface
            continue  # clean-only word: acoustic never said it
        if prev_surface is not None and rng.random() < p["repeat"]:
            emit(prev_surface)
        if rng.random() < p["filler"]:
            emit(_pick(rng, FILLERS))
        spoken = surface
        if rng.random() < p["substitute"]:
            spoken = _pick(rng, all_surfaces)
            if spoken == surface:
                spoken = _pick(rng, NOUNS)
        emit(spoken)
        prev_surface = surface

    total_duration = round(tokens[-1]["e"] + float(rng.uniform(0.2, 0.6)), 3)
    grammar = [
        float(np.clip(rng.normal(*p["grammar"]), 0.05, 0.99)) for _ in sentences
    ]

    if label == "control":
        aq = float(np.clip(93.0 + rng.uniform(0.0, 6.0), 0, 100))
    elif severity is not None:
        aq = float(np.clip(95.0 - 75.0 * severity + rng.normal(0.0, 2.0), 20, 92))
    else:
        aq = None

    return {
        "recording_id": recording_id,
        "subject_id": subject_id,
        "label": label,
        "aq": round(aq, 1) if aq is not None else None,
        "acoustic": {"total_duration": total_duration, "tokens": tokens},
        "clean": {
            "words": words,
            "external_scores": {"grammar_acceptance": [round(g, 4) for g in grammar]},
        },
    }


def healthy_reference(seed=0):
    """20 healthy recordings for prototype fitting.

    The first one has exactly 3 sentences of 80 words (240 words, one chunk);
    the rest vary between 450 and 650 words.
    """
    docs = []
    base = np.random.default_rng([seed, 1000])
    docs.append(generate_recording(
        "healthy_001", "ref01", "control", seed=[seed, 0],
        target_words=240, label="control", exact_sentences=(80, 80, 80),
    ))
    for i in range(2, 21):
        target = int(base.integers(450, 651))
        docs.append(generate_recording(
            f"healthy_{i:03d}", f"ref{i:02d}", "control", seed=[seed, i],
            target_words=target, label="control",
        ))
    return docs


def evaluation_corpus(seed=0):
    """40 recordings: 20 controls and 20 impaired across three subtypes."""
    base = np.random.default_rng([seed, 2000])
    docs = []
    # Controls: subjects hc01..hc05 contribute two recordings each.
    subjects = [f"hc{(i // 2) + 1:02d}" for i in range(10)] + \
               [f"hc{i:02d}" for i in range(6, 16)]
    for i, subj in enumerate(subjects, start=1):
        target = int(base.integers(430, 620))
        docs.append(generate_recording(
            f"control_{i:02d}", subj, "control", seed=[seed, 100 + i],
            target_words=target, label="control",
        ))
    plan = [("anomic", 8, 6), ("broca", 6, 5), ("wernicke", 6, 5)]
    subj_counter = 0
    for label, n_recs, n_subjects in plan:
        assignment = []
        doubled = n_recs - n_subjects
        for s in range(n_subjects):
            assignment.append(s)
            if s < doubled:
                assignment.append(s)
        lo, hi = SEVERITY[label]
        for i, rel_subj in enumerate(assignment, start=1):
            subj = f"pa{subj_counter + rel_subj + 1:02d}"
            severity = float(base.uniform(lo, hi))
            target = int(base.integers(420, 600))
            docs.append(generate_recording(
                f"{label}_{i:02d}", subj, label, seed=[seed, 200 + subj_counter * 10 + i],
                target_words=target, label=label, severity=severity,
            ))
        subj_counter += n_subjects
    return docs


def write_corpus(out_dir, seed=0):
    healthy_dir = os.path.join(out_dir, "healthy")
    corpus_dir = os.path.join(out_dir, "corpus")
    os.makedirs(healthy_dir, exist_ok=True)
    os.makedirs(corpus_dir, exist_ok=True)
    for doc in healthy_reference(seed):
        path = os.path.join(healthy_dir, doc["recording_id"] + ".json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    for doc in evaluation_corpus(seed):
        path = os.path.join(corpus_dir, doc["recording_id"] + ".json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    write_corpus(args.out_dir, args.seed)


if __name__ == "__main__":
    main()

"""The per-chunk score battery and per-recording averaging.

Five score families: fluency, lexical richness, syntax, pronunciation,
and coherence. Every score either has a value or is marked missing; the
two sets never overlap and together cover the registered vocabulary, so
downstream feature vectors stay fixed-width.

Vocabulary version 1 uses pause/distance quantiles (10, 25, 50, 75, 95)
and MATTR windows (10, 25, 50); changing those knobs changes the score
names, and prototype files record the exact name list they were fitted
with.
"""

import math
from dataclasses import dataclass

import numpy as np

from .align import OpKind, levenshtein, standardize
from .metrics import lexical
from .phonemes import phoneme_count

VOCABULARY_VERSION = 1
DEFAULT_QUANTILES = (10, 25, 50, 75, 95)
DEFAULT_MATTR_WINDOWS = (10, 25, 50)


def build_categories(quantiles=DEFAULT_QUANTILES, mattr_windows=DEFAULT_MATTR_WINDOWS):
    """Category -> ordered score names, for the given config knobs."""
    return {
        "fluency": (
            "words_per_second",
            "phonemes_per_second",
            "percentage_time_spoken",
            "productive_time_ratio",
            *(f"pause_length_q{q:g}" for q in quantiles),
            *(f"pause_distance_q{q:g}" for q in quantiles),
            "pause_per_word",
            "mean_phoneme_length_nouns",
        ),
        "lexical_richness": (
            "ttr",
            *(f"mattr_{w}" for w in mattr_windows),
            "gzip_ratio",
            "hdd",
            "mtld",
            "word_information",
        ),
        "syntax": (
            "noun_ratio",
            "verb_ratio",
            "adjective_ratio",
            "grammar_acceptance",
            "mean_sentence_length",
        ),
        "pronunciation": ("wer_acoustic", "cer_acoustic"),
        "coherence": ("ctrleval", "word_vector_coherence", "gpt2_perplexity"),
    }


def build_score_names(quantiles=DEFAULT_QUANTILES, mattr_windows=DEFAULT_MATTR_WINDOWS):
    cats = build_categories(quantiles, mattr_windows)
    return tuple(name for names in cats.values() for name in names)


SCORE_CATEGORIES = build_categories()
SCORE_NAMES = build_score_names()


@dataclass(frozen=True)
class ScoreVector:
    """Named score values plus the set of scores that could not be computed."""

    values: dict
    missing: frozenset

    def __post_init__(self):
        overlap = set(self.values) & self.missing
        if overlap:
            raise ValueError(f"scores both valued and missing: {sorted(overlap)}")

    def names(self):
        return set(self.values) | self.missing


class _Collector:
    def __init__(self):
        self.values = {}
        self.missing = set()

    def put(self, name, value):
        if value is None or (isinstance(value, float) and math.isnan(value)):
            self.missing.add(name)
        else:
            self.values[name] = float(value)

    def vector(self):
        return ScoreVector(self.values, frozenset(self.missing))


def _chunk_words(chunk, recording):
    b, e = chunk.clean_word_range
    return recording.clean.words[b:e]


def _chunk_tokens(chunk, recording):
    b, e = chunk.acoustic_token_range
    return recording.acoustic.tokens[b:e]


def _quantiles(sample, quantiles):
    # Linear interpolation between closest ranks; a single observation
    # makes every quantile equal to it.
    arr = np.asarray(sample, dtype=float)
    return {q: float(np.quantile(arr, q / 100.0, method="linear")) for q in quantiles}


def fluency_scores(chunk, recording, aligned, quantiles=DEFAULT_QUANTILES):
    """Speech-rate, spoken-time, and pause-distribution scores."""
    out = _Collector()
    words = _chunk_words(chunk, recording)
    n_words = len(words)
    duration = chunk.chunk_duration

    if duration is not None and duration > 0:
        out.put("words_per_second", n_words / duration)
        out.put("phonemes_per_second", sum(phoneme_count(w) for w in words) / duration)
        spoken = sum(t.end - t.start for t in _chunk_tokens(chunk, recording))
        out.put("percentage_time_spoken", spoken / duration)
        b, e = chunk.clean_word_range
        clean_strict = sum(
            t[1] - t[0] for t in aligned.word_timings[b:e] if t is not None
        )
        out.put("productive_time_ratio", spoken / clean_strict if clean_strict > 0 else None)
    else:
        for name in ("words_per_second", "phonemes_per_second",
                     "percentage_time_spoken", "productive_time_ratio"):
            out.put(name, None)

    lengths = [p.duration for p in chunk.pauses]
    if lengths:
        for q, v in _quantiles(lengths, quantiles).items():
            out.put(f"pause_length_q{q:g}", v)
    else:
        for q in quantiles:
            out.put(f"pause_length_q{q:g}", None)
    distances = [
        nxt.start - prev.end for prev, nxt in zip(chunk.pauses, chunk.pauses[1:])
    ]
    if distances:
        for q, v in _quantiles(distances, quantiles).items():
            out.put(f"pause_distance_q{q:g}", v)
    else:
        for q in quantiles:
            out.put(f"pause_distance_q{q:g}", None)

    out.put("pause_per_word", len(chunk.pauses) / n_words if n_words else None)
    noun_lengths = [phoneme_count(w) for w in words if w.pos == "NOUN"]
    out.put(
        "mean_phoneme_length_nouns",
        sum(noun_lengths) / len(noun_lengths) if noun_lengths else None,
    )
    return out.vector()


def _surface_tokens(words):
    return [t for t in (standardize(w.text) for w in words) if t]


def lexical_scores(
    chunk,
    recording,
    mattr_windows=DEFAULT_MATTR_WINDOWS,
    gzip_level=lexical.GZIP_LEVEL,
    hdd_sample_size=lexical.HDD_SAMPLE_SIZE,
    mtld_threshold=lexical.MTLD_TTR_THRESHOLD,
):
    """Lexical richness scores on the chunk's standardized clean words."""
    out = _Collector()
    words = _chunk_words(chunk, recording)
    tokens = _surface_tokens(words)
    out.put("ttr", lexical.ttr(tokens))
    for w in mattr_windows:
        # Chunks shorter than the window leave that MATTR unscored.
        out.put(f"mattr_{w}", lexical.mattr(tokens, w) if len(tokens) >= w else None)
    out.put("gzip_ratio", lexical.gzip_ratio(" ".join(tokens), gzip_level))
    out.put("hdd", lexical.hdd(tokens, hdd_sample_size))
    out.put("mtld", lexical.mtld(tokens, mtld_threshold))
    lemmas = [
        t for t in (standardize(w.lemma) if w.lemma else standardize(w.text) for w in words) if t
    ]
    out.put("word_information", lexical.token_entropy_bits(lemmas))
    return out.vector()


def syntax_scores(chunk, recording):
    """POS ratios, sentence length, and external grammar acceptability."""
    out = _Collector()
    words = _chunk_words(chunk, recording)
    n = len(words)
    tags = [w.pos for w in words if w.pos is not None]
    if tags and n:
        out.put("noun_ratio", sum(t == "NOUN" for t in tags) / n)
        out.put("verb_ratio", sum(t == "VERB" for t in tags) / n)
        out.put("adjective_ratio", sum(t == "ADJ" for t in tags) / n)
    else:
        out.put("noun_ratio", None)
        out.put("verb_ratio", None)
        out.put("adjective_ratio", None)

    sentence_sizes = {}
    for w in words:
        sentence_sizes[w.sentence_index] = sentence_sizes.get(w.sentence_index, 0) + 1
    out.put(
        "mean_sentence_length",
        sum(sentence_sizes.values()) / len(sentence_sizes) if sentence_sizes else None,
    )

    per_sentence = recording.clean.external_scores.get("grammar_acceptance")
    if per_sentence is not None and sentence_sizes:
        vals = [per_sentence[s] for s in sorted(sentence_sizes)]
        out.put("grammar_acceptance", sum(vals) / len(vals))
    else:
        out.put("grammar_acceptance", None)
    return out.vector()


def pronunciation_scores(chunk, recording, aligned):
    """Word and character error rates of acoustic against clean."""
    out = _Collector()
    b, e = chunk.clean_word_range
    ta, te = chunk.acoustic_token_range
    edits = 0
    for op in aligned.ops:
        if op.kind is OpKind.MATCH:
            continue
        if op.kind is OpKind.DELETE_ACOUSTIC:
            if ta <= op.acoustic_index < te:
                edits += 1
        elif b <= op.clean_index < e:
            edits += 1
    n_words = chunk.word_count
    out.put("wer_acoustic", edits / n_words if n_words else None)

    acoustic_text = " ".join(
        t for t in (standardize(tok.text) for tok in _chunk_tokens(chunk, recording)) if t
    )
    clean_text = " ".join(_surface_tokens(_chunk_words(chunk, recording)))
    if clean_text:
        out.put("cer_acoustic", levenshtein(acoustic_text, clean_text) / len(clean_text))
    else:
        out.put("cer_acoustic", None)
    return out.vector()


def _neighbor_sentence_cosines(words, vectors):
    by_sentence = {}
    for w, vec in zip(words, vectors):
        by_sentence.setdefault(w.sentence_index, []).append(vec)
    means = [np.mean(np.asarray(v, dtype=float), axis=0) for _, v in sorted(by_sentence.items())]
    cosines = []
    for u, v in zip(means, means[1:]):
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        if nu > 0 and nv > 0:
            cosines.append(float(np.dot(u, v) / (nu * nv)))
    return cosines


def coherence_scores(chunk, recording):
    """External coherence passthroughs plus word-vector coherence.

    Word-vector coherence is computed here when per-word vectors were
    handed over in-process; otherwise an adapter-computed value is passed
    through. All three scores tolerate absence.
    """
    out = _Collector()
    ext = recording.clean.external_scores
    out.put("ctrleval", ext.get("ctrleval"))
    out.put("gpt2_perplexity", ext.get("gpt2_perplexity"))

    wvc = None
    if recording.clean.word_vectors is not None:
        b, e = chunk.clean_word_range
        cosines = _neighbor_sentence_cosines(
            recording.clean.words[b:e], recording.clean.word_vectors[b:e]
        )
        wvc = sum(cosines) / len(cosines) if cosines else None
    elif "word_vector_coherence" in ext:
        wvc = ext["word_vector_coherence"]
    out.put("word_vector_coherence", wvc)
    return out.vector()


def score_chunk(
    chunk,
    recording,
    aligned,
    quantiles=DEFAULT_QUANTILES,
    mattr_windows=DEFAULT_MATTR_WINDOWS,
    gzip_level=lexical.GZIP_LEVEL,
    hdd_sample_size=lexical.HDD_SAMPLE_SIZE,
    mtld_threshold=lexical.MTLD_TTR_THRESHOLD,
):
    """Union of the five score families for one chunk; deterministic."""
    parts = (
        fluency_scores(chunk, recording, aligned, quantiles),
        lexical_scores(chunk, recording, mattr_windows, gzip_level,
                       hdd_sample_size, mtld_threshold),
        syntax_scores(chunk, recording),
        pronunciation_scores(chunk, recording, aligned),
        coherence_scores(chunk, recording),
    )
    values = {}
    missing = set()
    for part in parts:
        values.update(part.values)
        missing.update(part.missing)
    return ScoreVector(values, frozenset(missing))


def average_scores(chunk_vectors):
    """Per-score arithmetic mean over the chunks where the score is present.

    A score missing in every chunk stays missing.
    """
    if not chunk_vectors:
        raise ValueError("cannot average an empty list of score vectors")
    names = set()
    for v in chunk_vectors:
        names |= v.names()
    values = {}
    missing = set()
    for name in names:
        present = [v.values[name] for v in chunk_vectors if name in v.values]
        if present:
            values[name] = sum(present) / len(present)
        else:
            missing.add(name)
    return ScoreVector(values, frozenset(missing))

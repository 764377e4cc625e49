"""Canonical data model and JSON interchange for speech recordings.

A recording pairs two ASR views of the same audio: a literal *acoustic*
transcript with per-token timings (CTC-style decoding, fillers preserved)
and a punctuated *clean* transcript with sentence structure and optional
per-word annotations (POS, lemma, phonemes). One JSON document per
recording; all text is NFC-normalized on load. Loaded values are immutable
and safe to share between workers.

Schema (version 1)::

    { "recording_id": str, "subject_id": str, "label": str|null, "aq": number|null,
      "acoustic": { "total_duration": number,
                    "tokens": [ { "t": str, "s": number, "e": number } ] },
      "clean": { "words": [ { "w": str, "sent": int, "pos": str|null,
                              "lemma": str|null, "ph": [str]|null } ],
                 "external_scores": { ... } } }

Silence is implicit: it is the gap between token timings, never a token.
"""

import json
import math
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError, SchemaError

POS_TAGS = frozenset({
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP",
    "CONJ", "NUM", "PART", "INTJ", "PUNCT", "X",
})

CLASS_LABELS = ("control", "anomic", "broca", "wernicke", "other")

# Keys the adapter may place under clean.external_scores. grammar_acceptance
# is a per-sentence list; the others are recording-level numbers.
EXTERNAL_SCORE_KEYS = frozenset({
    "grammar_acceptance", "gpt2_perplexity", "ctrleval", "word_vector_coherence",
})

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TimedToken:
    """One literal ASR token with its start/end time in seconds."""

    text: str
    start: float
    end: float


@dataclass(frozen=True)
class AcousticTranscript:
    tokens: tuple[TimedToken, ...]
    total_duration: float


@dataclass(frozen=True)
class CleanWord:
    text: str
    sentence_index: int
    pos: str | None = None
    lemma: str | None = None
    phonemes: tuple[str, ...] | None = None


@dataclass(frozen=True)
class CleanTranscript:
    words: tuple[CleanWord, ...]
    sentence_count: int
    external_scores: dict = field(default_factory=dict)
    # Per-word embedding vectors, used for word-vector coherence when an
    # adapter hands them over in-process. Not part of the JSON schema.
    word_vectors: tuple[tuple[float, ...], ...] | None = None


@dataclass(frozen=True)
class Recording:
    recording_id: str
    subject_id: str
    acoustic: AcousticTranscript
    clean: CleanTranscript
    label: str | None = None
    aq: float | None = None


def _nfc(s):
    return unicodedata.normalize("NFC", s)


def _fail(ctx, field_name, message):
    prefix = f"{ctx}: " if ctx else ""
    raise SchemaError(f"{prefix}{field_name}: {message}")


def _require(obj, key, types, ctx, *, optional=False):
    if key not in obj or obj[key] is None:
        if optional:
            return None
        _fail(ctx, key, "missing required field")
    value = obj[key]
    if not isinstance(value, types) or isinstance(value, bool):
        _fail(ctx, key, f"expected {types}, got {type(value).__name__}")
    return value


def _finite(value, field_name, ctx):
    if not math.isfinite(value):
        _fail(ctx, field_name, "must be finite")
    return float(value)


def _parse_acoustic(obj, ctx):
    total = _finite(_require(obj, "total_duration", (int, float), ctx), "total_duration", ctx)
    if total < 0:
        _fail(ctx, "acoustic.total_duration", "must be non-negative")
    raw_tokens = _require(obj, "tokens", list, ctx)
    tokens = []
    prev_end = None
    for i, tok in enumerate(raw_tokens):
        where = f"acoustic.tokens[{i}]"
        if not isinstance(tok, dict):
            _fail(ctx, where, "expected object")
        text = _nfc(_require(tok, "t", str, ctx))
        if not text or any(c.isspace() for c in text):
            _fail(ctx, f"{where}.t", "token text must be non-empty and whitespace-free")
        start = _finite(_require(tok, "s", (int, float), ctx), f"{where}.s", ctx)
        end = _finite(_require(tok, "e", (int, float), ctx), f"{where}.e", ctx)
        if start < 0:
            _fail(ctx, f"{where}.s", "must be non-negative")
        if end < start:
            _fail(ctx, f"{where}.e", f"end {end} precedes start {start}")
        if prev_end is not None and start < prev_end:
            _fail(ctx, where, f"overlapping timings (start {start} < previous end {prev_end})")
        if end > total:
            _fail(ctx, f"{where}.e", f"end {end} exceeds total_duration {total}")
        prev_end = end
        tokens.append(TimedToken(text, start, end))
    return AcousticTranscript(tuple(tokens), total)


def _parse_clean(obj, ctx):
    raw_words = _require(obj, "words", list, ctx)
    words = []
    prev_sent = -1
    for i, w in enumerate(raw_words):
        where = f"clean.words[{i}]"
        if not isinstance(w, dict):
            _fail(ctx, where, "expected object")
        text = _nfc(_require(w, "w", str, ctx))
        if not text:
            _fail(ctx, f"{where}.w", "word text must be non-empty")
        sent = _require(w, "sent", int, ctx)
        if sent < 0:
            _fail(ctx, f"{where}.sent", "must be non-negative")
        if sent < prev_sent:
            _fail(ctx, f"{where}.sent", f"sentence_index decreases ({prev_sent} -> {sent})")
        prev_sent = sent
        pos = _require(w, "pos", str, ctx, optional=True)
        if pos is not None and pos not in POS_TAGS:
            _fail(ctx, f"{where}.pos", f"unknown POS tag {pos!r}")
        lemma = _require(w, "lemma", str, ctx, optional=True)
        if lemma is not None:
            lemma = _nfc(lemma)
        ph = _require(w, "ph", list, ctx, optional=True)
        phonemes = None
        if ph is not None:
            if not all(isinstance(p, str) and p for p in ph):
                _fail(ctx, f"{where}.ph", "phonemes must be non-empty strings")
            phonemes = tuple(_nfc(p) for p in ph)
        words.append(CleanWord(text, sent, pos, lemma, phonemes))

    sentence_count = 1 + prev_sent if words else 0

    external = {}
    raw_ext = obj.get("external_scores") or {}
    if not isinstance(raw_ext, dict):
        _fail(ctx, "clean.external_scores", "expected object")
    for key, value in raw_ext.items():
        where = f"clean.external_scores.{key}"
        if key not in EXTERNAL_SCORE_KEYS:
            _fail(ctx, where, "unknown external score key")
        if key == "grammar_acceptance":
            if not isinstance(value, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
            ):
                _fail(ctx, where, "expected a list of numbers (one per sentence)")
            if len(value) != sentence_count:
                _fail(ctx, where, f"expected {sentence_count} entries, got {len(value)}")
            external[key] = [_finite(v, where, ctx) for v in value]
        else:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                _fail(ctx, where, "expected a number")
            external[key] = _finite(value, where, ctx)

    return CleanTranscript(tuple(words), sentence_count, external)


def parse_recording(doc, ctx=""):
    """Validate a decoded JSON document and build a Recording.

    ``ctx`` is prepended to error messages (normally the file name).
    """
    if not isinstance(doc, dict):
        _fail(ctx, "document", "expected a JSON object")
    rec_id = _nfc(_require(doc, "recording_id", str, ctx))
    subj_id = _nfc(_require(doc, "subject_id", str, ctx))
    if not rec_id:
        _fail(ctx, "recording_id", "must be non-empty")
    if not subj_id:
        _fail(ctx, "subject_id", "must be non-empty")
    label = _require(doc, "label", str, ctx, optional=True)
    if label is not None and label not in CLASS_LABELS:
        _fail(ctx, "label", f"unknown class label {label!r} (expected one of {CLASS_LABELS})")
    aq = _require(doc, "aq", (int, float), ctx, optional=True)
    if aq is not None:
        aq = _finite(aq, "aq", ctx)
        if not 0.0 <= aq <= 100.0:
            _fail(ctx, "aq", f"value {aq} outside [0, 100]")
    acoustic = _parse_acoustic(_require(doc, "acoustic", dict, ctx), ctx)
    clean = _parse_clean(_require(doc, "clean", dict, ctx), ctx)
    return Recording(rec_id, subj_id, acoustic, clean, label, aq)


def load_recording(path):
    """Load and validate one recording JSON file."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path.name}: invalid JSON: {exc}") from exc
    return parse_recording(doc, ctx=path.name)


def recording_to_dict(rec):
    """Serialize a Recording back to its schema-v1 JSON document."""
    return {
        "recording_id": rec.recording_id,
        "subject_id": rec.subject_id,
        "label": rec.label,
        "aq": rec.aq,
        "acoustic": {
            "total_duration": rec.acoustic.total_duration,
            "tokens": [{"t": t.text, "s": t.start, "e": t.end} for t in rec.acoustic.tokens],
        },
        "clean": {
            "words": [
                {
                    "w": w.text,
                    "sent": w.sentence_index,
                    "pos": w.pos,
                    "lemma": w.lemma,
                    "ph": list(w.phonemes) if w.phonemes is not None else None,
                }
                for w in rec.clean.words
            ],
            "external_scores": dict(rec.clean.external_scores),
        },
    }


def save_recording(rec, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(recording_to_dict(rec), fh, indent=1)
        fh.write("\n")


def load_dataset(directory):
    """Load every ``*.json`` recording under ``directory``.

    Returns recordings sorted by recording_id; the result does not depend
    on directory read order. Per-file failures are aggregated into a single
    error that names each bad file.
    """
    directory = Path(directory)
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise DataError(f"no recordings found in {directory}")
    recordings = []
    seen = {}
    failures = []
    for path in paths:
        try:
            rec = load_recording(path)
        except DataError as exc:
            failures.append(str(exc))
            continue
        if rec.recording_id in seen:
            failures.append(
                f"duplicate recording_id {rec.recording_id!r} in "
                f"{seen[rec.recording_id]} and {path.name}"
            )
            continue
        seen[rec.recording_id] = path.name
        recordings.append(rec)
    if failures:
        raise DataError("dataset load failed:\n  " + "\n  ".join(failures))
    recordings.sort(key=lambda r: r.recording_id)
    return recordings

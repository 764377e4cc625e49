"""Interviewer removal from speaker-labeled time segments.

The segments file lists (speaker, start, end) spans, CHAT-style: "INV" is
the interviewer and "PAR" the patient. Patient spans are cut sample-exact
and concatenated gaplessly, so output duration is additive in the kept
spans (to the one-sample rounding of each boundary).
"""

import json

import numpy as np

from .audio import read_wav, write_wav
from .errors import AdapterError

PATIENT = "PAR"
INTERVIEWER = "INV"


def load_segments(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise AdapterError(f"cannot read segments file {path}: {exc}") from exc
    raw = doc.get("segments") if isinstance(doc, dict) else doc
    if not isinstance(raw, list) or not raw:
        raise AdapterError(f"{path}: expected a non-empty list of segments")
    segments = []
    for i, seg in enumerate(raw):
        try:
            speaker = seg["speaker"]
            start = float(seg["start"])
            end = float(seg["end"])
        except (TypeError, KeyError, ValueError) as exc:
            raise AdapterError(f"{path}: segment {i} malformed: {exc}") from exc
        if speaker not in (PATIENT, INTERVIEWER):
            raise AdapterError(f"{path}: segment {i}: unknown speaker {speaker!r}")
        if end <= start or start < 0:
            raise AdapterError(f"{path}: segment {i}: bad span [{start}, {end})")
        segments.append((speaker, start, end))
    segments.sort(key=lambda s: s[1])
    for (_, _, prev_end), (_, start, _) in zip(segments, segments[1:]):
        if start < prev_end:
            raise AdapterError(f"{path}: overlapping segments at {start}")
    return segments


def strip_interviewer(audio_path, segments_path, out_path):
    """Write the gapless concatenation of patient spans; returns out_path."""
    samples, rate = read_wav(audio_path)
    segments = load_segments(segments_path)
    duration = len(samples) / rate
    pieces = []
    for speaker, start, end in segments:
        if end > duration + 0.5 / rate:
            raise AdapterError(
                f"segment [{start}, {end}) exceeds audio duration {duration:.3f}s"
            )
        if speaker == PATIENT:
            lo = round(start * rate)
            hi = round(end * rate)
            pieces.append(samples[lo:hi])
    if not pieces:
        raise AdapterError("no patient segments: nothing to keep")
    write_wav(out_path, np.concatenate(pieces), rate)
    return out_path

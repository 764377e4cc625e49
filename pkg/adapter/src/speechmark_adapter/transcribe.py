"""Audio to recording JSON (speechmark schema v1)."""

import json
from pathlib import Path

from .audio import read_wav
from .engines import make_engine
from .errors import AdapterError


def transcribe(audio_path, engine="offline", script_path=None,
               recording_id=None, subject_id=None):
    """Run the model roles over one clip; returns the schema-v1 document."""
    samples, rate = read_wav(audio_path)
    script_text = None
    if script_path is not None:
        script_text = Path(script_path).read_text(encoding="utf-8")
    eng = make_engine(engine, script_text=script_text)
    tokens, clean_words = eng.transcribe(samples, rate)
    if not tokens:
        raise AdapterError("empty transcription")
    stem = Path(audio_path).stem
    total_duration = round(len(samples) / rate, 6)
    return {
        "recording_id": recording_id or stem,
        "subject_id": subject_id or stem,
        "label": None,
        "aq": None,
        "acoustic": {"total_duration": total_duration, "tokens": tokens},
        "clean": {"words": clean_words, "external_scores": {}},
    }


def transcribe_to_file(audio_path, out_path, **kwargs):
    doc = transcribe(audio_path, **kwargs)
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    return out_path

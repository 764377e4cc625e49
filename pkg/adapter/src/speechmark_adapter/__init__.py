"""Adapter: raw audio in, speechmark recording JSON (schema v1) out.

Seven model roles feed the export: a CTC-style acoustic recognizer with
token timestamps, an encoder-decoder clean recognizer with punctuation, a
POS tagger, a lemmatizer, a grammar-acceptability scorer, a perplexity
scorer, and a coherence scorer. Role implementations are configuration:
the bundled offline engine (energy VAD plus a transcript script and
heuristic tagging) runs without any neural model and is what the contract
tests exercise; a transformers-backed engine can fill the same roles when
model weights are available.
"""

from .audio import read_wav, write_wav
from .errors import AdapterError
from .manifest import AdapterManifest, default_manifest
from .segments import load_segments, strip_interviewer
from .transcribe import transcribe

__version__ = "0.1.0"

__all__ = [
    "AdapterError", "AdapterManifest", "default_manifest", "load_segments",
    "read_wav", "strip_interviewer", "transcribe", "write_wav",
]

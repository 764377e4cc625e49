"""Model-role implementations.

The offline engine is fully deterministic and dependency-free: an energy
voice-activity detector yields word-level segments; a transcript script
(when given) supplies the words and the sentence punctuation, otherwise
tokens get synthetic labels. Tagging and lemmatization are transparent
heuristics, clearly below a neural tagger but honest about it; scores that
need a real model (grammar, perplexity, coherence) are simply not emitted,
which the schema allows.
"""

import re
import string

import numpy as np

from .errors import AdapterError

FRAME_S = 0.010
MIN_WORD_S = 0.05
MIN_GAP_S = 0.03


def detect_speech_segments(samples, rate, threshold_ratio=0.1):
    """(start, end) spans of speech via frame-energy thresholding."""
    frame = max(1, int(FRAME_S * rate))
    n_frames = len(samples) // frame
    if n_frames == 0:
        return []
    energy = np.square(samples[: n_frames * frame].reshape(n_frames, frame)).mean(axis=1)
    peak = float(energy.max())
    if peak <= 0:
        return []
    active = energy > threshold_ratio * peak
    min_gap = max(1, int(MIN_GAP_S / FRAME_S))
    spans = []
    i = 0
    while i < n_frames:
        if not active[i]:
            i += 1
            continue
        j = i
        silent = 0
        while j < n_frames and silent < min_gap:
            silent = silent + 1 if not active[j] else 0
            j += 1
        end = j - silent
        spans.append((i, end))
        i = j
    out = []
    for lo, hi in spans:
        start_s = lo * frame / rate
        end_s = hi * frame / rate
        if end_s - start_s >= MIN_WORD_S:
            out.append((round(start_s, 4), round(end_s, 4)))
    return out


_WORD_RE = re.compile(r"[^\s]+")
_SENT_END = (".", "!", "?")


def parse_script(text):
    """Script text -> list of (word, sentence_index); punctuation splits sentences."""
    words = []
    sentence = 0
    for match in _WORD_RE.finditer(text):
        token = match.group()
        words.append((token, sentence))
        if token.endswith(_SENT_END):
            sentence += 1
    return words


_DET = {"the", "a", "an", "this", "that", "these", "those", "my", "his", "her",
        "our", "their", "its"}
_PRON = {"i", "you", "he", "she", "it", "we", "they", "me", "him", "them", "us"}
_ADP = {"in", "on", "at", "with", "from", "to", "of", "by", "about", "over",
        "under", "near", "through", "after", "before"}
_CONJ = {"and", "but", "or", "because", "so", "while", "although"}
_VERB = {"is", "was", "are", "were", "be", "been", "sang", "saw", "sat", "walked",
         "bought", "went", "made", "took", "said", "told", "ran", "flew"}
_ADV = {"very", "quite", "often", "never", "always", "here", "there", "now",
        "then", "today", "soon", "slowly", "quickly"}


def heuristic_pos(word):
    """Coarse POS from closed-class lists and suffix shape; X when unsure."""
    w = word.lower().strip(string.punctuation)
    if not w:
        return "PUNCT"
    if w in _DET:
        return "DET"
    if w in _PRON:
        return "PRON"
    if w in _ADP:
        return "ADP"
    if w in _CONJ:
        return "CONJ"
    if w in _VERB or w.endswith("ing"):
        return "VERB"
    if w in _ADV or w.endswith("ly"):
        return "ADV"
    if w.isdigit():
        return "NUM"
    if w.endswith(("ed",)):
        return "VERB"
    if w.endswith(("ous", "ful", "ive", "able")):
        return "ADJ"
    if w[0].isalpha():
        return "NOUN"
    return "X"


_IRREGULAR_LEMMAS = {
    "was": "be", "were": "be", "is": "be", "are": "be", "been": "be",
    "sat": "sit", "saw": "see", "went": "go", "bought": "buy", "made": "make",
    "took": "take", "said": "say", "told": "tell", "ran": "run", "sang": "sing",
    "flew": "fly", "children": "child", "mice": "mouse", "feet": "foot",
}


def heuristic_lemma(word):
    w = word.lower().strip(string.punctuation)
    if not w:
        return None
    if w in _IRREGULAR_LEMMAS:
        return _IRREGULAR_LEMMAS[w]
    for suffix, replacement in (("ing", ""), ("ied", "y"), ("ies", "y"),
                                ("ed", ""), ("es", ""), ("s", "")):
        if w.endswith(suffix) and len(w) - len(suffix) >= 3:
            return w[: len(w) - len(suffix)] + replacement
    return w


class OfflineEngine:
    """Energy VAD plus optional script; no neural models involved.

    With a script, detected speech segments are labeled with the script
    words in order (surplus segments become "uh" filler tokens, surplus
    words are dropped); without one, tokens get synthetic seg labels and
    sentences split on silences longer than sentence_gap_s.
    """

    name = "offline"

    def __init__(self, script_text=None, sentence_gap_s=0.6, tag=True):
        self.script = parse_script(script_text) if script_text else None
        self.sentence_gap_s = sentence_gap_s
        self.tag = tag

    def transcribe(self, samples, rate):
        """Returns (acoustic tokens, clean words) in schema-v1 field layout."""
        spans = detect_speech_segments(samples, rate)
        if not spans:
            raise AdapterError("empty transcription: no speech detected")

        tokens = []
        clean = []
        if self.script is not None:
            for k, (start, end) in enumerate(spans):
                if k < len(self.script):
                    word, sentence = self.script[k]
                    spoken = word.lower().strip(string.punctuation) or "uh"
                    clean.append({
                        "w": word,
                        "sent": sentence,
                        "pos": heuristic_pos(word) if self.tag else None,
                        "lemma": heuristic_lemma(word) if self.tag else None,
                        "ph": None,
                    })
                else:
                    spoken = "uh"
                tokens.append({"t": spoken, "s": start, "e": end})
        else:
            sentence = 0
            prev_end = None
            for k, (start, end) in enumerate(spans):
                if prev_end is not None and start - prev_end > self.sentence_gap_s:
                    sentence += 1
                label = f"seg{k:03d}"
                tokens.append({"t": label, "s": start, "e": end})
                clean.append({"w": label, "sent": sentence, "pos": None,
                              "lemma": None, "ph": None})
                prev_end = end
        return tokens, clean


class TransformersEngine:
    """CTC + encoder-decoder roles via Hugging Face pipelines.

    Requires the optional [models] extra and downloadable weights, so this
    engine is configuration for deployments with model access; the offline
    engine is the tested default. Sub-word pieces are merged to words via
    the tokenizers' word offsets before export, as the aligner expects
    word-level tokens.
    """

    name = "transformers"

    def __init__(self, acoustic_model="facebook/wav2vec2-large-960h-lv60-self",
                 clean_model="openai/whisper-large-v3"):
        try:
            import torch  # noqa: F401
            import transformers  # noqa: F401
        except ImportError as exc:
            raise AdapterError(
                "transformers engine needs the [models] extra (torch, transformers)"
            ) from exc
        self.acoustic_model = acoustic_model
        self.clean_model = clean_model

    def transcribe(self, samples, rate):
        from transformers import pipeline

        ctc = pipeline("automatic-speech-recognition", model=self.acoustic_model)
        acoustic = ctc({"raw": samples, "sampling_rate": rate},
                       return_timestamps="word")
        whisper = pipeline("automatic-speech-recognition", model=self.clean_model)
        clean_out = whisper({"raw": samples, "sampling_rate": rate})

        tokens = []
        for item in acoustic.get("chunks", []):
            start, end = item["timestamp"]
            word = "".join(item["text"].split()).lower()
            if word and end is not None:
                tokens.append({"t": word, "s": float(start), "e": float(end)})
        if not tokens:
            raise AdapterError("empty transcription from the acoustic model")
        clean = []
        for word, sentence in parse_script(clean_out.get("text", "")):
            clean.append({"w": word, "sent": sentence,
                          "pos": heuristic_pos(word),
                          "lemma": heuristic_lemma(word), "ph": None})
        return tokens, clean


def make_engine(name, script_text=None):
    if name == "offline":
        return OfflineEngine(script_text=script_text)
    if name == "transformers":
        return TransformersEngine()
    raise AdapterError(f"unknown engine {name!r}")

"""Adapter manifest: which model fills each of the seven roles."""

from dataclasses import asdict, dataclass

from .audio import SAMPLE_RATE

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AdapterManifest:
    acoustic_recognizer: str
    clean_recognizer: str
    pos_tagger: str
    lemmatizer: str
    grammar_scorer: str
    perplexity_scorer: str
    coherence_scorer: str
    sample_rate: int = SAMPLE_RATE
    schema_version: int = SCHEMA_VERSION

    def to_dict(self):
        return asdict(self)


def default_manifest(engine="offline"):
    if engine == "offline":
        return AdapterManifest(
            acoustic_recognizer="energy-vad+script v1",
            clean_recognizer="script-sentences v1",
            pos_tagger="heuristic-closed-class v1",
            lemmatizer="heuristic-suffix v1",
            grammar_scorer="none",
            perplexity_scorer="none",
            coherence_scorer="none",
        )
    return AdapterManifest(
        acoustic_recognizer="facebook/wav2vec2-large-960h-lv60-self",
        clean_recognizer="openai/whisper-large-v3",
        pos_tagger="heuristic-closed-class v1",
        lemmatizer="heuristic-suffix v1",
        grammar_scorer="none",
        perplexity_scorer="none",
        coherence_scorer="none",
    )

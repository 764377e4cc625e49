"""Interpretable speech biomarkers from paired ASR transcripts.

The pipeline aligns a literal acoustic transcript against a cleaned one,
annotates pauses and fillers, computes a battery of fluency, lexical,
syntax, pronunciation and coherence scores per speech chunk, normalizes
them against Gaussian healthy-speech prototypes, and classifies or
regresses on the resulting distance features with subject-grouped
cross-validation.
"""

from .align import AlignedTranscript, AlignOp, OpKind, align, edit_cost, standardize
from .annotate import Chunk, Pause, chunk, detect_fillers, detect_pauses
from .config import PipelineConfig, load_config
from .corpus import (
    AcousticTranscript,
    CleanTranscript,
    CleanWord,
    Recording,
    TimedToken,
    load_dataset,
    load_recording,
    recording_to_dict,
    save_recording,
)
from .errors import ConfigError, DataError, SchemaError, SpeechmarkError
from .evaluate import EvalReport, LearnConfig, ablation_by_category, loso, metrics
from .prototype import FeatureVector, PrototypeNormalizer
from .scores import (
    SCORE_CATEGORIES,
    SCORE_NAMES,
    VOCABULARY_VERSION,
    ScoreVector,
    average_scores,
    score_chunk,
)
from .svm import LinearSVC, LinearSVR

__version__ = "0.1.0"

__all__ = [
    "AcousticTranscript", "AlignOp", "AlignedTranscript", "Chunk", "CleanTranscript",
    "CleanWord", "ConfigError", "DataError", "EvalReport", "FeatureVector",
    "LearnConfig", "LinearSVC", "LinearSVR", "OpKind", "Pause", "PipelineConfig",
    "PrototypeNormalizer", "Recording", "SchemaError", "ScoreVector", "SpeechmarkError",
    "SCORE_CATEGORIES", "SCORE_NAMES", "TimedToken", "VOCABULARY_VERSION",
    "ablation_by_category", "align", "average_scores", "chunk", "detect_fillers",
    "detect_pauses", "edit_cost", "load_config", "load_dataset", "load_recording",
    "loso", "metrics", "recording_to_dict", "save_recording", "score_chunk",
    "standardize",
]

"""Gaussian healthy-speech prototypes and the distance-feature transform.

Fitting estimates a per-score normal distribution (mean, sample standard
deviation) from a healthy reference corpus. Transforming maps a raw score
s against its prototype (mu, sigma): scores within one sigma of the mean
get feature 1; beyond that the feature is sigma / |mu - s|, so values live
in (0, 1] and smaller means more anomalous. Missing and unfitted scores
are imputed as 1 (indistinguishable from healthy); a degenerate sigma of 0
maps any off-mean score to a small positive floor instead of 0 so the
range invariant holds.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import DataError, VocabularyMismatchError
from .scores import SCORE_NAMES, VOCABULARY_VERSION

DEGENERATE_SIGMA_FLOOR = 1e-6


@dataclass(frozen=True)
class FeatureVector:
    """Prototype-distance features for one recording."""

    recording_id: str
    subject_id: str
    label: str | None
    aq: float | None
    values: dict


class PrototypeNormalizer(BaseEstimator, TransformerMixin):
    """Per-column Gaussian prototype fit and inverse-distance transform.

    Works on plain (n_samples, n_scores) arrays with NaN marking missing
    entries, so it composes with sklearn pipelines. Columns are bound to
    score names; fitted state lives in mu_, sigma_ and n_ (NaN mu/sigma
    marks a column with fewer than two observations).
    """

    def __init__(self, names=SCORE_NAMES, floor=DEGENERATE_SIGMA_FLOOR):
        self.names = tuple(names)
        self.floor = floor

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != len(self.names):
            raise DataError(
                f"expected a 2-D array with {len(self.names)} columns, got shape {X.shape}"
            )
        if X.shape[0] == 0:
            raise DataError("cannot fit prototypes on an empty corpus")
        n = X.shape[0]
        self.n_ = np.sum(~np.isnan(X), axis=0).astype(int)
        self.mu_ = np.full(len(self.names), np.nan)
        self.sigma_ = np.full(len(self.names), np.nan)
        for j in range(X.shape[1]):
            col = X[:, j]
            col = col[~np.isnan(col)]
            if len(col) >= 2:
                self.mu_[j] = col.mean()
                self.sigma_[j] = col.std(ddof=1)
        return self

    def transform(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != len(self.names):
            raise DataError(
                f"expected a 2-D array with {len(self.names)} columns, got shape {X.shape}"
            )
        out = np.ones_like(X)
        for j in range(X.shape[1]):
            mu, sigma = self.mu_[j], self.sigma_[j]
            if math.isnan(mu):
                continue
            col = X[:, j]
            known = ~np.isnan(col)
            dist = np.abs(col[known] - mu)
            feats = np.ones(dist.shape)
            if sigma > 0:
                outside = dist > sigma
                feats[outside] = sigma / dist[outside]
            else:
                feats[dist > 0] = self.floor
            out[known, j] = np.maximum(feats, self.floor)
        return out

    def fitted_names(self):
        return tuple(n for n, mu in zip(self.names, self.mu_) if not math.isnan(mu))

    def to_dict(self):
        scores = {}
        for j, name in enumerate(self.names):
            fitted = not math.isnan(self.mu_[j])
            scores[name] = {
                "mu": self.mu_[j] if fitted else None,
                "sigma": self.sigma_[j] if fitted else None,
                "n": int(self.n_[j]),
            }
        return {"vocabulary_version": VOCABULARY_VERSION, "scores": scores}

    @classmethod
    def from_dict(cls, doc, floor=DEGENERATE_SIGMA_FLOOR):
        if not isinstance(doc, dict) or "scores" not in doc:
            raise DataError("malformed prototype document")
        version = doc.get("vocabulary_version")
        if version != VOCABULARY_VERSION:
            raise VocabularyMismatchError(
                f"prototype vocabulary_version {version!r} does not match "
                f"this build (version {VOCABULARY_VERSION})"
            )
        names = tuple(doc["scores"])
        proto = cls(names=names, floor=floor)
        proto.mu_ = np.full(len(names), np.nan)
        proto.sigma_ = np.full(len(names), np.nan)
        proto.n_ = np.zeros(len(names), dtype=int)
        for j, name in enumerate(names):
            entry = doc["scores"][name]
            proto.n_[j] = int(entry.get("n", 0))
            if entry.get("mu") is not None:
                proto.mu_[j] = float(entry["mu"])
                proto.sigma_[j] = float(entry["sigma"])
                if proto.sigma_[j] < 0:
                    raise DataError(f"prototype sigma for {name} is negative")
        return proto


def scores_to_matrix(score_vectors, names=SCORE_NAMES):
    """Stack ScoreVectors into an (n, len(names)) array with NaN for missing."""
    X = np.full((len(score_vectors), len(names)), np.nan)
    for i, sv in enumerate(score_vectors):
        for j, name in enumerate(names):
            if name in sv.values:
                X[i, j] = sv.values[name]
    return X


def fit(healthy_scores, names=SCORE_NAMES):
    """Fit a prototype from a list of healthy-corpus ScoreVectors."""
    return PrototypeNormalizer(names=names).fit(scores_to_matrix(healthy_scores, names))


def transform(scores, proto, recording_id="", subject_id="", label=None, aq=None):
    """Map one raw ScoreVector to a FeatureVector under the prototype."""
    extra = scores.names() - set(proto.names)
    if extra:
        raise VocabularyMismatchError(
            f"scores carry names absent from the prototype vocabulary: {sorted(extra)}"
        )
    row = proto.transform(scores_to_matrix([scores], proto.names))[0]
    values = {name: float(v) for name, v in zip(proto.names, row)}
    return FeatureVector(recording_id, subject_id, label, aq, values)


def save(proto, path):
    """Write the prototype JSON; floats round-trip exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(proto.to_dict(), fh, indent=1)
        fh.write("\n")


def load(path, floor=DEGENERATE_SIGMA_FLOOR):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid prototype JSON: {exc}") from exc
    return PrototypeNormalizer.from_dict(doc, floor=floor)

"""Leave-one-subject-out evaluation and metric reporting.

Folds are keyed by subject, never by recording, so no subject can appear
on both sides of a split. Classification reports carry per-class
precision/recall/F1 with support-weighted averages and the confusion
matrix; regression reports carry Pearson's correlation and mean absolute
error. A fold whose training split collapses to one class predicts the
training majority class and is flagged in the report.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError
from .scores import SCORE_CATEGORIES
from .svm import DEFAULT_C, DEFAULT_MAX_ITER, DEFAULT_TOL, LinearSVC, LinearSVR


@dataclass
class EvalReport:
    task: str  # "classification" or "regression"
    n: int = 0
    # classification
    labels: list = field(default_factory=list)
    confusion: list = field(default_factory=list)
    per_class: dict = field(default_factory=dict)
    weighted: dict = field(default_factory=dict)
    accuracy: float | None = None
    # regression
    pearson: float | None = None
    mae: float | None = None
    flagged_folds: list = field(default_factory=list)

    def to_dict(self):
        return {
            "task": self.task,
            "n": self.n,
            "labels": self.labels,
            "confusion": self.confusion,
            "per_class": self.per_class,
            "weighted": self.weighted,
            "accuracy": self.accuracy,
            "pearson": self.pearson,
            "mae": self.mae,
            "flagged_folds": self.flagged_folds,
        }

    @classmethod
    def from_dict(cls, doc):
        return cls(**doc)


def classification_metrics(truths, predictions):
    """Standard confusion-matrix metrics with support-weighted averages."""
    if len(truths) != len(predictions) or len(truths) == 0:
        raise DataError("metrics need equal-length, non-empty prediction/truth lists")
    labels = sorted(set(truths) | set(predictions))
    index = {c: i for i, c in enumerate(labels)}
    confusion = np.zeros((len(labels), len(labels)), dtype=int)
    for t, p in zip(truths, predictions):
        confusion[index[t], index[p]] += 1
    per_class = {}
    for c in labels:
        i = index[c]
        tp = confusion[i, i]
        support = int(confusion[i].sum())
        predicted = int(confusion[:, i].sum())
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[c] = {
            "precision": precision, "recall": recall, "f1": f1, "support": support,
        }
    total = sum(m["support"] for m in per_class.values())
    weighted = {
        key: sum(m[key] * m["support"] for m in per_class.values()) / total
        for key in ("precision", "recall", "f1")
    }
    report = EvalReport(task="classification", n=len(truths))
    report.labels = labels
    report.confusion = confusion.tolist()
    report.per_class = per_class
    report.weighted = weighted
    report.accuracy = float(np.trace(confusion)) / len(truths)
    return report


def regression_metrics(truths, predictions):
    """Pearson correlation and MAE; correlation is None when undefined."""
    if len(truths) != len(predictions) or len(truths) == 0:
        raise DataError("metrics need equal-length, non-empty prediction/truth lists")
    t = np.asarray(truths, dtype=float)
    p = np.asarray(predictions, dtype=float)
    report = EvalReport(task="regression", n=len(t))
    report.mae = float(np.mean(np.abs(t - p)))
    st, sp = t.std(), p.std()
    if st > 0 and sp > 0:
        report.pearson = float(np.mean((t - t.mean()) * (p - p.mean())) / (st * sp))
    return report


def metrics(predictions, truths, task="classification"):
    if task == "classification":
        return classification_metrics(truths, predictions)
    if task == "regression":
        return regression_metrics(truths, predictions)
    raise DataError(f"unknown task {task!r}")


@dataclass(frozen=True)
class LearnConfig:
    C: float = DEFAULT_C
    max_iter: int = DEFAULT_MAX_ITER
    tol: float = DEFAULT_TOL
    epsilon: float = 0.1
    seed: int = 0


def loso_predict(X, y, subjects, make_model):
    """One fold per subject; returns (truths, predictions, flagged_folds).

    Output order follows ascending subject then original sample order, so
    repeated runs aggregate identically.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    subjects = np.asarray(subjects)
    if not (len(X) == len(y) == len(subjects)):
        raise DataError("X, y and subjects must have equal length")
    fold_keys = sorted(set(subjects.tolist()))
    if len(fold_keys) < 2:
        raise DataError("LOSO needs at least two distinct subjects")
    truths, predictions, flagged = [], [], []
    for subject in fold_keys:
        held = subjects == subject
        train_y = y[~held]
        classes = np.unique(train_y)
        if len(classes) == 1:
            # Degenerate training split: predict its only (majority) class.
            pred = np.full(int(held.sum()), classes[0])
            flagged.append(str(subject))
        else:
            model = make_model().fit(X[~held], train_y)
            pred = model.predict(X[held])
        truths.extend(y[held].tolist())
        predictions.extend(np.asarray(pred).tolist())
    return truths, predictions, flagged


def loso_regress(X, y, subjects, make_model):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    subjects = np.asarray(subjects)
    fold_keys = sorted(set(subjects.tolist()))
    if len(fold_keys) < 2:
        raise DataError("LOSO needs at least two distinct subjects")
    truths, predictions = [], []
    for subject in fold_keys:
        held = subjects == subject
        model = make_model().fit(X[~held], y[~held])
        pred = model.predict(X[held])
        truths.extend(y[held].tolist())
        predictions.extend(np.asarray(pred).tolist())
    return truths, predictions


def loso(X, y, subjects, task="classification", config=LearnConfig()):
    """Leave-one-subject-out evaluation, aggregated into one EvalReport."""
    if task == "classification":
        make = lambda: LinearSVC(C=config.C, tol=config.tol,
                                 max_iter=config.max_iter, seed=config.seed)
        truths, predictions, flagged = loso_predict(X, y, subjects, make)
        report = classification_metrics(truths, predictions)
        report.flagged_folds = flagged
        return report
    if task == "regression":
        make = lambda: LinearSVR(C=config.C, epsilon=config.epsilon, tol=config.tol,
                                 max_iter=config.max_iter, seed=config.seed)
        truths, predictions = loso_regress(X, y, subjects, make)
        return regression_metrics(truths, predictions)
    raise DataError(f"unknown task {task!r}")


def ablation_by_category(X, y, subjects, names, task="classification",
                         config=LearnConfig(), categories=SCORE_CATEGORIES):
    """LOSO restricted to each score category's features, per category."""
    names = list(names)
    reports = {}
    for category, members in categories.items():
        cols = [names.index(m) for m in members if m in names]
        if not cols:
            raise DataError(f"category {category!r} selects no features")
        reports[category] = loso(X[:, cols], y, subjects, task=task, config=config)
    return reports

"""Linear max-margin models via deterministic dual coordinate descent.

Both estimators minimize 0.5*||w||^2 + C * sum(loss_i) with an L1 loss
(hinge for classification, epsilon-insensitive for regression) and solve
the dual one coordinate at a time. The bias is handled liblinear-style by
augmenting every sample with a constant 1 feature, so it is (weakly)
regularized. Coordinate order is reshuffled every epoch with a generator
seeded from the ``seed`` parameter, which makes two runs on identical data
produce bit-identical weight vectors.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, RegressorMixin

from .errors import DataError

DEFAULT_C = 0.1
DEFAULT_MAX_ITER = 50000
DEFAULT_TOL = 1e-4


def _check_matrix(X):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DataError(f"expected a 2-D feature matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DataError("features must be finite")
    return X


def _augment(X):
    return np.hstack([X, np.ones((X.shape[0], 1))])


def _solve_hinge(X, y, C, tol, max_iter, rng):
    """L1-hinge dual: min 0.5*a'Qa - e'a, 0 <= a <= C, w = X'(a*y)."""
    n = X.shape[0]
    alpha = np.zeros(n)
    w = np.zeros(X.shape[1])
    qii = np.einsum("ij,ij->i", X, X)
    for _ in range(max_iter):
        worst = 0.0
        for i in rng.permutation(n):
            g = y[i] * float(X[i] @ w) - 1.0
            a = alpha[i]
            if a <= 0.0:
                pg = min(g, 0.0)
            elif a >= C:
                pg = max(g, 0.0)
            else:
                pg = g
            if pg != 0.0:
                worst = max(worst, abs(pg))
                new = min(max(a - g / qii[i], 0.0), C)
                if new != a:
                    w += (new - a) * y[i] * X[i]
                    alpha[i] = new
        if worst < tol:
            break
    return w


def _solve_epsilon(X, y, C, epsilon, tol, max_iter, rng):
    """L1 epsilon-insensitive dual on beta in [-C, C], w = X'beta."""
    n = X.shape[0]
    beta = np.zeros(n)
    w = np.zeros(X.shape[1])
    qii = np.einsum("ij,ij->i", X, X)
    for _ in range(max_iter):
        worst = 0.0
        for i in rng.permutation(n):
            g = float(X[i] @ w) - y[i]
            b = beta[i]
            # Minimize 0.5*q*(z-b)^2 + g*(z-b) + eps*|z| over z in [-C, C].
            z_pos = b - (g + epsilon) / qii[i]
            z_neg = b - (g - epsilon) / qii[i]
            if z_pos > 0.0:
                z = z_pos
            elif z_neg < 0.0:
                z = z_neg
            else:
                z = 0.0
            z = min(max(z, -C), C)
            if z != b:
                step = z - b
                worst = max(worst, abs(step))
                w += step * X[i]
                beta[i] = z
        if worst < tol:
            break
    return w


class LinearSVC(BaseEstimator, ClassifierMixin):
    """Linear support vector classifier (hinge loss, one-vs-rest)."""

    def __init__(self, C=DEFAULT_C, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, seed=0):
        self.C = C
        self.tol = tol
        self.max_iter = max_iter
        self.seed = seed

    def fit(self, X, y):
        if self.C <= 0:
            raise DataError("C must be positive")
        X = _check_matrix(X)
        y = np.asarray(y)
        if X.shape[0] != len(y):
            raise DataError("X and y length mismatch")
        self.classes_ = np.unique(y)
        if len(self.classes_) < 2:
            raise DataError("training data contains a single class")
        Xa = _augment(X)
        if len(self.classes_) == 2:
            signs = np.where(y == self.classes_[1], 1.0, -1.0)
            rng = np.random.default_rng(self.seed)
            full = _solve_hinge(Xa, signs, self.C, self.tol, self.max_iter, rng)
            w = full[None, :]
        else:
            rows = []
            for k, cls in enumerate(self.classes_):
                signs = np.where(y == cls, 1.0, -1.0)
                rng = np.random.default_rng(self.seed + k)
                rows.append(_solve_hinge(Xa, signs, self.C, self.tol, self.max_iter, rng))
            w = np.vstack(rows)
        self.coef_ = w[:, :-1]
        self.intercept_ = w[:, -1]
        return self

    def decision_function(self, X):
        X = _check_matrix(X)
        scores = X @ self.coef_.T + self.intercept_
        return scores[:, 0] if len(self.classes_) == 2 else scores

    def predict(self, X):
        scores = self.decision_function(X)
        if len(self.classes_) == 2:
            return self.classes_[(scores > 0).astype(int)]
        return self.classes_[np.argmax(scores, axis=1)]


class LinearSVR(BaseEstimator, RegressorMixin):
    """Linear support vector regression (epsilon-insensitive loss)."""

    def __init__(self, C=DEFAULT_C, epsilon=0.1, tol=DEFAULT_TOL,
                 max_iter=DEFAULT_MAX_ITER, seed=0):
        self.C = C
        self.epsilon = epsilon
        self.tol = tol
        self.max_iter = max_iter
        self.seed = seed

    def fit(self, X, y):
        if self.C <= 0:
            raise DataError("C must be positive")
        if self.epsilon < 0:
            raise DataError("epsilon must be non-negative")
        X = _check_matrix(X)
        y = np.asarray(y, dtype=float)
        if X.shape[0] != len(y):
            raise DataError("X and y length mismatch")
        if len(y) < 2:
            raise DataError("need at least two labeled samples")
        Xa = _augment(X)
        rng = np.random.default_rng(self.seed)
        full = _solve_epsilon(Xa, y, self.C, self.epsilon, self.tol, self.max_iter, rng)
        self.coef_ = full[:-1]
        self.intercept_ = float(full[-1])
        return self

    def predict(self, X):
        X = _check_matrix(X)
        return X @ self.coef_ + self.intercept_

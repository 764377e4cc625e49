import json
import math

import numpy as np
import pytest

from speechmark import PrototypeNormalizer
from speechmark.errors import DataError, VocabularyMismatchError
from speechmark.prototype import (
    DEGENERATE_SIGMA_FLOOR,
    fit,
    load,
    save,
    scores_to_matrix,
    transform,
)
from speechmark.scores import SCORE_NAMES, ScoreVector


def sv(**values):
    return ScoreVector(dict(values), frozenset())


class TestFit:
    def test_two_point_fit(self):
        proto = fit([sv(a=1.0), sv(a=3.0)], names=("a",))
        assert proto.mu_[0] == pytest.approx(2.0)
        assert proto.sigma_[0] == pytest.approx(math.sqrt(2.0))
        assert proto.n_[0] == 2

    def test_constant_samples_degenerate_sigma(self):
        proto = fit([sv(a=5.0)] * 3, names=("a",))
        assert proto.mu_[0] == 5.0
        assert proto.sigma_[0] == 0.0

    def test_single_sample_unfitted(self):
        proto = fit([sv(a=1.0), ScoreVector({}, frozenset({"a"}))], names=("a",))
        assert math.isnan(proto.mu_[0])
        assert proto.n_[0] == 1
        assert proto.fitted_names() == ()

    def test_empty_corpus_rejected(self):
        with pytest.raises(DataError):
            fit([], names=("a",))


class TestTransform:
    def proto(self, mu=0.0, sigma=1.0):
        p = PrototypeNormalizer(names=("a",))
        p.mu_ = np.array([mu])
        p.sigma_ = np.array([sigma])
        p.n_ = np.array([10])
        return p

    def test_beyond_one_sigma(self):
        fv = transform(sv(a=2.0), self.proto())
        assert fv.values["a"] == pytest.approx(0.5)

    def test_within_one_sigma_plateau(self):
        assert transform(sv(a=0.5), self.proto()).values["a"] == 1.0
        assert transform(sv(a=-0.999), self.proto()).values["a"] == 1.0
        # exactly one sigma away is still the plateau (strict >)
        assert transform(sv(a=1.0), self.proto()).values["a"] == 1.0

    def test_degenerate_sigma(self):
        proto = self.proto(mu=5.0, sigma=0.0)
        assert transform(sv(a=5.0), proto).values["a"] == 1.0
        assert transform(sv(a=5.1), proto).values["a"] == DEGENERATE_SIGMA_FLOOR

    def test_missing_score_imputed_to_one(self):
        fv = transform(ScoreVector({}, frozenset({"a"})), self.proto())
        assert fv.values["a"] == 1.0

    def test_unfitted_score_imputed_to_one(self):
        p = PrototypeNormalizer(names=("a",))
        p.mu_ = np.array([np.nan])
        p.sigma_ = np.array([np.nan])
        p.n_ = np.array([0])
        assert transform(sv(a=123.0), p).values["a"] == 1.0

    def test_vocabulary_mismatch(self):
        with pytest.raises(VocabularyMismatchError):
            transform(sv(b=1.0), self.proto())

    def test_range_and_monotonicity_grid(self):
        for mu in (-3.0, 0.0, 7.5):
            for sigma in (0.0, 0.1, 1.0, 4.0):
                proto = self.proto(mu=mu, sigma=sigma)
                previous = None
                for offset in np.linspace(0.0, 25.0, 120):
                    value = transform(sv(a=mu + offset), proto).values["a"]
                    assert 0.0 < value <= 1.0
                    if previous is not None:
                        assert value <= previous + 1e-15
                    previous = value
                    if sigma > 0 and offset <= sigma:
                        assert value == 1.0

    def test_plateau_just_inside_sigma(self):
        for eps in (1e-9, 1e-3, 0.1):
            proto = self.proto(mu=2.0, sigma=0.5)
            assert transform(sv(a=2.0 + 0.5 * (1 - eps)), proto).values["a"] == 1.0
            assert transform(sv(a=2.0 - 0.5 * (1 - eps)), proto).values["a"] == 1.0

    def test_fitting_corpus_mean_feature_high(self):
        # ~68% of Gaussian mass lies within one sigma and maps to 1.
        rng = np.random.default_rng(11)
        names = ("x", "y", "z")
        X = rng.normal(loc=[1.0, -4.0, 50.0], scale=[0.5, 2.0, 10.0], size=(400, 3))
        proto = PrototypeNormalizer(names=names).fit(X)
        feats = proto.transform(X)
        for j in range(3):
            assert feats[:, j].mean() >= 0.6 - 0.05


class TestSerialization:
    def test_round_trip(self, tmp_path):
        proto = fit([sv(a=1.0, b=2.0), sv(a=3.0, b=2.0), sv(a=2.0)], names=("a", "b", "c"))
        path = tmp_path / "proto.json"
        save(proto, path)
        loaded = load(path)
        assert loaded.names == proto.names
        np.testing.assert_array_equal(loaded.n_, proto.n_)
        np.testing.assert_array_equal(loaded.mu_, proto.mu_)
        np.testing.assert_array_equal(loaded.sigma_, proto.sigma_)

    def test_version_mismatch(self, tmp_path):
        doc = {"vocabulary_version": 0, "scores": {"a": {"mu": 0, "sigma": 1, "n": 5}}}
        path = tmp_path / "old.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(VocabularyMismatchError, match="version"):
            load(path)

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{broken", encoding="utf-8")
        with pytest.raises(DataError):
            load(path)


class TestMatrix:
    def test_scores_to_matrix_marks_missing_as_nan(self):
        X = scores_to_matrix([sv(**{SCORE_NAMES[0]: 2.0})])
        assert X.shape == (1, len(SCORE_NAMES))
        assert X[0, 0] == 2.0
        assert np.isnan(X[0, 1:]).all()

    def test_sklearn_get_params(self):
        proto = PrototypeNormalizer(names=("a",), floor=1e-5)
        params = proto.get_params()
        assert params["floor"] == 1e-5
        assert params["names"] == ("a",)

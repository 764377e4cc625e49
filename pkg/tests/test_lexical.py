import math

import numpy as np
import pytest
from scipy.stats import hypergeom

from speechmark.metrics import gzip_ratio, hdd, mattr, mtld, token_entropy_bits, ttr


class TestTTR:
    def test_basic(self):
        assert ttr(["a", "b", "a"]) == pytest.approx(2 / 3)

    def test_empty(self):
        assert ttr([]) is None

    def test_all_unique(self):
        assert ttr(list("abcdef")) == 1.0


class TestMATTR:
    def test_window_at_least_text_length_equals_ttr(self):
        tokens = ["a", "b", "a", "c", "b"]
        assert mattr(tokens, 5) == ttr(tokens)
        assert mattr(tokens, 50) == ttr(tokens)

    def test_sliding_windows_hand_case(self):
        # windows of 2 over [a, a, b, a]: TTRs 0.5, 1.0, 1.0
        assert mattr(["a", "a", "b", "a"], 2) == pytest.approx(2.5 / 3)

    def test_matches_naive_window_scan(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            tokens = [str(x) for x in rng.integers(0, 6, size=rng.integers(5, 40))]
            window = int(rng.integers(2, 10))
            if len(tokens) < window:
                continue
            naive = np.mean([
                len(set(tokens[i:i + window])) / window
                for i in range(len(tokens) - window + 1)
            ])
            assert mattr(tokens, window) == pytest.approx(naive)


class TestHDD:
    def test_all_unique_tokens_give_one(self):
        assert hdd([f"w{i}" for i in range(50)]) == pytest.approx(1.0)

    def test_single_type_gives_inverse_sample_size(self):
        assert hdd(["x"] * 100) == pytest.approx(1 / 42)

    def test_matches_scipy_hypergeometric(self):
        rng = np.random.default_rng(1)
        tokens = [str(x) for x in rng.integers(0, 12, size=120)]
        n = len(tokens)
        expected = 0.0
        from collections import Counter

        for freq in Counter(tokens).values():
            expected += (1.0 - hypergeom.pmf(0, n, freq, 42)) / 42
        assert hdd(tokens) == pytest.approx(expected, rel=1e-10)

    def test_short_text_undefined(self):
        assert hdd(["a"] * 41) is None


class TestMTLD:
    def test_all_unique_returns_text_length(self):
        assert mtld([f"w{i}" for i in range(50)]) == 50.0

    def test_repeated_token_factors(self):
        # TTR hits 0.5 <= 0.72 at every second token: 5 factors over 10 tokens.
        assert mtld(["a"] * 10) == pytest.approx(2.0)

    def test_alternating_pair(self):
        # TTR drops to 2/3 at every third token: 4 factors over 12 tokens.
        assert mtld(["a", "b"] * 6) == pytest.approx(3.0)

    def test_empty(self):
        assert mtld([]) is None


class TestEntropy:
    def test_uniform_distribution(self):
        for n in (1, 2, 4, 8):
            tokens = [f"w{i}" for i in range(n)] * 3
            assert token_entropy_bits(tokens) == pytest.approx(math.log2(n))

    def test_single_type_zero(self):
        assert token_entropy_bits(["x"] * 10) == 0.0


class TestGzipRatio:
    def test_redundant_text_compresses_better(self):
        rng = np.random.default_rng(2)
        constant = " ".join(["x"] * 100)
        distinct = " ".join(
            "".join(chr(97 + c) for c in rng.integers(0, 26, size=8)) for _ in range(100)
        )
        assert gzip_ratio(constant) < gzip_ratio(distinct)

    def test_positive_and_deterministic(self):
        text = "some words repeated some words"
        assert gzip_ratio(text) > 0
        assert gzip_ratio(text) == gzip_ratio(text)

    def test_empty_undefined(self):
        assert gzip_ratio("") is None


class TestPermutationBehaviour:
    def test_order_free_metrics_invariant(self):
        rng = np.random.default_rng(3)
        tokens = [str(x) for x in rng.integers(0, 8, size=100)]
        shuffled = list(tokens)
        rng.shuffle(shuffled)
        assert ttr(shuffled) == ttr(tokens)
        assert hdd(shuffled) == pytest.approx(hdd(tokens))
        assert token_entropy_bits(shuffled) == pytest.approx(token_entropy_bits(tokens))

    def test_order_sensitive_metrics_change(self):
        interleaved = ["a", "b"] * 20
        blocked = ["a"] * 20 + ["b"] * 20
        assert mattr(interleaved, 2) != mattr(blocked, 2)
        assert mtld(interleaved) != mtld(blocked)

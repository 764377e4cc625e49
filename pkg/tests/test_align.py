import functools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from speechmark import DataError, align, edit_cost, standardize
from speechmark.align import OpKind, levenshtein

from util import make_acoustic, make_clean


def oracle_levenshtein(a, b):
    """Recursive-definition edit distance, independent of the DP under test."""

    @functools.lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(
            d(i - 1, j - 1) + (0 if a[i - 1] == b[j - 1] else 1),
            d(i - 1, j) + 1,
            d(i, j - 1) + 1,
        )

    return d(len(a), len(b))


def do_align(a_words, b_words, **kw):
    return align(make_acoustic(a_words), make_clean(b_words), **kw)


class TestStandardize:
    def test_punctuation_and_case(self):
        assert standardize("Hello, world!") == "hello world"

    def test_apostrophe_is_punctuation(self):
        assert standardize("it's") == "its"

    def test_whitespace_collapse(self):
        assert standardize("  a \t b\n c ") == "a b c"

    def test_empty_result_allowed(self):
        assert standardize("?!...") == ""

    @given(st.text(max_size=40))
    @settings(max_examples=300, deadline=None)
    def test_idempotent(self, text):
        once = standardize(text)
        assert standardize(once) == once


class TestAlign:
    def test_filler_deletion(self):
        aligned = do_align(["the", "uh", "cat"], ["the", "cat"])
        assert [op.kind for op in aligned.ops] == [
            OpKind.MATCH, OpKind.DELETE_ACOUSTIC, OpKind.MATCH,
        ]
        assert aligned.unmatched_acoustic == (1,)
        assert edit_cost(aligned) == 1

    def test_identical_sequences(self):
        aligned = do_align(["a", "b", "c"], ["a", "b", "c"])
        assert all(op.kind is OpKind.MATCH for op in aligned.ops)
        assert edit_cost(aligned) == 0

    def test_empty_transcript_rejected(self):
        with pytest.raises(DataError, match="empty"):
            do_align(["..."], ["word"])
        with pytest.raises(DataError, match="empty"):
            do_align(["word"], ["!!"])

    def test_timings_transferred_for_match_and_substitute(self):
        acoustic = make_acoustic(["the", "dog", "sat"])
        clean = make_clean(["the", "fog", "sat"])  # dog -> fog is a substitution
        aligned = align(acoustic, clean)
        kinds = [op.kind for op in aligned.ops]
        assert kinds == [OpKind.MATCH, OpKind.SUBSTITUTE, OpKind.MATCH]
        for i, tok in enumerate(acoustic.tokens):
            assert aligned.word_timings[i] == (tok.start, tok.end)

    def test_inserted_clean_word_has_no_timing(self):
        aligned = do_align(["the", "cat"], ["the", "big", "cat"])
        assert aligned.word_timings[1] is None
        assert edit_cost(aligned) == 1

    def test_repeated_word_leaves_exactly_one_filler(self):
        aligned = do_align(["the", "the", "cat"], ["the", "cat"])
        assert len(aligned.unmatched_acoustic) == 1
        assert aligned.unmatched_acoustic[0] in (0, 1)


def random_pairs(n_pairs, max_len=8, alphabet=("a", "b", "c"), seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(n_pairs):
        la, lb = rng.integers(1, max_len + 1, size=2)
        yield (
            [alphabet[i] for i in rng.integers(len(alphabet), size=la)],
            [alphabet[i] for i in rng.integers(len(alphabet), size=lb)],
        )


class TestOracle:
    def test_cost_matches_recursive_oracle(self):
        for a, b in random_pairs(300, seed=1):
            aligned = do_align(a, b)
            assert edit_cost(aligned) == oracle_levenshtein(tuple(a), tuple(b))

    def test_kitten_sitting(self):
        assert levenshtein("kitten", "sitting") == 3
        assert oracle_levenshtein("kitten", "sitting") == 3
        aligned = do_align(list("kitten"), list("sitting"))
        assert edit_cost(aligned) == 3

    def test_empty_sequence_distance(self):
        assert levenshtein("", "abc") == 3
        assert levenshtein("abc", "") == 3
        assert levenshtein("", "") == 0

    def test_cost_symmetry(self):
        for a, b in random_pairs(100, seed=2):
            assert edit_cost(do_align(a, b)) == edit_cost(do_align(b, a))


class TestInvariants:
    def assert_valid(self, aligned, n_acoustic, n_clean):
        a_seen, b_seen = [], []
        for op in aligned.ops:
            if op.kind in (OpKind.MATCH, OpKind.SUBSTITUTE):
                a_seen.append(op.acoustic_index)
                b_seen.append(op.clean_index)
            elif op.kind is OpKind.DELETE_ACOUSTIC:
                a_seen.append(op.acoustic_index)
                assert op.clean_index is None
            else:
                b_seen.append(op.clean_index)
                assert op.acoustic_index is None
        assert a_seen == list(range(n_acoustic))
        assert b_seen == list(range(n_clean))
        assert aligned.unmatched_acoustic == tuple(
            op.acoustic_index for op in aligned.ops if op.kind is OpKind.DELETE_ACOUSTIC
        )
        timed = [t for t in aligned.word_timings if t is not None]
        starts = [t[0] for t in timed]
        assert starts == sorted(starts)

    def test_completeness_and_monotone_timings(self):
        for a, b in random_pairs(100, seed=3):
            aligned = do_align(a, b)
            self.assert_valid(aligned, len(a), len(b))

    def test_timings_present_iff_matched_or_substituted(self):
        for a, b in random_pairs(60, seed=4):
            aligned = do_align(a, b)
            participating = {
                op.clean_index
                for op in aligned.ops
                if op.kind in (OpKind.MATCH, OpKind.SUBSTITUTE)
            }
            for i, t in enumerate(aligned.word_timings):
                assert (t is not None) == (i in participating)


class TestHirschberg:
    def test_linear_space_path_matches_cost_and_invariants(self):
        rng = np.random.default_rng(5)
        alphabet = [f"w{i}" for i in range(12)]
        for _ in range(20):
            a = [alphabet[i] for i in rng.integers(12, size=rng.integers(30, 80))]
            b = [alphabet[i] for i in rng.integers(12, size=rng.integers(30, 80))]
            small = do_align(a, b, cell_limit=64)  # forces divide and conquer
            big = do_align(a, b)
            assert edit_cost(small) == edit_cost(big) == levenshtein(
                [standardize(x) for x in a], [standardize(x) for x in b]
            )
            TestInvariants().assert_valid(small, len(a), len(b))

    def test_deterministic(self):
        rng = np.random.default_rng(6)
        a = [str(i % 7) for i in rng.integers(0, 40, size=200)]
        b = [str(i % 7) for i in rng.integers(0, 40, size=220)]
        first = do_align(a, b, cell_limit=256)
        second = do_align(a, b, cell_limit=256)
        assert first.ops == second.ops

"""Phonemization with a bundled pronunciation lexicon.

Lookup order: phonemes supplied on the word itself (adapter output) win;
then the bundled lexicon keyed by the standardized surface form; unknown
words fall back to letters-as-phonemes so every word phonemizes.
"""

from functools import lru_cache
from importlib import resources

from .align import standardize


@lru_cache(maxsize=1)
def lexicon():
    """word -> tuple of phoneme symbols, from the bundled lexicon file."""
    table = {}
    text = resources.files("speechmark.data").joinpath("lexicon.txt").read_text("utf-8")
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        table[parts[0]] = tuple(parts[1:])
    return table


def phonemize_word(word):
    """Phoneme symbols for one CleanWord."""
    if word.phonemes is not None:
        return word.phonemes
    key = standardize(word.text)
    hit = lexicon().get(key)
    if hit is not None:
        return hit
    return tuple(key)


def phoneme_count(word):
    return len(phonemize_word(word))

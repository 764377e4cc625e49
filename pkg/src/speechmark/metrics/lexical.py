"""Lexical diversity measures on token lists.

All functions take a sequence of already-standardized tokens. They are
pure and deterministic; callers decide how to handle inputs that make a
measure undefined (most return None in that case).
"""

import math
import zlib
from collections import Counter

HDD_SAMPLE_SIZE = 42
MTLD_TTR_THRESHOLD = 0.72
GZIP_LEVEL = 6


def ttr(tokens):
    """Type-token ratio; None on empty input."""
    if not tokens:
        return None
    return len(set(tokens)) / len(tokens)


def mattr(tokens, window):
    """Moving-average TTR with the given window size.

    A window of at least the text length degenerates to a single window,
    so the value equals the plain TTR.
    """
    n = len(tokens)
    if n == 0:
        return None
    if window >= n:
        return ttr(tokens)
    counts = Counter(tokens[:window])
    total = len(counts) / window
    for i in range(window, n):
        out = tokens[i - window]
        counts[out] -= 1
        if counts[out] == 0:
            del counts[out]
        counts[tokens[i]] += 1
        total += len(counts) / window
    return total / (n - window + 1)


def hdd(tokens, sample_size=HDD_SAMPLE_SIZE):
    """HD-D: expected TTR of a random sample_size-token draw.

    Each type contributes the probability of appearing at least once in a
    hypergeometric sample, scaled by 1/sample_size. Undefined (None) for
    texts shorter than the sample size.
    """
    n = len(tokens)
    if n < sample_size:
        return None
    denom = math.comb(n, sample_size)
    total = 0.0
    for freq in Counter(tokens).values():
        p_absent = math.comb(n - freq, sample_size) / denom if n - freq >= sample_size else 0.0
        total += (1.0 - p_absent) / sample_size
    return total


def _mtld_factors(tokens, threshold):
    factors = 0.0
    types = set()
    count = 0
    for i, tok in enumerate(tokens):
        types.add(tok)
        count += 1
        current_ttr = len(types) / count
        if current_ttr <= threshold:
            factors += 1.0
            types.clear()
            count = 0
        elif i == len(tokens) - 1:
            factors += (1.0 - current_ttr) / (1.0 - threshold)
    return factors


def mtld(tokens, threshold=MTLD_TTR_THRESHOLD):
    """Measure of textual lexical diversity (bidirectional mean).

    A factor completes whenever the running TTR drops to the threshold;
    the remainder contributes a partial factor. A text whose TTR never
    reaches the threshold (e.g. all words unique) has zero factors and the
    measure diverges; this implementation returns the text length for that
    case, i.e. treats the whole text as a single factor.
    """
    n = len(tokens)
    if n == 0:
        return None
    values = []
    for seq in (tokens, tokens[::-1]):
        factors = _mtld_factors(seq, threshold)
        values.append(n / factors if factors > 0 else float(n))
    return (values[0] + values[1]) / 2.0


def token_entropy_bits(tokens):
    """Shannon entropy (bits) of the normalized token count distribution."""
    if not tokens:
        return None
    n = len(tokens)
    return -sum((c / n) * math.log2(c / n) for c in Counter(tokens).values())


def gzip_ratio(text, level=GZIP_LEVEL):
    """Compressed / uncompressed byte length of the UTF-8 text (DEFLATE).

    The compression level is pinned so the ratio is bit-deterministic.
    """
    raw = text.encode("utf-8")
    if not raw:
        return None
    return len(zlib.compress(raw, level)) / len(raw)

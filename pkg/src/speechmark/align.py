"""Token-to-word alignment of the acoustic and clean transcripts.

Both transcripts are standardized (lowercase, punctuation stripped,
whitespace collapsed) and aligned by minimizing the Levenshtein distance
under unit costs. Timings of matched and substituted acoustic tokens are
transferred onto the corresponding clean words; acoustic tokens left
unmatched (deletions) are the filler candidates.

Cost rows are computed with linear memory. Small problems are backtraced
from the full table; long inputs (interviews reach 1e4 tokens) fall back
to a Hirschberg-style divide and conquer so memory stays linear. Ties are
broken deterministically, preferring Match, then Substitute, then
DeleteAcoustic, then InsertClean.
"""

import unicodedata
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DataError

# Full-table backtrace is used while (n+1)*(m+1) stays below this.
_CELL_LIMIT = 4_000_000


class OpKind(str, Enum):
    MATCH = "match"
    SUBSTITUTE = "substitute"
    DELETE_ACOUSTIC = "delete_acoustic"
    INSERT_CLEAN = "insert_clean"


@dataclass(frozen=True)
class AlignOp:
    kind: OpKind
    acoustic_index: int | None
    clean_index: int | None


@dataclass(frozen=True)
class AlignedTranscript:
    ops: tuple[AlignOp, ...]
    word_timings: tuple[tuple[float, float] | None, ...]
    unmatched_acoustic: tuple[int, ...]


def standardize(text):
    """Lowercase, strip Unicode punctuation, collapse whitespace.

    Idempotent; may return the empty string (e.g. for pure punctuation).
    """
    lowered = text.lower()
    stripped = "".join(c for c in lowered if not unicodedata.category(c).startswith("P"))
    return " ".join(stripped.split())


def _to_ids(a, b):
    table = {}
    ids_a = np.empty(len(a), dtype=np.int32)
    ids_b = np.empty(len(b), dtype=np.int32)
    for out, seq in ((ids_a, a), (ids_b, b)):
        for i, sym in enumerate(seq):
            out[i] = table.setdefault(sym, len(table))
    return ids_a, ids_b


def _cost_rows(a_ids, b_ids):
    """Final DP row of edit distances between a_ids and every prefix of b_ids.

    Row recurrence is vectorized: the insertion term is a running prefix
    minimum of (candidate - column), which np.minimum.accumulate computes
    exactly on integers.
    """
    m = len(b_ids)
    prev = np.arange(m + 1, dtype=np.int32)
    if m == 0:
        return np.arange(len(a_ids) + 1, dtype=np.int32)[-1:].copy()
    cols = np.arange(1, m + 1, dtype=np.int32)
    e = np.empty(m + 1, dtype=np.int32)
    cur = np.empty(m + 1, dtype=np.int32)
    for i in range(1, len(a_ids) + 1):
        np.minimum(prev[:-1] + (b_ids != a_ids[i - 1]), prev[1:] + 1, out=cur[1:])
        e[0] = i
        np.subtract(cur[1:], cols, out=e[1:])
        np.minimum.accumulate(e, out=e)
        cur[0] = i
        np.add(cols, e[1:], out=cur[1:])
        prev, cur = cur, prev
    return prev.copy()


def levenshtein(a, b):
    """Unit-cost edit distance between two sequences (strings or lists)."""
    if len(a) == 0:
        return len(b)
    if len(b) == 0:
        return len(a)
    a_ids, b_ids = _to_ids(a, b)
    return int(_cost_rows(a_ids, b_ids)[-1])


def _backtrace_block(a_ids, b_ids, a_off, b_off, ops):
    """Solve one block with a full DP table, appending ops in order."""
    n, m = len(a_ids), len(b_ids)
    table = np.empty((n + 1, m + 1), dtype=np.int32)
    table[0] = np.arange(m + 1, dtype=np.int32)
    if m == 0:
        table[:, 0] = np.arange(n + 1, dtype=np.int32)
    else:
        cols = np.arange(1, m + 1, dtype=np.int32)
        e = np.empty(m + 1, dtype=np.int32)
        for i in range(1, n + 1):
            prev, cur = table[i - 1], table[i]
            np.minimum(prev[:-1] + (b_ids != a_ids[i - 1]), prev[1:] + 1, out=cur[1:])
            e[0] = i
            np.subtract(cur[1:], cols, out=e[1:])
            np.minimum.accumulate(e, out=e)
            cur[0] = i
            np.add(cols, e[1:], out=cur[1:])

    rev = []
    i, j = n, m
    while i > 0 or j > 0:
        cur = table[i, j]
        if i > 0 and j > 0 and a_ids[i - 1] == b_ids[j - 1] and table[i - 1, j - 1] == cur:
            rev.append(AlignOp(OpKind.MATCH, a_off + i - 1, b_off + j - 1))
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and a_ids[i - 1] != b_ids[j - 1] and table[i - 1, j - 1] + 1 == cur:
            rev.append(AlignOp(OpKind.SUBSTITUTE, a_off + i - 1, b_off + j - 1))
            i -= 1
            j -= 1
        elif i > 0 and table[i - 1, j] + 1 == cur:
            rev.append(AlignOp(OpKind.DELETE_ACOUSTIC, a_off + i - 1, None))
            i -= 1
        else:
            rev.append(AlignOp(OpKind.INSERT_CLEAN, None, b_off + j - 1))
            j -= 1
    ops.extend(reversed(rev))


def _hirschberg(a_ids, b_ids, a_off, b_off, ops, cell_limit):
    n, m = len(a_ids), len(b_ids)
    if n == 0:
        ops.extend(AlignOp(OpKind.INSERT_CLEAN, None, b_off + j) for j in range(m))
        return
    if m == 0:
        ops.extend(AlignOp(OpKind.DELETE_ACOUSTIC, a_off + i, None) for i in range(n))
        return
    if (n + 1) * (m + 1) <= cell_limit or n == 1:
        _backtrace_block(a_ids, b_ids, a_off, b_off, ops)
        return
    imid = n // 2
    fwd = _cost_rows(a_ids[:imid], b_ids)
    bwd = _cost_rows(a_ids[imid:][::-1], b_ids[::-1])
    # argmin takes the first optimum, which pins the tie-break.
    jmid = int(np.argmin(fwd + bwd[::-1]))
    _hirschberg(a_ids[:imid], b_ids[:jmid], a_off, b_off, ops, cell_limit)
    _hirschberg(a_ids[imid:], b_ids[jmid:], a_off + imid, b_off + jmid, ops, cell_limit)


def align(acoustic, clean, cell_limit=_CELL_LIMIT):
    """Align an AcousticTranscript against a CleanTranscript.

    Returns an AlignedTranscript whose ops realize a minimum-cost edit
    script; word_timings carries (start, end) for every clean word that
    participates in a Match or Substitute.
    """
    a_std = [standardize(t.text) for t in acoustic.tokens]
    b_std = [standardize(w.text) for w in clean.words]
    if not any(a_std):
        raise DataError("acoustic transcript is empty after standardization")
    if not any(b_std):
        raise DataError("clean transcript is empty after standardization")

    a_ids, b_ids = _to_ids(a_std, b_std)
    ops = []
    _hirschberg(a_ids, b_ids, 0, 0, ops, cell_limit)

    timings = [None] * len(b_std)
    unmatched = []
    for op in ops:
        if op.kind in (OpKind.MATCH, OpKind.SUBSTITUTE):
            tok = acoustic.tokens[op.acoustic_index]
            timings[op.clean_index] = (tok.start, tok.end)
        elif op.kind is OpKind.DELETE_ACOUSTIC:
            unmatched.append(op.acoustic_index)
    return AlignedTranscript(tuple(ops), tuple(timings), tuple(unmatched))


def edit_cost(aligned):
    """Number of non-Match ops; equals the Levenshtein distance."""
    return sum(1 for op in aligned.ops if op.kind is not OpKind.MATCH)

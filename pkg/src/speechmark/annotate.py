"""Pause detection, filler marking, and chunk segmentation.

A pause is any silence gap strictly longer than the threshold (default
300 ms), including the stretch before the first token and after the last.
Fillers are the acoustic tokens the aligner left unmatched. Chunks are
contiguous spans of clean words, grown sentence by sentence until they
reach the minimum word count; a trailing remainder below the minimum is
dropped so all chunks stay of comparable length.
"""

from dataclasses import dataclass

from .align import OpKind

DEFAULT_PAUSE_THRESHOLD = 0.300
DEFAULT_MIN_CHUNK_WORDS = 200

# Strictness guard: a gap of exactly the threshold must not count as a
# pause, but float subtraction can overshoot (0.8 - 0.5 > 0.3). One
# nanosecond is far below any audio timing resolution and far above
# double-precision noise on interview-scale times.
PAUSE_EPSILON = 1e-9


@dataclass(frozen=True)
class Pause:
    start: float
    end: float
    # Global index of the last timed clean word ending at or before the
    # pause start; None for a leading pause.
    preceding_clean_word: int | None = None

    @property
    def duration(self):
        return self.end - self.start


@dataclass(frozen=True)
class Chunk:
    recording_id: str
    chunk_index: int
    clean_word_range: tuple[int, int]
    acoustic_token_range: tuple[int, int]
    pauses: tuple[Pause, ...]
    filler_acoustic_indices: tuple[int, ...]
    # None when no clean word in the chunk received a transferred timing.
    chunk_duration: float | None

    @property
    def word_count(self):
        return self.clean_word_range[1] - self.clean_word_range[0]


def detect_pauses(acoustic, threshold=DEFAULT_PAUSE_THRESHOLD):
    """Return one Pause per maximal inter-token gap with duration > threshold.

    The gap before the first token and after the last token (up to
    total_duration) both count. The comparison is strict: a gap of exactly
    the threshold is not a pause.
    """
    edges = [0.0]
    for tok in acoustic.tokens:
        edges.append(tok.start)
        edges.append(tok.end)
    edges.append(acoustic.total_duration)
    pauses = []
    # Gaps are (0, start_1), (end_i, start_i+1), ..., (end_n, total).
    for start, end in zip(edges[::2], edges[1::2]):
        if end - start > threshold + PAUSE_EPSILON:
            pauses.append(Pause(start, end))
    return pauses


def detect_fillers(aligned, acoustic):
    """Acoustic token indices flagged as fillers (currently: unmatched tokens)."""
    return list(aligned.unmatched_acoustic)


def _sentence_spans(words):
    """[(sentence_index, first_word, last_word)] in order."""
    spans = []
    for i, w in enumerate(words):
        if spans and spans[-1][0] == w.sentence_index:
            spans[-1][2] = i
        else:
            spans.append([w.sentence_index, i, i])
    return [tuple(s) for s in spans]


def chunk(
    recording,
    aligned,
    min_words=DEFAULT_MIN_CHUNK_WORDS,
    pause_threshold=DEFAULT_PAUSE_THRESHOLD,
):
    """Segment a recording into annotated chunks.

    Greedy left-to-right: sentences accumulate until the word count reaches
    min_words, then the chunk closes at that sentence end. A recording whose
    text never reaches min_words yields an empty list (callers report the
    skip). Pauses and fillers are attached to the chunk whose time span and
    token range contain them.
    """
    words = recording.clean.words
    spans = _sentence_spans(words)
    ranges = []
    begin = 0
    count = 0
    for _, _, last in spans:
        count = last + 1 - begin
        if count >= min_words:
            ranges.append((begin, last + 1))
            begin = last + 1
            count = 0

    all_pauses = detect_pauses(recording.acoustic, pause_threshold)
    # Acoustic index of the Match/Substitute op per clean word, None otherwise.
    word_token = [None] * len(words)
    for op in aligned.ops:
        if op.kind in (OpKind.MATCH, OpKind.SUBSTITUTE):
            word_token[op.clean_index] = op.acoustic_index

    chunks = []
    for idx, (b, e) in enumerate(ranges):
        timed = [i for i in range(b, e) if aligned.word_timings[i] is not None]
        if timed:
            t_first = aligned.word_timings[timed[0]][0]
            t_last = aligned.word_timings[timed[-1]][1]
            duration = t_last - t_first
            tok_range = (word_token[timed[0]], word_token[timed[-1]] + 1)
            pauses = tuple(
                _attach(p, aligned, b, e)
                for p in all_pauses
                if p.start >= t_first and p.end <= t_last
            )
            fillers = tuple(
                i for i in aligned.unmatched_acoustic if tok_range[0] <= i < tok_range[1]
            )
        else:
            duration = None
            tok_range = (0, 0)
            pauses = ()
            fillers = ()
        chunks.append(
            Chunk(recording.recording_id, idx, (b, e), tok_range, pauses, fillers, duration)
        )
    return chunks


def _attach(pause, aligned, begin, end):
    preceding = None
    for i in range(begin, end):
        t = aligned.word_timings[i]
        if t is not None and t[1] <= pause.start:
            preceding = i
    return Pause(pause.start, pause.end, preceding)

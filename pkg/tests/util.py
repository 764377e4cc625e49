"""Small builders shared across test modules."""

from speechmark import AcousticTranscript, CleanTranscript, CleanWord, Recording, TimedToken


def make_acoustic(words, start=0.0, dur=0.2, gap=0.1, tail=0.1):
    tokens = []
    t = start
    for w in words:
        tokens.append(TimedToken(w, round(t, 6), round(t + dur, 6)))
        t += dur + gap
    total = round(t - gap + tail, 6) if words else tail
    return AcousticTranscript(tuple(tokens), total)


def make_clean(words, sentence_len=8, pos=None, lemmas=None, external=None):
    out = []
    for i, w in enumerate(words):
        out.append(CleanWord(
            text=w,
            sentence_index=i // sentence_len,
            pos=pos[i] if pos else None,
            lemma=lemmas[i] if lemmas else None,
        ))
    count = out[-1].sentence_index + 1 if out else 0
    return CleanTranscript(tuple(out), count, dict(external or {}))


def make_recording(words, recording_id="r1", subject_id="s1", label=None, aq=None,
                   dur=0.2, gap=0.1, sentence_len=8, pos=None, external=None):
    return Recording(
        recording_id=recording_id,
        subject_id=subject_id,
        acoustic=make_acoustic(words, dur=dur, gap=gap),
        clean=make_clean(words, sentence_len=sentence_len, pos=pos, external=external),
        label=label,
        aq=aq,
    )


def minimal_doc(**over):
    doc = {
        "recording_id": "r1",
        "subject_id": "s1",
        "label": None,
        "aq": None,
        "acoustic": {"total_duration": 1.0, "tokens": [{"t": "hello", "s": 0.1, "e": 0.5}]},
        "clean": {"words": [{"w": "Hello.", "sent": 0, "pos": None, "lemma": None, "ph": None}],
                  "external_scores": {}},
    }
    doc.update(over)
    return doc

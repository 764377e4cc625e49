"""Generate the bundled demo clips: speech-like synthetic audio.

Each word is a harmonic burst with a pitch contour and a noise floor,
separated by short gaps (longer after sentence-final words), so the energy
detector recovers exactly one segment per word. Regenerate with::

    python -m speechmark_adapter.make_clips --out-dir fixtures
"""

import argparse
import json
import os
import string

import numpy as np

from .audio import SAMPLE_RATE, write_wav

CLIPS = {
    "clip_mat": "The cat sat on the mat. It was warm.",
    "clip_market": "She walked to the market and bought bread.",
    "clip_river": "We saw a river. The water was cold. Birds sang.",
}


def synth_word(rng, duration_s, rate=SAMPLE_RATE):
    n = int(duration_s * rate)
    t = np.arange(n) / rate
    f0 = float(rng.uniform(95.0, 200.0))
    glide = f0 * (1.0 + 0.08 * np.sin(2 * np.pi * t / duration_s))
    phase = 2 * np.pi * np.cumsum(glide) / rate
    signal = np.zeros(n)
    for k, amp in enumerate((1.0, 0.5, 0.3, 0.15), start=1):
        signal += amp * np.sin(k * phase)
    signal += 0.05 * rng.standard_normal(n)
    envelope = np.hanning(n)
    return 0.4 * signal * envelope / np.abs(signal * envelope).max()


def synth_sentence_audio(text, seed, rate=SAMPLE_RATE):
    rng = np.random.default_rng(seed)
    pieces = [np.zeros(int(rng.uniform(0.15, 0.3) * rate))]
    for word in text.split():
        bare = word.strip(string.punctuation)
        dur = 0.12 + 0.05 * len(bare) + float(rng.uniform(0.0, 0.05))
        pieces.append(synth_word(rng, dur, rate))
        if word.endswith((".", "!", "?")):
            gap = float(rng.uniform(0.7, 0.9))
        else:
            gap = float(rng.uniform(0.1, 0.22))
        pieces.append(np.zeros(int(gap * rate)))
    return np.concatenate(pieces)


def interviewer_demo(seed, rate=SAMPLE_RATE):
    """Two-speaker clip: interviewer [0, 5), patient [5, 10)."""
    rng = np.random.default_rng(seed)
    def block(duration, f_lo, f_hi):
        pieces = []
        used = 0.0
        while used < duration - 0.5:
            dur = float(rng.uniform(0.2, 0.4))
            word = synth_word(rng, dur, rate)
            gap = np.zeros(int(rng.uniform(0.1, 0.3) * rate))
            pieces.extend([word, gap])
            used += dur + len(gap) / rate
        audio = np.concatenate(pieces)
        want = int(duration * rate)
        return np.pad(audio, (0, max(0, want - len(audio))))[:want]

    return np.concatenate([block(5.0, 90, 140), block(5.0, 160, 220)])


def write_clips(out_dir, seed=0):
    os.makedirs(out_dir, exist_ok=True)
    for i, (name, text) in enumerate(sorted(CLIPS.items())):
        write_wav(os.path.join(out_dir, f"{name}.wav"),
                  synth_sentence_audio(text, seed=[seed, i]))
        with open(os.path.join(out_dir, f"{name}.txt"), "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    write_wav(os.path.join(out_dir, "interview.wav"), interviewer_demo([seed, 99]))
    segments = {"segments": [
        {"speaker": "INV", "start": 0.0, "end": 5.0},
        {"speaker": "PAR", "start": 5.0, "end": 10.0},
    ]}
    with open(os.path.join(out_dir, "interview_segments.json"), "w",
              encoding="utf-8") as fh:
        json.dump(segments, fh, indent=1)
        fh.write("\n")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    write_clips(args.out_dir, args.seed)


if __name__ == "__main__":
    main()

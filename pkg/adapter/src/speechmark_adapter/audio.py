"""WAV input/output for 16 kHz mono 16-bit PCM."""

import wave

import numpy as np

from .errors import AdapterError

SAMPLE_RATE = 16000


def read_wav(path, expected_rate=SAMPLE_RATE):
    """Read a mono 16-bit PCM WAV file; returns (samples float32 in [-1, 1], rate)."""
    try:
        with wave.open(str(path), "rb") as wav:
            channels = wav.getnchannels()
            width = wav.getsampwidth()
            rate = wav.getframerate()
            frames = wav.readframes(wav.getnframes())
    except (OSError, wave.Error) as exc:
        raise AdapterError(f"cannot read WAV {path}: {exc}") from exc
    if channels != 1:
        raise AdapterError(f"{path}: expected mono audio, got {channels} channels")
    if width != 2:
        raise AdapterError(f"{path}: expected 16-bit PCM, got {8 * width}-bit")
    if expected_rate is not None and rate != expected_rate:
        raise AdapterError(f"{path}: expected {expected_rate} Hz, got {rate} Hz")
    samples = np.frombuffer(frames, dtype="<i2").astype(np.float32) / 32768.0
    return samples, rate


def write_wav(path, samples, rate=SAMPLE_RATE):
    ints = np.clip(np.asarray(samples) * 32768.0, -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(rate)
        wav.writeframes(ints.tobytes())

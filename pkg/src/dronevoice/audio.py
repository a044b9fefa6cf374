"""Waveform container, additive noise channel, SNR, and WAV file I/O.

Samples are float64 in [-1, 1]. Noise is uniform on [-n, n], added then
clipped back into range. Files are mono 16-bit PCM WAV.
"""
from __future__ import annotations

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DEFAULT_SAMPLE_RATE = 16_000


@dataclass(frozen=True, eq=False)
class Waveform:
    """Mono audio signal; samples must be a 1-D float64 array in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError(f"samples must be 1-D, got shape {samples.shape}")
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if samples.size and (np.max(samples) > 1.0 or np.min(samples) < -1.0):
            raise ValueError("samples must lie in [-1, 1]")
        object.__setattr__(self, "samples", samples)

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


@dataclass(frozen=True)
class NoiseSpec:
    """Uniform noise amplitude ``n`` in [0, 1) and the RNG seed."""

    amplitude: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.amplitude < 1.0:
            raise ValueError(f"amplitude must lie in [0, 1), got {self.amplitude}")


def inject_noise(waveform: Waveform, spec: NoiseSpec) -> Waveform:
    """Add uniform noise on [-n, n], then clip the sum to [-1, 1].

    Deterministic for a given (waveform length, spec). Amplitude 0 returns
    the input unchanged (the identical object).
    """
    if spec.amplitude == 0:
        return waveform
    rng = np.random.default_rng(spec.seed)
    noise = rng.uniform(-spec.amplitude, spec.amplitude, size=waveform.samples.size)
    noisy = np.clip(waveform.samples + noise, -1.0, 1.0)
    return Waveform(noisy, waveform.sample_rate)


def compute_snr(signal: Waveform, noise: Waveform) -> float:
    """Signal-to-noise ratio in dB: 10*log10(sum(s^2) / sum(n^2)).

    ``noise`` is the noise itself, not the degraded signal; equal-power
    inputs give exactly 0.0 dB. A zero-power signal yields ``-inf``.
    """
    if signal.samples.size != noise.samples.size:
        raise ValueError("signal and noise must have the same length")
    if signal.sample_rate != noise.sample_rate:
        raise ValueError("signal and noise must share a sample rate")
    signal_power = float(np.sum(signal.samples**2))
    noise_power = float(np.sum(noise.samples**2))
    if noise_power == 0.0:
        raise ValueError("noise power is zero")
    if signal_power == 0.0:
        return float("-inf")
    return float(10.0 * np.log10(signal_power / noise_power))


def write_wav(path: str | Path, waveform: Waveform) -> None:
    """Write mono 16-bit PCM; floats scale by 32767 and round."""
    pcm = np.round(waveform.samples * 32767.0).astype(np.int16)
    with wave.open(str(path), "wb") as handle:
        handle.setnchannels(1)
        handle.setsampwidth(2)
        handle.setframerate(waveform.sample_rate)
        handle.writeframes(pcm.tobytes())


def read_wav(path: str | Path) -> Waveform:
    """Read mono 16-bit PCM; int16 samples scale by 1/32767, clipped to
    [-1, 1] (the -32768 code would otherwise land outside)."""
    with wave.open(str(path), "rb") as handle:
        if handle.getnchannels() != 1:
            raise ValueError(f"{path}: expected mono, got {handle.getnchannels()} channels")
        if handle.getsampwidth() != 2:
            raise ValueError(f"{path}: expected 16-bit PCM, got {8 * handle.getsampwidth()}-bit")
        frames = handle.readframes(handle.getnframes())
        sample_rate = handle.getframerate()
    pcm = np.frombuffer(frames, dtype="<i2")
    samples = np.clip(pcm.astype(np.float64) / 32767.0, -1.0, 1.0)
    return Waveform(samples, sample_rate)

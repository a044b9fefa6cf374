"""Speech-provider contract and the bundled offline providers.

A provider turns an input (an utterance id for replay-style providers, or a
waveform) into a transcript Hypothesis. Bundled providers are deterministic,
pure after construction, and safe for concurrent transcribe calls; a live
cloud recognizer would implement the same contract but cannot honor the
determinism requirement, so none is bundled.
"""
from __future__ import annotations

import abc
import hashlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .audio import NoiseSpec, Waveform, inject_noise
from .lexicon import ActionClass, Language

# Edit alphabet: lowercase Latin letters, Spanish diacritics, space.
EDIT_ALPHABET = "abcdefghijklmnopqrstuvwxyz" + "áéíóúüñ" + " "


@dataclass(frozen=True)
class Hypothesis:
    """A transcript produced by a speech provider for one utterance."""

    text: str
    provider_id: str
    utterance_id: str

    def __post_init__(self) -> None:
        if not self.provider_id:
            raise ValueError("provider_id must be non-empty")
        if not self.utterance_id:
            raise ValueError("utterance_id must be non-empty")


class ProviderError(Exception):
    """Base class for provider failures surfaced to the caller."""


class UnknownUtteranceError(ProviderError, LookupError):
    """The provider has no recording for the requested utterance id."""


class FixtureError(ValueError):
    """Malformed fixture/corpus document."""


class SpeechProvider(abc.ABC):
    """Behavioral contract every provider implements.

    ``input_kind`` declares what transcribe accepts: "utterance_id" or
    "waveform". Bundled providers must be deterministic for a fixed
    seed/configuration.
    """

    input_kind: str
    provider_id: str

    @abc.abstractmethod
    def transcribe(self, source: str | Waveform) -> Hypothesis:
        """Produce the transcript hypothesis for one utterance."""


_CLASS_LABELS = {cls.value: cls for cls in ActionClass}
_LANGUAGE_LABELS = {lang.value: lang for lang in Language}

FixtureRow = tuple[str, Language, ActionClass, str]


def parse_fixture(text: str) -> list[FixtureRow]:
    """Parse fixture lines `utterance_id<TAB>language<TAB>true_class<TAB>hypothesis_text`.

    ``#`` comments and blank lines are skipped. Raises
    :class:`FixtureError` with the line number on malformed lines, unknown
    labels, or duplicate utterance ids.
    """
    rows: list[FixtureRow] = []
    seen: dict[str, int] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        if not raw_line.strip() or raw_line.lstrip().startswith("#"):
            continue
        parts = raw_line.split("\t")
        if len(parts) != 4:
            raise FixtureError(
                f"line {lineno}: expected id<TAB>language<TAB>class<TAB>text, got {raw_line!r}"
            )
        utterance_id, language_label, class_label, hypothesis = parts
        utterance_id = utterance_id.strip()
        if not utterance_id:
            raise FixtureError(f"line {lineno}: empty utterance id")
        if utterance_id in seen:
            raise FixtureError(
                f"line {lineno}: duplicate utterance id {utterance_id!r} "
                f"(first on line {seen[utterance_id]})"
            )
        seen[utterance_id] = lineno
        language_label = language_label.strip()
        class_label = class_label.strip()
        if language_label not in _LANGUAGE_LABELS:
            raise FixtureError(f"line {lineno}: unknown language {language_label!r}")
        if class_label not in _CLASS_LABELS:
            raise FixtureError(f"line {lineno}: unknown action class {class_label!r}")
        rows.append(
            (utterance_id, _LANGUAGE_LABELS[language_label], _CLASS_LABELS[class_label], hypothesis)
        )
    return rows


class ReplayProvider(SpeechProvider):
    """Returns prerecorded hypothesis text by utterance id."""

    input_kind = "utterance_id"

    def __init__(self, fixtures: dict[str, str], provider_id: str = "replay"):
        self._fixtures = dict(fixtures)
        self.provider_id = provider_id

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplayProvider":
        rows = parse_fixture(Path(path).read_text(encoding="utf-8"))
        return cls({uid: text for uid, _, _, text in rows})

    def transcribe(self, source: str | Waveform) -> Hypothesis:
        if not isinstance(source, str):
            raise TypeError("ReplayProvider takes an utterance id")
        if source not in self._fixtures:
            raise UnknownUtteranceError(f"no fixture for utterance id {source!r}")
        return Hypothesis(self._fixtures[source], self.provider_id, source)


def _utterance_rng(seed: int, utterance_id: str) -> np.random.Generator:
    # Mix the id into the seed so every utterance gets an independent,
    # reproducible stream regardless of call order.
    digest = hashlib.blake2b(utterance_id.encode("utf-8"), digest_size=8).digest()
    return np.random.default_rng(
        np.random.SeedSequence([seed, int.from_bytes(digest, "big")])
    )


def apply_edits(text: str, count: int, rng: np.random.Generator) -> str:
    """Apply exactly ``count`` uniformly chosen character edits.

    Each edit picks substitution, insertion, or deletion uniformly (an
    empty string admits only insertion) with positions and replacement
    characters uniform over the string and :data:`EDIT_ALPHABET`.
    """
    chars = list(text)
    for _ in range(count):
        ops = ("substitute", "insert", "delete") if chars else ("insert",)
        op = ops[int(rng.integers(len(ops)))]
        if op == "insert":
            pos = int(rng.integers(len(chars) + 1))
            chars.insert(pos, EDIT_ALPHABET[int(rng.integers(len(EDIT_ALPHABET)))])
        elif op == "substitute":
            pos = int(rng.integers(len(chars)))
            chars[pos] = EDIT_ALPHABET[int(rng.integers(len(EDIT_ALPHABET)))]
        else:
            pos = int(rng.integers(len(chars)))
            del chars[pos]
    return "".join(chars)


class EditNoiseProvider(SpeechProvider):
    """Wraps a provider, degrading each hypothesis by exactly k edits.

    Deterministic per (utterance_id, seed): the same utterance degrades
    identically across runs and call orders. Base errors propagate.
    """

    def __init__(self, base: SpeechProvider, edits_per_utterance: int, seed: int):
        if edits_per_utterance < 0:
            raise ValueError("edits_per_utterance must be non-negative")
        self._base = base
        self.edits_per_utterance = edits_per_utterance
        self.seed = seed
        self.input_kind = base.input_kind
        self.provider_id = f"{base.provider_id}+edit{edits_per_utterance}"

    def transcribe(self, source: str | Waveform) -> Hypothesis:
        hypothesis = self._base.transcribe(source)
        if self.edits_per_utterance == 0:
            return Hypothesis(hypothesis.text, self.provider_id, hypothesis.utterance_id)
        rng = _utterance_rng(self.seed, hypothesis.utterance_id)
        degraded = apply_edits(hypothesis.text, self.edits_per_utterance, rng)
        return Hypothesis(degraded, self.provider_id, hypothesis.utterance_id)


class NoisyWaveformProvider(SpeechProvider):
    """Wraps a waveform provider, injecting uniform noise before it.

    The per-call noise seed mixes the wrapper seed with a digest of the
    waveform bytes, so identical waveforms degrade identically.
    """

    input_kind = "waveform"

    def __init__(self, base: SpeechProvider, amplitude: float, seed: int):
        if base.input_kind != "waveform":
            raise ValueError("NoisyWaveformProvider requires a waveform provider")
        self._base = base
        self.amplitude = amplitude
        self.seed = seed
        self.provider_id = f"{base.provider_id}+noise{amplitude:g}"

    def transcribe(self, source: str | Waveform) -> Hypothesis:
        if not isinstance(source, Waveform):
            raise TypeError("NoisyWaveformProvider takes a Waveform")
        digest = hashlib.blake2b(digest_size=8)
        digest.update(source.samples.tobytes())
        digest.update(source.sample_rate.to_bytes(8, "big"))
        mixed = np.random.SeedSequence(
            [self.seed, int.from_bytes(digest.digest(), "big")]
        ).generate_state(1)[0]
        noisy = inject_noise(source, NoiseSpec(self.amplitude, int(mixed)))
        hypothesis = self._base.transcribe(noisy)
        return Hypothesis(hypothesis.text, self.provider_id, hypothesis.utterance_id)

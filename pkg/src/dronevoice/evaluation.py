"""Accuracy evaluation: per-class, per-language scoring under degradation.

Reports count correct classifications per (mode, language, class), build
9x10 confusion matrices (the tenth column is "no class"), and aggregate
exact-fraction accuracies. Degradation sweeps rerun the corpus at
increasing corruption levels: character edits for text corpora, uniform
waveform noise for audio corpora.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .audio import Waveform
from .controller import ControllerConfig, interpret
from .lexicon import ActionClass, Language, Lexicon
from .providers import (
    EditNoiseProvider,
    FixtureRow,
    Hypothesis,
    NoisyWaveformProvider,
    ProviderError,
    ReplayProvider,
    SpeechProvider,
    parse_fixture,
)

SCHEMA_VERSION = 1

NO_CLASS_COLUMN = 9

_CLASS_ORDER = list(ActionClass)
_CLASS_INDEX = {cls: i for i, cls in enumerate(_CLASS_ORDER)}
_LANG_ORDER = [Language.ENGLISH, Language.SPANISH]


@dataclass(frozen=True)
class LabeledUtterance:
    """One corpus item: id, language, ground-truth class, and the payload
    handed to the provider (hypothesis text or a waveform)."""

    utterance_id: str
    language: Language
    true_class: ActionClass
    payload: str | Waveform

    def __post_init__(self) -> None:
        if not self.utterance_id:
            raise ValueError("utterance_id must be non-empty")


def load_corpus(path: str | Path) -> list[LabeledUtterance]:
    """Load a text corpus from the fixture file format."""
    rows: list[FixtureRow] = parse_fixture(Path(path).read_text(encoding="utf-8"))
    return [LabeledUtterance(uid, lang, cls, text) for uid, lang, cls, text in rows]


def save_corpus(path: str | Path, corpus: Sequence[LabeledUtterance]) -> None:
    """Write a text corpus in the fixture file format."""
    lines = []
    for u in corpus:
        if not isinstance(u.payload, str):
            raise TypeError("only text corpora can be saved to fixture files")
        lines.append(f"{u.utterance_id}\t{u.language.value}\t{u.true_class.value}\t{u.payload}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def build_surface_corpus(lexicon: Lexicon, per_cell: int = 15) -> list[LabeledUtterance]:
    """Corpus of lexicon surfaces, ``per_cell`` per (class, language) cell.

    Cells with fewer distinct surfaces cycle through them; the default
    shape is 9 classes x 2 languages x 15 = 270 utterances.
    """
    if per_cell <= 0:
        raise ValueError("per_cell must be positive")
    by_cell: dict[tuple[ActionClass, Language], list[str]] = {}
    for entry in lexicon.entries:
        by_cell.setdefault((entry.action_class, entry.language), []).append(entry.surface)
    corpus: list[LabeledUtterance] = []
    for cls in _CLASS_ORDER:
        for lang in _LANG_ORDER:
            surfaces = by_cell[(cls, lang)]
            for i in range(per_cell):
                corpus.append(
                    LabeledUtterance(
                        f"{lang.value}-{cls.value}-{i:02d}",
                        lang,
                        cls,
                        surfaces[i % len(surfaces)],
                    )
                )
    return corpus


def corpus_replay_provider(corpus: Sequence[LabeledUtterance]) -> ReplayProvider:
    """Replay provider serving a text corpus's payloads by utterance id."""
    fixtures: dict[str, str] = {}
    for u in corpus:
        if not isinstance(u.payload, str):
            raise TypeError("corpus_replay_provider requires a text corpus")
        fixtures[u.utterance_id] = u.payload
    return ReplayProvider(fixtures)


@dataclass
class EvaluationReport:
    """Per-cell counts, confusion matrices, provider-error tallies, and
    overall accuracies for one or more modes.

    All mappings are keyed by plain strings (mode, language label, class
    label) so the JSON form mirrors the in-memory form. Confusion rows
    follow class ordinal order; column 10 counts "no class" outcomes.
    """

    schema_version: int = SCHEMA_VERSION
    per_cell: dict = field(default_factory=dict)
    confusion: dict = field(default_factory=dict)
    provider_errors: dict = field(default_factory=dict)
    overall: dict = field(default_factory=dict)

    def modes(self) -> list[str]:
        return sorted(self.per_cell)

    def accuracy(self, mode: str, language: str = "both") -> float:
        return self.overall[mode][language]

    def cell(self, mode: str, language: str, cls: str) -> dict:
        return self.per_cell[mode][language][cls]

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "per_cell": self.per_cell,
            "confusion": self.confusion,
            "provider_errors": self.provider_errors,
            "overall": self.overall,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluationReport":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema: {data.get('schema_version')!r}")
        return cls(
            schema_version=data["schema_version"],
            per_cell=data["per_cell"],
            confusion=data["confusion"],
            provider_errors=data["provider_errors"],
            overall=data["overall"],
        )

    def merge(self, other: "EvaluationReport") -> "EvaluationReport":
        """Combine reports covering disjoint mode sets."""
        shared = set(self.per_cell) & set(other.per_cell)
        if shared:
            raise ValueError(f"reports share modes: {sorted(shared)}")
        return EvaluationReport(
            per_cell={**self.per_cell, **other.per_cell},
            confusion={**self.confusion, **other.confusion},
            provider_errors={**self.provider_errors, **other.provider_errors},
            overall={**self.overall, **other.overall},
        )


def evaluate(
    corpus: Sequence[LabeledUtterance],
    lexicon: Lexicon,
    mode: str,
    provider: SpeechProvider,
    language_filter: Language | None = None,
    reject_above: int | None = None,
) -> EvaluationReport:
    """Score one mode over a corpus.

    A prediction is correct iff its class equals the ground truth; missing
    results (exact misses, fuzzy rejections, provider failures) land in
    the "no class" column, with provider failures also tallied separately.
    """
    if not corpus:
        raise ValueError("corpus is empty")
    config = ControllerConfig(
        mode=mode, language_filter=language_filter, reject_above=reject_above
    )
    langs = sorted({u.language.value for u in corpus})
    per_cell = {
        lang: {cls.value: {"correct": 0, "total": 0} for cls in _CLASS_ORDER}
        for lang in langs
    }
    confusion = {lang: [[0] * 10 for _ in range(9)] for lang in langs}
    provider_errors = {lang: 0 for lang in langs}
    for utterance in corpus:
        lang = utterance.language.value
        row = _CLASS_INDEX[utterance.true_class]
        cell = per_cell[lang][utterance.true_class.value]
        cell["total"] += 1
        source = (
            utterance.utterance_id
            if provider.input_kind == "utterance_id"
            else utterance.payload
        )
        try:
            hypothesis = provider.transcribe(source)
        except ProviderError:
            provider_errors[lang] += 1
            confusion[lang][row][NO_CLASS_COLUMN] += 1
            continue
        outcome = interpret(hypothesis, lexicon, config)
        if outcome.result is None:
            confusion[lang][row][NO_CLASS_COLUMN] += 1
            continue
        predicted = outcome.result.action_class
        confusion[lang][row][_CLASS_INDEX[predicted]] += 1
        if predicted is utterance.true_class:
            cell["correct"] += 1
    overall: dict[str, float] = {}
    grand_correct = 0
    grand_total = 0
    for lang in langs:
        correct = sum(c["correct"] for c in per_cell[lang].values())
        total = sum(c["total"] for c in per_cell[lang].values())
        overall[lang] = correct / total
        grand_correct += correct
        grand_total += total
    overall["both"] = grand_correct / grand_total
    return EvaluationReport(
        per_cell={mode: per_cell},
        confusion={mode: confusion},
        provider_errors={mode: provider_errors},
        overall={mode: overall},
    )


def _is_text_corpus(corpus: Sequence[LabeledUtterance]) -> bool:
    kinds = {isinstance(u.payload, str) for u in corpus}
    if len(kinds) != 1:
        raise TypeError("corpus mixes text and waveform payloads")
    return kinds.pop()


def degradation_sweep(
    corpus: Sequence[LabeledUtterance],
    lexicon: Lexicon,
    levels: Sequence[int | float],
    seed: int,
    provider: SpeechProvider | None = None,
    modes: Sequence[str] = ("exact", "fuzzy"),
    language_filter: Language | None = None,
    reject_above: int | None = None,
) -> list[tuple[int | float, EvaluationReport]]:
    """Evaluate all modes at each degradation level, in level order.

    Text corpora take integer edit counts (a replay provider over the
    corpus is supplied automatically); waveform corpora take noise
    amplitudes and require an explicit waveform provider. Each returned
    report covers every requested mode.
    """
    if not levels:
        raise ValueError("levels is empty")
    text_corpus = _is_text_corpus(corpus)
    if text_corpus:
        base = provider if provider is not None else corpus_replay_provider(corpus)
        for level in levels:
            if isinstance(level, bool) or not isinstance(level, int):
                raise TypeError(f"text corpora take integer edit levels, got {level!r}")
    else:
        if provider is None or provider.input_kind != "waveform":
            raise ValueError("waveform corpora require a waveform provider")
        base = provider
    results: list[tuple[int | float, EvaluationReport]] = []
    for level in levels:
        if text_corpus:
            degraded: SpeechProvider = EditNoiseProvider(base, int(level), seed)
        else:
            degraded = NoisyWaveformProvider(base, float(level), seed)
        report: EvaluationReport | None = None
        for mode in modes:
            part = evaluate(
                corpus, lexicon, mode, degraded,
                language_filter=language_filter, reject_above=reject_above,
            )
            report = part if report is None else report.merge(part)
        assert report is not None
        results.append((level, report))
    return results


def emit_report(report: EvaluationReport, fmt: str, destination: str | Path) -> None:
    """Write a report as JSON (full structure) or CSV (cell rows plus one
    table per confusion matrix). Identical reports serialize to identical
    bytes."""
    destination = Path(destination)
    if fmt == "json":
        destination.write_text(report_json(report), encoding="utf-8")
    elif fmt == "csv":
        destination.write_text(report_csv(report), encoding="utf-8")
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def report_json(report: EvaluationReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def report_csv(report: EvaluationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["mode", "language", "class", "correct", "total", "accuracy"])
    for mode in sorted(report.per_cell):
        for lang in sorted(report.per_cell[mode]):
            cells = report.per_cell[mode][lang]
            for cls in _CLASS_ORDER:
                cell = cells[cls.value]
                accuracy = cell["correct"] / cell["total"] if cell["total"] else 0.0
                writer.writerow(
                    [mode, lang, cls.value, cell["correct"], cell["total"], accuracy]
                )
    labels = [cls.value for cls in _CLASS_ORDER]
    for mode in sorted(report.confusion):
        for lang in sorted(report.confusion[mode]):
            writer.writerow([])
            writer.writerow(["confusion", mode, lang] + labels + ["no_class"])
            for cls, row in zip(_CLASS_ORDER, report.confusion[mode][lang]):
                writer.writerow([cls.value, "", ""] + [str(n) for n in row])
    return buffer.getvalue()


def load_report(path: str | Path) -> EvaluationReport:
    return EvaluationReport.from_dict(
        json.loads(Path(path).read_text(encoding="utf-8"))
    )

"""Bilingual command lexicon: action classes, entries, loading and validation.

The lexicon file format is line-oriented UTF-8: ``#`` starts a comment, blank
lines are skipped, a ``version:`` header line is required (a ``name:`` header
is optional), and each data line is ``class<TAB>language<TAB>surface``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .matching import normalize


class ActionClass(enum.Enum):
    """The nine drone commands every utterance is classified into."""

    UP = "up"
    DOWN = "down"
    GO_RIGHT = "go_right"
    GO_LEFT = "go_left"
    GO_FORWARD = "go_forward"
    GO_BACK = "go_back"
    TURN_RIGHT = "turn_right"
    TURN_LEFT = "turn_left"
    STOP = "stop"

    @property
    def label(self) -> str:
        return self.value

    @property
    def ordinal(self) -> int:
        """Stable 1-based position of the class."""
        return _ORDINALS[self]


_ORDINALS = {cls: i + 1 for i, cls in enumerate(ActionClass)}


class Language(enum.Enum):
    SPANISH = "es"
    ENGLISH = "en"

    @property
    def label(self) -> str:
        return self.value


class LexiconError(ValueError):
    """Raised for malformed or invalid lexicon documents."""


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    language: Language
    action_class: ActionClass


@dataclass(frozen=True)
class Lexicon:
    """Immutable ordered collection of entries; entry order is the fuzzy
    tie-break priority."""

    entries: tuple[LexiconEntry, ...]
    name: str = ""
    version: str = ""
    by_surface: dict[str, LexiconEntry] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        for entry in self.entries:
            self.by_surface[entry.surface] = entry

    def __len__(self) -> int:
        return len(self.entries)

    def surfaces(self) -> list[str]:
        return [entry.surface for entry in self.entries]


def exact_lookup(lexicon: Lexicon, text: str) -> ActionClass | None:
    """Class of the entry whose surface equals ``text``, if any.

    ``text`` must already be normalized; surfaces are unique, so a hit is
    unambiguous.
    """
    entry = lexicon.by_surface.get(text)
    return entry.action_class if entry is not None else None


def entries_for(lexicon: Lexicon, language: Language | None = None) -> list[LexiconEntry]:
    """Entries filtered by language, in lexicon order; all entries when None."""
    if language is None:
        return list(lexicon.entries)
    return [entry for entry in lexicon.entries if entry.language is language]


_CLASS_LABELS = {cls.value: cls for cls in ActionClass}
_LANGUAGE_LABELS = {lang.value: lang for lang in Language}


def parse_lexicon(text: str, name: str = "") -> Lexicon:
    """Parse a lexicon document and validate all invariants.

    Raises :class:`LexiconError` on syntax errors (with the line number),
    duplicate surfaces, unknown class or language labels, a missing
    ``version:`` header, or missing (class, language) coverage.
    """
    entries: list[LexiconEntry] = []
    seen: dict[str, int] = {}
    version: str | None = None
    header_name = name
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("version:"):
            version = line[len("version:"):].strip()
            continue
        if line.startswith("name:"):
            header_name = line[len("name:"):].strip()
            continue
        parts = raw_line.split("\t")
        if len(parts) != 3:
            raise LexiconError(
                f"line {lineno}: expected class<TAB>language<TAB>surface, got {raw_line!r}"
            )
        class_label, language_label, surface = (part.strip() for part in parts)
        if class_label not in _CLASS_LABELS:
            raise LexiconError(f"line {lineno}: unknown action class {class_label!r}")
        if language_label not in _LANGUAGE_LABELS:
            raise LexiconError(f"line {lineno}: unknown language {language_label!r}")
        if not surface:
            raise LexiconError(f"line {lineno}: empty surface")
        if normalize(surface) != surface:
            raise LexiconError(
                f"line {lineno}: surface {surface!r} is not in normalized form"
            )
        if surface in seen:
            raise LexiconError(
                f"line {lineno}: duplicate surface {surface!r} (first on line {seen[surface]})"
            )
        seen[surface] = lineno
        entries.append(
            LexiconEntry(surface, _LANGUAGE_LABELS[language_label], _CLASS_LABELS[class_label])
        )
    if version is None:
        raise LexiconError("missing required 'version:' header line")
    covered = {(entry.action_class, entry.language) for entry in entries}
    for cls in ActionClass:
        for lang in Language:
            if (cls, lang) not in covered:
                raise LexiconError(f"no {lang.value} entry for class {cls.value!r}")
    return Lexicon(entries=tuple(entries), name=header_name, version=version)


def load_lexicon(path: str | Path) -> Lexicon:
    """Load and validate a lexicon file."""
    path = Path(path)
    return parse_lexicon(path.read_text(encoding="utf-8"), name=path.stem)


def serialize_lexicon(lexicon: Lexicon) -> str:
    """Render a lexicon back to the file format; reparsing yields an equal
    lexicon (comments are not preserved)."""
    lines = [f"version: {lexicon.version}"]
    if lexicon.name:
        lines.append(f"name: {lexicon.name}")
    for entry in lexicon.entries:
        lines.append(
            f"{entry.action_class.value}\t{entry.language.value}\t{entry.surface}"
        )
    return "\n".join(lines) + "\n"


def default_lexicon() -> Lexicon:
    """The packaged 48-entry bilingual lexicon."""
    text = (
        resources.files("dronevoice")
        .joinpath("data/default_lexicon.tsv")
        .read_text(encoding="utf-8")
    )
    return parse_lexicon(text, name="default-bilingual")

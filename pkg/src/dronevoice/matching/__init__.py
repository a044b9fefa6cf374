"""Text normalization and edit-distance classification.

Classification compares a normalized hypothesis against lexicon surfaces,
either exactly or by minimum Levenshtein distance (unit insert/delete/
substitute costs, computed character-wise over whole sentences, spaces
included).
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import kernels
from .kernels import backend, warmup

if TYPE_CHECKING:
    from ..lexicon import ActionClass, Language, Lexicon, LexiconEntry

__all__ = [
    "normalize",
    "levenshtein",
    "MatchResult",
    "match_exact",
    "match_fuzzy",
    "backend",
    "warmup",
]


def normalize(text: str, strip_accents: bool = False) -> str:
    """Canonical form used for all comparisons.

    Lowercases, applies Unicode canonical composition (NFC), and collapses
    whitespace runs to single spaces, trimming the ends. Diacritics are
    preserved unless ``strip_accents`` is set, in which case combining
    marks are removed after decomposition. Idempotent either way.
    """
    text = unicodedata.normalize("NFC", text.lower())
    if strip_accents:
        decomposed = unicodedata.normalize("NFD", text)
        text = unicodedata.normalize(
            "NFC", "".join(ch for ch in decomposed if not unicodedata.combining(ch))
        )
    return " ".join(text.split())


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance between two strings."""
    return kernels.distance(a, b)


@dataclass(frozen=True)
class MatchResult:
    """Outcome of classifying one hypothesis against a lexicon."""

    action_class: "ActionClass"
    entry: "LexiconEntry"
    distance: int
    mode: str

    @property
    def surface(self) -> str:
        return self.entry.surface

    @property
    def language(self) -> "Language":
        return self.entry.language


def match_exact(
    text: str, lexicon: "Lexicon", language: "Language | None" = None
) -> MatchResult | None:
    """Classify only if the normalized text equals a lexicon surface.

    Returns None (the "no class" outcome) otherwise. Surfaces are unique,
    so a hit is unambiguous.
    """
    entry = lexicon.by_surface.get(normalize(text))
    if entry is None:
        return None
    if language is not None and entry.language is not language:
        return None
    return MatchResult(entry.action_class, entry, 0, "exact")


def match_fuzzy(
    text: str,
    lexicon: "Lexicon",
    language: "Language | None" = None,
    reject_above: int | None = None,
) -> MatchResult | None:
    """Classify by minimum edit distance over the lexicon.

    Ties break toward the earliest entry in lexicon order. With
    ``reject_above`` set, a minimum distance strictly greater than it
    yields None; by default fuzzy matching always classifies.
    """
    from ..lexicon import entries_for

    entries = entries_for(lexicon, language)
    if not entries:
        return None
    distances = kernels.distance_to_all(
        normalize(text), [entry.surface for entry in entries]
    )
    best = int(np.argmin(distances))
    best_distance = int(distances[best])
    if reject_above is not None and best_distance > reject_above:
        return None
    entry = entries[best]
    return MatchResult(entry.action_class, entry, best_distance, "fuzzy")

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dronevoice.lexicon import ActionClass, Language
from dronevoice.matching import (
    levenshtein,
    match_exact,
    match_fuzzy,
    normalize,
)
from oracles import levenshtein_oracle

texts = st.text(alphabet="abc áé", max_size=24)
any_texts = st.text(max_size=16)


class TestNormalize:
    def test_case_and_whitespace_folding(self):
        assert normalize("  Go   LEFT ") == "go left"

    def test_fixed_point(self):
        assert normalize("baja") == "baja"

    def test_multiword(self):
        assert normalize("Disminuir  Altura") == "disminuir altura"

    def test_tabs_and_newlines_collapse(self):
        assert normalize("go\t\nto  the\rleft") == "go to the left"

    def test_diacritics_preserved(self):
        assert normalize("Atrás") == "atrás"

    def test_nfc_composition(self):
        # a + combining acute composes to the precomposed code point
        assert normalize("atrás") == "atrás"

    def test_strip_accents(self):
        assert normalize("Atrás", strip_accents=True) == "atras"
        assert normalize("ñoño", strip_accents=True) == "nono"

    @given(any_texts)
    def test_idempotent(self, text):
        once = normalize(text)
        assert normalize(once) == once

    @given(any_texts)
    def test_idempotent_with_strip(self, text):
        once = normalize(text, strip_accents=True)
        assert normalize(once, strip_accents=True) == once


class TestLevenshtein:
    def test_insertion_example(self):
        assert levenshtein("to the left", "go to the left") == 3

    def test_substitution_deletion_example(self):
        assert levenshtein("go right", "go left") == 4

    def test_identity_and_empty(self):
        assert levenshtein("para", "para") == 0
        assert levenshtein("", "baja") == 4
        assert levenshtein("baja", "") == 4
        assert levenshtein("", "") == 0

    def test_known_small_cases(self):
        assert levenshtein("kitten", "sitting") == 3
        assert levenshtein("a", "b") == 1
        assert levenshtein("ab", "ba") == 2

    def test_spaces_count_as_characters(self):
        assert levenshtein("goleft", "go left") == 1

    def test_non_ascii(self):
        assert levenshtein("atrás", "atras") == 1
        assert levenshtein("ñ", "n") == 1

    @given(texts, texts)
    @settings(max_examples=300, deadline=None)
    def test_matches_oracle(self, a, b):
        assert levenshtein(a, b) == levenshtein_oracle(a, b)

    @given(texts, texts)
    @settings(max_examples=200, deadline=None)
    def test_symmetry(self, a, b):
        assert levenshtein(a, b) == levenshtein(b, a)

    @given(texts, texts)
    @settings(max_examples=200, deadline=None)
    def test_identity_of_indiscernibles(self, a, b):
        assert (levenshtein(a, b) == 0) == (a == b)

    @given(texts, texts, texts)
    @settings(max_examples=200, deadline=None)
    def test_triangle_inequality(self, a, b, c):
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)

    @given(texts, texts)
    @settings(max_examples=200, deadline=None)
    def test_length_bounds(self, a, b):
        d = levenshtein(a, b)
        assert abs(len(a) - len(b)) <= d <= max(len(a), len(b))


class TestMatchExact:
    def test_surface_hit(self, lexicon):
        result = match_exact("go forward", lexicon)
        assert result is not None
        assert result.action_class is ActionClass.GO_FORWARD
        assert result.distance == 0
        assert result.mode == "exact"

    def test_normalizes_input(self, lexicon):
        result = match_exact("  Go   Forward ", lexicon)
        assert result is not None
        assert result.surface == "go forward"

    def test_miss_is_none(self, lexicon):
        assert match_exact("go forwards", lexicon) is None

    def test_empty_hypothesis(self, lexicon):
        assert match_exact("", lexicon) is None

    def test_language_filter(self, lexicon):
        assert match_exact("baja", lexicon, Language.SPANISH) is not None
        assert match_exact("baja", lexicon, Language.ENGLISH) is None

    def test_every_surface_hits_own_class(self, lexicon):
        for entry in lexicon.entries:
            result = match_exact(entry.surface, lexicon)
            assert result is not None
            assert result.action_class is entry.action_class
            assert result.entry is entry


class TestMatchFuzzy:
    def test_minimizer(self, lexicon):
        # brute-force the minimizer independently
        best = min(lexicon.entries, key=lambda e: levenshtein_oracle("go to left", e.surface))
        result = match_fuzzy("go to left", lexicon)
        assert result is not None
        assert result.action_class is ActionClass.GO_LEFT
        assert result.distance == levenshtein_oracle("go to left", best.surface) == 3

    def test_surfaces_match_exactly(self, lexicon):
        for entry in lexicon.entries:
            result = match_fuzzy(entry.surface, lexicon)
            assert result is not None
            assert result.distance == 0
            assert result.action_class is entry.action_class

    def test_reject_above(self, lexicon):
        floor = min(levenshtein_oracle("xyz", e.surface) for e in lexicon.entries)
        assert floor > 1
        assert match_fuzzy("xyz", lexicon, reject_above=1) is None
        assert match_fuzzy("xyz", lexicon, reject_above=floor) is not None

    def test_always_classifies_without_threshold(self, lexicon):
        assert match_fuzzy("zzzzzzzzzzzz", lexicon) is not None

    def test_agrees_with_exact_on_hits(self, lexicon):
        for entry in lexicon.entries:
            exact = match_exact(entry.surface, lexicon)
            fuzzy = match_fuzzy(entry.surface, lexicon)
            assert exact is not None and fuzzy is not None
            assert exact.action_class is fuzzy.action_class

    def test_tie_break_is_first_entry(self, lexicon):
        # repeated calls return the identical matched entry
        first = match_fuzzy("go to left", lexicon)
        for _ in range(5):
            again = match_fuzzy("go to left", lexicon)
            assert again is not None and again.entry is first.entry
        # and the winner is the earliest entry among minimizers
        distances = [levenshtein_oracle("go to left", e.surface) for e in lexicon.entries]
        best = min(distances)
        assert first.entry is lexicon.entries[distances.index(best)]

    def test_language_filter(self, lexicon):
        result = match_fuzzy("asciende", lexicon, Language.SPANISH)
        assert result is not None
        assert result.language is Language.SPANISH

    def test_normalizes_input(self, lexicon):
        result = match_fuzzy("  GO   To   LEFT ", lexicon)
        assert result is not None
        assert result.distance == 3

    @given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz áéíóúüñ", max_size=20))
    @settings(max_examples=100, deadline=None)
    def test_fuzzy_distance_is_true_minimum(self, lexicon, text):
        result = match_fuzzy(text, lexicon)
        assert result is not None
        floor = min(levenshtein_oracle(normalize(text), e.surface) for e in lexicon.entries)
        assert result.distance == floor

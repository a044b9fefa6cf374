"""The two distance backends (jit and pure numpy) must agree everywhere."""
import importlib.util
import os
import subprocess
import sys

import numpy as np
import pytest

from dronevoice.matching import kernels
from oracles import levenshtein_oracle

NUMBA_INSTALLED = importlib.util.find_spec("numba") is not None

RNG = np.random.default_rng(20240817)
ALPHABET = list("abcdefghij áé")


def random_text(max_len: int) -> str:
    size = int(RNG.integers(0, max_len + 1))
    return "".join(RNG.choice(ALPHABET) for _ in range(size))


SAMPLE_PAIRS = [(random_text(32), random_text(32)) for _ in range(200)] + [
    ("", ""),
    ("", "abc"),
    ("abc", ""),
    ("same", "same"),
    ("to the left", "go to the left"),
]


class TestNumpyBackend:
    def test_pair_matches_oracle(self):
        for a, b in SAMPLE_PAIRS:
            assert kernels._pair_numpy(kernels.encode(a), kernels.encode(b)) == levenshtein_oracle(a, b)

    def test_pairs_batch_matches_oracle(self):
        texts = sorted({t for pair in SAMPLE_PAIRS for t in pair})
        codes, lengths = kernels.pad_encode(texts)
        idx_a = RNG.integers(0, len(texts), size=300)
        idx_b = RNG.integers(0, len(texts), size=300)
        got = kernels._pairs_numpy(codes, lengths, idx_a, idx_b)
        for k in range(300):
            assert got[k] == levenshtein_oracle(texts[idx_a[k]], texts[idx_b[k]])

    def test_pairs_batch_empty(self):
        codes, lengths = kernels.pad_encode(["a", "b"])
        empty = np.empty(0, dtype=np.int64)
        assert kernels._pairs_numpy(codes, lengths, empty, empty).size == 0


@pytest.mark.skipif(not kernels._HAVE_NUMBA, reason="numba unavailable")
class TestNumbaBackend:
    def test_active_by_default(self):
        if os.environ.get(kernels.ENV_VAR, "").lower() in ("0", "false", "off", "no"):
            pytest.skip("numba disabled via environment")
        assert kernels.backend() == "numba"

    def test_pair_matches_numpy(self):
        for a, b in SAMPLE_PAIRS:
            ca, cb = kernels.encode(a), kernels.encode(b)
            assert kernels._pair_loop(ca, cb) == kernels._pair_numpy(ca, cb)

    def test_distance_to_all_matches(self):
        texts = [b for _, b in SAMPLE_PAIRS[:50]]
        for a, _ in SAMPLE_PAIRS[:20]:
            got = kernels.distance_to_all(a, texts)
            expected = [levenshtein_oracle(a, t) for t in texts]
            assert got.tolist() == expected

    def test_distance_pairs_matches(self):
        texts = sorted({t for pair in SAMPLE_PAIRS for t in pair})
        codes, lengths = kernels.pad_encode(texts)
        idx_a = np.ascontiguousarray(RNG.integers(0, len(texts), size=500))
        idx_b = np.ascontiguousarray(RNG.integers(0, len(texts), size=500))
        got = kernels.distance_pairs(codes, lengths, idx_a, idx_b)
        want = kernels._pairs_numpy(codes, lengths, idx_a, idx_b)
        assert np.array_equal(got, want)


class TestEnvFlag:
    @pytest.mark.parametrize("value,expected", [
        ("0", "numpy"),
        ("false", "numpy"),
        ("off", "numpy"),
        ("no", "numpy"),
        ("1", "numba" if NUMBA_INSTALLED else "numpy"),
    ])
    def test_flag_selects_backend(self, value, expected):
        code = (
            "from dronevoice.matching import backend, levenshtein;"
            "print(backend(), levenshtein('go right', 'go left'))"
        )
        env = dict(os.environ, **{kernels.ENV_VAR: value})
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        )
        assert out.stdout.split() == [expected, "4"]


class TestDispatchers:
    def test_distance_pairs_str_dedupes(self):
        pairs = [("go left", "go right"), ("a", ""), ("go left", "go right")]
        got = kernels.distance_pairs_str(pairs)
        assert got.tolist() == [4, 1, 4]

    def test_warmup_idempotent(self):
        kernels.warmup()
        kernels.warmup()
        assert kernels.distance("abc", "abd") == 1

    def test_unicode_beyond_bmp(self):
        # utf-32 encoding keeps astral code points as single characters
        assert kernels.distance("a\U0001f681b", "ab") == 1

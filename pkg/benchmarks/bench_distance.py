"""Benchmark the jit and pure-numpy distance backends on shared workloads.

Runs itself once per backend in a subprocess (the backend is chosen at
import time via DRONEVOICE_NUMBA), then prints a comparison table.

    python3 benchmarks/bench_distance.py [--pairs N] [--queries N]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def build_workload(pairs: int, queries: int):
    rng = np.random.default_rng(2024)
    alphabet = list("abcdefghijklmnopqrstuvwxyz ")

    def text(max_len: int) -> str:
        return "".join(rng.choice(alphabet, size=rng.integers(1, max_len + 1)))

    pool = [text(24) for _ in range(2000)]
    pair_list = [
        (pool[int(rng.integers(len(pool)))], pool[int(rng.integers(len(pool)))])
        for _ in range(pairs)
    ]
    query_list = [text(20) for _ in range(queries)]
    return pair_list, query_list


def run_worker(pairs: int, queries: int) -> dict:
    from dronevoice.lexicon import default_lexicon
    from dronevoice.matching import kernels

    pair_list, query_list = build_workload(pairs, queries)
    surfaces = default_lexicon().surfaces()

    kernels.warmup()
    kernels.distance_pairs_str(pair_list[:10])
    kernels.distance_to_all(query_list[0], surfaces)

    start = time.perf_counter()
    pair_result = kernels.distance_pairs_str(pair_list)
    pairs_elapsed = time.perf_counter() - start

    start = time.perf_counter()
    total = 0
    for query in query_list:
        total += int(np.min(kernels.distance_to_all(query, surfaces)))
    sweep_elapsed = time.perf_counter() - start

    return {
        "backend": kernels.backend(),
        "pairs": int(pair_result.size),
        "pairs_s": pairs_elapsed,
        "sweeps": len(query_list),
        "sweep_s": sweep_elapsed,
        "checksum": int(pair_result.sum()) + total,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=200_000)
    parser.add_argument("--queries", type=int, default=10_000)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(run_worker(args.pairs, args.queries)))
        return 0

    results = []
    for flag in ("1", "0"):
        env = dict(os.environ, DRONEVOICE_NUMBA=flag)
        out = subprocess.run(
            [sys.executable, __file__, "--worker",
             "--pairs", str(args.pairs), "--queries", str(args.queries)],
            env=env, capture_output=True, text=True, check=True,
        )
        results.append(json.loads(out.stdout))

    if results[0]["checksum"] != results[1]["checksum"]:
        print("BACKENDS DISAGREE", file=sys.stderr)
        return 1

    print(f"{'backend':<8}{'batch pairs/s':>16}{'lexicon sweeps/s':>20}")
    for r in results:
        print(
            f"{r['backend']:<8}"
            f"{r['pairs'] / r['pairs_s']:>16,.0f}"
            f"{r['sweeps'] / r['sweep_s']:>20,.0f}"
        )
    numba_r = next((r for r in results if r["backend"] == "numba"), None)
    numpy_r = next((r for r in results if r["backend"] == "numpy"), None)
    if numba_r and numpy_r:
        speedup = numpy_r["pairs_s"] / numba_r["pairs_s"]
        print(f"\nbatch speedup (jit over numpy): {speedup:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

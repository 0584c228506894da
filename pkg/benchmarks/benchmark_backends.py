#!/usr/bin/env python3
"""Benchmark the compiled split kernel against the numpy fallback.

Backend selection happens at import time, so each backend runs in a child
process (FAKESCOPE_NO_EXT=1 forces the fallback). The script times the raw
kernel and a full forest cross-validation, and checks that both backends
produce identical pooled confusion counts.

Usage: python benchmarks/benchmark_backends.py
"""

import json
import os
import subprocess
import sys

WORKER = r"""
import json
import sys
import time

import numpy as np

import fakescope
from fakescope.corpus import SynthConfig, synthesize
from fakescope.features import specs_by_names
from fakescope.features.catalog import YANG_SET
from fakescope.kernels import best_threshold_split
from fakescope.learn import cross_validate

rng = np.random.Generator(np.random.PCG64(7))
sizes = (1_000, 10_000, 100_000)
kernel_times = {}
for n in sizes:
    values = rng.normal(size=n)
    y = (rng.random(n) < 0.5).astype(float)
    best_threshold_split(values, y)  # warm-up
    reps = max(3, 200_000 // n)
    start = time.perf_counter()
    for _ in range(reps):
        best_threshold_split(values, y)
    kernel_times[str(n)] = (time.perf_counter() - start) / reps

dataset = synthesize(SynthConfig.paper_like(seed=11, n_humans=400, n_fakes=400))
start = time.perf_counter()
report = cross_validate("rf", dataset, specs_by_names(YANG_SET), k=5, seed=3)
cv_time = time.perf_counter() - start
cm = report.pooled_matrix

print(json.dumps({
    "backend": fakescope.BACKEND,
    "kernel_seconds": kernel_times,
    "rf_cv_seconds": cv_time,
    "pooled": [cm.tp, cm.tn, cm.fp, cm.fn],
    "mcc": report.pooled.mcc,
}))
"""


def run_backend(force_fallback: bool) -> dict:
    env = dict(os.environ)
    if force_fallback:
        env["FAKESCOPE_NO_EXT"] = "1"
    else:
        env.pop("FAKESCOPE_NO_EXT", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKER], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    results = [run_backend(False), run_backend(True)]
    if results[0]["backend"] == results[1]["backend"]:
        print("note: compiled extension unavailable; both runs used the fallback")
    print(f"{'backend':<10} {'n=1e3':>10} {'n=1e4':>10} {'n=1e5':>10} {'rf 5-fold cv':>14}")
    for r in results:
        k = r["kernel_seconds"]
        print(
            f"{r['backend']:<10} {k['1000'] * 1e6:>8.1f}us {k['10000'] * 1e6:>8.1f}us "
            f"{k['100000'] * 1e6:>8.1f}us {r['rf_cv_seconds']:>12.2f}s"
        )
    if results[0]["pooled"] != results[1]["pooled"]:
        print("MISMATCH: backends disagree on pooled confusion counts")
        for r in results:
            print(f"  {r['backend']}: pooled={r['pooled']} mcc={r['mcc']:.6f}")
        return 1
    print(f"agreement: identical pooled counts {results[0]['pooled']}, "
          f"mcc {results[0]['mcc']:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

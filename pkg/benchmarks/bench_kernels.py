#!/usr/bin/env python3
"""Time the hot kernels under numba and under the pure-numpy fallback.

Each backend runs in its own interpreter because MCPHERSON_DISABLE_NUMBA is
read at import time. Usage:

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "max_clique n=40 p=0.7 (x5)": "clique",
    "exhaustive sweep, all graphs n=4": "sweep4",
    "restricted_search n=12": "restricted",
    "sequence_bfs n=7 (x20)": "bfs",
}


def _random_adj(rng, n, p):
    import numpy as np

    adj = np.zeros(n, dtype=np.uint64)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i] |= np.uint64(1) << np.uint64(j)
                adj[j] |= np.uint64(1) << np.uint64(i)
    return adj


def run_backend(repeat):
    import numpy as np

    from mcpherson import BACKEND, kernels

    rng = np.random.default_rng(0)
    cliques = [_random_adj(rng, 40, 0.7) for _ in range(5)]
    g12 = _random_adj(rng, 12, 0.5)
    g7 = [_random_adj(rng, 7, 0.4) for _ in range(20)]
    jobs = {
        "clique": lambda: [kernels.max_clique_mask(a, 40) for a in cliques],
        "sweep4": lambda: kernels.sweep_oracles(4, True),
        "restricted": lambda: kernels.restricted_search(g12, 12, kernels.RULE_ANY, True),
        "bfs": lambda: [kernels.sequence_bfs_min(a, 7) for a in g7],
    }
    results = {}
    for key, job in jobs.items():
        job()  # compile / warm caches
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            job()
            best = min(best, time.perf_counter() - t0)
        results[key] = best
    print(json.dumps({"backend": BACKEND, "times": results}))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        run_backend(args.repeat)
        return

    timings = {}
    for flag in ("0", "1"):
        env = dict(os.environ, MCPHERSON_DISABLE_NUMBA=flag)
        res = subprocess.run(
            [sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        payload = json.loads(res.stdout.strip().splitlines()[-1])
        timings[payload["backend"]] = payload["times"]

    print(f"{'workload':<36}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for label, key in WORKLOADS.items():
        fast, slow = timings["numba"][key], timings["numpy"][key]
        print(f"{label:<36}{fast:>12.5f}{slow:>12.5f}{slow / fast:>9.0f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Both kernels run the same problems; their results must agree exactly, and the
script aborts if they do not.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import signcons.kernel
from signcons import _pykernel
from signcons.diagnose import find_all_mics
from signcons.gen import GenParams, generate
from signcons.reduce import reduce_inputs
from signcons.solver import _local_problem

from sat import encode

try:
    from signcons import _ckernel
except ImportError:
    sys.exit("compiled kernel not built; run `pip install -e . --no-build-isolation` first")


def problem(inst):
    local = _local_problem(inst, inst.non_inputs())
    return (len(local.vertices), local.in_ptr, local.in_src, local.esign, local.vfix, local.constrained)


def random_3sat(n, seed, ratio=4.26):
    rng = random.Random(seed)
    m = int(n * ratio)
    return encode(n, [[v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), 3)] for _ in range(m)])


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def kernel_rows(quick):
    rows = []
    for alpha in (1000, 4000) if quick else (1000, 4000, 16000):
        insts = [generate(GenParams(alpha=alpha, gamma=g, seed=s)) for s in range(3) for g in (0.01, 0.1)]
        rows.append((f"generated alpha={alpha} (6 instances)", [problem(i) for i in insts]))
    for n in (40, 80) if quick else (40, 80, 120):
        seeds = 10 if n < 100 else 4
        rows.append((f"3-SAT n={n} ratio 4.26 ({seeds} instances)",
                     [problem(random_3sat(n, s)) for s in range(seeds)]))
    return rows


def diagnosis_rows(quick):
    insts = []
    for seed in range(10 if quick else 30):
        insts.append(reduce_inputs(generate(GenParams(alpha=150, gamma=0.1, seed=seed)))[0])
    return [(f"find_all_mics alpha=150 ({len(insts)} instances)", insts)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="take the best of N runs (default 3)")
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args(argv)

    print(f"{'workload':44} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, problems in kernel_rows(args.quick):
        tp, rp = timed(lambda: [_pykernel.solve(*p) for p in problems], args.repeat)
        tc, rc = timed(lambda: [_ckernel.solve(*p) for p in problems], args.repeat)
        if rp != rc:
            sys.exit(f"kernels disagree on {label}")
        print(f"{label:44} {tp * 1000:9.1f}ms {tc * 1000:9.1f}ms {tp / tc:7.1f}x")

    original = signcons.kernel.solve
    try:
        for label, insts in diagnosis_rows(args.quick):
            results = {}
            times = {}
            for name, fn in (("python", _pykernel.solve), ("cython", _ckernel.solve)):
                signcons.kernel.solve = fn
                times[name], reports = timed(lambda: [find_all_mics(i) for i in insts], args.repeat)
                results[name] = [[m.members for m in r.mics] for r in reports]
            if results["python"] != results["cython"]:
                sys.exit(f"kernels disagree on {label}")
            tp, tc = times["python"], times["cython"]
            print(f"{label:44} {tp * 1000:9.1f}ms {tc * 1000:9.1f}ms {tp / tc:7.1f}x")
    finally:
        signcons.kernel.solve = original


if __name__ == "__main__":
    main()

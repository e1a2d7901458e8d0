"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import math
import os
import random
import subprocess
import sys
import time
from pathlib import Path

TESTS = Path(__file__).resolve().parent
if str(TESTS) not in sys.path:
    sys.path.insert(0, str(TESTS))

from signcons.cli import main as cli_main  # noqa: E402
from signcons.diagnose import (  # noqa: E402
    approximate_all_mics,
    cycle_relation,
    diagnose_one,
    find_all_mics,
    is_mic,
    members_strongly_connected,
)
from signcons.gen import GenParams, generate  # noqa: E402
from signcons.io import read_instance  # noqa: E402
from signcons.reduce import reduce_inputs  # noqa: E402
from signcons.solver import brute_force_consistent, check_consistency  # noqa: E402

from oracles import brute_force_mics, truth_table_sat  # noqa: E402
from randinst import random_instance  # noqa: E402
from sat import encode, random_cnf  # noqa: E402

DATA = TESTS.parent / "data"
RESULTS: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def _quiet_cli(argv) -> tuple[int, str]:
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main([str(a) for a in argv])
    return code, buf.getvalue()


# -- shared corpora -----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def oracle_corpus():
    """Generated instances with alpha <= 12 plus hand-rolled ones with unlabeled edges and self-loops."""
    corpus = []
    for alpha in range(3, 13):
        for beta in (1.5, 2.5):
            for gamma in (0.1, 0.3):
                for seed in range(15):
                    corpus.append(generate(GenParams(alpha=alpha, beta=beta, gamma=gamma, seed=seed)))
    corpus += [random_instance(seed, n_max=10, free_max=16) for seed in range(300)]
    return corpus


@functools.lru_cache(maxsize=None)
def oracle_runs():
    runs = []
    for inst in oracle_corpus():
        expected = brute_force_mics(inst)
        got = [m.members for m in find_all_mics(inst, max_cardinality=None).mics]
        reduced = reduce_inputs(inst)[0]
        got_reduced = [m.members for m in find_all_mics(reduced, max_cardinality=None).mics]
        runs.append((inst, expected, got, got_reduced))
    return runs


ALPHAS_MIC = (50, 75, 100, 125, 150)


@functools.lru_cache(maxsize=None)
def benchmark_runs():
    out = {}
    for alpha in ALPHAS_MIC:
        rows = []
        for seed in range(50):
            inst = reduce_inputs(generate(GenParams(alpha=alpha, seed=seed)))[0]
            rows.append((inst, diagnose_one(inst)))
        out[alpha] = rows
    return out


YEAST = {
    "mic1_hsf1.txt": ("hsf1",),
    "mic2_spo12.txt": ("spo12",),
    "mic3_ino2.txt": ("ino2",),
    "mic4_hsc82_top1.txt": ("hsc82", "top1"),
    "mic5_rap1_top1.txt": ("rap1", "top1"),
    "mic6_sin3_top1_ume6.txt": ("sin3", "top1", "ume6"),
}


# -- criteria -------------------------------------------------------------------

def test_criterion1_operon_table():
    start = time.perf_counter()
    expected = {"mu1": (0, "CONSISTENT"), "mu2": (1, "INCONSISTENT"),
                "mu3": (0, "CONSISTENT"), "mu4": (1, "INCONSISTENT")}
    got = {}
    for name in expected:
        code, out = _quiet_cli(["check", DATA / f"operon_{name}.txt"])
        got[name] = (code, out.strip())
    _, out = _quiet_cli(["check", "--witness", DATA / "operon_mu3.txt"])
    want = {"obs Li +", "obs LacY -", "obs LacZ -", "obs A -", "obs cAMP-CRP +"}
    witness_ok = want <= set(out.splitlines())
    elapsed = time.perf_counter() - start
    ok = got == expected and witness_ok and elapsed < 1.0
    record(1, ok, f"operon profile verdicts {'match' if got == expected else got}; "
                  f"mu3 witness {'matches' if witness_ok else 'differs'}; {elapsed:.3f}s (< 1 s)")


def test_criterion2_small_core():
    start = time.perf_counter()
    code, out = _quiet_cli(["diagnose", DATA / "small_core.txt", "--mode", "all"])
    inst = read_instance(DATA / "small_core.txt")
    reduced, _ = reduce_inputs(inst)
    pairs = cycle_relation(reduced).pairs
    elapsed = time.perf_counter() - start
    ok = (
        code == 0
        and out == "A D\ncomplete: true\n"
        and reduced.inputs == {"B", "C", "E"}
        and pairs == {frozenset(("A", "D"))}
        and elapsed < 1.0
    )
    record(2, ok, f"MICs {out.splitlines()}; reduced inputs {sorted(reduced.inputs)}; "
                  f"cycle pairs {sorted(sorted(p) for p in pairs)}; {elapsed:.3f}s (< 1 s)")


def test_criterion3_oracle_equivalence():
    start = time.perf_counter()
    corpus = oracle_corpus()
    status_bad = sum(
        check_consistency(inst).consistent != brute_force_consistent(inst) for inst in corpus
    )
    mic_bad = sum(1 for _, exp, got, got_red in oracle_runs() if got != exp or got_red != exp)
    elapsed = time.perf_counter() - start
    ok = status_bad == 0 and mic_bad == 0 and len(corpus) >= 500 and elapsed < 300
    record(3, ok, f"{len(corpus)} instances; status mismatches {status_bad}; "
                  f"MIC-set mismatches {mic_bad}; {elapsed:.1f}s (< 300 s)")


def test_criterion4_sat_reduction():
    rng = random.Random(4)
    bad = 0
    sat_count = 0
    for _ in range(100):
        n, clauses = random_cnf(rng, max_vars=8, max_clauses=12)
        truth = truth_table_sat(n, clauses)
        sat_count += truth
        bad += check_consistency(encode(n, clauses)).consistent != truth
    record(4, bad == 0, f"100 CNFs ({sat_count} satisfiable); mismatches {bad}")


def test_criterion5_connectivity_guard():
    produced = []  # (instance, members)
    for inst, _, got, got_red in oracle_runs():
        produced += [(inst, m) for m in got]
        reduced = reduce_inputs(inst)[0]
        produced += [(reduced, m) for m in got_red]
    for rows in benchmark_runs().values():
        produced += [(inst, m.members) for inst, report in rows for m in report.mics]
    small_core = read_instance(DATA / "small_core.txt")
    for source in (small_core, reduce_inputs(small_core)[0]):
        produced += [(source, m.members) for m in find_all_mics(source).mics]
        produced += [(source, m.members) for m in approximate_all_mics(source).mics]
    for name in YEAST:
        y = read_instance(DATA / "yeast" / name)
        produced += [(y, m.members) for m in find_all_mics(y).mics]
    scc_bad = sum(1 for inst, members in produced if not members_strongly_connected(inst, members))

    pair_bad = 0
    brute = 0
    for inst, expected, _, _ in oracle_runs():
        rel = cycle_relation(inst)
        for members in expected:
            brute += 1
            pair_bad += any(
                not rel.related(a, b) for i, a in enumerate(members) for b in members[i + 1:]
            )
    ok = scc_bad == 0 and pair_bad == 0
    record(5, ok, f"{len(produced)} produced MICs, SCC violations {scc_bad}; "
                  f"{brute} brute-force MICs, cycle-relation violations {pair_bad}")


def _loglog_slope(xs, ys):
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)


def test_criterion6_scaling():
    alphas = (500, 1000, 2000, 4000)
    totals = []
    worst = 0.0
    for alpha in alphas:
        insts = [generate(GenParams(alpha=alpha, beta=2.5, gamma=0.1, seed=s)) for s in range(5)]
        best = math.inf
        for _ in range(3):
            t0 = time.perf_counter()
            for inst in insts:
                one = time.perf_counter()
                check_consistency(inst)
                worst = max(worst, time.perf_counter() - one)
            best = min(best, time.perf_counter() - t0)
        totals.append(best)
    slope = _loglog_slope(alphas, totals)
    ok = worst < 60 and slope <= 2.0
    per = ", ".join(f"{a}:{t / 5 * 1000:.1f}ms" for a, t in zip(alphas, totals))
    record(6, ok, f"mean check time {per}; slowest {worst:.3f}s (< 60 s); "
                  f"log-log growth exponent {slope:.2f} (<= 2)")


def test_criterion7_benchmark_mics():
    parts = []
    ok = True
    for alpha, rows in benchmark_runs().items():
        solved = 0
        for inst, report in rows:
            if report.budget_exhausted:
                continue
            if report.mics:
                good = all(is_mic(inst, m.members)[0] for m in report.mics)
            else:
                good = check_consistency(inst).consistent
            solved += good
        ok &= solved >= 45
        parts.append(f"{alpha}:{solved}/50")
    record(7, ok, f"solved and verified within the default budget {' '.join(parts)} (>= 90%)")


def test_criterion8_yeast_fragments():
    parts = []
    ok = True
    for name, members in YEAST.items():
        inst = read_instance(DATA / "yeast" / name)
        good = is_mic(inst, members)[0]
        ok &= good
        parts.append(f"{{{','.join(members)}}}:{'ok' if good else 'no'}")
    record(8, ok, "; ".join(parts))


def _cli_commands(tmp: Path):
    gen = tmp / "gen100.txt"
    gen.write_text(subprocess.run(
        [sys.executable, "-m", "signcons.cli", "generate", "--alpha", "100", "--seed", "7"],
        capture_output=True, text=True, check=True).stdout)
    cmds = [["generate", "--alpha", "300", "--beta", "2.5", "--gamma", "0.05", "--seed", "42"]]
    for path in (DATA / "small_core.txt", DATA / "operon_mu3.txt", DATA / "operon_mu4.txt", gen):
        cmds += [
            ["check", "--witness", path],
            ["check", "--no-reduce", "--witness", path],
            ["diagnose", "--mode", "all", path],
            ["diagnose", "--mode", "one", path],
            ["diagnose", "--mode", "approx", "--json", path],
            ["diagnose", "--mode", "all", "--no-reduce", "--json", path],
            ["reduce", path],
            ["export", "--format", "asp", path],
            ["export", "--format", "dot", path],
        ]
    cmds.append(["diagnose", "--mode", "all", DATA / "yeast" / "mic6_sin3_top1_ume6.txt"])
    return cmds


def test_criterion9_determinism():
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        differing = []
        cmds = _cli_commands(tmp)
        for cmd in cmds:
            outs = []
            for hashseed in ("0", "12345"):
                env = dict(os.environ, PYTHONHASHSEED=hashseed)
                proc = subprocess.run(
                    [sys.executable, "-m", "signcons.cli", *map(str, cmd)],
                    capture_output=True, env=env,
                )
                outs.append((proc.returncode, proc.stdout))
            if outs[0] != outs[1]:
                differing.append(" ".join(map(str, cmd)))
    record(9, not differing,
           f"{len(cmds)} commands run twice under different hash seeds; "
           f"differing stdout {len(differing)}" + (f" ({differing[:3]})" if differing else ""))


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

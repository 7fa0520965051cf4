"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import json
import os
import subprocess
import sys
import time

import pytest

from doubleloop import verify

CFG = verify.SuiteConfig(seed=42)


@pytest.fixture
def report(capsys):
    def emit(tag: str, ok: bool, detail: str, elapsed: float) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {tag}: {detail} ({elapsed:.1f}s)")

    return emit


def run_check(key):
    t0 = time.perf_counter()
    res = verify.ACCEPTANCE[key](CFG)
    return res, time.perf_counter() - t0


def law_summary(laws):
    return "; ".join(f"{l['name']} {l['checked'] - l['failed']}/{l['checked']}" for l in laws)


def test_a01_cell_counts(report):
    res, dt = run_check("A1")
    ok = res["ok"] and dt < 10
    report("A1 cell counts n<=8", ok, f"{len(res['levels'])} levels", dt)
    assert ok


def test_a02_order_criterion(report):
    res, dt = run_check("A2")
    ok = res["ok"] and dt < 60
    report("A2 leq vs closure oracle n<=5", ok, f"{res['pairs']} pairs, {len(res['mismatches'])} mismatches", dt)
    assert ok


def test_a03_preoperad_laws(report):
    res, dt = run_check("A3")
    report("A3 preoperad laws", res["ok"], law_summary(res["laws"]), dt)
    assert res["ok"]


def test_a04_insertions(report):
    res, dt = run_check("A4")
    report("A4 insertion suite |b|<=4", res["ok"], law_summary(res["laws"]), dt)
    assert res["ok"], json.dumps([l["examples"][:3] for l in res["laws"] if not l["ok"]])


def test_a05_coend_exactness(report):
    res, dt = run_check("A5")
    ok = res["ok"] and dt < 120
    report("A5 coend exactness s<=3 k<=4", ok, f"{len(res['cases'])} cases", dt)
    assert ok


def test_a06_boundary_squares(report):
    res, dt = run_check("A6")
    report("A6 boundary squares", res["ok"], f"{len(res['complexes'])} complexes", dt)
    assert res["ok"]


def test_a07_dual_homology(report):
    res, dt = run_check("A7")
    ok = res["ok"] and dt < 300
    betti = {r["n"]: r["cellular"]["betti"] for r in res["levels"]}
    report("A7 cellular vs order complex", ok, f"betti {betti}", dt)
    assert ok


def test_a08_shuffle_boundary(report):
    res, dt = run_check("A8")
    report("A8 shuffle identification k<=5", res["ok"], f"{len(res['cases'])} values of k", dt)
    assert res["ok"]


def test_a09_coproduct(report):
    res, dt = run_check("A9")
    report("A9 coproduct = shuffle map", res["ok"], f"{res['checked']} words", dt)
    assert res["ok"]


def test_a10_lie_ranks(report):
    res, dt = run_check("A10")
    ok = res["ok"] and dt < 120
    report("A10 Lie(n) ranks", ok, str([r["rank"] for r in res["ranks"]]), dt)
    assert ok


def test_a11_james_hopf(report):
    res, dt = run_check("A11")
    report("A11 James-Hopf suite levels<=7", res["ok"], law_summary(res["laws"]), dt)
    assert res["ok"]


def test_a12_relation_table(report):
    res, dt = run_check("A12")
    report("A12 bi-Δ relation table", res["ok"], law_summary(res["laws"]), dt)
    assert res["ok"]


def test_a13_cohen_surjection(report):
    res, dt = run_check("A13")
    report("A13 p_n onto, ker p_n = Z_n", res["ok"], law_summary(res["laws"]), dt)
    assert res["ok"]


def test_a14_determinism(report):
    cmd = [sys.executable, "-m", "doubleloop", "verify", "all", "--seed", "42"]
    env = {**os.environ, "PYTHONHASHSEED": "random"}
    t0 = time.perf_counter()
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.DEVNULL, env=env) for _ in range(2)]
    outs = [p.communicate()[0] for p in procs]
    dt = time.perf_counter() - t0
    same = outs[0] == outs[1] and bool(outs[0])
    ok = same and dt < 900
    ids = [c["id"] for c in json.loads(outs[0])["checks"]] if outs[0] else []
    report("A14 determinism", ok, f"identical={same}, {len(ids)} checks per run, both runs concurrently", dt)
    assert ok

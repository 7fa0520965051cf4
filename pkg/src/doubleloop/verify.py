"""The verification suite behind ``doubleloop verify all``.

Each check returns a JSON-ready dict with at least ``name`` and ``ok``.  Nothing
time-dependent goes into the payload, so equal seeds give byte-identical output.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable

from . import bidelta, chains, coend, extension, nilpotent, poset, preoperad, tensoralg

SCHEMA = "doubleloop.verify/1"


@dataclass(frozen=True)
class SuiteConfig:
    """Bounds for the suite; defaults are the acceptance bounds."""

    seed: int = 42
    census_max_n: int = 8
    order_max_n: int = 5
    preoperad_exhaustive_l: int = 4
    preoperad_fuzz: int = 1000
    preoperad_fuzz_l: int = 6
    lambda_max_k: int = 5
    insertion_max_k: int = 4
    coend_max_s: int = 3
    coend_max_k: int = 4
    f_max_n: int = 6
    d_max_k: int = 5
    d_max_s: int = 3
    oracle_max_n: int = 4
    shuffle_max_k: int = 5
    coproduct_max_len: int = 6
    coproduct_fuzz: int = 100
    lie_max_n: int = 6
    jh_max_level: int = 7
    jh_fuzz: int = 500
    relation_max_level: int = 5
    relation_fuzz: int = 500
    cohen_max_level: int = 6
    axioms_max_n: int = 5
    order_sample_n: int = 6
    order_sample_size: int = 400


def _law(rep: preoperad.LawReport) -> dict:
    return rep.to_json()


# -- acceptance criteria ---------------------------------------------------------------


def check_cell_counts(cfg: SuiteConfig) -> dict:
    rows, ok = [], True
    for n in range(1, cfg.census_max_n + 1):
        census = poset.cell_census(n)
        got = [census.get(i, 0) for i in range(n)]
        want = [poset.expected_cell_count(n, i) for i in range(n)]
        if n <= 6:
            listed = [len(poset.enumerate_cells(n, i)) for i in range(n)]
            ok &= listed == want
        ok &= got == want
        rows.append({"n": n, "counts": got, "expected": want})
    return {"name": "cell counts n!*C(n-1,i)", "ok": ok, "levels": rows}


def check_order_criterion(cfg: SuiteConfig) -> dict:
    pairs, bad = 0, []
    for n in range(1, cfg.order_max_n + 1):
        cells = poset.enumerate_cells(n)
        for a in cells:
            ups = poset.oracle_upset(a)
            for b in cells:
                pairs += 1
                if poset.leq(a, b) != (b in ups):
                    bad.append([str(a), str(b)])
    return {"name": "leq agrees with merge closure", "ok": not bad, "pairs": pairs, "mismatches": bad[:10]}


def check_preoperad_laws(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed)
    laws = [
        preoperad.check_functoriality(cfg.preoperad_exhaustive_l, rng, cfg.preoperad_fuzz, cfg.preoperad_fuzz_l),
        preoperad.check_order_preservation(cfg.preoperad_exhaustive_l, rng, cfg.preoperad_fuzz, cfg.preoperad_fuzz_l),
        preoperad.check_lambda_relations(cfg.lambda_max_k),
    ]
    return {"name": "preoperad laws", "ok": all(l.ok for l in laws), "laws": [_law(l) for l in laws]}


def check_insertions(cfg: SuiteConfig) -> dict:
    laws = [preoperad.check_insertion_retraction(cfg.insertion_max_k)]
    laws += list(preoperad.check_insertion_relations(cfg.insertion_max_k).values())
    return {"name": "insertion maps", "ok": all(l.ok for l in laws), "laws": [_law(l) for l in laws]}


def check_coend_exactness(cfg: SuiteConfig) -> dict:
    reports = [
        coend.verify_exactness(s, k).to_json()
        for s in range(cfg.coend_max_s + 1)
        for k in range(1, cfg.coend_max_k + 1)
    ]
    return {"name": "coend exact sequence", "ok": all(r["ok"] for r in reports), "cases": reports}


def check_boundary_squares(cfg: SuiteConfig) -> dict:
    rows = []
    for n in range(1, cfg.f_max_n + 1):
        cx = chains.build_F_complex(n)
        rows.append({"space": f"F({n})", "nonzero": sum(cx.squares().values())})
    for k in range(1, cfg.d_max_k + 1):
        for s in range(cfg.d_max_s + 1):
            cx = chains.build_D_complex(k, s)
            rows.append({"space": f"D_{k}(s={s})", "nonzero": sum(cx.squares().values())})
    return {"name": "boundary squares to zero", "ok": all(r["nonzero"] == 0 for r in rows), "complexes": rows}


def check_dual_homology(cfg: SuiteConfig) -> dict:
    rows, ok = [], True
    for n in range(1, cfg.f_max_n + 1):
        h = chains.homology(chains.build_F_complex(n))
        row = {"n": n, "cellular": h.to_json()}
        ok &= h.betti[0] == 1 and not h.torsion[0]
        if n <= cfg.oracle_max_n:
            o = chains.order_complex_homology(n)
            width = max(len(h.betti), len(o.betti))
            pad = lambda v, fill: v + [fill] * (width - len(v))  # noqa: E731
            same = pad(h.betti, 0) == pad(o.betti, 0) and pad(h.torsion, []) == pad(o.torsion, [])
            row["order_complex"] = o.to_json()
            row["agree"] = same
            ok &= same
        rows.append(row)
    return {"name": "cellular vs order-complex homology", "ok": ok, "levels": rows}


def check_shuffle_boundary(cfg: SuiteConfig) -> dict:
    reps = [chains.shuffle_boundary_check(k).to_json() for k in range(2, cfg.shuffle_max_k + 1)]
    return {"name": "top-cell boundary vs shuffle components", "ok": all(r["ok"] for r in reps), "cases": reps}


def check_coproduct(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed + 1)
    checked, bad = 0, []
    L = cfg.coproduct_max_len
    for k in range(1, L + 1):
        for w in itertools.permutations(range(1, L + 1), k):
            checked += 1
            lhs = tensoralg.reduced_coproduct_quotient(w)
            rhs = tensoralg.shuffle_map(w) if k >= 2 else tensoralg.SplitTensorElement({})
            if lhs != rhs:
                bad.append(list(w))
    for _ in range(cfg.coproduct_fuzz):
        k = rng.randint(2, 8)
        w = tuple(rng.randint(1, 3) for _ in range(k))
        checked += 1
        if tensoralg.reduced_coproduct_quotient(w) != tensoralg.shuffle_map(w):
            bad.append(list(w))
    return {"name": "reduced coproduct equals shuffle map", "ok": not bad, "checked": checked, "failures": bad[:10]}


def check_lie_ranks(cfg: SuiteConfig) -> dict:
    rows = [tensoralg.lie_rank(n).to_json() for n in range(2, cfg.lie_max_n + 1)]
    return {"name": "Lie(n) rank (n-1)!", "ok": all(r["rank"] == r["expected"] for r in rows), "ranks": rows}


def check_james_hopf(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed + 2)
    rep = bidelta.verify_jh_identities(bidelta.abelianized_phi0(), cfg.jh_max_level, rng, cfg.jh_fuzz)
    return {"name": "James-Hopf identities (abelianised Φ_0 Z)", **rep.to_json()}


def check_relation_table(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed + 3)
    laws = [
        bidelta.check_relation_table(bidelta.build_phi0("Z"), cfg.relation_max_level, rng, cfg.relation_fuzz),
        bidelta.check_relation_table(bidelta.abelianized_phi0(), cfg.relation_max_level + 2),
    ]
    return {"name": "bi-Δ relation table", "ok": all(l.ok for l in laws), "laws": [_law(l) for l in laws]}


def check_cohen_surjection(cfg: SuiteConfig) -> dict:
    laws = list(bidelta.check_cohen_surjection(bidelta.abelianized_phi0(), cfg.cohen_max_level).values())
    return {"name": "p_n onto with kernel Z_n", "ok": all(l.ok for l in laws), "laws": [_law(l) for l in laws]}


# -- module invariants beyond the acceptance list --------------------------------------


def _up_sets(cells: list) -> dict:
    maps = [(b, b.block_of(), b.position_of(), len(b.blocks)) for b in cells]
    return {a: {b for b, bb, pb, nb in maps if poset.leq_with_maps(a, bb, pb, nb)} for a in cells}


def check_poset_axioms(cfg: SuiteConfig) -> dict:
    bad = []
    for n in range(1, cfg.axioms_max_n + 1):
        cells = poset.enumerate_cells(n)
        up = _up_sets(cells)
        for a in cells:
            if a not in up[a] or a.pair_form() != poset.OrderedPartition.from_pair(*a.pair_form()).pair_form():
                bad.append(["reflexive/pair", str(a)])
            for b in up[a]:
                if b != a and (a in up[b] or b.degree <= a.degree):
                    bad.append(["antisymmetric/degree", str(a), str(b)])
                if not up[b] <= up[a]:
                    bad.append(["transitive", str(a), str(b)])
    return {"name": f"partial order axioms n <= {cfg.axioms_max_n}", "ok": not bad, "failures": bad[:10]}


def check_order_sample(cfg: SuiteConfig) -> dict:
    """Seeded sources at the largest size, each compared with the oracle against every target."""
    n = cfg.order_sample_n
    cells = poset.enumerate_cells(n)
    maps = [(b, b.block_of(), b.position_of(), len(b.blocks)) for b in cells]
    sources = random.Random(cfg.seed + 11).sample(cells, min(cfg.order_sample_size, len(cells)))
    bad = []
    for a in sources:
        oracle = poset.oracle_upset(a)
        for b, bb, pb, nb in maps:
            if poset.leq_with_maps(a, bb, pb, nb) != (b in oracle):
                bad.append([str(a), str(b)])
    return {
        "name": f"order criterion vs merge oracle, {len(sources)} sampled sources in L({n})",
        "ok": not bad,
        "pairs": len(sources) * len(cells),
        "failures": bad[:10],
    }


def check_preoperad_paths(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed + 4)
    bad = []
    for l in range(1, 6):
        cells = poset.enumerate_cells(l)
        for k in range(1, l + 1):
            for phi in itertools.islice(preoperad.all_injections(k, l), 40):
                for a in cells[:: max(1, len(cells) // 50)]:
                    if preoperad.pullback(phi, a) != preoperad.pullback_by_restriction(phi, a):
                        bad.append(["pullback", list(phi.images), str(a)])
        if l >= 2:
            for a in cells:
                for i in range(l):
                    if preoperad.degeneracy_pullback(i, a) != preoperad.pullback(preoperad.degeneracy(i, l - 1), a):
                        bad.append(["degeneracy", i, str(a)])
    for _ in range(200):
        n = rng.randint(1, 5)
        s, t = list(range(1, n + 1)), list(range(1, n + 1))
        rng.shuffle(s)
        rng.shuffle(t)
        a = preoperad.random_cell(n, rng)
        st = [s[t[i] - 1] for i in range(n)]
        lhs = preoperad.symmetric_action(st, a)
        rhs = preoperad.symmetric_action(t, preoperad.symmetric_action(s, a))
        if lhs != rhs:
            bad.append(["contravariance", s, t, str(a)])
    return {"name": "pullback code paths and symmetric action", "ok": not bad, "failures": bad[:10]}


def check_coend_invariants(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed + 5)
    bad = []
    for _ in range(300):
        k, s = rng.randint(1, 5), rng.randint(0, 3)
        cell = preoperad.random_cell(k, rng)
        labels = [rng.randint(0, s) for _ in range(k)]
        c = coend.canonicalize(cell, labels)
        sigma = list(range(1, k + 1))
        rng.shuffle(sigma)
        moved = preoperad.symmetric_action(sigma, cell)
        moved_labels = [labels[sigma[u - 1] - 1] for u in range(1, k + 1)]
        if coend.canonicalize(moved, moved_labels) != c:
            bad.append(["representative", str(cell), labels, sigma])
        if c.cell is not None and coend.canonicalize(c.cell, c.labels) != c:
            bad.append(["idempotent", str(cell), labels])
        if k <= 4 and coend.canonicalize_by_relations(cell, labels) != c:
            bad.append(["slow path", str(cell), labels])
    counts = []
    for s in range(0, 3):
        fast = coend.enumerate_coend(s, 4)
        slow = coend.enumerate_coend_by_quotient(s, 4)
        same = fast == slow
        for k in range(1, 5):
            want = len(poset.enumerate_cells(k)) * s**k // factorial(k)
            same &= len(fast[k]) == want
        counts.append({"s": s, "sizes": [len(fast[k]) for k in sorted(fast)], "agree": same})
        if not same:
            bad.append(["count", s])
    well = 0
    for k in range(1, 4):
        for s in range(0, 3):
            for c in preoperad.epsilon_cases(k):
                for cell in poset.enumerate_cells(k):
                    for labels in itertools.product(range(s + 1), repeat=k):
                        orb = coend.orbit_class(cell, labels)
                        well += 1
                        if coend.coend_class(coend.f_map(c, orb)) != coend.coend_class(orb):
                            bad.append(["f then strip", c.i, c.j, c.eps, str(cell), list(labels)])
    return {"name": "coend canonical forms and counts", "ok": not bad, "counts": counts,
            "f_checked": well, "failures": bad[:10]}


def check_chain_invariants(cfg: SuiteConfig) -> dict:
    rows, ok = [], True
    for n in range(1, cfg.f_max_n + 1):
        cx = chains.build_F_complex(n)
        want = sum((-1) ** i * poset.expected_cell_count(n, i) for i in range(n))
        lad = chains.ladder_composites(cx, strict=False)
        col = chains.top_collapse(cx)
        good = cx.euler_characteristic() == want and lad.ok and len(col.image_basis) == factorial(n)
        ok &= good
        rows.append({"space": f"F({n})", "euler": cx.euler_characteristic(), "ladder_ok": lad.ok,
                     "top_cells": len(col.image_basis), "ok": good})
    for k in range(1, cfg.d_max_k + 1):
        for s in range(cfg.d_max_s + 1):
            lad = chains.ladder_composites(chains.build_D_complex(k, s), strict=False)
            ok &= lad.ok
    d2 = chains.top_collapse(chains.build_D_complex(2, 1))
    ok &= d2.rank == 1
    return {"name": "Euler characteristic, ladder composites, top collapse", "ok": ok, "levels": rows,
            "D2_collapse_rank": d2.rank}


def check_tensor_counts(cfg: SuiteConfig) -> dict:
    bad = []
    for k in range(2, 9):
        w = tuple(range(1, k + 1))
        if tensoralg.shuffle_map(w).term_count() != 2**k - 2:
            bad.append(["total", k])
        for i in range(1, k):
            if tensoralg.shuffle_map(w, (i, k - i)).term_count() != comb(k, i):
                bad.append(["component", k, i])
    return {"name": "shuffle term counts", "ok": not bad, "failures": bad}


def check_richer_instances(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed + 6)
    out, ok = [], True
    for L, lv in ((2, 6), (3, 4)):
        inst = bidelta.AbelianInstance(L)
        jh = bidelta.verify_jh_identities(inst, lv, rng, 100)
        rel = bidelta.check_relation_table(inst, lv)
        coh = bidelta.check_cohen_surjection(inst, lv)
        good = jh.ok and rel.ok and all(r.ok for r in coh.values())
        ok &= good
        out.append({"max_len": L, "levels": lv, "ok": good, "ranks": bidelta.cohen_summary(inst, lv)})
    return {"name": "identities on tensor-word instances", "ok": ok, "instances": out}


def check_magnus(cfg: SuiteConfig) -> dict:
    rng = random.Random(cfg.seed + 7)
    bad = []
    for _ in range(200):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        u = [(rng.randint(1, r), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, 5))]
        v = [(rng.randint(1, r), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, 5))]
        G = nilpotent.NilpotentQuotient(r, c)
        lhs = nilpotent.magnus_eval(u + v, c).as_dict()
        rhs = G.mul(nilpotent.magnus_eval(u, c).as_dict(), nilpotent.magnus_eval(v, c).as_dict())
        if lhs != rhs:
            bad.append([u, v, c])
        a = nilpotent.magnus_eval(u, c).as_dict()
        if G.from_coordinates(G.coordinates(a)) != a:
            bad.append(["malcev", u, c])
    return {"name": "Magnus evaluation is multiplicative", "ok": not bad, "failures": bad[:10]}


def check_extensions(cfg: SuiteConfig) -> dict:
    P = bidelta.build_phi0("Z")
    cases = []
    comm = extension.parse_generators(P, "1:1,2,-1,-2")
    square = extension.parse_generators(P, "0:1^2")
    e1 = extension.normal_bidelta_extension(comm, "abelian", 4)
    cases.append({"case": "commutator, abelian", "ok": all(not lv.rows for lv in e1.levels)})
    e2 = extension.normal_bidelta_extension(square, "abelian", 4)
    doubled = all(lv.rows == [[2 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
                  for n, lv in enumerate(e2.levels))
    cases.append({"case": "square, abelian", "ok": doubled})
    for ext, label in ((e1, "commutator abelian"), (e2, "square abelian"),
                       (extension.normal_bidelta_extension(comm, "nilpotent:2", 3), "commutator nilpotent:2"),
                       (extension.normal_bidelta_extension(square, "nilpotent:2", 3), "square nilpotent:2")):
        cases.append({"case": f"closure audit, {label}", "ok": extension.audit_closure(ext)["ok"]})
    t1 = extension.trivial_composite_check(comm, "abelianization", "nilpotent:2", 3)
    t2 = extension.trivial_composite_check(extension.parse_generators(P, "0:1^2"), "identity", "abelian", 3)
    t3 = extension.trivial_composite_check(square, "mod:2", "abelian", 4)
    cases.append({"case": "abelianisation kills commutators", "ok": t1.hypothesis_ok and t1.trivial})
    cases.append({"case": "identity does not kill x1^2", "ok": not t2.hypothesis_ok})
    cases.append({"case": "mod 2 kills the doubled extension", "ok": t3.hypothesis_ok and t3.trivial})
    return {"name": "normal bi-Δ-extensions", "ok": all(c["ok"] for c in cases), "cases": cases}


ACCEPTANCE: dict[str, Callable[[SuiteConfig], dict]] = {
    "A1": check_cell_counts,
    "A2": check_order_criterion,
    "A3": check_preoperad_laws,
    "A4": check_insertions,
    "A5": check_coend_exactness,
    "A6": check_boundary_squares,
    "A7": check_dual_homology,
    "A8": check_shuffle_boundary,
    "A9": check_coproduct,
    "A10": check_lie_ranks,
    "A11": check_james_hopf,
    "A12": check_relation_table,
    "A13": check_cohen_surjection,
}

INVARIANTS: dict[str, Callable[[SuiteConfig], dict]] = {
    "poset-axioms": check_poset_axioms,
    "order-sample": check_order_sample,
    "preoperad-paths": check_preoperad_paths,
    "coend-invariants": check_coend_invariants,
    "chain-invariants": check_chain_invariants,
    "tensor-counts": check_tensor_counts,
    "tensor-instances": check_richer_instances,
    "magnus": check_magnus,
    "extensions": check_extensions,
}


def run_all(cfg: SuiteConfig | None = None, only: list[str] | None = None, log=sys.stderr) -> dict:
    """Run every registered check; timings go to ``log`` only."""
    cfg = cfg or SuiteConfig()
    checks = {**ACCEPTANCE, **INVARIANTS}
    keys = only or list(checks)
    results = []
    for key in keys:
        t0 = time.perf_counter()
        res = checks[key](cfg)
        elapsed = time.perf_counter() - t0
        if log is not None:
            print(f"[{'PASS' if res['ok'] else 'FAIL'}] {key:18s} {res['name']} ({elapsed:.1f}s)", file=log)
        results.append({"id": key, **res})
    return {"schema": SCHEMA, "seed": cfg.seed, "ok": all(r["ok"] for r in results), "checks": results}

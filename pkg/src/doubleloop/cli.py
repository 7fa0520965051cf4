"""``doubleloop`` command line.

JSON goes to stdout with sorted keys and a versioned ``schema`` field; a one-line
summary goes to stderr.  Exit status: 0 when everything requested passes, 1 when a
check fails (the payload carries the counterexamples), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from . import bidelta, chains, coend, extension, nilpotent, poset, preoperad, tensoralg, verify
from .errors import DoubleLoopError

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(kind: str, payload: dict, summary: str, out, err) -> int:
    payload = {"schema": f"doubleloop.{kind}/1", **payload}
    out.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
    err.write(summary + "\n")
    return 0 if payload.get("ok", True) else 1


# -- poset -------------------------------------------------------------------------------


def cmd_poset_enum(a, out, err) -> int:
    cells = poset.enumerate_cells(a.n, a.dim)
    if a.format == "dot":
        if a.dim is None:
            out.write(poset.hasse_dot(a.n))
        else:
            out.write("digraph cells {\n" + "".join(f'  "{c}";\n' for c in cells) + "}\n")
        err.write(f"{len(cells)} cells\n")
        return 0
    payload = {"n": a.n, "dim": a.dim, "count": len(cells), "cells": [c.to_json() for c in cells]}
    return _emit("poset.enum", payload, f"L({a.n}): {len(cells)} cells", out, err)


def cmd_poset_hasse(a, out, err) -> int:
    edges = poset.cover_relations(a.n)
    if a.dot:
        out.write(poset.hasse_dot(a.n))
        err.write(f"L({a.n}): {len(edges)} covering relations\n")
        return 0
    payload = {"n": a.n, "edges": [[str(x), str(y)] for x, y in edges]}
    return _emit("poset.hasse", payload, f"L({a.n}): {len(edges)} covering relations", out, err)


# -- preoperad ---------------------------------------------------------------------------


def cmd_preoperad_verify(a, out, err) -> int:
    rng = random.Random(a.seed)
    laws = [
        preoperad.check_functoriality(a.max_n, rng, a.fuzz, max(a.max_n, 6)),
        preoperad.check_order_preservation(a.max_n, rng, a.fuzz, max(a.max_n, 6)),
        preoperad.check_lambda_relations(a.max_n),
        preoperad.check_insertion_retraction(a.max_n),
        *preoperad.check_insertion_relations(a.max_n).values(),
    ]
    ok = all(l.ok for l in laws)
    lines = ", ".join(f"{l.name}: {l.checked - l.failed}/{l.checked}" for l in laws)
    payload = {"seed": a.seed, "max_n": a.max_n, "ok": ok, "laws": [l.to_json() for l in laws]}
    return _emit("preoperad.verify", payload, lines, out, err)


# -- coend -------------------------------------------------------------------------------


def cmd_coend_enum(a, out, err) -> int:
    classes = coend.enumerate_coend(a.set_size, a.max_k)
    sizes = {str(k): len(v) for k, v in classes.items()}
    payload = {
        "set_size": a.set_size,
        "max_k": a.max_k,
        "counts": sizes,
        "classes": {str(k): [c.to_json() for c in v] for k, v in classes.items()},
    }
    return _emit("coend.enum", payload, f"classes per k: {sizes}", out, err)


def cmd_coend_exact(a, out, err) -> int:
    rep = coend.verify_exactness(a.set_size, a.k).to_json()
    return _emit("coend.exact", {"ok": rep["ok"], "report": rep},
                 f"s={a.set_size} k={a.k}: {'exact' if rep['ok'] else 'NOT exact'}", out, err)


# -- chains ------------------------------------------------------------------------------


def _complex(a):
    if a.space == "F":
        return chains.build_F_complex(a.n)
    if a.set_size is None:
        raise UsageError("--space D needs --set-size")
    return chains.build_D_complex(a.n, a.set_size)


def cmd_chains_homology(a, out, err) -> int:
    cx = _complex(a)
    h = chains.homology(cx)
    sq = cx.squares()
    payload = {
        "space": a.space,
        "n": a.n,
        "set_size": a.set_size,
        "ranks": [len(b) for b in cx.basis],
        "boundary_squares_nonzero": sum(sq.values()),
        "homology": h.to_json(),
        "ok": not any(sq.values()),
    }
    return _emit("chains.homology", payload, f"{cx.name}: betti {h.betti}, torsion {h.torsion}", out, err)


def cmd_chains_shuffle(a, out, err) -> int:
    rep = chains.shuffle_boundary_check(a.k).to_json()
    return _emit("chains.shuffle-check", rep, f"k={a.k}: {'match' if rep['ok'] else 'MISMATCH'}", out, err)


def cmd_chains_ladder(a, out, err) -> int:
    cx = _complex(a)
    rep = chains.ladder_composites(cx, strict=False).to_json()
    collapse = chains.top_collapse(cx).to_json()
    payload = {"space": a.space, "n": a.n, "set_size": a.set_size, **rep, "top_collapse": collapse}
    return _emit("chains.ladder", payload, f"{cx.name}: composites {'vanish' if rep['ok'] else 'NONZERO'}",
                 out, err)


# -- tensor ------------------------------------------------------------------------------


def cmd_tensor_shuffle(a, out, err) -> int:
    comp = tuple(a.component) if a.component else None
    if comp is not None and len(comp) != 2:
        raise UsageError("--component takes two integers i,j")
    el = tensoralg.shuffle_map(a.word, comp)
    payload = {"word": a.word, "component": a.component, "terms": el.to_json(), "term_count": el.term_count()}
    return _emit("tensor.shuffle", payload, f"{el.term_count()} terms", out, err)


def cmd_tensor_lie_rank(a, out, err) -> int:
    r = tensoralg.lie_rank(a.n).to_json()
    r["ok"] = r["rank"] == r["expected"]
    return _emit("tensor.lie-rank", r, f"rank Lie({a.n}) = {r['rank']}", out, err)


def cmd_tensor_coproduct(a, out, err) -> int:
    cfg = verify.SuiteConfig(seed=a.seed, coproduct_max_len=a.max_len, coproduct_fuzz=a.fuzz)
    rep = verify.check_coproduct(cfg)
    return _emit("tensor.coproduct-check", {"seed": a.seed, **rep},
                 f"{rep['checked']} words, {len(rep['failures'])} mismatches shown", out, err)


# -- bidelta -----------------------------------------------------------------------------


def cmd_bidelta_jh(a, out, err) -> int:
    inst = bidelta.AbelianInstance(a.max_len)
    rep = bidelta.verify_jh_identities(inst, a.max_level, random.Random(a.seed), a.fuzz).to_json()
    failed = [l["name"] for l in rep["laws"] if not l["ok"]]
    return _emit("bidelta.verify-jh", {"seed": a.seed, "max_level": a.max_level, "max_len": a.max_len, **rep},
                 "all identities hold" if not failed else f"failed: {failed}", out, err)


def _free_group_letters(text: str) -> list[tuple[int, int]]:
    letters = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if "^" in tok:
            g, p = tok.split("^", 1)
            letters.append((int(g), int(p)))
        else:
            v = int(tok)
            letters.append((abs(v), 1 if v > 0 else -1))
    if any(g < 1 for g, _ in letters):
        raise ValueError("generators are numbered from 1")
    return letters


def cmd_bidelta_magnus(a, out, err) -> int:
    try:
        letters = _free_group_letters(a.word)
    except ValueError as exc:
        raise UsageError(f"bad --word: {exc}") from exc
    m = nilpotent.magnus_eval(letters, a.klass)
    payload = {"word": a.word, "class": a.klass, "series": m.to_json(), "text": str(m)}
    if letters:
        G = nilpotent.NilpotentQuotient(max(g for g, _ in letters), a.klass)
        payload["malcev_coordinates"] = G.coordinates(m.as_dict())
    return _emit("bidelta.magnus", payload, str(m), out, err)


def cmd_bidelta_extension(a, out, err) -> int:
    inst = bidelta.build_phi0("Z")
    gens = extension.parse_generators(inst, a.gens)
    ext = extension.normal_bidelta_extension(gens, a.quotient, a.cutoff)
    audit = extension.audit_closure(ext)
    payload = {"generators": a.gens, "extension": ext.to_json(), "audit": audit, "ok": audit["ok"]}
    if a.hom:
        rep = extension.trivial_composite_check(gens, a.hom, a.quotient, a.cutoff)
        payload["composite"] = rep.to_json()
    return _emit("bidelta.extension", payload, f"closed after {ext.rounds} rounds, audit "
                 f"{'ok' if audit['ok'] else 'FAILED'}", out, err)


# -- verify ------------------------------------------------------------------------------


def cmd_verify_all(a, out, err) -> int:
    known = {**verify.ACCEPTANCE, **verify.INVARIANTS}
    only = a.only.split(",") if a.only else None
    if only and (bad := [k for k in only if k not in known]):
        raise UsageError(f"unknown check ids {bad}; known: {list(known)}")
    payload = verify.run_all(verify.SuiteConfig(seed=a.seed), only, log=err)
    failed = [c["id"] for c in payload["checks"] if not c["ok"]]
    out.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
    err.write(f"{len(payload['checks']) - len(failed)}/{len(payload['checks'])} checks pass"
              + (f"; failing: {', '.join(failed)}\n" if failed else "\n"))
    return 0 if payload["ok"] else 1


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="doubleloop", description="Combinatorial models of double loop spaces.")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def group(name: str, help: str):
        g = top.add_parser(name, help=help)
        return g.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(sub, name: str, fn: Callable, help: str):
        c = sub.add_parser(name, help=help)
        c.set_defaults(fn=fn)
        return c

    seed = {"type": int, "default": DEFAULT_SEED, "help": "random seed (default %(default)s)"}

    g = group("poset", "cells of L(n)")
    c = command(g, "enum", cmd_poset_enum, "list cells")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("--dim", type=int)
    c.add_argument("--format", choices=["json", "dot"], default="json")
    c = command(g, "hasse", cmd_poset_hasse, "covering relations")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("--dot", action="store_true", help="Graphviz output instead of JSON")

    g = group("preoperad", "pullback and insertion laws")
    c = command(g, "verify", cmd_preoperad_verify, "check the laws")
    c.add_argument("--max-n", type=int, default=4)
    c.add_argument("--seed", **seed)
    c.add_argument("--fuzz", type=int, default=1000)

    g = group("coend", "coend classes over a based set")
    c = command(g, "enum", cmd_coend_enum, "list classes")
    c.add_argument("--set-size", type=int, required=True)
    c.add_argument("--max-k", type=int, required=True)
    c = command(g, "exact", cmd_coend_exact, "exactness of the f / q sequence")
    c.add_argument("--set-size", type=int, required=True)
    c.add_argument("-k", type=int, required=True)

    g = group("chains", "cellular chains")
    for name, fn, hlp in (("homology", cmd_chains_homology, "integral homology"),
                          ("ladder", cmd_chains_ladder, "filtration composites and top collapse")):
        c = command(g, name, fn, hlp)
        c.add_argument("--space", choices=["F", "D"], required=True)
        c.add_argument("-n", type=int, required=True, help="n for F(n), k for D_k")
        c.add_argument("--set-size", type=int)
    c = command(g, "shuffle-check", cmd_chains_shuffle, "top-cell boundary vs shuffles")
    c.add_argument("-k", type=int, required=True)

    g = group("tensor", "tensor algebra")
    c = command(g, "shuffle", cmd_tensor_shuffle, "shuffle map of a word")
    c.add_argument("--word", type=_int_list, required=True)
    c.add_argument("--component", type=_int_list)
    c = command(g, "lie-rank", cmd_tensor_lie_rank, "rank of Lie(n)")
    c.add_argument("-n", type=int, required=True)
    c = command(g, "coproduct-check", cmd_tensor_coproduct, "reduced coproduct vs shuffle map")
    c.add_argument("--max-len", type=int, default=6)
    c.add_argument("--seed", **seed)
    c.add_argument("--fuzz", type=int, default=100)

    g = group("bidelta", "bi-Δ groups")
    c = command(g, "verify-jh", cmd_bidelta_jh, "James-Hopf identities")
    c.add_argument("--max-level", type=int, default=7)
    c.add_argument("--seed", **seed)
    c.add_argument("--fuzz", type=int, default=500)
    c.add_argument("--max-len", type=int, default=1, help="tensor-word length; 1 is abelianised Φ_0 Z")
    c = command(g, "magnus", cmd_bidelta_magnus, "truncated Magnus expansion")
    c.add_argument("--word", required=True, help='e.g. "1,2,-1,-2" or "1^3,2"')
    c.add_argument("--class", dest="klass", type=int, required=True)
    c = command(g, "extension", cmd_bidelta_extension, "normal bi-Δ-extension")
    c.add_argument("--gens", required=True, help='e.g. "1:1,2,-1,-2;0:1^2"')
    c.add_argument("--quotient", default="abelian", help="abelian or nilpotent:C")
    c.add_argument("--cutoff", type=int, default=4)
    c.add_argument("--hom", help="identity, abelianization or mod:M; runs the trivial-composite audit")

    g = group("verify", "verification suite")
    c = command(g, "all", cmd_verify_all, "run every check")
    c.add_argument("--seed", **seed)
    c.add_argument("--only", help="comma-separated check ids, e.g. A1,A7")
    return p


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out, err)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except (DoubleLoopError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

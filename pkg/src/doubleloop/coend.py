"""The combinatorial coend of ``L`` over a finite based set ``S = {0, 1, ..., s}``.

A point is a cell ``b`` of ``L(k)`` with a label ``x_v`` in ``S`` on every value ``v``.
Two relations generate the equivalence: relabelling values by a permutation
(labels travel with their values) and deleting a value labelled by the basepoint 0.

Because the symmetric group acts freely on cells, every orbit has a unique member
whose bar-free word is ``1 2 ... k``; that member is also the lexicographic minimum
of the orbit, so canonical forms never need the ``k!`` search (it is kept as
:func:`orbit_min_bruteforce` for testing).
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import BoundsError, DomainError, InputError
from .poset import OrderedPartition, compositions, enumerate_cells
from .preoperad import EpsilonCase, degeneracy_pullback, epsilon_cases, insert, symmetric_action

MAX_SET_SIZE = int(os.environ.get("DOUBLELOOP_MAX_SET_SIZE") or 3)
MAX_K = int(os.environ.get("DOUBLELOOP_MAX_K") or 5)


@dataclass(frozen=True)
class BasedSet:
    """``{0, 1, ..., size}`` with basepoint 0."""

    size: int

    def __post_init__(self):
        if self.size < 0:
            raise DomainError("a based set has size >= 0")

    @property
    def elements(self) -> range:
        return range(self.size + 1)


def _composition_cell(sizes: Sequence[int]) -> OrderedPartition:
    blocks, v = [], 1
    for s in sizes:
        blocks.append(tuple(range(v, v + s)))
        v += s
    return OrderedPartition._raw(tuple(blocks), v - 1)


def _check_labels(cell: OrderedPartition, labels: Sequence[int], s: int | None) -> tuple[int, ...]:
    labs = tuple(int(x) for x in labels)
    if len(labs) != cell.n:
        raise DomainError(f"{len(labs)} labels for a cell of size {cell.n}")
    if any(x < 0 for x in labs) or (s is not None and any(x > s for x in labs)):
        raise DomainError(f"labels {labs} outside 0..{s}")
    return labs


@dataclass(frozen=True, order=True)
class OrbitClass:
    """A symmetric-group orbit of ``(cell, labels)``; basepoint labels are kept.

    Stored as block sizes plus labels read along the word.
    """

    sizes: tuple[int, ...]
    labels: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def cell(self) -> OrderedPartition:
        return _composition_cell(self.sizes)

    def to_json(self) -> dict:
        return {"cell": {"blocks": [list(b) for b in self.cell.blocks]}, "labels": list(self.labels)}


def orbit_class(cell: OrderedPartition, labels: Sequence[int], s: int | None = None) -> OrbitClass:
    """``labels[v-1]`` is the label on value ``v``."""
    labs = _check_labels(cell, labels, s)
    return OrbitClass(tuple(len(b) for b in cell.blocks), tuple(labs[v - 1] for v in cell.word))


def orbit_min_bruteforce(cell: OrderedPartition, labels: Sequence[int]) -> tuple:
    """Lexicographic minimum of ``(blocks, labels-by-value)`` over the full orbit."""
    best = None
    for sigma in itertools.permutations(range(1, cell.n + 1)):
        moved = symmetric_action(sigma, cell)
        # sigma^* sends value v to sigma^{-1}(v); the label travels with it
        new_labels = tuple(labels[sigma[u - 1] - 1] for u in range(1, cell.n + 1))
        cand = (moved.blocks, new_labels)
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True, order=True)
class CoendClass:
    """A point of the coend in canonical form: no basepoint labels, word ``1..k``.

    ``k == 0`` is the basepoint class.
    """

    sizes: tuple[int, ...]
    labels: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def is_basepoint(self) -> bool:
        return not self.labels

    @property
    def cell(self) -> OrderedPartition | None:
        return _composition_cell(self.sizes) if self.sizes else None

    def to_json(self) -> dict:
        cell = self.cell
        return {
            "cell": None if cell is None else {"blocks": [list(b) for b in cell.blocks]},
            "labels": list(self.labels),
        }

    def __str__(self) -> str:
        cell = self.cell
        return "*" if cell is None else f"({cell}; {','.join(map(str, self.labels))})"


def canonicalize(cell: OrderedPartition, labels: Sequence[int], s: int | None = None) -> CoendClass:
    """Strip basepoint coordinates, then take the orbit representative with word ``1..k``."""
    labs = _check_labels(cell, labels, s)
    sizes, out = [], []
    for blk in cell.blocks:
        kept = [labs[v - 1] for v in blk if labs[v - 1] != 0]
        if kept:
            sizes.append(len(kept))
            out.extend(kept)
    return CoendClass(tuple(sizes), tuple(out))


def canonicalize_by_relations(cell: OrderedPartition, labels: Sequence[int]) -> CoendClass:
    """Slow path: degeneracy strips one value at a time, then the brute-force orbit minimum."""
    labs = list(labels)
    while 0 in labs and cell.n > 1:
        v = labs.index(0) + 1
        cell = degeneracy_pullback(v - 1, cell)
        del labs[v - 1]
    if labs == [0]:
        return CoendClass((), ())
    blocks, by_value = orbit_min_bruteforce(cell, labs)
    return CoendClass(tuple(len(b) for b in blocks), tuple(by_value))


def coend_class(orbit: OrbitClass) -> CoendClass:
    """The quotient map ``q`` from orbits to coend classes."""
    return canonicalize(orbit.cell, _labels_by_value(orbit))


def _labels_by_value(orbit: OrbitClass) -> tuple[int, ...]:
    # the representative cell has word 1..k, so word order is value order
    return orbit.labels


def _check_bounds(s: int, k: int) -> None:
    if not 0 <= s <= MAX_SET_SIZE:
        raise BoundsError(f"set size {s} outside 0..{MAX_SET_SIZE}")
    if not 0 <= k <= MAX_K:
        raise BoundsError(f"k = {k} outside 0..{MAX_K}")


def classes_of_size(s: int, k: int) -> Iterator[CoendClass]:
    """Basepoint-free classes with exactly ``k`` coordinates, in sorted order."""
    if k == 0:
        yield CoendClass((), ())
        return
    shapes = sorted(compositions(k))
    for sizes in shapes:
        for labs in itertools.product(range(1, s + 1), repeat=k):
            yield CoendClass(sizes, labs)


def enumerate_coend(S: BasedSet | int, k_max: int) -> dict[int, list[CoendClass]]:
    """Classes of the ``k_max`` skeleton grouped by filtration degree (number of coordinates)."""
    s = S.size if isinstance(S, BasedSet) else S
    _check_bounds(s, k_max)
    out: dict[int, list[CoendClass]] = {0: [CoendClass((), ())]}
    for k in range(1, k_max + 1):
        out[k] = list(classes_of_size(s, k)) if s else []
    return out


def enumerate_coend_by_quotient(s: int, k_max: int) -> dict[int, list[CoendClass]]:
    """Independent count: canonicalise every ``(cell, labels)`` of the disjoint union."""
    _check_bounds(s, k_max)
    seen: set[CoendClass] = {CoendClass((), ())}
    for k in range(1, k_max + 1):
        for cell in enumerate_cells(k):
            for labs in itertools.product(range(s + 1), repeat=k):
                seen.add(canonicalize_by_relations(cell, labs))
    out: dict[int, list[CoendClass]] = {k: [] for k in range(k_max + 1)}
    for c in sorted(seen):
        out[c.k].append(c)
    return out


def orbits_of_size(s: int, k: int) -> Iterator[OrbitClass]:
    """All orbits of ``L(k) x S^k`` (basepoint labels allowed)."""
    for sizes in sorted(compositions(k)):
        for labs in itertools.product(range(s + 1), repeat=k):
            yield OrbitClass(sizes, labs)


def f_map(c: EpsilonCase, orbit: OrbitClass) -> OrbitClass:
    """Insert via ``e_{i,j}^eps`` and give the new value the basepoint label."""
    cell = orbit.cell
    if c.k != orbit.k:
        raise DomainError(f"case for L({c.k}) applied to an orbit of size {orbit.k}")
    new_cell = insert(c, cell)
    labs = list(orbit.labels)
    labs.insert(c.i, 0)  # values >= i+1 shifted up by one, the new value i+1 is basepoint
    return orbit_class(new_cell, labs)


@dataclass
class ExactnessReport:
    s: int
    k: int
    injective: bool = True
    surjective: bool = True
    coequalizer: bool = True
    orbits_source: int = 0
    orbits_target: int = 0
    classes: int = 0
    components: int = 0
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.injective and self.surjective and self.coequalizer

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "k": self.k,
            "ok": self.ok,
            "injective": self.injective,
            "surjective": self.surjective,
            "coequalizer": self.coequalizer,
            "orbits_source": self.orbits_source,
            "orbits_target": self.orbits_target,
            "classes": self.classes,
            "components": self.components,
            "counterexample": self.counterexample,
        }


def verify_exactness(S: BasedSet | int, k: int) -> ExactnessReport:
    """Check the coequaliser description of the ``k+1`` skeleton.

    (a) every ``f_{i,j,eps}`` is injective on orbits of size ``k``;
    (b) ``q`` maps orbits of size ``k+1`` onto classes with at most ``k+1`` coordinates;
    (c) the fibres of ``q`` are exactly the classes of the relation
        ``f_alpha(u) ~ f_beta(u)`` generated over all ``u`` and cases.
    """
    s = S.size if isinstance(S, BasedSet) else S
    _check_bounds(s, k + 1)
    if k < 1:
        raise BoundsError("exactness is stated for k >= 1")
    rep = ExactnessReport(s, k)
    source = list(orbits_of_size(s, k))
    target = list(orbits_of_size(s, k + 1))
    rep.orbits_source, rep.orbits_target = len(source), len(target)
    cases = epsilon_cases(k)

    images: dict[EpsilonCase, list[OrbitClass]] = {}
    for c in cases:
        img = [f_map(c, u) for u in source]
        images[c] = img
        if len(set(img)) != len(img) and rep.injective:
            rep.injective = False
            seen: dict[OrbitClass, OrbitClass] = {}
            for u, w in zip(source, img):
                if w in seen:
                    rep.counterexample = {
                        "kind": "injectivity",
                        "case": [c.i, c.j, c.eps],
                        "sources": [seen[w].to_json(), u.to_json()],
                    }
                    break
                seen[w] = u

    q = {w: coend_class(w) for w in target}
    expected = {c for classes in enumerate_coend(s, k + 1).values() for c in classes}
    got = set(q.values())
    rep.classes = len(expected)
    if got != expected:
        rep.surjective = False
        missing = sorted(expected - got)
        rep.counterexample = rep.counterexample or {
            "kind": "surjectivity",
            "missing": [m.to_json() for m in missing[:5]],
        }

    # union-find over target orbits
    parent = {w: w for w in target}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first = cases[0]
    for c in cases[1:]:
        for a, b in zip(images[first], images[c]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comp: dict[OrbitClass, set] = {}
    for w in target:
        comp.setdefault(find(w), set()).add(w)
    fibres: dict[CoendClass, set] = {}
    for w in target:
        fibres.setdefault(q[w], set()).add(w)
    rep.components = len(comp)
    # coequaliser: every q-fibre is a single component, and the image of f is where the
    # relation lives; orbits outside every image must be alone in their fibre
    comps = sorted(frozenset(v) for v in comp.values())
    fibs = sorted(frozenset(v) for v in fibres.values())
    if set(comps) != set(fibs):
        rep.coequalizer = False
        for fib in fibs:
            if fib not in set(comps):
                roots = sorted({find(w) for w in fib})
                rep.counterexample = rep.counterexample or {
                    "kind": "coequalizer",
                    "class": q[next(iter(fib))].to_json(),
                    "fibre_size": len(fib),
                    "components_in_fibre": len(roots),
                    "representatives": [r.to_json() for r in roots[:4]],
                }
                break
    return rep


def coend_jsonl(classes: dict[int, list[CoendClass]]) -> str:
    lines = []
    for k in sorted(classes):
        for c in classes[k]:
            lines.append(json.dumps({"k": k, **c.to_json()}, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_class(data: dict, s: int | None = None) -> CoendClass:
    if data.get("cell") is None:
        if data.get("labels"):
            raise InputError("basepoint class carries no labels")
        return CoendClass((), ())
    cell = OrderedPartition.from_json(data["cell"])
    return canonicalize(cell, data["labels"], s)

"""Contravariant structure on the family ``L(n)``: pullbacks along based injections,
the symmetric-group action, degeneracies and the insertion maps ``e_{i,j}^eps``."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BoundsError, DomainError, InputError
from .poset import OrderedPartition, cover_relations, enumerate_cells, leq


@dataclass(frozen=True)
class BasedInjection:
    """Injective based map ``{0..k} -> {0..l}``; ``images[i-1]`` is the image of ``i``."""

    k: int
    l: int
    images: tuple[int, ...]

    def __init__(self, images: Sequence[int], l: int | None = None):
        imgs = tuple(int(v) for v in images)
        if l is None:
            l = max(imgs, default=0)
        if len(set(imgs)) != len(imgs) or any(not 1 <= v <= l for v in imgs):
            raise DomainError(f"{imgs} is not an injection into 1..{l}")
        object.__setattr__(self, "k", len(imgs))
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "images", imgs)

    def __call__(self, i: int) -> int:
        return 0 if i == 0 else self.images[i - 1]

    def compose(self, other: BasedInjection) -> BasedInjection:
        """``self ∘ other`` (apply ``other`` first)."""
        if other.l != self.k:
            raise DomainError(f"cannot compose {self} after {other}")
        return BasedInjection([self(other(i)) for i in range(1, other.k + 1)], self.l)

    def is_increasing(self) -> bool:
        return all(x < y for x, y in zip(self.images, self.images[1:]))

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> BasedInjection:
        inj = cls(data["images"], data["l"])
        if inj.k != data.get("k", inj.k):
            raise InputError("k does not match the number of images")
        return inj


def identity(k: int) -> BasedInjection:
    return BasedInjection(range(1, k + 1), k)


def degeneracy(i: int, k: int) -> BasedInjection:
    """``D^i : k -> k+1``, the increasing injection missing ``i+1``."""
    if not 0 <= i <= k:
        raise BoundsError(f"degeneracy index {i} outside 0..{k}")
    return BasedInjection([j if j <= i else j + 1 for j in range(1, k + 1)], k + 1)


def decompose_injection(phi: BasedInjection) -> tuple[BasedInjection, BasedInjection]:
    """Unique factorisation ``phi = inc ∘ sharp`` with ``sharp`` a permutation and ``inc`` increasing."""
    order = sorted(phi.images)
    rank = {v: r + 1 for r, v in enumerate(order)}
    sharp = BasedInjection([rank[v] for v in phi.images], phi.k)
    inc = BasedInjection(order, phi.l)
    return sharp, inc


def _inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for p, v in enumerate(perm, start=1):
        inv[v - 1] = p
    return tuple(inv)


def pullback(phi: BasedInjection, a: OrderedPartition) -> OrderedPartition:
    """``phi^* a`` computed through the factorisation of ``a~^{-1} ∘ phi``."""
    if phi.l != a.n:
        raise DomainError(f"injection into {phi.l} cannot pull back a cell of size {a.n}")
    return _pullback_images(phi.images, a)


def _pullback_images(images: Sequence[int], a: OrderedPartition) -> OrderedPartition:
    word, surj = a.pair_form()
    a_inv = _inverse(word)
    g = [a_inv[v - 1] for v in images]  # a~^{-1} ∘ phi
    g_inc = sorted(g)
    rank = {p: r for r, p in enumerate(g_inc, start=1)}
    g_sharp = [rank[p] for p in g]
    new_word = _inverse(g_sharp)  # (phi^* a)~ = (g^sharp)^{-1}
    # pi_a ∘ g^inc is nondecreasing; pi^inc only relabels its values to 1..t'
    raw = [surj[p - 1] for p in g_inc]
    blocks: list[list[int]] = []
    prev = None
    for v, s in zip(new_word, raw):
        if s != prev:
            blocks.append([])
            prev = s
        blocks[-1].append(v)
    return OrderedPartition._raw(tuple(tuple(b) for b in blocks), len(images))


def pullback_by_restriction(phi: BasedInjection, a: OrderedPartition) -> OrderedPartition:
    """Keep only values in the image of ``phi``, drop emptied blocks, relabel ``v -> phi^{-1}(v)``."""
    if phi.l != a.n:
        raise DomainError(f"injection into {phi.l} cannot pull back a cell of size {a.n}")
    back = {v: i for i, v in enumerate(phi.images, start=1)}
    blocks = [[back[v] for v in b if v in back] for b in a.blocks]
    return OrderedPartition([b for b in blocks if b], phi.k)


def symmetric_action(sigma: Sequence[int], a: OrderedPartition) -> OrderedPartition:
    """``sigma^* a``: every entry ``v`` becomes ``sigma^{-1}(v)``; bars unchanged."""
    if sorted(sigma) != list(range(1, a.n + 1)):
        raise DomainError(f"{tuple(sigma)} is not a permutation of 1..{a.n}")
    inv = _inverse(sigma)
    return OrderedPartition._raw(tuple(tuple(inv[v - 1] for v in b) for b in a.blocks), a.n)


def degeneracy_pullback(i: int, a: OrderedPartition) -> OrderedPartition:
    """``D^{i*} a``: delete the value ``i+1`` and close the gap."""
    k = a.n - 1
    if not 0 <= i <= k:
        raise BoundsError(f"degeneracy index {i} outside 0..{k}")
    if k == 0:
        raise DomainError("cannot delete the only point of L(1)")
    gone = i + 1
    blocks = []
    for b in a.blocks:
        nb = tuple(v if v < gone else v - 1 for v in b if v != gone)
        if nb:
            blocks.append(nb)
    return OrderedPartition._raw(tuple(blocks), k)


@dataclass(frozen=True)
class EpsilonCase:
    """Parameters of ``e_{i,j}^eps : L(k) -> L(k+1)``, aliases already normalised."""

    i: int
    j: int
    eps: int
    k: int

    def __init__(self, i: int, j: int, eps: int, k: int):
        if k < 1:
            raise BoundsError("insertion maps start from L(1)")
        if not (0 <= i <= k and 0 <= j <= k):
            raise DomainError(f"(i, j) = ({i}, {j}) outside 0..{k}")
        if eps not in (-1, 0, 1):
            raise DomainError(f"eps must be -1, 0 or +1, got {eps}")
        if j == k and eps == -1:
            eps = 0
        if j == 0 and eps == 1:
            eps = 0
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "k", k)


def epsilon_cases(k: int) -> list[EpsilonCase]:
    """Every distinct valid case for source size ``k`` (aliases collapsed)."""
    seen = {EpsilonCase(i, j, e, k) for i in range(k + 1) for j in range(k + 1) for e in (-1, 0, 1)}
    return sorted(seen, key=lambda c: (c.i, c.j, c.eps))


def insert(c: EpsilonCase, b: OrderedPartition) -> OrderedPartition:
    """Insert the new value ``i+1`` at position ``j+1`` of ``b``; ``eps`` decides its block."""
    if b.n != c.k:
        raise DomainError(f"case built for L({c.k}) applied to a cell of L({b.n})")
    k, j = c.k, c.j
    surj = b.surj
    # block index (0-based) of the new entry, and whether it opens a new block
    if 0 < j < k:
        left, right = surj[j - 1] - 1, surj[j] - 1
        region = "inner"
        same = left == right
    elif j == k:
        left, right, region, same = surj[-1] - 1, None, "end", False
    else:
        left, right, region, same = None, surj[0] - 1, "start", False

    match (region, same, c.eps):
        case ("inner", True, _):  # neighbours share a block: join it
            target, new_block = left, False
        case ("inner", False, 0):  # between blocks: new singleton block
            target, new_block = right, True
        case ("inner", False, 1):  # join the left neighbour
            target, new_block = left, False
        case ("inner", False, -1):  # join the right neighbour
            target, new_block = right, False
        case ("end", _, 0):
            target, new_block = left + 1, True
        case ("end", _, 1):
            target, new_block = left, False
        case ("start", _, 0):
            target, new_block = 0, True
        case ("start", _, -1):
            target, new_block = right, False
        case _:
            raise DomainError(f"no insertion rule for {c}")

    new = c.i + 1
    word = [v + 1 if v >= new else v for v in b.word]
    word.insert(j, new)
    blk = [s - 1 for s in surj]
    if new_block:
        blk = [s + 1 if s >= target else s for s in blk]
    blk.insert(j, target)
    return OrderedPartition.from_pair(word, [s + 1 for s in blk])


def all_injections(k: int, l: int) -> Iterable[BasedInjection]:
    for imgs in itertools.permutations(range(1, l + 1), k):
        yield BasedInjection(imgs, l)


def adjacent_transposition(m: int, n: int) -> tuple[int, ...]:
    """The permutation swapping ``m`` and ``m+1`` in ``1..n``."""
    perm = list(range(1, n + 1))
    perm[m - 1], perm[m] = perm[m], perm[m - 1]
    return tuple(perm)


Family = Mapping[int, Mapping[OrderedPartition, OrderedPartition]]


@dataclass
class MorphismReport:
    max_n: int
    natural: bool
    order_preserving: bool
    idempotent: bool
    counterexample: dict | None = None
    image: dict[int, list[OrderedPartition]] = field(default_factory=dict)

    @property
    def is_morphism(self) -> bool:
        return self.natural and self.order_preserving

    def to_json(self) -> dict:
        return {
            "max_n": self.max_n,
            "morphism": self.is_morphism,
            "natural": self.natural,
            "order_preserving": self.order_preserving,
            "idempotent": self.idempotent,
            "counterexample": self.counterexample,
            "image": {str(n): [str(c) for c in cells] for n, cells in self.image.items()},
        }


def check_preoperad_morphism(family: Family, max_n: int | None = None) -> MorphismReport:
    """Check a levelwise map ``e : L(n) -> L(n)`` against every generating morphism.

    Generators are all degeneracies ``D^i`` and adjacent transpositions up to size
    ``max_n``; order preservation is checked on Hasse edges.
    """
    if max_n is None:
        max_n = max(family, default=0)
    for n in range(1, max_n + 1):
        table = family.get(n)
        cells = enumerate_cells(n)
        if table is None or any(c not in table for c in cells):
            raise InputError(f"family table for L({n}) is missing or incomplete")
        if any(not isinstance(v, OrderedPartition) or v.n != n for v in table.values()):
            raise InputError(f"family table for L({n}) has values outside L({n})")

    def e(a: OrderedPartition) -> OrderedPartition:
        return family[a.n][a]

    counter = None
    natural = True
    for n in range(1, max_n + 1):
        for a in enumerate_cells(n):
            gens: list[tuple[str, Callable[[OrderedPartition], OrderedPartition]]] = []
            if n >= 2:
                gens += [(f"D^{i}", lambda x, i=i: degeneracy_pullback(i, x)) for i in range(n)]
                gens += [
                    (f"s_{m}", lambda x, m=m: symmetric_action(adjacent_transposition(m, x.n), x))
                    for m in range(1, n)
                ]
            for name, g in gens:
                lhs, rhs = e(g(a)), g(e(a))
                if lhs != rhs:
                    natural = False
                    counter = counter or {
                        "kind": "naturality",
                        "generator": name,
                        "cell": str(a),
                        "e_after_generator": str(lhs),
                        "generator_after_e": str(rhs),
                    }
    order_ok = True
    for n in range(1, max_n + 1):
        for a, b in cover_relations(n):
            if not leq(e(a), e(b)):
                order_ok = False
                counter = counter or {"kind": "order", "lower": str(a), "upper": str(b)}
    idem = all(e(e(a)) == e(a) for n in range(1, max_n + 1) for a in enumerate_cells(n))
    image = {}
    if idem:
        image = {n: sorted(set(family[n].values())) for n in range(1, max_n + 1)}
    return MorphismReport(max_n, natural, order_ok, idem, counter, image)


def family_from_function(fn: Callable[[OrderedPartition], OrderedPartition], max_n: int) -> dict:
    return {n: {a: fn(a) for a in enumerate_cells(n)} for n in range(1, max_n + 1)}


def family_to_json(family: Family) -> str:
    pairs = [[a.to_json(), family[n][a].to_json()] for n in sorted(family) for a in sorted(family[n])]
    return json.dumps(pairs, sort_keys=True)


def family_from_json(text: str) -> dict:
    family: dict[int, dict] = {}
    for src, dst in json.loads(text):
        a, b = OrderedPartition.from_json(src), OrderedPartition.from_json(dst)
        if a.n != b.n:
            raise InputError(f"pair ({a}, {b}) changes size")
        family.setdefault(a.n, {})[a] = b
    return family


# -- verification helpers used by the test-suite and the CLI ---------------------------


@dataclass
class LawReport:
    """Count of checked instances plus the first few failures."""

    name: str
    checked: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    keep: int = 10

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def fail(self, item) -> None:
        self.failed += 1
        if len(self.failures) < self.keep:
            self.failures.append(item)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failed": self.failed,
            "examples": self.failures,
        }


def check_functoriality(max_l: int, rng=None, samples: int = 0, fuzz_max_l: int = 6) -> LawReport:
    """``(phi∘psi)^* = psi^* phi^*`` and ``id^* = id``: exhaustive up to ``max_l``,
    plus ``samples`` random triples with ``l <= fuzz_max_l``."""
    rep = LawReport("pullback functoriality")
    for l in range(1, max_l + 1):
        cells = enumerate_cells(l)
        for a in cells:
            rep.checked += 1
            if pullback(identity(l), a) != a:
                rep.fail(("identity", str(a)))
        for k in range(1, l + 1):
            phis = list(all_injections(k, l))
            for m in range(1, k + 1):
                psis = list(all_injections(m, k))
                for phi in phis:
                    for a in cells:
                        pa = pullback(phi, a)
                        for psi in psis:
                            rep.checked += 1
                            if pullback(psi, pa) != pullback(phi.compose(psi), a):
                                rep.fail((phi.images, psi.images, str(a)))
    for _ in range(samples):
        l = rng.randint(1, fuzz_max_l)
        k = rng.randint(1, l)
        m = rng.randint(1, k)
        phi = BasedInjection(rng.sample(range(1, l + 1), k), l)
        psi = BasedInjection(rng.sample(range(1, k + 1), m), k)
        a = random_cell(l, rng)
        rep.checked += 1
        if pullback(psi, pullback(phi, a)) != pullback(phi.compose(psi), a):
            rep.fail((phi.images, psi.images, str(a)))
    return rep


def random_cell(n: int, rng) -> OrderedPartition:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    bars = [p for p in range(1, n) if rng.random() < 0.5]
    edges = [0, *bars, n]
    return OrderedPartition._raw(
        tuple(tuple(perm[edges[t] : edges[t + 1]]) for t in range(len(edges) - 1)), n
    )


def check_order_preservation(max_l: int, rng=None, samples: int = 0, fuzz_max_l: int = 6) -> LawReport:
    """``a <= b  =>  phi^* a <= phi^* b``; exhaustive on Hasse edges up to ``max_l``."""
    rep = LawReport("pullback preserves order")
    for l in range(1, max_l + 1):
        edges = cover_relations(l)
        for k in range(1, l + 1):
            for phi in all_injections(k, l):
                for a, b in edges:
                    rep.checked += 1
                    if not leq(pullback(phi, a), pullback(phi, b)):
                        rep.fail((phi.images, str(a), str(b)))
    for _ in range(samples):
        l = rng.randint(2, fuzz_max_l)
        a = random_cell(l, rng)
        ups = [c for c in _random_chain_above(a, rng)]
        b = ups[-1]
        k = rng.randint(1, l)
        phi = BasedInjection(rng.sample(range(1, l + 1), k), l)
        rep.checked += 1
        if not leq(pullback(phi, a), pullback(phi, b)):
            rep.fail((phi.images, str(a), str(b)))
    return rep


def _random_chain_above(a: OrderedPartition, rng) -> list[OrderedPartition]:
    from .poset import upper_covers

    chain = [a]
    steps = rng.randint(0, len(a.blocks) - 1)
    for _ in range(steps):
        ups = list(upper_covers(chain[-1]))
        if not ups:
            break
        chain.append(rng.choice(ups))
    return chain


def check_lambda_relations(max_k: int) -> LawReport:
    """Relations among generators of the injection category, checked on injections and
    under pullback: ``D^j D^i = D^{i+1} D^j`` (``j <= i``) and
    ``sigma ∘ D^i = D^{sigma(i+1)-1} ∘ d_i sigma`` with ``d_i sigma = (sigma ∘ D^i)^sharp``."""
    rep = LawReport("generating relations")
    for k in range(1, max_k + 1):
        # D^j D^i : k -> k+2, needs k+2 <= max_k + 1 to have cells of the target size
        if k + 2 <= max_k:
            cells = enumerate_cells(k + 2)
            for i in range(k + 1):
                for j in range(i + 1):
                    lhs = degeneracy(j, k + 1).compose(degeneracy(i, k))
                    rhs = degeneracy(i + 1, k + 1).compose(degeneracy(j, k))
                    rep.checked += 1
                    if lhs != rhs:
                        rep.fail(("DD", i, j, k))
                        continue
                    for a in cells:
                        rep.checked += 1
                        left = degeneracy_pullback(i, degeneracy_pullback(j, a))
                        right = degeneracy_pullback(j, degeneracy_pullback(i + 1, a))
                        if left != right:
                            rep.fail(("DD*", i, j, str(a)))
        if k + 1 <= max_k:
            cells = enumerate_cells(k + 1)
            for perm in itertools.permutations(range(1, k + 2)):
                sigma = BasedInjection(perm, k + 1)
                for i in range(k + 1):
                    sd = sigma.compose(degeneracy(i, k))
                    d_i_sigma, _ = decompose_injection(sd)
                    rhs = degeneracy(sigma(i + 1) - 1, k).compose(d_i_sigma)
                    rep.checked += 1
                    if sd != rhs:
                        rep.fail(("sigmaD", perm, i))
                        continue
                    for a in cells:
                        rep.checked += 1
                        left = degeneracy_pullback(i, pullback(sigma, a))
                        right = pullback(d_i_sigma, degeneracy_pullback(sigma(i + 1) - 1, a))
                        if left != right:
                            rep.fail(("sigmaD*", perm, i, str(a)))
    return rep


def check_insertion_retraction(max_k: int) -> LawReport:
    """``D^{i*} ∘ e_{i,j}^eps = id`` on every cell of size ``<= max_k``, every case."""
    rep = LawReport("degeneracy retracts insertion")
    for k in range(1, max_k + 1):
        for b in enumerate_cells(k):
            for c in epsilon_cases(k):
                rep.checked += 1
                if degeneracy_pullback(c.i, insert(c, b)) != b:
                    rep.fail((c.i, c.j, c.eps, str(b)))
    return rep


def insertion_relation_pairs(k: int):
    """Yield ``(family, lhs_cases, rhs_cases)`` for both commutation families, source size ``k``.

    Each ``*_cases`` pair is ``(inner, outer)``: the map applied first, then second.
    """
    for i, j, e, i2, j2, e2 in itertools.product(
        range(k + 1), range(k + 1), (-1, 0, 1), range(k + 1), range(k + 1), (-1, 0, 1)
    ):
        if i > i2:
            continue
        if j <= j2:
            lhs = (EpsilonCase(i2, j2, e2, k), EpsilonCase(i, j, e, k + 1))
            rhs = (EpsilonCase(i, j, e, k), EpsilonCase(i2 + 1, j2 + 1, e2, k + 1))
            yield 1, (i, j, e, i2, j2, e2), lhs, rhs
        if j >= j2:
            lhs = (EpsilonCase(i2, j2, e2, k), EpsilonCase(i, j + 1, e, k + 1))
            rhs = (EpsilonCase(i, j, e, k), EpsilonCase(i2 + 1, j2, e2, k + 1))
            yield 2, (i, j, e, i2, j2, e2), lhs, rhs


def check_insertion_relations(max_k: int) -> dict[int, LawReport]:
    """Both commutation families among insertions, on every cell of size ``<= max_k``."""
    reps = {1: LawReport("insertion relation (j <= j')"), 2: LawReport("insertion relation (j >= j')")}
    for k in range(1, max_k + 1):
        cells = enumerate_cells(k)
        for fam, params, (l_in, l_out), (r_in, r_out) in insertion_relation_pairs(k):
            for b in cells:
                reps[fam].checked += 1
                left = insert(l_out, insert(l_in, b))
                right = insert(r_out, insert(r_in, b))
                if left != right:
                    reps[fam].fail({"params": params, "cell": str(b), "lhs": str(left), "rhs": str(right)})
    return reps

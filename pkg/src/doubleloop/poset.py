"""Ordered partitions of {1..n} and the face order of the labelled permutohedra.

A cell of ``L(n)`` is a permutation of ``1..n`` cut into consecutive nonempty
blocks, written ``235|741|6``.  Its degree is ``n - (number of blocks)``.
``a <= b`` when ``b`` is reached from ``a`` by repeatedly replacing two
adjacent blocks with one of their shuffles.
"""

from __future__ import annotations

import itertools
import json
import os
from collections import Counter, deque
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import BoundsError, DomainError

Blocks = tuple[tuple[int, ...], ...]


def _env_bound(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


MAX_N = _env_bound("DOUBLELOOP_MAX_N", 8)
ORACLE_MAX_N = _env_bound("DOUBLELOOP_ORACLE_MAX_N", 6)


@dataclass(frozen=True, order=True)
class OrderedPartition:
    """One cell of ``L(n)``: nonempty ordered blocks whose concatenation is a permutation."""

    blocks: Blocks
    n: int

    def __init__(self, blocks: Sequence[Sequence[int]], n: int | None = None):
        blk = tuple(tuple(int(v) for v in b) for b in blocks)
        word = [v for b in blk for v in b]
        if n is None:
            n = len(word)
        if n < 1:
            raise DomainError("ordered partitions start at n = 1")
        if any(len(b) == 0 for b in blk):
            raise DomainError(f"empty block in {blk}")
        if sorted(word) != list(range(1, n + 1)):
            raise DomainError(f"blocks {blk} do not partition 1..{n}")
        object.__setattr__(self, "blocks", blk)
        object.__setattr__(self, "n", n)

    @classmethod
    def _raw(cls, blocks: Blocks, n: int) -> OrderedPartition:
        # trusted constructor for internal hot paths
        obj = object.__new__(cls)
        object.__setattr__(obj, "blocks", blocks)
        object.__setattr__(obj, "n", n)
        return obj

    @classmethod
    def parse(cls, text: str) -> OrderedPartition:
        """Parse ``"235|741|6"`` (digits) or ``"2,3,5|7,4,1|6"`` (comma separated)."""
        parts = text.strip().split("|")
        if "," in text:
            blocks = [[int(v) for v in p.split(",") if v] for p in parts]
        else:
            blocks = [[int(ch) for ch in p] for p in parts]
        return cls(blocks)

    @classmethod
    def from_pair(cls, perm: Sequence[int], surj: Sequence[int]) -> OrderedPartition:
        """Inverse of :meth:`pair_form`: ``surj[p]`` is the block of position ``p``."""
        if len(perm) != len(surj):
            raise DomainError("perm and surjection differ in length")
        if list(surj) != sorted(surj) or (surj and (surj[0] != 1 or len(set(surj)) != surj[-1])):
            raise DomainError(f"{surj} is not a nondecreasing surjection onto 1..t")
        blocks: list[list[int]] = []
        for v, s in zip(perm, surj):
            if s > len(blocks):
                blocks.append([])
            blocks[-1].append(v)
        return cls(blocks, len(perm))

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(v for b in self.blocks for v in b)

    @property
    def surj(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, b in enumerate(self.blocks) for _ in b)

    def pair_form(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.word, self.surj

    @property
    def degree(self) -> int:
        return self.n - len(self.blocks)

    def block_of(self) -> dict[int, int]:
        """Map value -> index (0-based) of the block containing it."""
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def position_of(self) -> dict[int, int]:
        """Map value -> position (0-based) in the bar-free word."""
        return {v: p for p, v in enumerate(self.word)}

    def __str__(self) -> str:
        sep = "" if self.n < 10 else ","
        return "|".join(sep.join(str(v) for v in b) for b in self.blocks)

    def __repr__(self) -> str:
        return f"OrderedPartition({str(self)!r})"

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> OrderedPartition:
        return cls(data["blocks"], data.get("n"))


def degree(a: OrderedPartition) -> int:
    return a.degree


def _check_n(n: int, bound: int = MAX_N) -> None:
    if not 1 <= n <= bound:
        raise BoundsError(f"n = {n} outside 1..{bound}")


def compositions(n: int, parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Block-size sequences summing to ``n``, optionally with a fixed number of parts."""
    counts = range(1, n + 1) if parts is None else [parts]
    for t in counts:
        for cuts in itertools.combinations(range(1, n), t - 1):
            edges = (0, *cuts, n)
            yield tuple(edges[i + 1] - edges[i] for i in range(t))


def _cut(word: Sequence[int], sizes: Sequence[int]) -> Blocks:
    out = []
    p = 0
    for s in sizes:
        out.append(tuple(word[p : p + s]))
        p += s
    return tuple(out)


def iter_cell_blocks(n: int, dim: int | None = None) -> Iterator[Blocks]:
    """Unvalidated block tuples of every cell (optionally of one degree), unsorted."""
    parts = None if dim is None else n - dim
    shapes = list(compositions(n, parts))
    for perm in itertools.permutations(range(1, n + 1)):
        for sizes in shapes:
            yield _cut(perm, sizes)


def enumerate_cells(n: int, dim: int | None = None) -> list[OrderedPartition]:
    """All cells of ``L(n)`` (of degree ``dim`` if given), sorted lexicographically on blocks."""
    _check_n(n)
    if dim is not None and not 0 <= dim <= n - 1:
        raise BoundsError(f"dim = {dim} outside 0..{n - 1}")
    return [OrderedPartition._raw(b, n) for b in sorted(iter_cell_blocks(n, dim))]


def cell_census(n: int) -> Counter:
    """Tally degrees over every (permutation, bar set) pair, i.e. over every cell once."""
    _check_n(n)
    tally: Counter = Counter()
    gaps = range(1, n)
    bar_sets = [bars for r in range(n) for bars in itertools.combinations(gaps, r)]
    for _perm in itertools.permutations(range(1, n + 1)):
        for bars in bar_sets:
            tally[n - 1 - len(bars)] += 1
    return tally


def expected_cell_count(n: int, dim: int) -> int:
    return factorial(n) * comb(n - 1, dim)


def leq(a: OrderedPartition, b: OrderedPartition) -> bool:
    """Direct order test: blocks of ``a`` map monotonically onto blocks of ``b`` and
    consecutive entries of an ``a``-block keep their relative order in ``b``."""
    if a.n != b.n:
        raise DomainError(f"cells of different sizes {a.n} and {b.n}")
    return leq_with_maps(a, b.block_of(), b.position_of(), len(b.blocks))


def leq_with_maps(a: OrderedPartition, block_b: dict[int, int], pos_b: dict[int, int], nblocks: int) -> bool:
    """:func:`leq` against a ``b`` given by its value->block and value->position maps."""
    rho: list[int] = []
    for blk in a.blocks:
        t = block_b[blk[0]]
        if any(block_b[v] != t for v in blk):
            return False
        rho.append(t)
    # rho must be a nondecreasing surjection onto the blocks of b
    if rho[0] != 0 or rho[-1] != nblocks - 1:
        return False
    if any(y - x not in (0, 1) for x, y in zip(rho, rho[1:])):
        return False
    for blk in a.blocks:
        if any(pos_b[u] > pos_b[v] for u, v in zip(blk, blk[1:])):
            return False
    return True


def shuffles(s: Sequence[int], t: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All interleavings of ``s`` and ``t`` preserving the order inside each."""
    m = len(s) + len(t)
    for spots in itertools.combinations(range(m), len(s)):
        chosen = set(spots)
        si, ti = iter(s), iter(t)
        yield tuple(next(si) if p in chosen else next(ti) for p in range(m))


def upper_covers(a: OrderedPartition) -> Iterator[OrderedPartition]:
    """Cells obtained from ``a`` by merging one adjacent pair of blocks through a shuffle."""
    blocks = a.blocks
    for i in range(len(blocks) - 1):
        for h in shuffles(blocks[i], blocks[i + 1]):
            yield OrderedPartition._raw(blocks[:i] + (h,) + blocks[i + 2 :], a.n)


def leq_oracle(a: OrderedPartition, b: OrderedPartition, bound: int = ORACLE_MAX_N) -> bool:
    """Breadth-first closure of the merge relation; exponential, test use only."""
    if a.n != b.n:
        raise DomainError(f"cells of different sizes {a.n} and {b.n}")
    if a.n > bound:
        raise BoundsError(f"leq_oracle limited to n <= {bound}")
    if a == b:
        return True
    if b.degree <= a.degree:
        return False
    seen = {a}
    queue = deque([a])
    while queue:
        c = queue.popleft()
        for d in upper_covers(c):
            if d == b:
                return True
            if d.degree < b.degree and d not in seen:
                seen.add(d)
                queue.append(d)
    return False


def oracle_upset(a: OrderedPartition, bound: int = ORACLE_MAX_N) -> set[OrderedPartition]:
    """Everything reachable from ``a`` by merge moves (``a`` included); test use only."""
    if a.n > bound:
        raise BoundsError(f"oracle limited to n <= {bound}")
    seen = {a}
    queue = deque([a])
    while queue:
        for d in upper_covers(queue.popleft()):
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return seen


def cover_relations(n: int) -> list[tuple[OrderedPartition, OrderedPartition]]:
    """Hasse diagram edges (lower, upper) of ``L(n)``, sorted."""
    _check_n(n)
    edges = {(a, c) for a in enumerate_cells(n) for c in upper_covers(a)}
    return sorted(edges)


def hasse_dot(n: int) -> str:
    lines = [f"digraph L{n} {{", "  rankdir=BT;"]
    for a in enumerate_cells(n):
        lines.append(f'  "{a}" [label="{a}"];')
    for a, b in cover_relations(n):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cells_json(cells: Sequence[OrderedPartition]) -> str:
    return json.dumps([c.to_json() for c in cells], sort_keys=True)

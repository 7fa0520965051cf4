"""Integral cellular chains of ``F(n)`` (cells = ``L(n)``) and of the orbit complexes ``D_k(S)``.

Geometry.  A cell with blocks ``B_1 | ... | B_t`` is the product of permutohedra,
one per block.  A block of size ``m`` is realised in ``R^m`` with one coordinate per
position of the block, and is oriented by the frame ``e_2 - e_1, ..., e_m - e_{m-1}``
(positions in word order).  The facet splitting the block into the subsequences
``C`` then ``D`` is oriented by the frame of ``C`` followed by the frame of ``D``;
its incidence number compares (outward normal, facet frame) with the cell frame.
Frames only see positions, so relabelling values preserves orientation and the
orbit complexes inherit the same signs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Hashable, Sequence

from .errors import BoundsError, IntegrityError
from .intlinalg import smith_invariants, sparse_matmul
from .poset import OrderedPartition, compositions, cover_relations, enumerate_cells

MAX_F = 6
MAX_ORDER_COMPLEX = 4


@dataclass
class ChainComplex:
    """``basis[d]`` lists cell ids of degree ``d``; ``boundary[d]`` maps degree ``d`` to ``d-1``
    as a sparse ``{(row, col): value}`` dict (row indexes ``basis[d-1]``)."""

    basis: list[list[Hashable]]
    boundary: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict)
    name: str = ""

    @property
    def dims(self) -> int:
        return len(self.basis) - 1

    def size(self, d: int) -> int:
        return len(self.basis[d]) if 0 <= d < len(self.basis) else 0

    def squares(self) -> dict[int, int]:
        """Number of nonzero entries of ``boundary[d-1] @ boundary[d]`` per ``d``."""
        out = {}
        for d in range(2, len(self.basis)):
            out[d] = len(sparse_matmul(self.boundary.get(d - 1, {}), self.boundary.get(d, {})))
        return out

    def check(self) -> None:
        bad = {d: v for d, v in self.squares().items() if v}
        if bad:
            raise IntegrityError(f"boundary does not square to zero in degrees {sorted(bad)}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(b) for d, b in enumerate(self.basis))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "basis": [[_id_json(c) for c in b] for b in self.basis],
            "boundary": [
                {"d": d, "entries": sorted([r, c, v] for (r, c), v in self.boundary[d].items())}
                for d in sorted(self.boundary)
            ],
        }


def _id_json(c) -> object:
    if isinstance(c, OrderedPartition):
        return str(c)
    if isinstance(c, tuple):
        return [_id_json(x) for x in c]
    return c


@dataclass
class HomologyResult:
    betti: list[int]
    torsion: list[list[int]]

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": self.torsion}

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [r[:] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _frame(positions: Sequence[int], m: int) -> list[list[Fraction]]:
    out = []
    for a, b in zip(positions, positions[1:]):
        v = [Fraction(0)] * m
        v[b] += 1
        v[a] -= 1
        out.append(v)
    return out


@lru_cache(maxsize=None)
def facet_sign(m: int, mask: int) -> int:
    """Incidence of the facet ``C | D`` of a one-block cell of size ``m``.

    Bit ``p`` of ``mask`` set means position ``p`` belongs to ``C`` (the first part).
    """
    C = [p for p in range(m) if mask >> p & 1]
    D = [p for p in range(m) if not mask >> p & 1]
    if not C or not D:
        raise ValueError("facet parts must be nonempty")
    ones = [Fraction(1)] * m
    normal = [Fraction(-len(D) if p in C else len(C)) for p in range(m)]
    facet = _det([ones, normal, *_frame(C, m), *_frame(D, m)])
    cell = _det([ones, *_frame(list(range(m)), m)])
    return 1 if (facet > 0) == (cell > 0) else -1


def facets(a: OrderedPartition) -> list[tuple[OrderedPartition, int]]:
    """Codimension-one faces of ``a`` with their incidence numbers."""
    out = []
    offset = 0  # sum of (block size - 1) over earlier blocks
    blocks = a.blocks
    for r, blk in enumerate(blocks):
        m = len(blk)
        pre = -1 if offset % 2 else 1
        for mask in range(1, (1 << m) - 1):
            C = tuple(blk[p] for p in range(m) if mask >> p & 1)
            D = tuple(blk[p] for p in range(m) if not mask >> p & 1)
            face = OrderedPartition._raw(blocks[:r] + (C, D) + blocks[r + 1 :], a.n)
            out.append((face, pre * facet_sign(m, mask)))
        offset += m - 1
    return out


def build_F_complex(n: int) -> ChainComplex:
    """Cellular chains of ``F(n)``: basis in degree ``d`` is the sorted list of degree-``d`` cells."""
    if not 1 <= n <= MAX_F:
        raise BoundsError(f"n = {n} outside 1..{MAX_F}")
    basis = [enumerate_cells(n, d) for d in range(n)]
    cx = ChainComplex(basis, name=f"F({n})")
    for d in range(1, n):
        index = {c: i for i, c in enumerate(basis[d - 1])}
        entries: dict[tuple[int, int], int] = {}
        for col, a in enumerate(basis[d]):
            for face, sign in facets(a):
                key = (index[face], col)
                entries[key] = entries.get(key, 0) + sign
        cx.boundary[d] = {k: v for k, v in entries.items() if v}
    return cx


def _orbit_facets(sizes: tuple[int, ...], labels: tuple[int, ...]):
    """Facets of the orbit ``(sizes, labels)`` as ``((sizes', labels'), sign)``."""
    out = []
    offset = 0
    pos = 0
    for r, m in enumerate(sizes):
        pre = -1 if offset % 2 else 1
        blk = labels[pos : pos + m]
        for mask in range(1, (1 << m) - 1):
            C = tuple(blk[p] for p in range(m) if mask >> p & 1)
            D = tuple(blk[p] for p in range(m) if not mask >> p & 1)
            new_sizes = sizes[:r] + (len(C), len(D)) + sizes[r + 1 :]
            new_labels = labels[:pos] + C + D + labels[pos + m :]
            out.append(((new_sizes, new_labels), pre * facet_sign(m, mask)))
        offset += m - 1
        pos += m
    return out


def build_D_complex(k: int, s: int) -> ChainComplex:
    """Orbit complex of ``F(k) x (S minus basepoint)^k`` under the symmetric group.

    Basis elements are ``(block sizes, labels along the word)``; cells touching the
    basepoint are collapsed, so only labels ``1..s`` occur.
    """
    if not 1 <= k <= 5 or not 0 <= s <= 3:
        raise BoundsError(f"(k, s) = ({k}, {s}) outside k <= 5, s <= 3")
    basis: list[list] = []
    for d in range(k):
        shapes = sorted(compositions(k, k - d))
        basis.append([(sz, labs) for sz in shapes for labs in itertools.product(range(1, s + 1), repeat=k)])
    cx = ChainComplex(basis, name=f"D_{k}({{0..{s}}})")
    for d in range(1, k):
        index = {c: i for i, c in enumerate(basis[d - 1])}
        entries: dict[tuple[int, int], int] = {}
        for col, (sz, labs) in enumerate(basis[d]):
            for face, sign in _orbit_facets(sz, labs):
                key = (index[face], col)
                entries[key] = entries.get(key, 0) + sign
        cx.boundary[d] = {key: v for key, v in entries.items() if v}
    return cx


def homology(c: ChainComplex) -> HomologyResult:
    """Integral homology through Smith invariants of every boundary map."""
    c.check()
    top = len(c.basis)
    inv = {d: smith_invariants(c.boundary.get(d, {}), c.size(d - 1), c.size(d)) for d in range(1, top)}
    betti, torsion = [], []
    for d in range(top):
        r_out = len(inv.get(d, []))
        r_in = inv.get(d + 1, [])
        betti.append(c.size(d) - r_out - len(r_in))
        torsion.append([x for x in r_in if x > 1])
    return HomologyResult(betti, torsion)


def order_complex(n: int) -> ChainComplex:
    """Simplicial chains on strictly increasing chains of ``(L(n), <)``."""
    if not 1 <= n <= MAX_ORDER_COMPLEX:
        raise BoundsError(f"order complex limited to n <= {MAX_ORDER_COMPLEX}")
    cells = enumerate_cells(n)
    up: dict[OrderedPartition, list[OrderedPartition]] = {c: [] for c in cells}
    # strict order from the transitive closure of the Hasse diagram
    covers: dict[OrderedPartition, list[OrderedPartition]] = {c: [] for c in cells}
    for a, b in cover_relations(n):
        covers[a].append(b)
    for c in sorted(cells, key=lambda x: -x.degree):
        above = set()
        for b in covers[c]:
            above.add(b)
            above.update(up[b])
        up[c] = sorted(above)
    simplices: list[list[tuple]] = [[(c,) for c in cells]]
    while True:
        nxt = [s + (b,) for s in simplices[-1] for b in up[s[-1]]]
        if not nxt:
            break
        simplices.append(nxt)
    return simplicial_chain_complex(simplices, name=f"order complex of L({n})")


def simplicial_chain_complex(simplices: list[list[tuple]], name: str = "") -> ChainComplex:
    """Generic simplicial boundary ``sum (-1)^i (drop vertex i)`` on ordered simplices."""
    basis = [sorted(level) for level in simplices]
    cx = ChainComplex(basis, name=name)
    for d in range(1, len(basis)):
        index = {s: i for i, s in enumerate(basis[d - 1])}
        entries = {}
        for col, s in enumerate(basis[d]):
            for i in range(len(s)):
                entries[(index[s[:i] + s[i + 1 :]], col)] = (-1) ** i
        cx.boundary[d] = entries
    return cx


def order_complex_homology(n: int) -> HomologyResult:
    return homology(order_complex(n))


@dataclass
class CollapseData:
    """The projection ``C -> C / C_{< top}`` as a chain map into the top degree."""

    top: int
    image_basis: list
    rank: int
    identity_on_top: bool

    def to_json(self) -> dict:
        return {
            "top": self.top,
            "image_size": len(self.image_basis),
            "rank": self.rank,
            "identity_on_top": self.identity_on_top,
        }


def top_collapse(c: ChainComplex) -> CollapseData:
    """Kill every degree below the top one; the top chains pass through unchanged."""
    top = c.dims
    while top > 0 and not c.basis[top]:
        top -= 1
    image = list(c.basis[top])
    proj = {(i, i): 1 for i in range(len(image))}
    # projection followed by inclusion of the top degree
    ident = all(proj.get((i, i)) == 1 for i in range(len(image))) and len(proj) == len(image)
    return CollapseData(top, image, len(smith_invariants(proj, len(image), len(image))), ident)


@dataclass
class LadderReport:
    composites: dict[int, int]

    @property
    def ok(self) -> bool:
        return not any(self.composites.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "nonzero_entries": {str(d): v for d, v in self.composites.items()}}


def ladder_composites(c: ChainComplex, strict: bool = True) -> LadderReport:
    """Connecting maps of the skeletal filtration and their consecutive composites.

    The associated graded piece in degree ``d`` is ``C_d`` alone, and the connecting
    map ``gr_d -> gr_{d-1}`` is the relative boundary, i.e. ``boundary[d]``.
    """
    comp = {}
    for d in range(2, len(c.basis)):
        g_d = c.boundary.get(d, {})
        g_prev = c.boundary.get(d - 1, {})
        comp[d] = len(sparse_matmul(g_prev, g_d))
    rep = LadderReport(comp)
    if strict and not rep.ok:
        raise IntegrityError(f"nonzero ladder composites: {comp}")
    return rep


def shuffle_sign(k: int, mask: int) -> int:
    """Sign of the permutation listing the positions in ``mask`` first, then the rest."""
    order = [p for p in range(k) if mask >> p & 1] + [p for p in range(k) if not mask >> p & 1]
    inv = sum(1 for x in range(k) for y in range(x + 1, k) if order[x] > order[y])
    return -1 if inv % 2 else 1


@dataclass
class ShuffleCheck:
    k: int
    mod2: dict[int, tuple[int, int]]  # j -> (boundary coefficient mod 2, C(k, j) mod 2)
    integral: dict[int, tuple[int, int]]  # j -> (boundary coefficient, signed shuffle count)
    global_sign: dict[int, int | None]  # j -> common sign relating terms, None if inconsistent

    @property
    def mod2_ok(self) -> bool:
        return all(a == b for a, b in self.mod2.values())

    @property
    def integral_ok(self) -> bool:
        return all(
            g is not None and coef == g * signed
            for (coef, signed), g in zip(self.integral.values(), self.global_sign.values())
        )

    @property
    def ok(self) -> bool:
        return self.mod2_ok and self.integral_ok

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ok": self.ok,
            "mod2_ok": self.mod2_ok,
            "integral_ok": self.integral_ok,
            "components": [
                {
                    "j": j,
                    "coef": self.integral[j][0],
                    "coef_mod2": self.mod2[j][0],
                    "shuffles_mod2": self.mod2[j][1],
                    "signed_shuffles": self.integral[j][1],
                    "global_sign": self.global_sign[j],
                }
                for j in sorted(self.mod2)
            ],
        }


def shuffle_boundary_check(k: int) -> ShuffleCheck:
    """Boundary of the top orbit cell of ``D_k({0,1})`` against the shuffle components.

    The facet ``(j, k-j)`` collects one term per ``(j, k-j)``-shuffle.  Mod 2 the
    coefficient must be ``C(k, j)``; integrally each term must equal
    ``g_j * sign(shuffle)`` for one sign ``g_j`` per component.
    """
    if not 2 <= k <= 5:
        raise BoundsError(f"k = {k} outside 2..5")
    cx = build_D_complex(k, 1)
    top = cx.basis[k - 1]
    col = top.index(((k,), (1,) * k))
    row_index = {c: i for i, c in enumerate(cx.basis[k - 2])}
    mod2, integral, gsign = {}, {}, {}
    for j in range(1, k):
        coef = cx.boundary[k - 1].get((row_index[((j, k - j), (1,) * k)], col), 0)
        masks = [sum(1 << p for p in C) for C in itertools.combinations(range(k), j)]
        ratios = {facet_sign(k, m) * shuffle_sign(k, m) for m in masks}
        signed = sum(shuffle_sign(k, m) for m in masks)
        mod2[j] = (coef % 2, comb(k, j) % 2)
        integral[j] = (coef, signed)
        gsign[j] = ratios.pop() if len(ratios) == 1 else None
    return ShuffleCheck(k, mod2, integral, gsign)


def complex_json(c: ChainComplex) -> str:
    return json.dumps(c.to_json(), sort_keys=True)

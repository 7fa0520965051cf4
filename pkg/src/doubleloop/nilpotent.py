"""Free nilpotent quotients through truncated Magnus series.

``x_j -> 1 + X_j`` embeds ``F_r / γ_{c+1}`` into the units of the noncommutative
polynomial ring truncated above degree ``c``, so equality there is exact equality in
the quotient.  On top of that sit Mal'cev coordinates with respect to basic
commutators indexed by Lyndon words, and Sims-style echelon tables giving exact
subgroup and normal-closure membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BoundsError, DomainError

Mono = tuple[int, ...]
MAX_CLASS = 6


@dataclass(frozen=True)
class TruncatedMagnusWord:
    """``1 + ...`` with integer coefficients, words of length ``<= c`` only."""

    c: int
    terms: tuple[tuple[Mono, int], ...]

    @classmethod
    def from_dict(cls, c: int, d: dict) -> TruncatedMagnusWord:
        return cls(c, tuple(sorted((w, v) for w, v in d.items() if v and len(w) <= c)))

    def as_dict(self) -> dict[Mono, int]:
        return dict(self.terms)

    def is_one(self) -> bool:
        return self.terms == (((), 1),)

    def to_json(self) -> list[dict]:
        return [{"word": list(w), "coef": v} for w, v in self.terms]

    def __str__(self) -> str:
        parts = []
        for w, v in sorted(self.terms, key=lambda t: (len(t[0]), t[0])):
            mono = "".join(f"X{j}" for j in w) or "1"
            if mono == "1":
                parts.append(str(v))
            else:
                parts.append(("" if v == 1 else "-" if v == -1 else f"{v}*") + mono)
        return " + ".join(parts).replace("+ -", "- ")


def _mul(a: dict, b: dict, c: int) -> dict:
    out: dict = {}
    for u, x in a.items():
        lu = len(u)
        for v, y in b.items():
            if lu + len(v) <= c:
                w = u + v
                out[w] = out.get(w, 0) + x * y
    return {w: v for w, v in out.items() if v}


def _inverse(a: dict, c: int) -> dict:
    """Truncated geometric series ``(1 + A)^{-1} = 1 - A + A^2 - ...``."""
    if a.get((), 0) != 1:
        raise DomainError("only series with constant term 1 are invertible here")
    A = {w: v for w, v in a.items() if w}
    out = {(): 1}
    power = {(): 1}
    for k in range(1, c + 1):
        power = _mul(power, A, c)
        if not power:
            break
        sign = -1 if k % 2 else 1
        for w, v in power.items():
            out[w] = out.get(w, 0) + sign * v
    return {w: v for w, v in out.items() if v}


def _power(a: dict, e: int, c: int) -> dict:
    if e < 0:
        a, e = _inverse(a, c), -e
    out = {(): 1}
    base = a
    while e:
        if e & 1:
            out = _mul(out, base, c)
        base = _mul(base, base, c)
        e >>= 1
    return out


class NilpotentQuotient:
    """``F(x_1, ..., x_r) / γ_{c+1}`` with elements stored as Magnus dicts."""

    def __init__(self, rank: int, c: int):
        if not 1 <= c <= MAX_CLASS:
            raise BoundsError(f"class {c} outside 1..{MAX_CLASS}")
        if rank < 1:
            raise DomainError("rank must be positive")
        self.rank, self.c = rank, c
        self.basis = basic_commutators(rank, c)
        self._elements = [self._bracket_element(w) for w in self.basis]

    def one(self) -> dict:
        return {(): 1}

    def gen(self, j: int, power: int = 1) -> dict:
        return _power({(): 1, (j,): 1}, power, self.c)

    def mul(self, a: dict, b: dict) -> dict:
        return _mul(a, b, self.c)

    def inv(self, a: dict) -> dict:
        return _inverse(a, self.c)

    def pow(self, a: dict, e: int) -> dict:
        return _power(a, e, self.c)

    def comm(self, a: dict, b: dict) -> dict:
        """``[a, b] = a^{-1} b^{-1} a b``."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conj(self, a: dict, g: dict) -> dict:
        """``g^{-1} a g``."""
        return self.mul(self.mul(self.inv(g), a), g)

    def from_letters(self, letters: Iterable[tuple[int, int]]) -> dict:
        out = self.one()
        for j, p in letters:
            out = self.mul(out, self.gen(j, p))
        return out

    def _bracket_element(self, w: Mono) -> dict:
        if len(w) == 1:
            return self.gen(w[0])
        u, v = standard_factorization(w)
        return self.comm(self._bracket_element(u), self._bracket_element(v))

    def coordinates(self, a: dict) -> list[int]:
        """Mal'cev exponents ``e`` with ``a = prod_t C_t^{e_t}`` in basis order."""
        coords = [0] * len(self.basis)
        rest = dict(a)
        pos = 0
        for weight in range(1, self.c + 1):
            idx = [t for t in range(pos, len(self.basis)) if len(self.basis[t]) == weight]
            layer = {w: v for w, v in rest.items() if len(w) == weight}
            if any(len(w) < weight and w for w, v in rest.items() if v):
                raise DomainError("element is not in the expected term of the lower central series")
            exps = _lie_coordinates(layer, [self.basis[t] for t in idx])
            for t, e in zip(idx, exps):
                coords[t] = e
                if e:
                    rest = self.mul(self.pow(self._elements[t], -e), rest)
            pos = idx[-1] + 1 if idx else pos
        if rest != self.one():
            raise DomainError("Mal'cev extraction did not terminate at the identity")
        return coords

    def from_coordinates(self, coords: Sequence[int]) -> dict:
        out = self.one()
        # coordinates peel from the left, so rebuild as C_1^{e_1} C_2^{e_2} ...
        for t, e in enumerate(coords):
            if e:
                out = self.mul(out, self.pow(self._elements[t], e))
        return out

    def magnus(self, a: dict) -> TruncatedMagnusWord:
        return TruncatedMagnusWord.from_dict(self.c, a)


def magnus_eval(letters: Iterable[tuple[int, int]], c: int) -> TruncatedMagnusWord:
    """Truncated Magnus image of a word in the free group (``(generator, power)`` letters)."""
    if not 1 <= c <= MAX_CLASS:
        raise BoundsError(f"class {c} outside 1..{MAX_CLASS}")
    out = {(): 1}
    for j, p in letters:
        out = _mul(out, _power({(): 1, (j,): 1}, p, c), c)
    return TruncatedMagnusWord.from_dict(c, out)


# -- Lyndon words and the triangular Lie basis ------------------------------------------


def lyndon_words(r: int, n: int) -> list[Mono]:
    """Lyndon words over ``1..r`` of length exactly ``n`` (Duval), lexicographic order."""
    out = []
    w = [0]
    while w:
        w[-1] += 1
        if len(w) == n:
            out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == r:
            w.pop()
    return out


@lru_cache(maxsize=None)
def basic_commutators(r: int, c: int) -> tuple[Mono, ...]:
    return tuple(w for n in range(1, c + 1) for w in lyndon_words(r, n))


def standard_factorization(w: Mono) -> tuple[Mono, Mono]:
    """``w = u v`` with ``v`` the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise DomainError(f"{w} has no standard factorisation")


def _is_lyndon(w: Mono) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def lie_polynomial(w: Mono) -> tuple[tuple[Mono, int], ...]:
    """Expansion of the standard bracketing of a Lyndon word; leading term ``w``."""
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    pu, pv = dict(lie_polynomial(u)), dict(lie_polynomial(v))
    out: dict = {}
    for a, x in pu.items():
        for b, y in pv.items():
            out[a + b] = out.get(a + b, 0) + x * y
            out[b + a] = out.get(b + a, 0) - x * y
    return tuple(sorted((m, v) for m, v in out.items() if v))


def _lie_coordinates(layer: dict, words: list[Mono]) -> list[int]:
    """Write a homogeneous Lie polynomial in the Lyndon basis (triangular in lex order)."""
    rest = {w: v for w, v in layer.items() if v}
    pos = {w: t for t, w in enumerate(words)}
    out = [0] * len(words)
    while rest:
        lead = min(rest)
        if lead not in pos:
            raise DomainError(f"{lead} is not a Lyndon leading term; input is not a Lie element")
        e = rest[lead]
        out[pos[lead]] = e
        for m, v in lie_polynomial(lead):
            nv = rest.get(m, 0) - e * v
            if nv:
                rest[m] = nv
            else:
                rest.pop(m, None)
    return out


# -- subgroups ------------------------------------------------------------------------


class Subgroup:
    """Echelon table of a subgroup of a free nilpotent group (all factors infinite cyclic).

    ``table[d]`` has Mal'cev coordinates vanishing before ``d`` and a positive entry at
    ``d``.  Membership is decided by sifting.
    """

    def __init__(self, G: NilpotentQuotient, gens: Iterable[dict] = (), normal: bool = False):
        self.G = G
        self.normal = normal
        self.table: dict[int, tuple[list[int], dict]] = {}
        self.add(gens)

    def _lead(self, coords: Sequence[int]) -> int:
        for t, e in enumerate(coords):
            if e:
                return t
        return -1

    def _sift_insert(self, g: dict) -> bool:
        """Insert ``g``; return ``True`` if the table changed."""
        G = self.G
        changed = False
        coords = G.coordinates(g)
        while True:
            d = self._lead(coords)
            if d < 0:
                return changed
            if d not in self.table:
                if coords[d] < 0:
                    g = G.inv(g)
                    coords = G.coordinates(g)
                self.table[d] = (coords, g)
                return True
            hc, h = self.table[d]
            a, b = hc[d], coords[d]
            if b % a == 0:
                g = G.mul(G.pow(h, -(b // a)), g)
                coords = G.coordinates(g)
                continue
            gg, x, y = _xgcd(a, b)
            new = G.mul(G.pow(h, x), G.pow(g, y))
            rem = G.mul(G.pow(h, -(b // gg)), G.pow(g, a // gg))
            nc = G.coordinates(new)
            if nc[d] < 0:
                new = G.inv(new)
                nc = G.coordinates(new)
            self.table[d] = (nc, new)
            changed = True
            # h and g must stay in the span: re-sift them against the new entry
            self._pending.extend([h, g])
            g, coords = rem, G.coordinates(rem)

    def add(self, gens: Iterable[dict]) -> None:
        self._pending = list(gens)
        while True:
            while self._pending:
                self._sift_insert(self._pending.pop())
            extra = self._closure_elements()
            grew = False
            for e in extra:
                if not self.contains(e):
                    self._pending.append(e)
                    grew = True
            if not grew:
                return

    def _closure_elements(self) -> list[dict]:
        G = self.G
        elems = [h for _, h in self.table.values()]
        out = []
        for i, a in enumerate(elems):
            for b in elems[i + 1 :]:
                out.append(G.comm(a, b))
        for a in elems:
            for b in elems:
                if a is not b:
                    out.append(G.conj(a, b))
                    out.append(G.conj(a, G.inv(b)))
        if self.normal:
            for a in elems:
                for j in range(1, G.rank + 1):
                    x = G.gen(j)
                    out.append(G.conj(a, x))
                    out.append(G.conj(a, G.inv(x)))
        return out

    def contains(self, g: dict) -> bool:
        G = self.G
        coords = G.coordinates(g)
        while True:
            d = self._lead(coords)
            if d < 0:
                return True
            if d not in self.table:
                return False
            hc, h = self.table[d]
            if coords[d] % hc[d]:
                return False
            g = G.mul(G.pow(h, -(coords[d] // hc[d])), g)
            coords = G.coordinates(g)

    def generators(self) -> list[dict]:
        return [self.table[d][1] for d in sorted(self.table)]

    def echelon(self) -> list[list[int]]:
        return [self.table[d][0] for d in sorted(self.table)]

    def hirsch_length(self) -> int:
        return len(self.table)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0

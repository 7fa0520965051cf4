"""Tensor coalgebra side: the shuffle map with its reduced-coproduct derivation, and ranks of Lie(n)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import BoundsError, DomainError
from .intlinalg import smith_invariants

Word = tuple[int, ...]


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v}


@dataclass(frozen=True)
class TensorElement:
    """Integer combination of words over generators ``1..n_vars``."""

    n_vars: int
    terms: dict[Word, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = _clean(self.terms)
        for w in clean:
            if any(not 1 <= x <= self.n_vars for x in w):
                raise DomainError(f"word {w} uses letters outside 1..{self.n_vars}")
        object.__setattr__(self, "terms", clean)

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return TensorElement(max(self.n_vars, other.n_vars), out)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + other.scale(-1)

    def scale(self, c: int) -> TensorElement:
        return TensorElement(self.n_vars, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: TensorElement) -> TensorElement:
        out: dict[Word, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out[u + v] = out.get(u + v, 0) + a * b
        return TensorElement(max(self.n_vars, other.n_vars), out)

    def to_json(self) -> list[dict]:
        return [{"word": list(w), "coef": c} for w, c in sorted(self.terms.items())]


@dataclass(frozen=True)
class SplitTensorElement:
    """Integer combination of pairs ``(u, v)`` of nonempty words, i.e. of ``u (x) v``."""

    terms: dict[tuple[Word, Word], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = _clean(self.terms)
        if any(not u or not v for u, v in clean):
            raise DomainError("both tensor factors must be nonempty")
        object.__setattr__(self, "terms", clean)

    def term_count(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    def to_json(self) -> list[dict]:
        return [{"left": list(u), "right": list(v), "coef": c} for (u, v), c in sorted(self.terms.items())]


def shuffle_map(w: Sequence[int], component: tuple[int, int] | None = None) -> SplitTensorElement:
    """Sum over splittings of the positions into an ``i``-set and a ``j``-set of
    ``(subword on the i-set) (x) (subword on the j-set)``."""
    w = tuple(w)
    k = len(w)
    if k < 2:
        raise DomainError("the shuffle map needs a word of length >= 2")
    if component is None:
        sizes = range(1, k)
    else:
        i, j = component
        if i <= 0 or j <= 0 or i + j != k:
            raise DomainError(f"component {component} must have i, j > 0 and i + j = {k}")
        sizes = [i]
    out: dict[tuple[Word, Word], int] = {}
    for i in sizes:
        for left in itertools.combinations(range(k), i):
            chosen = set(left)
            key = (tuple(w[p] for p in left), tuple(w[p] for p in range(k) if p not in chosen))
            out[key] = out.get(key, 0) + 1
    return SplitTensorElement(out)


def coproduct(w: Sequence[int]) -> dict[tuple[Word, Word], int]:
    """Multiplicative coproduct with primitive generators: ``prod_p (y_p (x) 1 + 1 (x) y_p)``."""
    acc: dict[tuple[Word, Word], int] = {((), ()): 1}
    for y in w:
        nxt: dict[tuple[Word, Word], int] = {}
        for (u, v), c in acc.items():
            for key in ((u + (y,), v), (u, v + (y,))):
                nxt[key] = nxt.get(key, 0) + c
        acc = nxt
    return acc


def reduced_coproduct_quotient(w: Sequence[int]) -> SplitTensorElement:
    """Reduced coproduct followed by the quotient onto pairs of nonempty words."""
    return SplitTensorElement({(u, v): c for (u, v), c in coproduct(w).items() if u and v})


def left_normed_bracket(perm: Sequence[int]) -> TensorElement:
    """``[[x_{p1}, x_{p2}], ..., x_{pn}]`` expanded in the free associative algebra."""
    n = max(perm)
    acc = TensorElement(n, {(perm[0],): 1})
    for x in perm[1:]:
        gen = TensorElement(n, {(x,): 1})
        acc = acc * gen - gen * acc
    return acc


@dataclass
class LieRank:
    n: int
    rank: int
    invariant_factors: list[int]

    @property
    def direct_summand(self) -> bool:
        return all(d == 1 for d in self.invariant_factors)

    @property
    def expected(self) -> int:
        return factorial(self.n - 1)

    def to_json(self) -> dict:
        nontrivial = [d for d in self.invariant_factors if d != 1]
        return {
            "n": self.n,
            "rank": self.rank,
            "expected": self.expected,
            "direct_summand": self.direct_summand,
            "nontrivial_invariant_factors": nontrivial,
        }


def lie_rank(n: int) -> LieRank:
    """Rank of the span of all ``n!`` left-normed brackets inside the multilinear words."""
    if not 2 <= n <= 6:
        raise BoundsError(f"n = {n} outside 2..6")
    words = {w: i for i, w in enumerate(itertools.permutations(range(1, n + 1)))}
    entries = {}
    for row, perm in enumerate(itertools.permutations(range(1, n + 1))):
        for w, c in left_normed_bracket(perm).terms.items():
            entries[(row, words[w])] = c
    inv = smith_invariants(entries, len(words), len(words))
    return LieRank(n, len(inv), inv)


def words_of_length(k: int, letters: Iterable[int]) -> Iterable[Word]:
    return itertools.product(tuple(letters), repeat=k)

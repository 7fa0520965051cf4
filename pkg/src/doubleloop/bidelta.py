"""Bi-Δ-groups: the extension ``Φ_0 G`` of a cyclic group, abelian instances,
Moore cycles, Cohen groups, James-Hopf operators and their identities.

Level ``n`` of ``Φ_0 G`` is the free product of ``n+1`` copies of ``G``; copy ``j``
(1-based) is the image of ``ι_j``.  Faces and cofaces act on copies:

    d_i ι_j = ι_j (j <= i),  1 (j = i+1),  ι_{j-1} (j >= i+2)
    d^i ι_j = ι_j (j <= i),  ι_{j+1} (j >= i+1)
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .errors import BoundsError, DomainError, InputError
from .intlinalg import hermite_rows, integer_kernel, integer_solve, solve_in_lattice
from .preoperad import LawReport

Letter = tuple[int, int]  # (component, power)


# -- Φ_0 G on reduced free-product words ----------------------------------------------


@dataclass(frozen=True)
class CyclicGroup:
    """``Z`` when ``order`` is ``None``, otherwise ``Z/order``."""

    order: int | None = None

    def __post_init__(self):
        if self.order is not None and self.order < 1:
            raise DomainError("a cyclic group has order >= 1 or is infinite")

    def normalize(self, power: int) -> int:
        if self.order is None:
            return power
        p = power % self.order
        # symmetric representative keeps words short and readable
        return p - self.order if p > self.order // 2 else p

    @classmethod
    def parse(cls, text: str) -> CyclicGroup:
        t = text.strip().upper().replace(" ", "")
        if t == "Z":
            return cls(None)
        if t.startswith("Z/"):
            return cls(int(t[2:]))
        raise DomainError(f"unsupported group {text!r}; use Z or Z/m")

    def __str__(self) -> str:
        return "Z" if self.order is None else f"Z/{self.order}"


@dataclass(frozen=True)
class FreeProductWord:
    """Reduced word at ``level``: no identity letters, adjacent letters in distinct copies."""

    level: int
    letters: tuple[Letter, ...] = ()

    def to_json(self) -> list[dict]:
        return [{"component": c, "power": p} for c, p in self.letters]

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{c}" if p == 1 else f"x{c}^{p}" for c, p in self.letters)


class Phi0:
    """``Φ_0 G`` for cyclic ``G``: reduced words with exact face/coface evaluation."""

    def __init__(self, group: CyclicGroup | None = None):
        self.group = group or CyclicGroup()

    def __repr__(self) -> str:
        return f"Phi0({self.group})"

    def reduce(self, level: int, letters: Iterable[Letter]) -> FreeProductWord:
        stack: list[Letter] = []
        for c, p in letters:
            if not 1 <= c <= level + 1:
                raise DomainError(f"component {c} outside 1..{level + 1}")
            p = self.group.normalize(p)
            if not p:
                continue
            if stack and stack[-1][0] == c:
                q = self.group.normalize(stack[-1][1] + p)
                stack.pop()
                if q:
                    stack.append((c, q))
            else:
                stack.append((c, p))
        return FreeProductWord(level, tuple(stack))

    def identity(self, level: int) -> FreeProductWord:
        return FreeProductWord(level, ())

    def generator(self, j: int, level: int, power: int = 1) -> FreeProductWord:
        return self.reduce(level, [(j, power)])

    def mul(self, a: FreeProductWord, b: FreeProductWord) -> FreeProductWord:
        if a.level != b.level:
            raise DomainError("cannot multiply words of different levels")
        return self.reduce(a.level, a.letters + b.letters)

    def inv(self, a: FreeProductWord) -> FreeProductWord:
        return self.reduce(a.level, [(c, -p) for c, p in reversed(a.letters)])

    def commutator(self, a: FreeProductWord, b: FreeProductWord) -> FreeProductWord:
        """``[a, b] = a^{-1} b^{-1} a b``."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def is_identity(self, a: FreeProductWord) -> bool:
        return not a.letters

    def face(self, i: int, a: FreeProductWord) -> FreeProductWord:
        n = a.level
        if n < 1 or not 0 <= i <= n:
            raise BoundsError(f"face d_{i} undefined at level {n}")
        out = []
        for c, p in a.letters:
            if c <= i:
                out.append((c, p))
            elif c >= i + 2:
                out.append((c - 1, p))
        return self.reduce(n - 1, out)

    def coface(self, i: int, a: FreeProductWord) -> FreeProductWord:
        n = a.level + 1
        if not 0 <= i <= n:
            raise BoundsError(f"coface d^{i} undefined into level {n}")
        return self.reduce(n, [(c if c <= i else c + 1, p) for c, p in a.letters])

    def random_word(self, level: int, rng, max_len: int = 8) -> FreeProductWord:
        length = rng.randint(0, max_len)
        pmax = 3 if self.group.order is None else max(1, self.group.order - 1)
        letters = [(rng.randint(1, level + 1), rng.choice([-1, 1]) * rng.randint(1, pmax)) for _ in range(length)]
        return self.reduce(level, letters)

    def parse_word(self, level: int, data) -> FreeProductWord:
        """Accept JSON ``[{"component":..,"power":..}]`` or text like ``"1,2,-1,-2"``."""
        if isinstance(data, str):
            data = data.strip()
            if data.startswith("["):
                data = json.loads(data)
            else:
                letters = []
                for tok in data.replace(" ", "").split(","):
                    if not tok:
                        continue
                    if "^" in tok:
                        c, p = tok.split("^")
                        letters.append((int(c), int(p)))
                    else:
                        v = int(tok)
                        letters.append((abs(v), 1 if v > 0 else -1))
                return self.reduce(level, letters)
        try:
            return self.reduce(level, [(int(d["component"]), int(d["power"])) for d in data])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed word {data!r}") from exc


def build_phi0(group: CyclicGroup | str | None = None) -> Phi0:
    if isinstance(group, str):
        group = CyclicGroup.parse(group)
    return Phi0(group)


def derived_generator(inst: Phi0, j: int, n: int) -> FreeProductWord:
    """``ι_{j+1} = d^n ... d^{j+1} d^{j-1} ... d^0`` applied to the level-0 generator."""
    x = inst.generator(1, 0)
    for i in range(n + 1):
        if i != j:
            x = inst.coface(i, x)
    return x


# -- abelian instances ------------------------------------------------------------------


class AbelianInstance:
    """Abelian bi-Δ-group of noncommutative polynomials in letters ``1..n+1``.

    Level ``n`` is free abelian on the words of length in ``1..max_len``.  Faces send
    letter ``i+1`` to zero and close the gap, cofaces open a gap at ``i+1``; words
    containing a killed letter vanish.  ``max_len = 1`` is the abelianisation of
    ``Φ_0 Z`` (level ``n`` is ``Z^{n+1}``).
    """

    def __init__(self, max_len: int = 1):
        if max_len < 1:
            raise DomainError("max_len must be >= 1")
        self.max_len = max_len
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"AbelianInstance(max_len={self.max_len})"

    # group structure on sparse vectors {word: coefficient}
    @staticmethod
    def identity(level: int) -> dict:
        return {}

    @staticmethod
    def mul(a: dict, b: dict) -> dict:
        out = dict(a)
        for w, c in b.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return out

    add = mul

    @staticmethod
    def scale(a: dict, k: int) -> dict:
        return {w: k * c for w, c in a.items()} if k else {}

    def sub(self, a: dict, b: dict) -> dict:
        return self.mul(a, self.scale(b, -1))

    @staticmethod
    def is_identity(a: dict) -> bool:
        return not a

    def basis(self, level: int) -> list[tuple[int, ...]]:
        key = ("basis", level)
        if key not in self._cache:
            letters = range(1, level + 2)
            self._cache[key] = [w for L in range(1, self.max_len + 1) for w in itertools.product(letters, repeat=L)]
        return self._cache[key]

    def index(self, level: int) -> dict:
        key = ("index", level)
        if key not in self._cache:
            self._cache[key] = {w: i for i, w in enumerate(self.basis(level))}
        return self._cache[key]

    def to_vector(self, a: dict, level: int) -> list[int]:
        idx = self.index(level)
        v = [0] * len(idx)
        for w, c in a.items():
            v[idx[w]] = c
        return v

    def from_vector(self, v: Sequence[int], level: int) -> dict:
        return {w: c for w, c in zip(self.basis(level), v) if c}

    def face(self, i: int, a: dict, level: int) -> dict:
        if level < 1 or not 0 <= i <= level:
            raise BoundsError(f"face d_{i} undefined at level {level}")
        out: dict = {}
        gone = i + 1
        for w, c in a.items():
            if gone in w:
                continue
            nw = tuple(x if x < gone else x - 1 for x in w)
            out[nw] = out.get(nw, 0) + c
        return {w: c for w, c in out.items() if c}

    def coface(self, i: int, a: dict, level: int) -> dict:
        """``d^i`` from ``level`` to ``level + 1``."""
        if not 0 <= i <= level + 1:
            raise BoundsError(f"coface d^{i} undefined into level {level + 1}")
        return {tuple(x if x <= i else x + 1 for x in w): c for w, c in a.items()}

    def face_matrix(self, i: int, level: int) -> list[list[int]]:
        """Rows indexed by the target basis, columns by the source basis."""
        key = ("face", i, level)
        if key not in self._cache:
            tgt = self.index(level - 1)
            m = [[0] * len(self.basis(level)) for _ in tgt]
            for col, w in enumerate(self.basis(level)):
                for nw, c in self.face(i, {w: 1}, level).items():
                    m[tgt[nw]][col] += c
            self._cache[key] = m
        return self._cache[key]

    def cohen_basis(self, level: int) -> list[dict]:
        """Lattice basis of ``h_n = {x : d_0 x = ... = d_n x}``."""
        key = ("cohen", level)
        if key not in self._cache:
            if level == 0:
                rows = [[1 if i == j else 0 for j in range(len(self.basis(0)))] for i in range(len(self.basis(0)))]
            else:
                d0 = self.face_matrix(0, level)
                stacked = []
                for i in range(1, level + 1):
                    di = self.face_matrix(i, level)
                    stacked += [[x - y for x, y in zip(r1, r0)] for r1, r0 in zip(di, d0)]
                rows = integer_kernel(stacked, len(self.basis(level)))
            self._cache[key] = [self.from_vector(r, level) for r in rows]
        return self._cache[key]

    def cycle_basis(self, level: int) -> list[dict]:
        """Lattice basis of the Moore cycles ``Z_n`` (``Z_0`` is all of level 0)."""
        key = ("cycles", level)
        if key not in self._cache:
            if level == 0:
                vecs = self.cohen_basis(0)
            else:
                stacked = [r for i in range(level + 1) for r in self.face_matrix(i, level)]
                vecs = [self.from_vector(r, level) for r in integer_kernel(stacked, len(self.basis(level)))]
            self._cache[key] = vecs
        return self._cache[key]

    def random_combination(self, vecs: Sequence[dict], rng, spread: int = 5) -> dict:
        out: dict = {}
        for v in vecs:
            out = self.add(out, self.scale(v, rng.randint(-spread, spread)))
        return out


def abelianized_phi0() -> AbelianInstance:
    return AbelianInstance(1)


def vector_to_element(v: Sequence[int]) -> dict:
    """``Z^{n+1}`` vector to an element of :func:`abelianized_phi0`."""
    return {(j + 1,): c for j, c in enumerate(v) if c}


def element_to_vector(a: dict, level: int) -> list[int]:
    v = [0] * (level + 1)
    for (j,), c in a.items():
        v[j - 1] += c
    return v


# -- predicates and operators valid for any instance -----------------------------------


def _level_of(x, level: int | None) -> int:
    if level is not None:
        return level
    if isinstance(x, FreeProductWord):
        return x.level
    raise DomainError("level must be given for abelian elements")


def _face(inst, i: int, x, level: int):
    return inst.face(i, x) if isinstance(inst, Phi0) else inst.face(i, x, level)


def _coface(inst, i: int, x, level: int):
    return inst.coface(i, x) if isinstance(inst, Phi0) else inst.coface(i, x, level)


def is_moore_cycle(x, n: int, inst) -> bool:
    """Every face is trivial.  Level 0 has no faces, so everything there is a cycle."""
    return all(inst.is_identity(_face(inst, i, x, n)) for i in range(n + 1)) if n else True


def is_cohen_element(x, n: int, inst) -> bool:
    if n == 0:
        return True
    first = _face(inst, 0, x, n)
    return all(_face(inst, i, x, n) == first for i in range(1, n + 1))


def p_map(x, n: int, inst):
    """``p_n : h_n -> h_{n-1}``, the common value of all faces (computed as ``d_0``)."""
    if not is_cohen_element(x, n, inst):
        raise DomainError("p_n is only defined on Cohen elements")
    return _face(inst, 0, x, n)


@lru_cache(maxsize=None)
def jh_index_sets(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Index sets ``0 <= i_1 < ... < i_{n-k} <= n`` in lexicographic order from the right."""
    if k > n:
        return ()
    sets = itertools.combinations(range(n + 1), n - k)
    return tuple(sorted(sets, key=lambda s: tuple(reversed(s))))


def james_hopf(k: int, n: int, x, inst):
    """``H_{k,n}(x) = prod d^{i_{n-k}} ... d^{i_1}(x)`` over the ordered index sets."""
    if k < 0 or n < 0:
        raise BoundsError("levels are nonnegative")
    if k > n:
        return inst.identity(n)
    if k == n:
        return x
    out = inst.identity(n)
    for S in jh_index_sets(k, n):
        y, lvl = x, k
        for i in S:  # d^{i_1} acts first
            y = _coface(inst, i, y, lvl)
            lvl += 1
        out = inst.mul(out, y)
    return out


def sigma(n: int, x, inst):
    """``σ_n = H_{n-1, n}``."""
    return james_hopf(n - 1, n, x, inst)


def sigma_chain(top: int, bottom: int, x, inst):
    """``σ_top ... σ_{bottom+1}`` applied to ``x`` at level ``bottom``."""
    for lvl in range(bottom + 1, top + 1):
        x = sigma(lvl, x, inst)
    return x


def p_chain(low: int, high: int, x, inst):
    """``p_{low,high} = p_{low+1} ... p_high`` from ``h_high`` to ``h_low``."""
    for lvl in range(high, low, -1):
        x = p_map(x, lvl, inst)
    return x


# -- identity suites --------------------------------------------------------------------


def _samples(inst: AbelianInstance, basis: list[dict], rng, fuzz: int) -> list[dict]:
    vecs = list(basis)
    if basis:
        vecs += [inst.random_combination(basis, rng) for _ in range(fuzz)]
    return vecs


def _unit_vectors(inst: AbelianInstance, level: int) -> list[dict]:
    return [{w: 1} for w in inst.basis(level)]


@dataclass
class SuiteReport:
    laws: list[LawReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(l.ok for l in self.laws)

    def to_json(self) -> dict:
        return {"ok": self.ok, "laws": [l.to_json() for l in self.laws]}


def _show(a: dict) -> dict:
    return {"".join(map(str, w)) if all(x < 10 for x in w) else ",".join(map(str, w)): c for w, c in sorted(a.items())}


def verify_jh_identities(inst: AbelianInstance, max_level: int = 7, rng=None, fuzz: int = 500) -> SuiteReport:
    """The James-Hopf identities on an abelian instance, up to ``max_level``.

    Basis vectors (of the relevant lattice) are checked exhaustively; ``fuzz`` random
    lattice combinations are spread over the levels.
    """
    import random as _random

    rng = rng or _random.Random(0)
    rep = SuiteReport()
    L = max_level
    per = max(1, fuzz // max(1, L))

    face_law = LawReport("p_n H_{k,n} = H_{k,n-1} + H_{k-1,n-1} p_k on h_k")
    for k in range(1, L + 1):
        samples = _samples(inst, inst.cohen_basis(k), rng, per)
        for n in range(k, L + 1):
            for x in samples:
                face_law.checked += 1
                lhs = p_map(james_hopf(k, n, x, inst), n, inst)
                rhs = inst.add(james_hopf(k, n - 1, x, inst), james_hopf(k - 1, n - 1, p_map(x, k, inst), inst))
                if lhs != rhs:
                    face_law.fail({"k": k, "n": n, "x": _show(x)})
    rep.laws.append(face_law)

    compose_law = LawReport("H_{n,m} H_{k,n} = C(m-k, m-n) H_{k,m}")
    for k in range(0, L + 1):
        samples = _unit_vectors(inst, k) + [inst.random_combination(_unit_vectors(inst, k), rng) for _ in range(per)]
        for n in range(k, L + 1):
            for m in range(n, L + 1):
                c = comb(m - k, m - n)
                for x in samples:
                    compose_law.checked += 1
                    lhs = james_hopf(n, m, james_hopf(k, n, x, inst), inst)
                    if lhs != inst.scale(james_hopf(k, m, x, inst), c):
                        compose_law.fail({"k": k, "n": n, "m": m, "x": _show(x)})
    rep.laws.append(compose_law)

    ps = LawReport("p_n σ_n = id + σ_{n-1} p_{n-1} on h_{n-1}")
    for n in range(2, L + 1):
        for x in _samples(inst, inst.cohen_basis(n - 1), rng, per):
            ps.checked += 1
            lhs = p_map(sigma(n, x, inst), n, inst)
            rhs = inst.add(x, sigma(n - 1, p_map(x, n - 1, inst), inst))
            if lhs != rhs:
                ps.fail({"n": n, "x": _show(x)})
    rep.laws.append(ps)

    prel = LawReport("H_{n,m} σ_n ... σ_{s+1} = P^{m-s}_{n-s} H_{s,m}")
    for s in range(0, L + 1):
        samples = _unit_vectors(inst, s)
        for n in range(s, L + 1):
            chained = [sigma_chain(n, s, x, inst) for x in samples]
            for m in range(n, L + 1):
                P = factorial(m - s) // factorial(m - n)
                for x, y in zip(samples, chained):
                    prel.checked += 1
                    if james_hopf(n, m, y, inst) != inst.scale(james_hopf(s, m, x, inst), P):
                        prel.fail({"s": s, "n": n, "m": m, "x": _show(x)})
    rep.laws.append(prel)

    sigma_once = LawReport("p_{m+n} σ_{m+n} = n on σ_{m+n-1} ... σ_{m+1} Z_m")
    sigma_chain_law = LawReport("p_{m+1} ... p_{m+n} σ_{m+n} ... σ_{m+1} = n! on Z_m")
    for m in range(0, L):
        zs = _samples(inst, inst.cycle_basis(m), rng, per)
        for n in range(1, L - m + 1):
            for z in zs:
                y = sigma_chain(m + n - 1, m, z, inst)
                sigma_once.checked += 1
                if p_map(sigma(m + n, y, inst), m + n, inst) != inst.scale(y, n):
                    sigma_once.fail({"m": m, "n": n, "z": _show(z)})
                sigma_chain_law.checked += 1
                top = sigma(m + n, y, inst)
                if p_chain(m, m + n, top, inst) != inst.scale(z, factorial(n)):
                    sigma_chain_law.fail({"m": m, "n": n, "z": _show(z)})
    rep.laws.append(sigma_once)
    rep.laws.append(sigma_chain_law)

    idem = LawReport("e_m^(n) is idempotent and p_{m,n} H_{m,n} i_m = i_m")
    for m in range(0, L + 1):
        section = default_retraction(inst, m)
        for n in range(m, L + 1):
            r = idempotent_check(m, n, inst, section, rng=rng, fuzz=max(1, per // 4))
            idem.checked += r.checked
            idem.failed += r.failed
            idem.failures += r.failures[: idem.keep - len(idem.failures)]
    rep.laws.append(idem)
    return rep


# -- splittings and idempotents ---------------------------------------------------------


class Retraction:
    """A linear retraction ``π_m : h_m -> Z_m`` of the inclusion ``i_m``."""

    def __init__(self, inst: AbelianInstance, m: int, fn: Callable[[dict], dict]):
        self.inst, self.m, self.fn = inst, m, fn

    def __call__(self, x: dict) -> dict:
        return self.fn(x)


def default_retraction(inst: AbelianInstance, m: int) -> Retraction:
    """``π = id - s ∘ p_m`` where ``s`` is a linear section of ``p_m`` fixed on a basis."""
    if m == 0:
        return Retraction(inst, 0, lambda x: dict(x))
    hm = inst.cohen_basis(m)
    images = [inst.to_vector(p_map(x, m, inst), m - 1) for x in hm]
    lower = [inst.to_vector(v, m - 1) for v in inst.cohen_basis(m - 1)]
    dim = len(inst.basis(m - 1))
    hnf = hermite_rows(lower, dim)
    lifts = []
    for row in hnf:
        coeffs = integer_solve(images, row)
        if coeffs is None:
            raise DomainError(f"p_{m} is not onto h_{m - 1}; no splitting available")
        lift: dict = {}
        for c, x in zip(coeffs, hm):
            lift = inst.add(lift, inst.scale(x, c))
        lifts.append(lift)

    def retract(x: dict) -> dict:
        y = inst.to_vector(p_map(x, m, inst), m - 1)
        coeffs = solve_in_lattice(hnf, y)
        if coeffs is None:
            raise DomainError("element is not in h_m")
        s: dict = {}
        for c, lift in zip(coeffs, lifts):
            s = inst.add(s, inst.scale(lift, c))
        return inst.sub(x, s)

    return Retraction(inst, m, retract)


def idempotent_check(m: int, n: int, inst: AbelianInstance, section: Retraction | Callable | None = None,
                     rng=None, fuzz: int = 100) -> LawReport:
    """Check ``e = H_{m,n} i_m π_m p_{m,n}`` satisfies ``e∘e = e`` on ``h_n`` and the key
    identity ``p_{m,n} H_{m,n} i_m = i_m`` on ``Z_m``."""
    import random as _random

    if n < m:
        raise DomainError("idempotents need n >= m")
    rng = rng or _random.Random(0)
    pi = section if section is not None else default_retraction(inst, m)
    zm = inst.cycle_basis(m)
    for z in zm:
        if pi(z) != z:
            raise InputError(f"supplied map is not a retraction of Z_{m}: moves {_show(z)}")
    for x in inst.cohen_basis(m):
        if not is_moore_cycle(pi(x), m, inst):
            raise InputError(f"supplied map does not land in Z_{m}")

    def e(x: dict) -> dict:
        return james_hopf(m, n, pi(p_chain(m, n, x, inst)), inst)

    rep = LawReport(f"idempotent e_{m}^({n})")
    for x in _samples(inst, inst.cohen_basis(n), rng, fuzz):
        rep.checked += 1
        ex = e(x)
        if e(ex) != ex:
            rep.fail({"m": m, "n": n, "x": _show(x)})
    for z in zm:
        rep.checked += 1
        if p_chain(m, n, james_hopf(m, n, z, inst), inst) != z:
            rep.fail({"m": m, "n": n, "section_identity": _show(z)})
    return rep


# -- relation table and the Cohen surjection ------------------------------------------


def check_relation_table(inst, max_level: int, rng=None, samples: int = 500) -> LawReport:
    """``d_j d^i = d^{i-1} d_j (j < i),  id (j = i),  d^i d_{j-1} (j > i)``.

    Free-product instances are fuzzed with ``samples`` words per level; abelian
    instances are checked on every basis word (the maps are linear).
    """
    import random as _random

    rng = rng or _random.Random(0)
    rep = LawReport(f"bi-Δ relations on {inst!r}")
    for lvl in range(0, max_level):
        # x at level lvl, d^i into lvl+1, d_j back to lvl
        if isinstance(inst, Phi0):
            xs = [inst.random_word(lvl, rng) for _ in range(samples)]
        else:
            xs = _unit_vectors(inst, lvl)
        for x in xs:
            for i in range(lvl + 2):
                up = _coface(inst, i, x, lvl)
                for j in range(lvl + 2):
                    lhs = _face(inst, j, up, lvl + 1)
                    if j < i:
                        rhs = _coface(inst, i - 1, _face(inst, j, x, lvl), lvl - 1) if lvl else None
                    elif j == i:
                        rhs = x
                    else:
                        rhs = _coface(inst, i, _face(inst, j - 1, x, lvl), lvl - 1) if lvl else None
                    if rhs is None:
                        continue  # level 0 has no faces; the relation is vacuous there
                    rep.checked += 1
                    if lhs != rhs:
                        rep.fail({"level": lvl, "i": i, "j": j, "x": str(x) if isinstance(x, FreeProductWord) else _show(x)})
    return rep


def check_cohen_surjection(inst: AbelianInstance, max_level: int) -> dict[str, LawReport]:
    """``p_n : h_n -> h_{n-1}`` is onto with kernel exactly ``Z_n`` (exact lattice algebra)."""
    onto = LawReport("p_n maps h_n onto h_{n-1}")
    kern = LawReport("ker p_n = Z_n")
    for n in range(1, max_level + 1):
        hn = inst.cohen_basis(n)
        dim_lo, dim = len(inst.basis(n - 1)), len(inst.basis(n))
        images = [inst.to_vector(p_map(x, n, inst), n - 1) for x in hn]
        lower = [inst.to_vector(v, n - 1) for v in inst.cohen_basis(n - 1)]
        onto.checked += 1
        if hermite_rows(images, dim_lo) != hermite_rows(lower, dim_lo):
            onto.fail({"level": n})
        # kernel of the map coefficients -> image, pushed back into the ambient group
        cols = [[images[r][c] for r in range(len(images))] for c in range(dim_lo)]
        coeff_kernel = integer_kernel(cols, len(hn)) if hn else []
        kernel_vecs = []
        for coeffs in coeff_kernel:
            v: dict = {}
            for c, x in zip(coeffs, hn):
                v = inst.add(v, inst.scale(x, c))
            kernel_vecs.append(inst.to_vector(v, n))
        cycles = [inst.to_vector(z, n) for z in inst.cycle_basis(n)]
        kern.checked += 1
        if hermite_rows(kernel_vecs, dim) != hermite_rows(cycles, dim):
            kern.fail({"level": n})
    return {"onto": onto, "kernel": kern}


def cohen_summary(inst: AbelianInstance, max_level: int) -> list[dict]:
    return [
        {"level": n, "rank_G": len(inst.basis(n)), "rank_h": len(inst.cohen_basis(n)), "rank_Z": len(inst.cycle_basis(n))}
        for n in range(max_level + 1)
    ]

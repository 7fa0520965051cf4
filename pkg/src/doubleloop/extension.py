"""Normal bi-Δ-extensions of ``Φ_0 Z`` inside computable quotients, and the
trivial-composite audit.

Every composite of faces and cofaces rewrites to cofaces after faces, so the
extension restricted to levels ``<= cutoff`` is reached without leaving that range:
push faces down, push cofaces up, normally close, repeat until nothing grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bidelta import FreeProductWord, Phi0
from .errors import BoundsError, DomainError, InputError
from .intlinalg import hermite_rows, in_lattice
from .nilpotent import NilpotentQuotient, Subgroup

MAX_CUTOFF = 6


@dataclass(frozen=True)
class Quotient:
    """``abelian`` or ``nilpotent`` of class ``c``."""

    kind: str
    c: int = 1

    @classmethod
    def parse(cls, text: str) -> Quotient:
        t = text.strip().lower()
        if t == "abelian":
            return cls("abelian", 1)
        if t.startswith("nilpotent:"):
            return cls("nilpotent", int(t.split(":", 1)[1]))
        raise DomainError(f"unsupported quotient {text!r}; use abelian or nilpotent:C")

    def __str__(self) -> str:
        return "abelian" if self.kind == "abelian" else f"nilpotent:{self.c}"


class _AbelianLevel:
    """Subgroup of ``Z^{n+1}`` kept in Hermite form."""

    def __init__(self, level: int):
        self.level = level
        self.rows: list[list[int]] = []

    def embed(self, w: FreeProductWord) -> list[int]:
        v = [0] * (self.level + 1)
        for c, p in w.letters:
            v[c - 1] += p
        return v

    def contains(self, v) -> bool:
        return in_lattice(self.rows, v)

    def add(self, vs: Sequence[list[int]]) -> bool:
        new = [v for v in vs if not self.contains(v)]
        if new:
            self.rows = hermite_rows(self.rows + new, self.level + 1)
        return bool(new)

    def generators(self) -> list:
        return [list(r) for r in self.rows]

    def face(self, i: int, v):
        return v[:i] + v[i + 1 :]

    def coface(self, i: int, v):
        return v[:i] + [0] + v[i:]

    def describe(self) -> dict:
        return {"level": self.level, "rank": len(self.rows), "hermite_basis": self.generators()}


class _NilpotentLevel:
    """Normal subgroup of the free nilpotent group of rank ``n+1`` and class ``c``."""

    def __init__(self, level: int, c: int):
        self.level = level
        self.G = NilpotentQuotient(level + 1, c)
        self.sub = Subgroup(self.G, normal=True)

    def embed(self, w: FreeProductWord) -> dict:
        return self.G.from_letters(w.letters)

    def contains(self, g) -> bool:
        return self.sub.contains(g)

    def add(self, gs: Sequence[dict]) -> bool:
        new = [g for g in gs if not self.contains(g)]
        if new:
            self.sub.add(new)
        return bool(new)

    def generators(self) -> list:
        return self.sub.generators()

    @staticmethod
    def _substitute(g: dict, fn: Callable[[int], int | None]) -> dict:
        out: dict = {}
        for w, v in g.items():
            img = []
            for x in w:
                y = fn(x)
                if y is None:
                    break
                img.append(y)
            else:
                key = tuple(img)
                out[key] = out.get(key, 0) + v
        return {w: v for w, v in out.items() if v}

    def face(self, i: int, g):
        # x_{i+1} -> 1, so X_{i+1} -> 0; later letters shift down
        return self._substitute(g, lambda x: x if x <= i else (None if x == i + 1 else x - 1))

    def coface(self, i: int, g):
        return self._substitute(g, lambda x: x if x <= i else x + 1)

    def describe(self) -> dict:
        return {
            "level": self.level,
            "hirsch_length": self.sub.hirsch_length(),
            "malcev_echelon": self.sub.echelon(),
        }


@dataclass
class Extension:
    quotient: Quotient
    cutoff: int
    levels: list
    rounds: int = 0

    def contains(self, level: int, element) -> bool:
        lv = self.levels[level]
        if isinstance(element, FreeProductWord):
            element = lv.embed(element)
        return lv.contains(element)

    def generators(self, level: int) -> list:
        return self.levels[level].generators()

    def to_json(self) -> dict:
        return {
            "quotient": str(self.quotient),
            "cutoff": self.cutoff,
            "rounds": self.rounds,
            "levels": [lv.describe() for lv in self.levels],
        }


def _make_levels(quotient: Quotient, cutoff: int) -> list:
    if quotient.kind == "abelian":
        return [_AbelianLevel(n) for n in range(cutoff + 1)]
    if quotient.kind == "nilpotent":
        return [_NilpotentLevel(n, quotient.c) for n in range(cutoff + 1)]
    raise DomainError(f"unsupported quotient {quotient}")


def normal_bidelta_extension(gens: Sequence[tuple[int, FreeProductWord]], quotient: Quotient | str,
                             cutoff: int = 4) -> Extension:
    """Smallest levelwise-normal family closed under faces and cofaces containing ``gens``,
    computed in the chosen quotient of ``Φ_0 Z`` for levels ``0..cutoff``."""
    if isinstance(quotient, str):
        quotient = Quotient.parse(quotient)
    if not 0 <= cutoff <= MAX_CUTOFF:
        raise BoundsError(f"cutoff {cutoff} outside 0..{MAX_CUTOFF}")
    levels = _make_levels(quotient, cutoff)
    for lvl, w in gens:
        if not 0 <= lvl <= cutoff:
            raise BoundsError(f"generator level {lvl} outside 0..{cutoff}")
        if w.level != lvl:
            raise InputError(f"word {w} does not live at level {lvl}")
        levels[lvl].add([levels[lvl].embed(w)])
    ext = Extension(quotient, cutoff, levels)
    while True:
        ext.rounds += 1
        grew = False
        for n in range(cutoff, 0, -1):
            down = [levels[n].face(i, g) for g in levels[n].generators() for i in range(n + 1)]
            grew |= levels[n - 1].add(down)
        for n in range(0, cutoff):
            up = [levels[n].coface(i, g) for g in levels[n].generators() for i in range(n + 2)]
            grew |= levels[n + 1].add(up)
        if not grew:
            return ext


def audit_closure(ext: Extension) -> dict:
    """Every face and coface of every generator stays inside the produced family."""
    failures = []
    checked = 0
    for n, lv in enumerate(ext.levels):
        for g in lv.generators():
            if n > 0:
                for i in range(n + 1):
                    checked += 1
                    if not ext.levels[n - 1].contains(lv.face(i, g)):
                        failures.append({"level": n, "face": i})
            if n < ext.cutoff:
                for i in range(n + 2):
                    checked += 1
                    if not ext.levels[n + 1].contains(lv.coface(i, g)):
                        failures.append({"level": n, "coface": i})
    return {"ok": not failures, "checked": checked, "failures": failures[:10]}


# -- trivial composites ---------------------------------------------------------------


@dataclass(frozen=True)
class LevelHom:
    """A levelwise homomorphism out of the quotient, known by which elements it kills.

    ``kind`` is ``identity``, ``abelianization`` or ``mod`` (reduction of exponent sums
    modulo ``modulus``).
    """

    kind: str
    modulus: int = 0

    @classmethod
    def parse(cls, text: str) -> LevelHom:
        t = text.strip().lower()
        if t in ("identity", "abelianization"):
            return cls(t)
        if t.startswith("mod:"):
            return cls("mod", int(t[4:]))
        raise DomainError(f"unsupported homomorphism {text!r}")

    def kills(self, element, quotient: Quotient) -> bool:
        if quotient.kind == "abelian":
            v = element
            if self.kind == "identity":
                return not any(v)
            if self.kind == "abelianization":
                return not any(v)
            return all(x % self.modulus == 0 for x in v)
        deg1 = {w[0]: c for w, c in element.items() if len(w) == 1}
        if self.kind == "identity":
            return element == {(): 1}
        if self.kind == "abelianization":
            return not any(deg1.values())
        return all(c % self.modulus == 0 for c in deg1.values())


@dataclass
class CompositeReport:
    hypothesis_ok: bool
    trivial: bool
    levels_audited: int
    offending_generators: list = field(default_factory=list)
    offending_levels: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "trivial": self.trivial,
            "levels_audited": self.levels_audited,
            "offending_generators": self.offending_generators,
            "offending_levels": self.offending_levels,
        }


def trivial_composite_check(gens: Sequence[tuple[int, FreeProductWord]], hom: LevelHom | str,
                            quotient: Quotient | str = "abelian", cutoff: int = 4) -> CompositeReport:
    """If every generator dies under ``hom``, so does the whole normal bi-Δ-extension.

    ``hom`` must commute with faces and cofaces for the conclusion to apply; the audit
    checks the conclusion directly on every produced generator up to ``cutoff``.
    """
    if isinstance(hom, str):
        hom = LevelHom.parse(hom)
    if isinstance(quotient, str):
        quotient = Quotient.parse(quotient)
    levels = _make_levels(quotient, cutoff)
    bad = [
        {"level": lvl, "word": w.to_json()} for lvl, w in gens if not hom.kills(levels[lvl].embed(w), quotient)
    ]
    ext = normal_bidelta_extension(gens, quotient, cutoff)
    off = [n for n, lv in enumerate(ext.levels) if not all(hom.kills(g, quotient) for g in lv.generators())]
    return CompositeReport(not bad, not off, cutoff + 1, bad, off)


def parse_generators(inst: Phi0, text: str) -> list[tuple[int, FreeProductWord]]:
    """``"1:1,2,-1,-2;0:1^2"`` -> ``[(1, x1 x2 x1^-1 x2^-1), (0, x1^2)]``."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InputError(f"generator {part!r} must look like LEVEL:WORD")
        lvl, word = part.split(":", 1)
        out.append((int(lvl), inst.parse_word(int(lvl), word)))
    return out

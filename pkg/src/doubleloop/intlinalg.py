"""Exact integer linear algebra: Smith invariants, Hermite form, kernels, lattice membership.

Matrices are lists of rows of Python ints, or sparse ``{(row, col): value}`` dicts.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Mapping, Sequence

Matrix = list[list[int]]
Sparse = Mapping[tuple[int, int], int]


def dense_from_sparse(entries: Sparse, rows: int, cols: int) -> Matrix:
    m = [[0] * cols for _ in range(rows)]
    for (r, c), v in entries.items():
        m[r][c] += v
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def sparse_matmul(a: Sparse, b: Sparse) -> dict[tuple[int, int], int]:
    """Product of sparse matrices; zero entries are dropped."""
    by_row: dict[int, list[tuple[int, int]]] = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out: dict[tuple[int, int], int] = {}
    for (r, k), v in a.items():
        for c, w in by_row.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) + v * w
    return {key: v for key, v in out.items() if v}


def _dense_invariants(rows: list[dict[int, int]], ncols: int) -> list[int]:
    """Nonzero Smith invariant factors of a (small) matrix given as row dicts."""
    a = [[r.get(c, 0) for c in range(ncols)] for r in rows]
    a = [row for row in a if any(row)]
    diag: list[int] = []
    while a and a[0]:
        # pick the smallest nonzero entry as pivot
        best = None
        for i, row in enumerate(a):
            for j, v in enumerate(row):
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[0], a[i] = a[i], a[0]
        for row in a:
            row[0], row[j] = row[j], row[0]
        while True:
            p = a[0][0]
            done = True
            for i in range(1, len(a)):
                q = a[i][0] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                if a[i][0]:
                    done = False
            for j in range(1, len(a[0])):
                q = a[0][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[0]
                if a[0][j]:
                    done = False
            if done:
                # pivot must divide the rest for a true Smith form
                bad = next(
                    ((i, j) for i in range(1, len(a)) for j in range(1, len(a[0])) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[0] = [x + y for x, y in zip(a[0], a[bad[0]])]
                continue
            # move the smallest entry of the first row/column into the pivot spot
            cand = [(abs(a[i][0]), i, 0) for i in range(len(a)) if a[i][0]]
            cand += [(abs(a[0][j]), 0, j) for j in range(len(a[0])) if a[0][j]]
            _, i, j = min(cand)
            if i:
                a[0], a[i] = a[i], a[0]
            if j:
                for row in a:
                    row[0], row[j] = row[j], row[0]
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
        a = [row for row in a if any(row)]
    return diag


def smith_invariants(entries: Sparse | Matrix, rows: int | None = None, cols: int | None = None) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    Unit pivots are eliminated sparsely first (Markowitz-style choice); whatever
    remains is handed to a dense Smith reduction.
    """
    if isinstance(entries, list):
        sparse = {(r, c): v for r, row in enumerate(entries) for c, v in enumerate(row) if v}
        rows = len(entries)
        cols = len(entries[0]) if entries else 0
    else:
        sparse = {k: v for k, v in entries.items() if v}
        if cols is None:
            cols = 1 + max((c for _, c in sparse), default=-1)
    row_d: dict[int, dict[int, int]] = {}
    col_s: dict[int, set[int]] = {}
    for (r, c), v in sparse.items():
        row_d.setdefault(r, {})[c] = v
        col_s.setdefault(c, set()).add(r)

    # columns are visited cheapest first; stale heap entries are re-pushed
    heap = [(len(rs), c) for c, rs in col_s.items()]
    heapq.heapify(heap)
    units = 0
    while heap:
        size, c = heapq.heappop(heap)
        rs = col_s.get(c)
        if rs is None:
            continue
        if len(rs) != size:
            heapq.heappush(heap, (len(rs), c))
            continue
        r = min((r for r in rs if row_d[r][c] in (1, -1)), key=lambda r: len(row_d[r]), default=None)
        if r is None:
            continue
        prow = row_d.pop(r)
        pv = prow[c]
        for cc in prow:
            col_s[cc].discard(r)
        for r2 in list(col_s[c]):
            row2 = row_d[r2]
            f = row2[c] * pv  # pv is a unit, so f = row2[c] / pv
            for cc, v in prow.items():
                nv = row2.get(cc, 0) - f * v
                if nv:
                    if cc not in row2:
                        col_s[cc].add(r2)
                    row2[cc] = nv
                elif cc in row2:
                    del row2[cc]
                    col_s[cc].discard(r2)
            if not row2:
                del row_d[r2]
        del col_s[c]
        for cc in prow:
            if cc in col_s:
                heapq.heappush(heap, (len(col_s[cc]), cc))
        units += 1
    # remaining entries have no unit; the rest of the reduction is dense
    live_cols = sorted({c for row in row_d.values() for c in row})
    index = {c: i for i, c in enumerate(live_cols)}
    rest = [{index[c]: v for c, v in row.items()} for row in row_d.values() if row]
    return [1] * units + sorted(_dense_invariants(rest, len(live_cols)))


def rank(entries: Sparse | Matrix, rows: int | None = None, cols: int | None = None) -> int:
    return len(smith_invariants(entries, rows, cols))


def hermite_rows(vectors: Iterable[Sequence[int]], dim: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``vectors`` (a basis)."""
    basis: dict[int, list[int]] = {}  # pivot column -> row
    for vec in vectors:
        v = list(vec)
        _reduce_into(basis, v, dim)
    out = []
    for piv in sorted(basis):
        out.append(basis[piv])
    # reduce entries above pivots
    for i, row in enumerate(out):
        piv = _lead(row)
        for j in range(i):
            q = out[j][piv] // row[piv]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], row)]
    return out


def _lead(v: Sequence[int]) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return -1


def _reduce_into(basis: dict[int, list[int]], v: list[int], dim: int) -> None:
    while True:
        piv = _lead(v)
        if piv < 0:
            return
        if v[piv] < 0:
            v = [-x for x in v]
        if piv not in basis:
            basis[piv] = v
            return
        b = basis[piv]
        # extended gcd combination of the two rows on the pivot column
        a0, b0 = b[piv], v[piv]
        g, x, y = _xgcd(a0, b0)
        new_b = [x * p + y * q for p, q in zip(b, v)]
        rem = [(a0 // g) * q - (b0 // g) * p for p, q in zip(b, v)]
        basis[piv] = new_b
        v = rem


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def in_lattice(hnf: Matrix, v: Sequence[int]) -> bool:
    """Membership test against a row Hermite basis."""
    return solve_in_lattice(hnf, v) is not None


def solve_in_lattice(hnf: Matrix, v: Sequence[int]) -> list[int] | None:
    """Coefficients ``c`` with ``sum c_i hnf[i] == v``, or ``None``."""
    r = list(v)
    coeffs = []
    for row in hnf:
        piv = _lead(row)
        if any(r[:piv]):
            return None
        q, rem = divmod(r[piv], row[piv])
        if rem:
            return None
        coeffs.append(q)
        if q:
            r = [x - q * y for x, y in zip(r, row)]
    return coeffs if not any(r) else None


def integer_kernel(a: Matrix, ncols: int | None = None) -> Matrix:
    """A basis of ``{x in Z^n : A x = 0}`` as rows, via unimodular reduction of ``[A^T | I]``."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    m = len(a)
    aug = [[a[r][c] for r in range(m)] + [1 if i == c else 0 for i in range(n)] for c in range(n)]
    basis: dict[int, list[int]] = {}
    kernel = []
    for row in aug:
        v = row
        while True:
            piv = _lead(v[:m])
            if piv < 0:
                if any(v[m:]):
                    kernel.append(v[m:])
                break
            if v[piv] < 0:
                v = [-x for x in v]
            if piv not in basis:
                basis[piv] = v
                break
            b = basis[piv]
            a0, b0 = b[piv], v[piv]
            g, x, y = _xgcd(a0, b0)
            basis[piv] = [x * p + y * q for p, q in zip(b, v)]
            v = [(a0 // g) * q - (b0 // g) * p for p, q in zip(b, v)]
    return hermite_rows(kernel, n) if kernel else []


def same_lattice(a: Matrix, b: Matrix, dim: int) -> bool:
    return hermite_rows(a, dim) == hermite_rows(b, dim)


def integer_solve(gens: Sequence[Sequence[int]], y: Sequence[int]) -> list[int] | None:
    """Integer coefficients ``c`` with ``sum_i c_i gens[i] == y``, or ``None``."""
    dim = len(y)
    count = len(gens)
    basis: dict[int, list[int]] = {}
    for idx, g in enumerate(gens):
        v = list(g) + [1 if t == idx else 0 for t in range(count)]
        while True:
            piv = _lead(v[:dim])
            if piv < 0:
                break
            if v[piv] < 0:
                v = [-x for x in v]
            if piv not in basis:
                basis[piv] = v
                break
            b = basis[piv]
            a0, b0 = b[piv], v[piv]
            g_, x, y_ = _xgcd(a0, b0)
            basis[piv] = [x * p + y_ * q for p, q in zip(b, v)]
            v = [(a0 // g_) * q - (b0 // g_) * p for p, q in zip(b, v)]
    r = list(y) + [0] * count
    for piv in sorted(basis):
        row = basis[piv]
        if any(r[:piv]):
            return None
        q, rem = divmod(r[piv], row[piv])
        if rem:
            return None
        if q:
            r = [a - q * b for a, b in zip(r, row)]
    if any(r[:dim]):
        return None
    # r = y - sum q_j row_j, and each row carries its transform in the tail
    return [-t for t in r[dim:]]

"""Exact linear algebra over the rationals (sparse rows) and small dense helpers.

Sparse rows are ``dict[int, mpq]`` mapping column index to a nonzero entry.
The dense helpers work over any exact field whose elements support ``+ - * /``
and truthiness (``mpq`` or ``GaussianRational``).
"""

from __future__ import annotations

import heapq

from gmpy2 import mpq

# 2**31 - 1; rank mod p never exceeds the rank over Q.
DEFAULT_PRIME = 2147483647


def rref(rows, ncols=None):
    """Reduced row echelon form of sparse rational rows.

    Returns ``{pivot_column: row}`` where each row has a unit entry at its
    pivot, no entries left of it, and zeros in every other pivot column. The
    result is the unique RREF of the row space, so it does not depend on the
    order in which rows are fed.
    """
    pivots: dict[int, dict] = {}
    for raw in rows:
        row = {c: mpq(v) for c, v in raw.items() if v}
        if not row:
            continue
        for c in [c for c in row if c in pivots]:
            f = row.get(c)
            if not f:
                continue
            for cc, vv in pivots[c].items():
                nv = row.get(cc, 0) - f * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        for p, prow in pivots.items():
            f = prow.get(lead)
            if f:
                for cc, vv in row.items():
                    nv = prow.get(cc, 0) - f * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[lead] = row
    return pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols))


def nullspace(rows, ncols: int):
    """Basis of ``{x : A x = 0}`` from the RREF; one vector per free column.

    The vector for free column ``f`` has a 1 at ``f``, zeros at the other free
    columns and ``-R[p][f]`` at each pivot ``p``. Deterministic.
    """
    pivots = rref(rows, ncols)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for p, prow in pivots.items():
            e = prow.get(f)
            if e:
                v[p] = -e
        basis.append(v)
    return basis


def solve(rows, rhs, ncols: int):
    """One exact solution of ``A x = b`` (free variables set to 0), or ``None``."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = mpq(b)
        aug.append(row)
    pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [mpq(0)] * ncols
    for p, prow in pivots.items():
        x[p] = prow.get(ncols, mpq(0))
    return x


def in_span(vectors, v) -> bool:
    """Whether dense vector ``v`` is a rational combination of ``vectors``."""
    if not any(v):
        return True
    if not vectors:
        return False
    n = len(v)
    rows = []
    rhs = []
    for i in range(n):
        rows.append({j: vec[i] for j, vec in enumerate(vectors) if vec[i]})
        rhs.append(v[i])
    return solve(rows, rhs, len(vectors)) is not None


def span_rank(vectors) -> int:
    return rank([{i: x for i, x in enumerate(v) if x} for v in vectors])


def rank_mod_p(rows, p: int = DEFAULT_PRIME):
    """Rank of the rows reduced modulo ``p``, or ``None`` if a denominator vanishes mod p."""
    pivots: dict[int, dict] = {}
    for raw in rows:
        row = {}
        for c, v in raw.items():
            v = mpq(v)
            d = int(v.denominator) % p
            if d == 0:
                return None
            x = int(v.numerator) * pow(d, -1, p) % p
            if x:
                row[c] = x
        # pivot rows are only echelon, so eliminations can create later pivot columns
        todo = [c for c in row if c in pivots]
        heapq.heapify(todo)
        while todo:
            c = heapq.heappop(todo)
            f = row.get(c)
            if not f:
                continue
            for cc, vv in pivots[c].items():
                had = cc in row
                nv = (row.get(cc, 0) - f * vv) % p
                if nv:
                    row[cc] = nv
                    if not had and cc in pivots:
                        heapq.heappush(todo, cc)
                else:
                    row.pop(cc, None)
        if not row:
            continue
        lead = min(row)
        inv = pow(row[lead], -1, p)
        pivots[lead] = {c: v * inv % p for c, v in row.items()}
    return len(pivots)


# ---------------------------------------------------------------- dense, any field


def dense_rank(matrix) -> int:
    m = [list(r) for r in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def dense_solve(matrix, rhs):
    """Solve a square system ``M x = rhs``; returns ``None`` if ``M`` is singular."""
    n = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [a * inv for a in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def dense_det(matrix):
    m = [list(r) for r in matrix]
    n = len(m)
    det = None
    sign = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return m[0][0] * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        det = m[c][c] if det is None else det * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det if sign == 1 else -det

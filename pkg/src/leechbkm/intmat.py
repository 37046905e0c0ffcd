"""Exact integer and rational matrix utilities.

Everything here works on plain lists of lists (rows) of Python ints or
gmpy2 rationals.  Smith and Hermite reduction use naive pivoting with
exact arithmetic; the matrices in this package are small (rank <= 26),
so no care about coefficient explosion is needed beyond exactness.
"""

from __future__ import annotations

from gmpy2 import mpq

__all__ = [
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "mat_int",
    "hnf",
    "snf",
    "integer_kernel",
    "rational_inverse",
    "solve_integer",
    "det",
]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(a, b):
    if not a or not b:
        return []
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_int(a):
    """Cast a rational matrix with integral entries to ints; error otherwise."""
    out = []
    for row in a:
        r = []
        for x in row:
            q = mpq(x)
            if q.denominator != 1:
                raise ValueError(f"entry {x} is not an integer")
            r.append(int(q.numerator))
        out.append(r)
    return out


def hnf(a):
    """Row-style Hermite normal form.  Returns (H, U) with U unimodular, U*A = H.

    H is upper echelon with positive pivots and entries above a pivot reduced
    into [0, pivot).
    """
    h = [list(map(int, row)) for row in a]
    m = len(h)
    n = len(h[0]) if m else 0
    u = identity(m)
    row = 0
    for col in range(n):
        # find a pivot in rows >= row
        piv = None
        for r in range(row, m):
            if h[r][col]:
                piv = r
                break
        if piv is None:
            continue
        h[row], h[piv] = h[piv], h[row]
        u[row], u[piv] = u[piv], u[row]
        # euclidean elimination below the pivot
        while True:
            nz = [r for r in range(row + 1, m) if h[r][col]]
            if not nz:
                break
            for r in nz:
                q = h[r][col] // h[row][col]
                if q:
                    h[r] = [x - q * y for x, y in zip(h[r], h[row])]
                    u[r] = [x - q * y for x, y in zip(u[r], u[row])]
                if h[r][col] and abs(h[r][col]) < abs(h[row][col]):
                    h[row], h[r] = h[r], h[row]
                    u[row], u[r] = u[r], u[row]
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        for r in range(row):
            q = h[r][col] // h[row][col]
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[row])]
        row += 1
        if row == m:
            break
    return h, u


def snf(a):
    """Smith normal form.  Returns (S, U, V) with U*A*V = S = diag(s_1,...),
    s_i >= 0 and s_i | s_{i+1}; U, V unimodular."""
    s = [list(map(int, row)) for row in a]
    m = len(s)
    n = len(s[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # locate smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] and (best is None or abs(s[i][j]) < best[0]):
                    best = (abs(s[i][j]), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        dirty = False
        for i in range(t + 1, m):
            if s[i][t]:
                q = s[i][t] // s[t][t]
                addmul_row(i, t, -q)
                if s[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if s[t][j]:
                q = s[t][j] // s[t][t]
                addmul_col(j, t, -q)
                if s[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry for the divisibility chain
        p = s[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if s[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            addmul_row(t, offender, 1)
            continue
        if p < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return s, u, v


def integer_kernel(a):
    """Basis (rows) of {x in Z^m : x*A = 0}; saturated, i.e. a primitive sublattice."""
    m = len(a)
    if m == 0:
        return []
    h, u = hnf(a)
    rank = sum(1 for row in h if any(row))
    return [u[i] for i in range(rank, m)]


def det(a):
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def rational_inverse(a):
    """Exact inverse of a square matrix, entries gmpy2 rationals."""
    n = len(a)
    aug = [[mpq(x) for x in row] + [mpq(1) if i == j else mpq(0) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve_integer(a, b):
    """One integer solution x of x*A = b, or None if none exists.

    A is m x n (rows = generators), b a length-n vector with rational entries.
    """
    m = len(a)
    if m == 0:
        return [] if all(mpq(x) == 0 for x in b) else None
    s, u, v = snf(a)
    n = len(a[0])
    # x*A = b  <=>  (x U^-1) S = b V, with y = x U^-1 having integer entries
    bv = [sum(mpq(b[i]) * v[i][j] for i in range(n)) for j in range(n)]
    y = [0] * m
    for i in range(min(m, n)):
        si = s[i][i]
        if si:
            q = bv[i] / si
            if q.denominator != 1:
                return None
            y[i] = int(q.numerator)
        elif bv[i]:
            return None
    for j in range(min(m, n), n):
        if bv[j]:
            return None
    # x = y * U
    return [sum(y[i] * u[i][j] for i in range(m)) for j in range(m)]

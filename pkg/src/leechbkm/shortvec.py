"""Exact short-vector enumeration in positive-definite lattices.

Branch-and-bound (Fincke-Pohst) over an exact rational Cholesky-type
decomposition Q(y) = sum_i d_i (y_i + sum_{j>i} u_ij y_j)^2.  All pruning
decisions use exact rational arithmetic; integer range endpoints per level
come from an exact integer square root.  Supports shifted cosets x + c with
rational c, so theta series of dual cosets are exact.

This is the hot path of the package: the Leech lattice has 196560 vectors
of norm 4, and some verification suites enumerate balls with ~10^6 points.
Keep the inner loop lean.
"""

from __future__ import annotations

from gmpy2 import isqrt, mpq

__all__ = ["IndefiniteLattice", "ldl_decompose", "count_by_norm", "vectors_up_to"]


class IndefiniteLattice(ValueError):
    """The Gram matrix is not positive definite."""


def ldl_decompose(gram):
    """(d, u) with Q(y) = sum_i d[i]*(y_i + sum_{j>i} u[i][j]*y_j)^2, exact."""
    n = len(gram)
    a = [[mpq(x) for x in row] for row in gram]
    d = [mpq(0)] * n
    u = [[mpq(0)] * n for _ in range(n)]
    for i in range(n):
        di = a[i][i]
        if di <= 0:
            raise IndefiniteLattice("Gram matrix is not positive definite")
        d[i] = di
        ui = u[i]
        for j in range(i + 1, n):
            ui[j] = a[i][j] / di
        for j in range(i + 1, n):
            aj = a[j]
            f = di * ui[j]
            for k in range(j, n):
                aj[k] -= f * ui[k]
    return d, u


def _enumerate(gram, bound, center, on_vector, use_symmetry):
    """Core recursion; calls on_vector(coords or None, norm, multiplicity)."""
    n = len(gram)
    bound = mpq(bound)
    if n == 0:
        if bound >= 0:
            on_vector((), mpq(0), 1)
        return
    d, u = ldl_decompose(gram)
    if center is None:
        c = [mpq(0)] * n
    else:
        c = [mpq(x) for x in center]
        use_symmetry = False
    if bound < 0:
        return
    ys = [mpq(0)] * n
    xs = [0] * n
    zero = mpq(0)

    # With use_symmetry, enumerate under the rule "highest nonzero coordinate
    # is positive" and emit those vectors with multiplicity 2; the x -> -x
    # mirror of every such vector is exactly the omitted half.
    def rec(i, partial, sym):
        ui = u[i]
        t = zero
        for j in range(i + 1, n):
            t += ui[j] * ys[j]
        w = c[i] + t
        r = bound - partial
        # integer window: d_i (x + w)^2 <= r  <=>  (b x + a)^2 <= r b^2 / d_i
        a_num = w.numerator
        b_den = w.denominator
        m = (r.numerator * b_den * b_den * d[i].denominator) // (r.denominator * d[i].numerator)
        s = isqrt(m)
        lo = -((a_num + s) // b_den)
        hi = (s - a_num) // b_den
        if sym and lo < 0:
            lo = 0
        di = d[i]
        for x in range(lo, hi + 1):
            y = x + w
            term = di * y * y
            if term <= r:
                new_partial = partial + term
                if i == 0:
                    xs[0] = x
                    on_vector(xs, new_partial, 2 if sym and x > 0 else 1)
                else:
                    ys[i] = y
                    xs[i] = x
                    if sym and x > 0:
                        _rec_mirror(i - 1, new_partial)
                    else:
                        rec(i - 1, new_partial, sym)

    def _rec_mirror(i, partial):
        # subtree below a strictly positive top coordinate: every vector here
        # has a distinct mirror image, so every leaf counts twice
        ui = u[i]
        t = zero
        for j in range(i + 1, n):
            t += ui[j] * ys[j]
        w = c[i] + t
        r = bound - partial
        a_num = w.numerator
        b_den = w.denominator
        m = (r.numerator * b_den * b_den * d[i].denominator) // (r.denominator * d[i].numerator)
        s = isqrt(m)
        lo = -((a_num + s) // b_den)
        hi = (s - a_num) // b_den
        di = d[i]
        for x in range(lo, hi + 1):
            y = x + w
            term = di * y * y
            if term <= r:
                new_partial = partial + term
                if i == 0:
                    xs[0] = x
                    on_vector(xs, new_partial, 2)
                else:
                    ys[i] = y
                    xs[i] = x
                    _rec_mirror(i - 1, new_partial)

    rec(n - 1, zero, bool(use_symmetry))


def count_by_norm(gram, bound, center=None):
    """{norm: count} for all lattice (or coset) vectors with Q(x+c) <= bound.

    Norms are exact gmpy2 rationals.  With center=None the +-x symmetry is
    exploited internally; counts include both signs.
    """
    counts = {}

    def collect(_xs, norm, mult):
        counts[norm] = counts.get(norm, 0) + mult

    _enumerate(gram, bound, center, collect, use_symmetry=center is None)
    return counts


def vectors_up_to(gram, bound, center=None):
    """List of (coords tuple, norm) with Q(x+c) <= bound; both signs included."""
    out = []

    def collect(xs, norm, mult):
        out.append((tuple(xs), norm))
        if mult == 2:
            out.append((tuple(-x for x in xs), norm))

    _enumerate(gram, bound, center, collect, use_symmetry=center is None)
    return out

"""Integral lattices with exact Gram arithmetic and their discriminant forms.

A Lattice is a basis-with-Gram object: rank n, symmetric integer Gram
matrix, and optionally an embedding into an ambient rational quadratic
space (rows of `embedding` are basis vectors in ambient coordinates).
Vectors are row coordinate vectors; an isometry nu acts on the right,
x -> x.nu, so invariance of the form reads nu G nu^T = G.

Discriminant forms L'/L are carried as FiniteQuadraticSpace objects:
the group as a product of elementary divisors with generators in the
Smith basis, the quadratic form Q(x) = <x,x>/2 mod 1 on dual coset
representatives.
"""

from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction
from math import gcd, lcm

from gmpy2 import mpq

from . import intmat
from .qseries import QQ, TEN_CLASS_ORDERS, divisors, sigma

__all__ = [
    "Lattice",
    "FiniteQuadraticSpace",
    "IsometryAction",
    "DegenerateLattice",
    "TooLarge",
    "hyperbolic_plane",
    "rescale",
    "direct_sum",
    "fixed_sublattice",
    "coinvariant_sublattice",
    "discriminant_form",
    "classify_elements",
    "char_chi_s",
    "milgram_defect",
    "fqs_zm_zm",
]


class DegenerateLattice(ValueError):
    """The Gram matrix is singular."""


class TooLarge(ValueError):
    """Exhaustive enumeration refused: the group is too big."""


class Lattice:
    __slots__ = ("rank", "gram", "embedding", "ambient_gram")

    def __init__(self, gram, embedding=None, ambient_gram=None):
        self.rank = len(gram)
        self.gram = [[int(x) for x in row] for row in gram]
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.embedding = embedding
        self.ambient_gram = ambient_gram
        if embedding is not None:
            g2 = intmat.matmul(
                intmat.matmul(embedding, ambient_gram), intmat.transpose(embedding)
            )
            if [[mpq(x) for x in row] for row in g2] != [
                [mpq(x) for x in row] for row in self.gram
            ]:
                raise ValueError("embedding does not reproduce the Gram matrix")

    def det(self):
        return intmat.det(self.gram)

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def norm2(self, x):
        """<x,x> for a coordinate vector (rational entries allowed)."""
        g = self.gram
        return sum(QQ(x[i]) * g[i][j] * QQ(x[j]) for i in range(self.rank) for j in range(self.rank))

    def inner(self, x, y):
        g = self.gram
        return sum(QQ(x[i]) * g[i][j] * QQ(y[j]) for i in range(self.rank) for j in range(self.rank))

    def dual_data(self):
        """Exact inverse Gram; rows express the dual basis in lattice coordinates."""
        if self.rank == 0:
            return []
        if self.det() == 0:
            raise DegenerateLattice("lattice is degenerate")
        return intmat.rational_inverse(self.gram)

    def signature(self):
        """(positive, negative) inertia indices, exact congruence diagonalisation."""
        n = self.rank
        m = [[mpq(x) for x in row] for row in self.gram]
        pos = neg = 0
        for k in range(n):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][r] != 0:
                        m[k], m[r] = m[r], m[k]
                        for row in m:
                            row[k], row[r] = row[r], row[k]
                        break
                else:
                    for j in range(k + 1, n):
                        if m[k][j] != 0:
                            # row/col addition turns the pivot into 2*m[k][j]
                            m[k] = [a + b for a, b in zip(m[k], m[j])]
                            for row in m:
                                row[k] += row[j]
                            break
                    else:
                        raise DegenerateLattice("lattice is degenerate")
            d = m[k][k]
            if d > 0:
                pos += 1
            else:
                neg += 1
            for r in range(k + 1, n):
                f = m[r][k] / d
                if f:
                    m[r] = [a - f * b for a, b in zip(m[r], m[k])]
                    for row in m:
                        row[r] -= f * row[k]
        return pos, neg

    def to_json(self):
        obj = {"rank": self.rank, "gram": self.gram}
        if self.embedding is not None:
            obj["embedding"] = [
                [[int(mpq(x).numerator), int(mpq(x).denominator)] for x in row]
                for row in self.embedding
            ]
            obj["ambient_gram"] = [
                [[int(mpq(x).numerator), int(mpq(x).denominator)] for x in row]
                for row in self.ambient_gram
            ]
        return obj

    @classmethod
    def from_json(cls, obj):
        emb = obj.get("embedding")
        amb = obj.get("ambient_gram")
        if emb is not None:
            emb = [[mpq(n, d) for n, d in row] for row in emb]
            amb = [[mpq(n, d) for n, d in row] for row in amb]
        return cls(obj["gram"], emb, amb)

    def __repr__(self):
        return f"<Lattice rank {self.rank}, det {self.det()}>"


def hyperbolic_plane(scale=1):
    """II_{1,1}(scale): Gram scale*[[0,-1],[-1,0]], so (a,b) has norm -2ab*scale."""
    return Lattice([[0, -scale], [-scale, 0]])


def rescale(lat, m):
    if m < 1:
        raise ValueError("rescaling factor must be positive")
    return Lattice([[m * x for x in row] for row in lat.gram])


def direct_sum(a, b):
    n, m = a.rank, b.rank
    gram = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            gram[i][j] = a.gram[i][j]
    for i in range(m):
        for j in range(m):
            gram[n + i][n + j] = b.gram[i][j]
    return Lattice(gram)


class IsometryAction:
    """A finite-order isometry of a lattice, acting on row vectors from the right."""

    __slots__ = ("matrix", "order")

    def __init__(self, matrix, order=None, lattice=None):
        self.matrix = [[int(x) for x in row] for row in matrix]
        if lattice is not None:
            g = lattice.gram
            if intmat.matmul(intmat.matmul(self.matrix, g), intmat.transpose(self.matrix)) != g:
                raise ValueError("matrix does not preserve the Gram matrix")
        n = len(self.matrix)
        if order is None:
            order = _matrix_order(self.matrix)
        else:
            p = intmat.identity(n)
            for k in range(1, order + 1):
                p = intmat.matmul(p, self.matrix)
                if p == intmat.identity(n) and k < order:
                    raise ValueError(f"order {order} is not minimal (divides {k})")
            if p != intmat.identity(n):
                raise ValueError("matrix does not have the stated order")
        self.order = order

    def power(self, j):
        n = len(self.matrix)
        p = intmat.identity(n)
        for _ in range(j % self.order):
            p = intmat.matmul(p, self.matrix)
        return p

    def apply(self, x):
        return [sum(QQ(x[i]) * self.matrix[i][j] for i in range(len(x))) for j in range(len(x))]


def _matrix_order(m, cap=10000):
    n = len(m)
    p = [row[:] for row in m]
    for k in range(1, cap + 1):
        if p == intmat.identity(n):
            return k
        p = intmat.matmul(p, m)
    raise ValueError("order exceeds cap")


def fixed_sublattice(lat, nu):
    """Primitive sublattice {x : x.nu = x}, with embedding into lat recorded."""
    n = lat.rank
    a = [[nu.matrix[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    basis = intmat.integer_kernel(a)
    gram = intmat.matmul(intmat.matmul(basis, lat.gram), intmat.transpose(basis)) if basis else []
    return Lattice(gram, embedding=basis, ambient_gram=lat.gram)


def coinvariant_sublattice(lat, nu):
    """Orthogonal complement of the fixed sublattice inside lat."""
    fixed = fixed_sublattice(lat, nu)
    if fixed.rank == 0:
        basis = intmat.identity(lat.rank)
    elif fixed.rank == lat.rank:
        basis = []
    else:
        pairing = intmat.matmul(lat.gram, intmat.transpose(fixed.embedding))
        basis = intmat.integer_kernel(pairing)
    gram = intmat.matmul(intmat.matmul(basis, lat.gram), intmat.transpose(basis)) if basis else []
    return Lattice(gram, embedding=basis, ambient_gram=lat.gram)


def restrict_isometry(sub, nu):
    """Matrix of nu on a sublattice given by its embedding rows; exact, must close."""
    if sub.rank == 0:
        return IsometryAction([], order=1)
    b = sub.embedding
    nb = intmat.matmul(b, nu.matrix)
    # solve r * b = nb over the integers, row by row
    rows = []
    for v in nb:
        x = intmat.solve_integer(b, v)
        if x is None:
            raise ValueError("isometry does not stabilise the sublattice")
        rows.append(x)
    order = _matrix_order(rows, cap=nu.order)
    return IsometryAction(rows, order=order, lattice=sub)


# -- finite quadratic spaces -------------------------------------------------

class FiniteQuadraticSpace:
    """Finite abelian group with a Q/Z-valued quadratic form.

    orders: elementary divisors d_1 | d_2 | ... (all > 1);
    q_gram[i][j] = <g_i, g_j> for generators g_i, exact rationals; Q and the
    bilinear form are read off mod 1.  Optionally carries the generator
    vectors in the coordinates of a source lattice, for coset representatives.
    """

    __slots__ = ("orders", "q_gram", "level", "gens", "source")

    def __init__(self, orders, q_gram, gens=None, source=None):
        self.orders = [int(d) for d in orders]
        self.q_gram = [[QQ(x) for x in row] for row in q_gram]
        lv = 1
        r = len(self.orders)
        for i in range(r):
            qi = self.q_gram[i][i] / 2
            lv = lcm(lv, int(qi.denominator))
            for j in range(r):
                lv = lcm(lv, int(self.q_gram[i][j].denominator))
        self.level = lv
        self.gens = gens
        self.source = source

    def size(self):
        out = 1
        for d in self.orders:
            out *= d
        return out

    def q_value(self, a):
        """Q(sum a_i g_i) in Q/Z, as a Fraction in [0, 1)."""
        r = len(self.orders)
        v = mpq(0)
        for i in range(r):
            v += mpq(a[i] * a[i]) * self.q_gram[i][i] / 2
            for j in range(i + 1, r):
                v += mpq(a[i] * a[j]) * self.q_gram[i][j]
        return _mod1(v)

    def bilinear(self, a, b):
        r = len(self.orders)
        v = mpq(0)
        for i in range(r):
            for j in range(r):
                v += mpq(a[i] * b[j]) * self.q_gram[i][j]
        return _mod1(v)

    def element_order(self, a):
        o = 1
        for ai, di in zip(a, self.orders):
            o = lcm(o, di // gcd(ai % di, di))
        return o

    def elements(self):
        """All group elements as tuples; refuse beyond 10^7."""
        if self.size() > 10**7:
            raise TooLarge(f"group of size {self.size()} is too large to enumerate")
        r = len(self.orders)
        a = [0] * r
        while True:
            yield tuple(a)
            i = 0
            while i < r:
                a[i] += 1
                if a[i] < self.orders[i]:
                    break
                a[i] = 0
                i += 1
            if i == r:
                return

    def representative(self, a):
        """Coset representative vector in source-lattice coordinates.

        Coordinates are the Smith-basis combination sum a_i g_i with
        a_i reduced into [0, d_i).
        """
        if self.gens is None:
            raise ValueError("no generator vectors recorded")
        r = len(self.orders)
        n = len(self.gens[0]) if self.gens else 0
        out = [mpq(0)] * n
        for i in range(r):
            ai = a[i] % self.orders[i]
            if ai:
                for j in range(n):
                    out[j] += ai * self.gens[i][j]
        return out

    def conj(self):
        """Same group with the quadratic form negated."""
        return FiniteQuadraticSpace(
            self.orders, [[-x for x in row] for row in self.q_gram]
        )

    def direct_sum(self, other):
        r, s = len(self.orders), len(other.orders)
        q = [[mpq(0)] * (r + s) for _ in range(r + s)]
        for i in range(r):
            for j in range(r):
                q[i][j] = self.q_gram[i][j]
        for i in range(s):
            for j in range(s):
                q[r + i][r + j] = other.q_gram[i][j]
        return FiniteQuadraticSpace(self.orders + other.orders, q)

    def to_json(self):
        return {
            "orders": self.orders,
            "q_gram": [
                [[int(x.numerator), int(x.denominator)] for x in row] for row in self.q_gram
            ],
            "level": self.level,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["orders"], [[mpq(n, d) for n, d in row] for row in obj["q_gram"]])

    def __repr__(self):
        grp = " x ".join(f"Z_{d}" for d in self.orders) if self.orders else "0"
        return f"<FiniteQuadraticSpace {grp}, level {self.level}>"


def _mod1(v):
    v = mpq(v)
    f = Fraction(int(v.numerator), int(v.denominator))
    return f - math.floor(f)


def discriminant_form(lat):
    """L'/L as a finite quadratic space, via Smith normal form of the Gram matrix."""
    if lat.rank == 0:
        return FiniteQuadraticSpace([], [], gens=[], source=lat)
    if not lat.is_even():
        raise ValueError("discriminant forms are computed for even lattices only")
    if lat.det() == 0:
        raise DegenerateLattice("lattice is degenerate")
    s, u, v = intmat.snf(lat.gram)
    n = lat.rank
    orders = []
    gens = []
    for i in range(n):
        si = s[i][i]
        if si != 1:
            orders.append(si)
            gens.append([mpq(u[i][j], si) for j in range(n)])
    # reorder so the divisibility chain is ascending (SNF already gives it)
    q = [[_frac_reduce(sum(gi[a] * lat.gram[a][b] * gj[b] for a in range(n) for b in range(n)))
          for gj in gens] for gi in gens]
    return FiniteQuadraticSpace(orders, q, gens=gens, source=lat)


def _frac_reduce(x):
    return mpq(x)


def classify_elements(d):
    """Tally the elements of a finite quadratic space by (order, Q value).

    Returns {(order, Fraction Q): count}.  Exhaustive; exact integer
    arithmetic mod the level.
    """
    size = d.size()
    if size > 10**7:
        raise TooLarge(f"group of size {size} is too large to enumerate")
    r = len(d.orders)
    if r == 0:
        return {(1, Fraction(0)): 1}
    lv = d.level
    # numerators mod level: Q(e_i) and B(e_i, e_j)
    qn = []
    bn = [[0] * r for _ in range(r)]
    for i in range(r):
        qi = _mod1(d.q_gram[i][i] / 2)
        qn.append(int(qi * lv))
        for j in range(r):
            bij = _mod1(d.q_gram[i][j])
            bn[i][j] = int(bij * lv)
    counts = {}
    orders_memo = {}
    for a in d.elements():
        qv = 0
        for i in range(r):
            ai = a[i]
            if not ai:
                continue
            qv += ai * ai * qn[i]
            for j in range(i + 1, r):
                if a[j]:
                    qv += ai * a[j] * bn[i][j]
        qv %= lv
        key_o = orders_memo.get(a)
        if key_o is None:
            key_o = d.element_order(a)
            orders_memo[a] = key_o
        key = (key_o, Fraction(qv, lv))
        counts[key] = counts.get(key, 0) + 1
    return counts


def milgram_defect(d, signature_mod8):
    """|sum_x e^{2 pi i Q(x)} - sqrt|D| e^{2 pi i sig/8}|, floating point."""
    total = 0j
    for a in d.elements():
        total += cmath.exp(2j * cmath.pi * float(d.q_value(a)))
    expected = math.sqrt(d.size()) * cmath.exp(2j * cmath.pi * signature_mod8 / 8)
    return abs(total - expected)


def char_chi_s(m):
    """Smallest s such that s * prod_{t|m} t^{24/sigma_1(m)} is a rational square."""
    if m not in TEN_CLASS_ORDERS:
        raise ValueError(f"{m} is not one of the ten class orders")
    b = 24 // sigma(m)
    prod = 1
    for t in divisors(m):
        prod *= t**b
    return _squarefree_part(prod)


def _squarefree_part(n):
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
        p += 1
    return out * n


def fqs_zm_zm(m, negate=False):
    """(Z_m x Z_m, +-Q_m) with Q_m((i,j)) = ij/m; the fusion quadratic space."""
    if m == 1:
        return FiniteQuadraticSpace([], [])
    s = -1 if negate else 1
    q = [[mpq(0), mpq(s, m)], [mpq(s, m), mpq(0)]]
    return FiniteQuadraticSpace([m, m], q)

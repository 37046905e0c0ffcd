"""The Leech lattice and the ten square-free Mathieu classes acting on it.

The lattice is built in the classical scaled-integer coordinates: vectors
live in Z^24 and carry the bilinear form <x,y> = x.y/8, so the Gram matrix
of the basis is exactly integral, even and unimodular.  A permutation of
the 24 coordinates that preserves the Golay code preserves the lattice;
the stabiliser of the infinity coordinate is the Mathieu group on the
remaining 23 points, and seeded random search in that stabiliser produces
representatives of the ten square-free-order classes, identified by their
cycle shapes.
"""

from __future__ import annotations

import hashlib
import json
import random
from fractions import Fraction
from math import gcd, lcm

from gmpy2 import mpq

from . import intmat
from .golay import INFINITY, POINTS, GolayCode, build_golay
from .lattices import (
    IsometryAction,
    Lattice,
    coinvariant_sublattice,
    direct_sum,
    discriminant_form,
    fixed_sublattice,
    hyperbolic_plane,
    rescale,
    restrict_isometry,
)
from .qseries import CycleShape, cycle_shape_for_order, sigma
from . import shortvec

__all__ = [
    "ConstructionInvariantViolated",
    "SearchExhausted",
    "PermutationIsometry",
    "build_leech",
    "mathieu_generators",
    "find_class_element",
    "ClassData",
    "class_data",
]


class ConstructionInvariantViolated(RuntimeError):
    """A defining invariant of the construction failed."""


class SearchExhausted(RuntimeError):
    """The randomized class-element search ran out of budget."""


# -- Leech lattice -----------------------------------------------------------

def build_leech(code=None):
    """Rank-24 even unimodular lattice with no roots, from the Golay code."""
    if code is None:
        code = build_golay()
    gens = []
    for mask in code.generator:
        gens.append([2 * ((mask >> i) & 1) for i in range(POINTS)])
    for i in range(1, POINTS):
        row = [0] * POINTS
        row[0] = 4
        row[i] = 4
        gens.append(row)
    row = [0] * POINTS
    row[0] = 8
    gens.append(row)
    gens.append([-3] + [1] * (POINTS - 1))
    h, _ = intmat.hnf(gens)
    basis = [r for r in h if any(r)]
    if len(basis) != POINTS:
        raise ConstructionInvariantViolated("generators do not span a rank-24 lattice")
    d = intmat.det(basis)
    if abs(d) != 8**12:
        raise ConstructionInvariantViolated(f"basis determinant {d} != 8^12")
    gram = [[0] * POINTS for _ in range(POINTS)]
    for i in range(POINTS):
        for j in range(i, POINTS):
            dot = sum(basis[i][k] * basis[j][k] for k in range(POINTS))
            if dot % 8:
                raise ConstructionInvariantViolated("Gram matrix is not integral")
            gram[i][j] = gram[j][i] = dot // 8
    lat = Lattice(
        gram,
        embedding=basis,
        ambient_gram=[[mpq(1, 8) if i == j else mpq(0) for j in range(POINTS)] for i in range(POINTS)],
    )
    if intmat.det(gram) != 1:
        raise ConstructionInvariantViolated("Leech Gram determinant is not 1")
    if not lat.is_even():
        raise ConstructionInvariantViolated("Leech Gram is not even")
    return lat


# -- Mathieu stabiliser generators ------------------------------------------

_QR23 = sorted({(i * i) % 23 for i in range(1, 23)})


def _perm_from_map(f):
    perm = [f(x) for x in range(23)] + [INFINITY]
    if sorted(perm) != list(range(POINTS)):
        raise ValueError("map is not a permutation")
    return perm


def mathieu_generators(code):
    """Three permutations fixing the infinity point and preserving the code.

    x -> x+1 and x -> 2x generate the Borel subgroup of the projective
    action; the cube-root map extends it to the full point stabiliser.
    The correct square-class convention for the third generator is found by
    trying the two candidates against the code.
    """
    add1 = _perm_from_map(lambda x: (x + 1) % 23)
    mul2 = _perm_from_map(lambda x: (2 * x) % 23)
    inv9 = pow(9, -1, 23)
    candidates = []
    for flip in (False, True):
        def cube(x, flip=flip):
            if x == 0:
                return 0
            in_q = x in _QR23
            if in_q != flip:
                return (pow(x, 3, 23) * inv9) % 23
            return (9 * pow(x, 3, 23)) % 23
        candidates.append(_perm_from_map(cube))
    gens = [add1, mul2]
    for cand in candidates:
        if code.is_automorphism(cand):
            gens.append(cand)
            break
    else:
        raise ConstructionInvariantViolated("no cube-root generator preserves the code")
    for g in gens:
        if not code.is_automorphism(g):
            raise ConstructionInvariantViolated("stabiliser generator does not preserve the code")
    return gens


def _compose(p, q):
    """Permutation doing p then q."""
    return [q[p[i]] for i in range(POINTS)]


def _perm_power(p, k):
    out = list(range(POINTS))
    base = p
    while k:
        if k & 1:
            out = _compose(out, base)
        base = _compose(base, base)
        k >>= 1
    return out


def cycle_type(perm):
    seen = [False] * POINTS
    out = {}
    for i in range(POINTS):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out[length] = out.get(length, 0) + 1
    return out


def perm_order(perm):
    o = 1
    for length in cycle_type(perm):
        o = lcm(o, length)
    return o


class PermutationIsometry:
    """A code-preserving permutation of the 24 coordinates with a fixed point."""

    __slots__ = ("perm", "cycle_shape", "fixed_point")

    def __init__(self, perm, code=None):
        self.perm = list(perm)
        ct = cycle_type(self.perm)
        self.cycle_shape = CycleShape(perm_order(self.perm), ct)
        fixed = [i for i in range(POINTS) if self.perm[i] == i]
        if not fixed:
            raise ValueError("permutation has no fixed coordinate")
        self.fixed_point = INFINITY if INFINITY in fixed else fixed[0]
        if code is not None and not code.is_automorphism(self.perm):
            raise ConstructionInvariantViolated("permutation does not preserve the code")

    def matrix_on(self, lat):
        """Induced isometry on a lattice embedded in the permuted coordinates."""
        basis = lat.embedding
        n = lat.rank
        inv = intmat.rational_inverse(basis)
        rows = []
        for i in range(n):
            img = [0] * POINTS
            for k in range(POINTS):
                img[self.perm[k]] = basis[i][k]
            row = [sum(mpq(img[a]) * inv[a][b] for a in range(POINTS)) for b in range(POINTS)]
            rows.append(row)
        mat = intmat.mat_int(rows)
        return IsometryAction(mat, order=self.cycle_shape.order, lattice=lat)

    def to_json(self, seed=None):
        payload = {"perm": self.perm}
        if seed is not None:
            payload["seed"] = seed
        payload["cycle_shape"] = {str(t): b for t, b in self.cycle_shape.exponents.items()}
        payload["sha256"] = hashlib.sha256(
            json.dumps(self.perm, separators=(",", ":")).encode()
        ).hexdigest()
        return payload

    @classmethod
    def from_json(cls, obj, code):
        digest = hashlib.sha256(
            json.dumps(obj["perm"], separators=(",", ":")).encode()
        ).hexdigest()
        if digest != obj["sha256"]:
            raise ConstructionInvariantViolated("cached permutation fails its integrity hash")
        p = cls(obj["perm"], code=code)
        shape = {int(t): b for t, b in obj["cycle_shape"].items()}
        if p.cycle_shape.exponents != shape:
            raise ConstructionInvariantViolated("cached permutation has the wrong cycle shape")
        return p


def find_class_element(code, shape, seed=0, budget=200000):
    """Seeded random walk in the point stabiliser until the cycle shape appears.

    Elements of the requested order are reached by powering the current walk
    element, which makes the rare small-order classes show up quickly.
    """
    target = dict(shape.exponents)
    m = shape.order
    if m == 1:
        return PermutationIsometry(list(range(POINTS)), code=code)
    gens = mathieu_generators(code)
    rng = random.Random(seed)
    current = list(range(POINTS))
    for _ in range(budget):
        current = _compose(current, gens[rng.randrange(len(gens))])
        o = perm_order(current)
        if o % m:
            continue
        h = _perm_power(current, o // m)
        if cycle_type(h) == target:
            return PermutationIsometry(h, code=code)
    raise SearchExhausted(
        f"no element of cycle shape {shape} found within {budget} steps (seed {seed})"
    )


# -- per-class data ----------------------------------------------------------

class ClassData:
    """Everything derived from one of the ten classes.

    Carries the permutation, the induced Leech isometry, the fixed and
    coinvariant sublattices, the rescaled hyperbolic plane K, the hyperbolic
    extensions L = fixed + K and Delta = fixed + II_{1,1}, and the
    restriction of the isometry to the coinvariant part.
    """

    __slots__ = (
        "m", "shape", "perm", "leech", "nu", "fixed", "coinv", "K", "L", "Delta",
        "nu_coinv", "k", "w",
    )

    def __init__(self, m, shape, perm, leech, nu, fixed, coinv):
        self.m = m
        self.shape = shape
        self.perm = perm
        self.leech = leech
        self.nu = nu
        self.fixed = fixed
        self.coinv = coinv
        self.K = rescale(hyperbolic_plane(), m)
        self.L = direct_sum(fixed, self.K)
        self.Delta = direct_sum(fixed, hyperbolic_plane())
        self.nu_coinv = restrict_isometry(coinv, nu)
        self.k = fixed.rank + 2
        self.w = 1 - self.k // 2

    def conformal_weight(self):
        """(1/24) sum_t b_t (t - 1/t), the twisted-module lowest weight mod 1."""
        total = Fraction(0)
        for t, b in self.shape.exponents.items():
            total += Fraction(b, 24) * (Fraction(t) - Fraction(1, t))
        return total

    def coinvariant_shape(self, j=1):
        """Generalised cycle shape of nu^j on the coinvariant sublattice.

        The characteristic polynomial of nu^j on the full lattice is the
        cycle-shape product of (x^t - 1) factors; the fixed sublattice
        contributes (x - 1)^rank, so the coinvariant shape is the quotient.
        Exponents may be negative (a frame shape).  Verified against power
        traces of the restricted matrix.
        """
        shape_j = self.shape.power(j)
        exps = dict(shape_j.exponents)
        exps[1] = exps.get(1, 0) - self.fixed.rank
        if exps[1] == 0:
            del exps[1]
        self._verify_frame_shape(exps, j)
        return exps

    def _verify_frame_shape(self, exps, j):
        mat = self.nu_coinv.power(j)
        n = self.coinv.rank
        if sum(s * c for s, c in exps.items()) != n:
            raise ConstructionInvariantViolated("frame shape has the wrong degree")
        p = intmat.identity(n)
        for k in range(1, self.m + 1):
            p = intmat.matmul(p, mat)
            tr = sum(p[i][i] for i in range(n))
            expected = sum(s * c for s, c in exps.items() if k % s == 0)
            if tr != expected:
                raise ConstructionInvariantViolated(
                    f"power trace {k} of the coinvariant action does not match the frame shape"
                )

    def assert_no_order_doubling(self):
        """For even m: <a, nu^{m/2} a> must be even for all lattice vectors."""
        if self.m % 2:
            return
        b = self.nu.power(self.m // 2)
        mat = intmat.matmul(self.leech.gram, intmat.transpose(b))
        n = self.leech.rank
        for i in range(n):
            if mat[i][i] % 2:
                raise ConstructionInvariantViolated("order doubling detected")
            for jj in range(n):
                if (mat[i][jj] + mat[jj][i]) % 2:
                    raise ConstructionInvariantViolated("order doubling detected")

    def min_norm(self, lat):
        counts = shortvec.count_by_norm(lat.gram, 2)
        nonzero = [n for n, c in counts.items() if n > 0 and c]
        return min(nonzero) if nonzero else None


def class_data(m, code=None, leech=None, seed=0, perm=None):
    """Assemble the class data for one of the ten orders, verifying as it goes."""
    shape = cycle_shape_for_order(m)
    if code is None:
        code = build_golay()
    if leech is None:
        leech = build_leech(code)
    if perm is None:
        perm = find_class_element(code, shape, seed=seed)
    if perm.cycle_shape != shape:
        raise ConstructionInvariantViolated("permutation has the wrong cycle shape")
    nu = perm.matrix_on(leech)
    fixed = fixed_sublattice(leech, nu)
    coinv = coinvariant_sublattice(leech, nu)
    expected_rank = 24 * sigma(m, 0) // sigma(m, 1)
    if fixed.rank != expected_rank:
        raise ConstructionInvariantViolated(
            f"fixed sublattice has rank {fixed.rank}, expected {expected_rank}"
        )
    if fixed.rank + coinv.rank != 24:
        raise ConstructionInvariantViolated("fixed and coinvariant ranks do not sum to 24")
    data = ClassData(m, shape, perm, leech, nu, fixed, coinv)
    data.assert_no_order_doubling()
    cw = data.conformal_weight()
    if cw != Fraction(m - 1, m):
        raise ConstructionInvariantViolated(f"conformal weight {cw} != (m-1)/m")
    for lat in (fixed, coinv):
        if lat.rank and data.min_norm(lat) == 2:
            raise ConstructionInvariantViolated("sublattice has roots")
    return data

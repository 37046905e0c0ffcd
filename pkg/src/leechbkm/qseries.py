"""Exact Laurent series in fractional powers of q.

A FracPowerSeries stores rational coefficients at exponents (lead+i)/denom,
i = 0, 1, ..., together with a truncation bound: coefficients are asserted
correct only for exponents strictly below trunc/denom.  All arithmetic is
exact (gmpy2 rationals); truncation bounds propagate pessimistically, so an
operation never claims coefficients beyond what its inputs support.

The module also expands the Dedekind eta function, eta products for cycle
shapes (including generalised shapes with negative exponents, as arise on
coinvariant sublattices), and the T-eigencomponent decomposition
f(tau/d) = g_{d,0} + ... + g_{d,d-1} where g_{d,j} collects the exponents
congruent to j/d mod 1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

from gmpy2 import mpq, mpz

__all__ = [
    "FracPowerSeries",
    "CycleShape",
    "ZeroLeadingCoefficient",
    "InsufficientTruncation",
    "QQ",
    "eta",
    "eta_product",
    "eta_quotient",
    "t_eigencomponents",
    "TEN_CLASS_ORDERS",
    "cycle_shape_for_order",
    "sigma",
]


class ZeroLeadingCoefficient(ArithmeticError):
    """Series has no invertible leading coefficient in its truncation window."""


class InsufficientTruncation(ArithmeticError):
    """A coefficient beyond the series' validity bound was requested."""


def QQ(num, den=None):
    """Exact rational; accepts int, Fraction, mpq, or numerator/denominator."""
    if den is not None:
        return mpq(num, den)
    if isinstance(num, Fraction):
        return mpq(num.numerator, num.denominator)
    return mpq(num)


_ZERO = mpq(0)
_ONE = mpq(1)


class FracPowerSeries:
    """Truncated Laurent series sum_i c_i q^{(lead+i)/denom}, exact coefficients."""

    __slots__ = ("denom", "lead", "coeffs", "trunc")

    def __init__(self, denom, lead, coeffs, trunc):
        if denom < 1:
            raise ValueError("denom must be a positive integer")
        coeffs = [QQ(c) for c in coeffs]
        if len(coeffs) > trunc - lead:
            raise ValueError("coefficients stored at or beyond trunc")
        # strip leading zeros so the stored lead coefficient is nonzero
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k:
            lead += k
            coeffs = coeffs[k:]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            lead = trunc
        self.denom = int(denom)
        self.lead = int(lead)
        self.coeffs = coeffs
        self.trunc = int(trunc)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, denom=1, trunc=0):
        return cls(denom, trunc, [], trunc)

    @classmethod
    def one(cls, trunc=10, denom=1):
        return cls(denom, 0, [1], trunc * denom if denom > 1 else trunc)

    @classmethod
    def monomial(cls, exponent, coefficient=1, rel_trunc=10):
        """c * q^exponent, valid to exponent + rel_trunc."""
        e = Fraction(exponent) if not isinstance(exponent, Fraction) else exponent
        n = e.denominator
        lead = e.numerator
        return cls(n, lead, [coefficient], lead + rel_trunc * n)

    @classmethod
    def from_dict(cls, denom, mapping, trunc):
        """Series from {exponent numerator: coefficient} at a fixed denom."""
        if not mapping:
            return cls.zero(denom, trunc)
        lead = min(mapping)
        coeffs = [mpq(0)] * (trunc - lead)
        for n, c in mapping.items():
            if n < trunc:
                coeffs[n - lead] = QQ(c)
        return cls(denom, lead, coeffs, trunc)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    @property
    def lead_exponent(self):
        """Lowest stored exponent, as a Fraction (None for the zero series)."""
        if not self.coeffs:
            return None
        return Fraction(self.lead, self.denom)

    @property
    def trunc_exponent(self):
        return Fraction(self.trunc, self.denom)

    def coeff(self, exponent):
        """Exact coefficient at a rational exponent; errors beyond trunc."""
        e = Fraction(exponent)
        if e >= Fraction(self.trunc, self.denom):
            raise InsufficientTruncation(
                f"coefficient at q^{e} requested; series valid below q^{self.trunc_exponent}"
            )
        num = e.numerator * self.denom
        if num % e.denominator:
            return _ZERO
        n = num // e.denominator
        i = n - self.lead
        if i < 0 or i >= len(self.coeffs):
            return _ZERO
        return self.coeffs[i]

    def items(self):
        """Yield (exponent numerator, coefficient) for nonzero coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lead + i, c

    def exponents(self):
        return [Fraction(n, self.denom) for n, _ in self.items()]

    def __repr__(self):
        terms = []
        for n, c in list(self.items())[:6]:
            terms.append(f"{c}*q^({n}/{self.denom})")
        body = " + ".join(terms) if terms else "0"
        more = " + ..." if len(self.coeffs) > 6 else ""
        return f"<FracPowerSeries {body}{more} valid below q^{self.trunc_exponent}>"

    # -- normal form and equality -----------------------------------------

    def normalized(self):
        """Equivalent series with the smallest possible exponent denominator.

        The truncation numerator is rounded down, which can only weaken the
        validity claim, never extend it.
        """
        g = self.denom
        for n, _ in self.items():
            g = gcd(g, n)
            if g == 1:
                return self
        if g == self.denom == 1:
            return self
        d = self.denom // g
        coeffs = [self.coeffs[i] for i in range(0, len(self.coeffs), g)]
        return FracPowerSeries(d, self.lead // g, coeffs, self.trunc // g)

    def with_denom(self, denom):
        """Rescale to a larger exponent denominator (a multiple of the current)."""
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise ValueError("new denominator must be a multiple of the old")
        k = denom // self.denom
        coeffs = [mpq(0)] * (len(self.coeffs) * k)
        for i, c in enumerate(self.coeffs):
            coeffs[i * k] = c
        return FracPowerSeries(denom, self.lead * k, coeffs, self.trunc * k)

    def __eq__(self, other):
        """Representation equality: same function and same validity bound."""
        if not isinstance(other, FracPowerSeries):
            return NotImplemented
        a, b = _unify(self, other)
        return (
            a.lead == b.lead
            and a.trunc == b.trunc
            and a.coeffs == b.coeffs
        )

    def same_series(self, other):
        """Equality of coefficients on the overlap of the validity windows."""
        a, b = _unify(self, other)
        t = min(a.trunc, b.trunc)
        a, b = a.truncate_num(t), b.truncate_num(t)
        return a.lead == b.lead and a.coeffs == b.coeffs

    def __hash__(self):
        n = self.normalized()
        return hash((n.denom, n.lead, n.trunc, tuple(n.coeffs)))

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return FracPowerSeries(self.denom, self.lead, [-c for c in self.coeffs], self.trunc)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, type(_ONE))):
            other = FracPowerSeries.from_dict(self.denom, {0: other}, self.trunc)
        a, b = _unify(self, other)
        trunc = min(a.trunc, b.trunc)
        if a.is_zero() and b.is_zero():
            return FracPowerSeries.zero(a.denom, trunc)
        lead = min((x.lead for x in (a, b) if not x.is_zero()), default=trunc)
        lead = min(lead, trunc)
        coeffs = [mpq(0)] * (trunc - lead)
        for x in (a, b):
            for i, c in enumerate(x.coeffs):
                n = x.lead + i
                if n < trunc:
                    coeffs[n - lead] += c
        return FracPowerSeries(a.denom, lead, coeffs, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, type(_ONE))):
            other = FracPowerSeries.from_dict(self.denom, {0: other}, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = QQ(c)
        if c == 0:
            return FracPowerSeries.zero(self.denom, self.trunc)
        return FracPowerSeries(self.denom, self.lead, [c * x for x in self.coeffs], self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, type(_ONE))):
            return self.scale(other)
        a, b = _unify(self, other)
        if a.is_zero() or b.is_zero():
            # 0 * f is 0, valid where the product would have been
            ta = a.trunc + (b.lead if not b.is_zero() else 0)
            tb = b.trunc + (a.lead if not a.is_zero() else 0)
            return FracPowerSeries.zero(a.denom, min(ta, tb))
        trunc = min(a.trunc + b.lead, b.trunc + a.lead)
        lead = a.lead + b.lead
        coeffs = [mpq(0)] * max(trunc - lead, 0)
        width = len(coeffs)
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            base = i
            bc = b.coeffs
            for j in range(min(len(bc), width - base)):
                cb = bc[j]
                if cb:
                    coeffs[base + j] += ca * cb
        return FracPowerSeries(a.denom, lead, coeffs, trunc)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        if self.is_zero():
            raise ZeroLeadingCoefficient(
                "series is zero within its truncation window; cannot invert"
            )
        a0 = self.coeffs[0]
        rel = self.trunc - self.lead  # relative precision carries over
        inv0 = 1 / a0
        out = [inv0] + [mpq(0)] * (rel - 1)
        a = self.coeffs
        for k in range(1, rel):
            s = mpq(0)
            for i in range(1, min(k, len(a) - 1) + 1):
                ai = a[i]
                if ai:
                    s += ai * out[k - i]
            out[k] = -s * inv0
        return FracPowerSeries(self.denom, -self.lead, out, -self.lead + rel)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, type(_ONE))):
            return self.scale(1 / QQ(other))
        return self * other.inverse()

    def __pow__(self, k):
        if k == 0:
            rel = self.trunc - self.lead if not self.is_zero() else self.trunc
            return FracPowerSeries(self.denom, 0, [1], max(rel, 1))
        base = self if k > 0 else self.inverse()
        k = abs(k)
        result = None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def substitute(self, num=1, den=1):
        """Exponent substitution q -> q^{num/den}; exact, rescales the grid."""
        if num < 1 or den < 1:
            raise ValueError("substitution exponent must be positive")
        s = self
        if num > 1:
            coeffs = [mpq(0)] * (len(s.coeffs) * num - (num - 1) if s.coeffs else 0)
            for i, c in enumerate(s.coeffs):
                coeffs[i * num] = c
            s = FracPowerSeries(s.denom, s.lead * num, coeffs, s.trunc * num)
        if den > 1:
            s = FracPowerSeries(s.denom * den, s.lead, list(s.coeffs), s.trunc)
        return s.normalized() if den > 1 else s

    def truncate_num(self, trunc):
        """Restrict validity to exponents < trunc/denom (trunc in numerator units)."""
        if trunc >= self.trunc:
            return self
        return FracPowerSeries(self.denom, self.lead, self.coeffs[: max(trunc - self.lead, 0)], trunc)

    def truncate(self, exponent):
        e = Fraction(exponent)
        num = e.numerator * self.denom
        if num % e.denominator:
            raise ValueError("truncation exponent not on the series grid")
        return self.truncate_num(num // e.denominator)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "denom": self.denom,
            "lead": self.lead,
            "trunc": self.trunc,
            "coeffs": [[int(c.numerator), int(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            obj["denom"],
            obj["lead"],
            [mpq(n, d) for n, d in obj["coeffs"]],
            obj["trunc"],
        )

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, s):
        return cls.from_json(json.loads(s))


def _unify(a, b):
    if a.denom == b.denom:
        return a, b
    d = lcm(a.denom, b.denom)
    return a.with_denom(d), b.with_denom(d)


# -- divisor arithmetic and the ten cycle shapes ---------------------------

TEN_CLASS_ORDERS = (1, 2, 3, 5, 6, 7, 11, 14, 15, 23)


def divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def sigma(m, k=1):
    """Sum of k-th powers of the divisors of m."""
    return sum(d**k for d in divisors(m))


class CycleShape:
    """Cycle shape prod_{t|m} t^{b_t} of a finite-order lattice automorphism."""

    __slots__ = ("order", "exponents")

    def __init__(self, order, exponents):
        self.order = int(order)
        self.exponents = {int(t): int(b) for t, b in exponents.items() if b}
        for t in self.exponents:
            if self.order % t:
                raise ValueError(f"cycle length {t} does not divide the order {order}")

    def degree(self):
        return sum(t * b for t, b in self.exponents.items())

    def __eq__(self, other):
        return (
            isinstance(other, CycleShape)
            and self.order == other.order
            and self.exponents == other.exponents
        )

    def __repr__(self):
        parts = [f"{t}^{b}" if b != 1 else f"{t}" for t, b in sorted(self.exponents.items())]
        return ".".join(parts) if parts else "1^0"

    def power(self, j):
        """Cycle shape of the j-th power: each t-cycle splits into gcd(t,j) cycles."""
        out = {}
        for t, b in self.exponents.items():
            g = gcd(t, j)
            s = t // g
            out[s] = out.get(s, 0) + b * g
        return CycleShape(self.order // gcd(self.order, j) if j else 1, out)


def cycle_shape_for_order(m):
    """The square-free Mathieu class shape: t^{24/sigma_1(m)} for every t | m."""
    if m not in TEN_CLASS_ORDERS:
        raise ValueError(f"order {m} is not one of the ten square-free class orders")
    b = 24 // sigma(m)
    assert 24 % sigma(m) == 0
    return CycleShape(m, {t: b for t in divisors(m)})


# -- eta expansions --------------------------------------------------------

def eta(scale, trunc_bound):
    """q^{t/24} prod_{n>=1} (1 - q^{tn}), exact, exponents on the 1/24 grid.

    trunc_bound is the absolute exponent bound of the result (exclusive),
    and must exceed the leading exponent t/24.
    """
    t = int(scale)
    if t < 1:
        raise ValueError("scale must be a positive integer")
    bound = Fraction(trunc_bound)
    if bound <= Fraction(t, 24):
        raise ValueError("truncation bound must exceed the leading exponent t/24")
    base = _eta1(bound / t)
    return base.substitute(num=t).truncate_num(
        _floor_to_grid(bound, 24)
    )


def _floor_to_grid(e, denom):
    # largest numerator n with n/denom <= e
    return (e.numerator * denom) // e.denominator


def _eta1(bound):
    # q^{1/24} * prod_{n <= N} (1 - q^n), N chosen so the tail cannot reach bound
    trunc = _floor_to_grid(bound, 24)
    rel = trunc - 1  # lead numerator is 1
    nmax = max(rel // 24 + 1, 1)
    prod = FracPowerSeries(24, 1, [1], trunc)
    for n in range(1, nmax + 1):
        factor = FracPowerSeries.from_dict(24, {0: 1, 24 * n: -1}, trunc)
        prod = prod * factor
    return prod


def eta_product(exponents, trunc_bound):
    """prod_t eta(t tau)^{b_t} for a generalised shape {t: b_t}, b_t in Z."""
    bound = Fraction(trunc_bound)
    lead = Fraction(sum(t * b for t, b in exponents.items()), 24)
    rel = bound - lead
    if rel <= 0:
        raise ValueError("truncation bound must exceed the leading exponent")
    num = None
    den = None
    for t, b in sorted(exponents.items()):
        if not b:
            continue
        # each factor needs relative precision rel beyond its own lead
        f = eta(t, Fraction(t, 24) + rel + 1)
        p = f ** abs(b)
        if b > 0:
            num = p if num is None else num * p
        else:
            den = p if den is None else den * p
    if num is None:
        num = FracPowerSeries(24, 0, [1], _floor_to_grid(rel, 24) + 1)
    out = num if den is None else num / den
    return out.truncate_num(_floor_to_grid(bound, out.denom)).normalized()


def eta_quotient(shape, power_sign, trunc_bound):
    """eta_nu (sign +1) or 1/eta_nu (sign -1) for a cycle shape."""
    if power_sign not in (1, -1):
        raise ValueError("power_sign must be +1 or -1")
    exps = {t: power_sign * b for t, b in shape.exponents.items()}
    return eta_product(exps, trunc_bound)


def inv_eta_nu(m, trunc_bound=None, extra=6):
    """1/eta_nu for one of the ten class orders; integer exponents, lead q^{-1}."""
    shape = cycle_shape_for_order(m)
    if trunc_bound is None:
        trunc_bound = extra
    f = eta_quotient(shape, -1, trunc_bound)
    assert f.denom == 1 and f.lead == -1, "1/eta_nu must start at q^{-1}"
    return f


# -- T-eigencomponents -----------------------------------------------------

def t_eigencomponents(f, d):
    """Split f into d series g_j collecting the exponents congruent to j/d mod 1.

    Requires the exponents of f to lie on the (1/d)-grid.  The sum of the
    components reproduces f exactly.
    """
    d = int(d)
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d == 1:
        return [f]
    g = f.normalized()
    if d % g.denom:
        raise ValueError(f"exponent denominator {g.denom} does not divide {d}")
    g = g.with_denom(d)
    buckets = [dict() for _ in range(d)]
    for n, c in g.items():
        buckets[n % d][n] = c
    return [FracPowerSeries.from_dict(d, b, g.trunc) for b in buckets]

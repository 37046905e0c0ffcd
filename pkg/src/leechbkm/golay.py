"""The extended binary Golay code on 24 points.

Points are indexed 0..22 (the finite points of the projective line over
F_23) plus 23 for the point at infinity.  The underlying [23,12] code is
the quadratic-residue code with generator polynomial

    g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1,

extended by an overall parity bit.  The choice of generator matrix is
self-verifying: the weight enumerator (759 words of weight 8, 2576 of
weight 12) and self-duality are asserted by the test suite.

Codewords are 24-bit integer masks, bit i = coordinate i.
"""

from __future__ import annotations

__all__ = ["GolayCode", "build_golay", "POINTS", "INFINITY"]

POINTS = 24
INFINITY = 23

_GENPOLY = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)  # coefficients of g, degree 11


class GolayCode:
    """Binary [24,12,8] code with fast membership via a bitmask echelon form."""

    __slots__ = ("generator", "_echelon", "_pivots")

    def __init__(self, generator_masks):
        self.generator = list(generator_masks)
        if len(self.generator) != 12:
            raise ValueError("the Golay code needs 12 generators")
        ech = []
        for w in self.generator:
            v = w
            for p, e in ech:
                if v >> p & 1:
                    v ^= e
            if v == 0:
                raise ValueError("generator words are dependent")
            p = v.bit_length() - 1
            ech.append((p, v))
        ech.sort(reverse=True)
        self._pivots = [p for p, _ in ech]
        self._echelon = [e for _, e in ech]

    def __contains__(self, word):
        v = word
        for p, e in zip(self._pivots, self._echelon):
            if v >> p & 1:
                v ^= e
        return v == 0

    def words(self):
        """All 4096 codewords."""
        out = [0]
        for g in self.generator:
            out += [w ^ g for w in out]
        return out

    def weight_distribution(self):
        dist = {}
        for w in self.words():
            k = w.bit_count()
            dist[k] = dist.get(k, 0) + 1
        return dist

    def octads(self):
        return [w for w in self.words() if w.bit_count() == 8]

    def generator_rows(self):
        """Generator matrix as 12 rows of 24 bits."""
        return [[(g >> i) & 1 for i in range(POINTS)] for g in self.generator]

    def permuted_word(self, word, perm):
        out = 0
        for i in range(POINTS):
            if word >> i & 1:
                out |= 1 << perm[i]
        return out

    def is_automorphism(self, perm):
        return all(self.permuted_word(g, perm) in self for g in self.generator)

    def to_json(self):
        return {"generator_masks": self.generator}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["generator_masks"])


def build_golay():
    """Construct the extended Golay code from the documented generator polynomial."""
    gens = []
    for i in range(12):
        mask = 0
        for k, c in enumerate(_GENPOLY):
            if c:
                mask |= 1 << (i + k)
        weight = mask.bit_count()
        if weight % 2:
            mask |= 1 << INFINITY
        gens.append(mask)
    return GolayCode(gens)

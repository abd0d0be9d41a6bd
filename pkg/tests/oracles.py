"""Naive reference implementations used to derive expected values.

Nothing here shares code with the package: field elements are coefficient
lists reduced by schoolbook polynomial division, and incidence is tested by
dot products.
"""

from fractions import Fraction
from itertools import product


def poly_mulmod(a, b, modulus, p):
    """Product of coefficient lists (low to high) reduced by a monic modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    e = len(modulus) - 1
    for k in range(len(out) - 1, e - 1, -1):
        c = out[k]
        if c:
            for j in range(e + 1):
                out[k - e + j] = (out[k - e + j] - c * modulus[j]) % p
    out = out[:e] + [0] * (e - len(out[:e]))
    return out


def code_to_coeffs(a, p, e):
    return [(a // p ** i) % p for i in range(e)]


def coeffs_to_code(c, p):
    return sum(x * p ** i for i, x in enumerate(c))


class NaiveField:
    def __init__(self, p, e=1, modulus=None):
        self.p, self.e, self.q = p, e, p ** e
        self.modulus = list(modulus) if modulus else [0, 1]

    def add(self, a, b):
        ca, cb = code_to_coeffs(a, self.p, self.e), code_to_coeffs(b, self.p, self.e)
        return coeffs_to_code([(x + y) % self.p for x, y in zip(ca, cb)], self.p)

    def neg(self, a):
        return coeffs_to_code([(-x) % self.p for x in code_to_coeffs(a, self.p, self.e)], self.p)

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        r = poly_mulmod(code_to_coeffs(a, self.p, self.e), code_to_coeffs(b, self.p, self.e),
                        self.modulus, self.p)
        return coeffs_to_code(r, self.p)

    def inv(self, a):
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)

    def dot(self, u, v):
        s = 0
        for x, y in zip(u, v):
            s = self.add(s, self.mul(x, y))
        return s


def naive_points(F):
    """Normalized triples: first nonzero coordinate equal to 1."""
    pts = []
    for v in product(range(F.q), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def naive_line_counts(F, S):
    """Number of points of S on each line (lines as normalized triples)."""
    return {ln: sum(1 for s in S if F.dot(ln, s) == 0) for ln in naive_points(F)}


def naive_odd_count(F, S):
    return sum(1 for c in naive_line_counts(F, S).values() if c % 2)


def naive_weights(F, S):
    counts = naive_line_counts(F, S)
    out = {}
    for s in S:
        w = Fraction(0)
        for ln, c in counts.items():
            if c % 2 and F.dot(ln, s) == 0:
                w += Fraction(1, c)
        out[s] = w
    return out

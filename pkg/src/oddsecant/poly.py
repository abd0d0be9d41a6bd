"""Sparse homogeneous polynomials in X1, X2, X3 over GF(q).

A :class:`HomPoly` maps exponent triples ``(i, j, k)`` with ``i+j+k = d`` to
nonzero coefficient codes.  Term order is lexicographic on the exponent
triple (X1 > X2 > X3); for homogeneous polynomials this is graded-lex.

The gcd works on the bivariate dehomogenization X3 = 1, viewed as
polynomials in X2 over GF(q)[X1], with a primitive pseudo-remainder
sequence whose contents are handled by univariate Euclid.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import AllCollinear, BothZero, DegreeTooHigh, ParseError, UnderDetermined
from .field import GF
from .plane import Plane, plane_for


def monomials(d: int) -> list[tuple[int, int, int]]:
    """Exponent triples of degree ``d`` in decreasing lex order."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


class HomPoly:
    __slots__ = ("F", "degree", "terms")

    def __init__(self, F: GF, degree: int, terms: dict | None = None):
        self.F = F
        self.degree = degree
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        for m in self.terms:
            if sum(m) != degree:
                raise ValueError(f"monomial {m} has degree != {degree}")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, F: GF, degree: int = 0) -> "HomPoly":
        return cls(F, degree)

    @classmethod
    def constant(cls, F: GF, c: int = 1) -> "HomPoly":
        return cls(F, 0, {(0, 0, 0): c})

    @classmethod
    def linear(cls, F: GF, coeffs: Sequence[int]) -> "HomPoly":
        return cls(F, 1, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]})

    @classmethod
    def monomial(cls, F: GF, exps, c: int = 1) -> "HomPoly":
        return cls(F, sum(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, F: GF, i: int) -> "HomPoly":
        e = [0, 0, 0]
        e[i] = 1
        return cls.monomial(F, e)

    @classmethod
    def from_vector(cls, F: GF, degree: int, vec: Sequence[int]) -> "HomPoly":
        return cls(F, degree, dict(zip(monomials(degree), vec)))

    def to_vector(self) -> list[int]:
        return [self.terms.get(m, 0) for m in monomials(self.degree)]

    # -- basic protocol -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.F == other.F and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return f"HomPoly({self.to_string()})"

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        names = ("X1", "X2", "X3")
        out = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            coef = self.F.format(c)
            if not mono:
                out.append(coef)
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"({coef})*{mono}" if ":" in coef else f"{coef}*{mono}")
        return " + ".join(out)

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if self.F != other.F:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("sum of forms of different degree")
        add = self.F.add
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = add(t.get(m, 0), c)
        return HomPoly(self.F, self.degree, t)

    def __neg__(self) -> "HomPoly":
        neg = self.F.neg
        return HomPoly(self.F, self.degree, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def scale(self, c: int) -> "HomPoly":
        if c == 0:
            return HomPoly(self.F, self.degree)
        mul = self.F.mul
        return HomPoly(self.F, self.degree, {m: mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other) -> "HomPoly":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        F = self.F
        mul, add = F.mul, F.add
        t: dict = {}
        for (a1, a2, a3), c in self.terms.items():
            for (b1, b2, b3), d in other.terms.items():
                m = (a1 + b1, a2 + b2, a3 + b3)
                t[m] = add(t.get(m, 0), mul(c, d))
        return HomPoly(F, self.degree + other.degree, t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly":
        out = HomPoly.constant(self.F)
        for _ in range(n):
            out = out * self
        return out

    # -- evaluation ----------------------------------------------------------------

    def __call__(self, v) -> int:
        return evaluate(self, v)

    def leading(self):
        """Leading (monomial, coefficient) under lex order."""
        m = max(self.terms)
        return m, self.terms[m]

    def monic(self) -> "HomPoly":
        if self.is_zero():
            return self
        _, c = self.leading()
        return self.scale(self.F.inv(c))

    def compose_linear(self, A) -> "HomPoly":
        """The form ``X -> self(A X)`` for a 3x3 matrix ``A``."""
        F = self.F
        rows = [HomPoly.linear(F, A[i]) for i in range(3)]
        powers = [[HomPoly.constant(F)] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                powers[i].append(powers[i][-1] * rows[i])
        out = HomPoly.zero(F, self.degree)
        for (a, b, c), coef in self.terms.items():
            out = out + (powers[0][a] * powers[1][b] * powers[2][c]).scale(coef)
        return out

    def divides(self, other: "HomPoly") -> bool:
        return divide(other, self)[1].is_zero()

    # -- text forms ---------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"deg {self.degree}:"]
        for m in sorted(self.terms, reverse=True):
            lines.append(f"{self.F.format(self.terms[m])} {m[0]} {m[1]} {m[2]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [[self.F.format(self.terms[m]), *m] for m in sorted(self.terms, reverse=True)],
        }


def parse_poly_text(F: GF, text: str) -> HomPoly:
    degree = None
    terms = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            if not (line.startswith("deg") and line.endswith(":")):
                raise ParseError("expected 'deg d:'", lineno)
            try:
                degree = int(line[3:-1])
            except ValueError as exc:
                raise ParseError("bad degree", lineno) from exc
            continue
        tok = line.split()
        if len(tok) != 4:
            raise ParseError("expected 'coeff i j k'", lineno)
        try:
            exps = tuple(int(t) for t in tok[1:])
        except ValueError as exc:
            raise ParseError("bad exponent", lineno) from exc
        if sum(exps) != degree or min(exps) < 0:
            raise ParseError(f"exponents {exps} do not sum to {degree}", lineno)
        terms[exps] = F.add(terms.get(exps, 0), F.parse(tok[0]))
    if degree is None:
        raise ParseError("empty polynomial text")
    return HomPoly(F, degree, terms)


def poly_from_json(F: GF, data: dict) -> HomPoly:
    return HomPoly(F, data["degree"], {tuple(t[1:]): F.parse(str(t[0])) for t in data["terms"]})


def evaluate(f: HomPoly, v) -> int:
    F = f.F
    mul, add = F.mul, F.add
    pw = []
    for x in v:
        row = [1]
        for _ in range(f.degree):
            row.append(mul(row[-1], x))
        pw.append(row)
    s = 0
    p0, p1, p2 = pw
    for (a, b, c), coef in f.terms.items():
        s = add(s, mul(coef, mul(p0[a], mul(p1[b], p2[c]))))
    return s


def evaluate_many(f: HomPoly, coords: np.ndarray) -> np.ndarray:
    """Evaluate at every row of an (N, 3) array of codes."""
    F = f.F
    n = coords.shape[0]
    if not F.vectorised:
        return np.array([evaluate(f, tuple(int(c) for c in row)) for row in coords], dtype=np.int64)
    pw = []
    for i in range(3):
        col = coords[:, i].astype(np.int64)
        row = [np.ones(n, dtype=np.int64)]
        for _ in range(f.degree):
            row.append(F.vmul(row[-1], col))
        pw.append(row)
    acc = np.zeros(n, dtype=np.int64)
    for (a, b, c), coef in f.terms.items():
        term = F.vmul(F.vmul(pw[0][a], pw[1][b]), pw[2][c])
        acc = F.vadd(acc, F.vscale(coef, term))
    return acc


def vanishing_set(f: HomPoly, P: Plane | None = None) -> list[int]:
    """Ids of the points of PG(2,q) where ``f`` vanishes."""
    if P is None:
        P = plane_for(f.F)
    if f.is_zero():
        return list(range(P.n))
    vals = evaluate_many(f, P.coords)
    return np.flatnonzero(vals == 0).tolist()


# -- derivatives -------------------------------------------------------------------

def hasse_derivative(f: HomPoly, order) -> HomPoly:
    """Divided-power derivative: coefficient of Y^order in f(X + Y)."""
    F = f.F
    a1, a2, a3 = order
    p = F.p
    mul = F.mul
    terms = {}
    for (m1, m2, m3), c in f.terms.items():
        if m1 < a1 or m2 < a2 or m3 < a3:
            continue
        b = comb(m1, a1) * comb(m2, a2) * comb(m3, a3) % p
        if b:
            terms[(m1 - a1, m2 - a2, m3 - a3)] = mul(F.from_int(b), c)
    return HomPoly(F, f.degree - a1 - a2 - a3, terms)


def taylor_part(f: HomPoly, v, k: int) -> HomPoly:
    """Degree-k part in Y of f(v + Y): sum over |a| = k of H^a(f)(v) Y^a."""
    return HomPoly(f.F, k, {a: evaluate(hasse_derivative(f, a), v) for a in monomials(k)})


def multiplicity(f: HomPoly, v) -> int:
    """Order of vanishing of ``f`` at the point with representative ``v``."""
    if f.is_zero():
        return f.degree + 1
    for k in range(f.degree + 1):
        if not taylor_part(f, v, k).is_zero():
            return k
    return f.degree + 1


def tangent_cone(f: HomPoly, v) -> HomPoly:
    return taylor_part(f, v, multiplicity(f, v))


def gradient(f: HomPoly) -> list[HomPoly]:
    return [hasse_derivative(f, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]


def proportional(f: HomPoly, g: HomPoly) -> int | None:
    """The scalar c with f = c g, or None."""
    if f.is_zero() or g.is_zero():
        return 0 if f.is_zero() and not g.is_zero() else None
    if f.degree != g.degree or set(f.terms) != set(g.terms):
        return None
    m = next(iter(g.terms))
    c = f.F.div(f.terms[m], g.terms[m])
    return c if g.scale(c) == f else None


# -- division ---------------------------------------------------------------------

def divide(f: HomPoly, g: HomPoly) -> tuple[HomPoly, HomPoly]:
    """Division with remainder by a single form (lex order); the
    remainder is zero iff ``g`` divides ``f``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F = f.F
    mul, sub, inv = F.mul, F.sub, F.inv
    lm, lc = g.leading()
    lc_inv = inv(lc)
    qdeg = f.degree - g.degree
    r = dict(f.terms)
    quot: dict = {}
    rem: dict = {}
    gterms = list(g.terms.items())
    while r:
        m = max(r)
        c = r[m]
        if qdeg >= 0 and m[0] >= lm[0] and m[1] >= lm[1] and m[2] >= lm[2]:
            s = (m[0] - lm[0], m[1] - lm[1], m[2] - lm[2])
            k = mul(c, lc_inv)
            quot[s] = k
            for (b1, b2, b3), d in gterms:
                t = (s[0] + b1, s[1] + b2, s[2] + b3)
                v = sub(r.get(t, 0), mul(k, d))
                if v:
                    r[t] = v
                else:
                    r.pop(t, None)
        else:
            rem[m] = c
            del r[m]
    return HomPoly(F, max(qdeg, 0), quot), HomPoly(F, f.degree, rem)


def exact_quotient(f: HomPoly, g: HomPoly) -> HomPoly:
    quot, rem = divide(f, g)
    if not rem.is_zero():
        raise ValueError("not an exact division")
    return quot


# -- univariate helpers (coefficient lists, low to high) ------------------------------

def _utrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _umul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul, add = F.mul, F.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _utrim(out)


def _usub(F, a, b):
    n = max(len(a), len(b))
    sub = F.sub
    return _utrim([sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def _udivmod(F, a, b):
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    mul, sub = F.mul, F.sub
    while len(_utrim(a)) - 1 >= db:
        k = mul(a[-1], inv)
        s = len(a) - 1 - db
        quot[s] = k
        for i, y in enumerate(b):
            a[s + i] = sub(a[s + i], mul(k, y))
        a.pop()
    return _utrim(quot), _utrim(a)


def _umonic(F, a):
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(inv, x) for x in a]


def _ugcd(F, a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        a, b = b, _udivmod(F, a, b)[1]
    return _umonic(F, a)


# -- bivariate: lists indexed by the power of y, entries univariate in x ------------

def _bcontent(F, A):
    g = []
    for c in A:
        if c:
            g = _ugcd(F, g, c)
            if g == [1]:
                break
    return g


def _bdiv_scalar(F, A, c):
    return [_udivmod(F, a, c)[0] if a else [] for a in A]


def _btrim(A):
    while A and not A[-1]:
        A.pop()
    return A


def _bprem(F, A, B):
    A = [list(a) for a in A]
    db = len(B) - 1
    lb = B[-1]
    while len(_btrim(A)) - 1 >= db:
        la = A[-1]
        s = len(A) - 1 - db
        A = [_umul(F, lb, a) for a in A]
        for i, b in enumerate(B):
            A[s + i] = _usub(F, A[s + i], _umul(F, la, b))
        _btrim(A)
    return A


def _bgcd(F, A, B):
    ca, cb = _bcontent(F, A), _bcontent(F, B)
    c = _ugcd(F, ca, cb)
    A = _bdiv_scalar(F, A, ca)
    B = _bdiv_scalar(F, B, cb)
    if len(A) < len(B):
        A, B = B, A
    while len(B) > 1:
        R = _bprem(F, A, B)
        if not R:
            break
        A, B = B, _bdiv_scalar(F, R, _bcontent(F, R))
    if len(B) <= 1:
        # a primitive polynomial of y-degree 0 is a unit
        return [c]
    return [_umul(F, c, b) for b in B]


def _dehomogenize(f: HomPoly):
    """Bivariate list for f(X1, X2, 1) as a polynomial in X2."""
    A = [[] for _ in range(f.degree + 1)]
    for (i, j, _k), c in f.terms.items():
        row = A[j]
        if len(row) <= i:
            row.extend([0] * (i + 1 - len(row)))
        row[i] = c
    return _btrim([_utrim(r) for r in A])


def _homogenize(F, A) -> HomPoly:
    terms = {}
    for j, row in enumerate(A):
        for i, c in enumerate(row):
            if c:
                terms[(i, j)] = c
    d = max(i + j for i, j in terms)
    return HomPoly(F, d, {(i, j, d - i - j): c for (i, j), c in terms.items()})


def _strip_x3(f: HomPoly):
    k = min(m[2] for m in f.terms)
    if k == 0:
        return 0, f
    return k, HomPoly(f.F, f.degree - k, {(a, b, c - k): v for (a, b, c), v in f.terms.items()})


def gcd_hom(f: HomPoly, g: HomPoly) -> HomPoly:
    """Monic greatest common divisor of two forms."""
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd of two zero polynomials")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    F = f.F
    kf, f1 = _strip_x3(f)
    kg, g1 = _strip_x3(g)
    k = min(kf, kg)
    if f1.degree == 0 or g1.degree == 0:
        h = HomPoly.constant(F)
    else:
        h = _homogenize(F, _bgcd(F, _dehomogenize(f1), _dehomogenize(g1)))
    if k:
        h = h * HomPoly.monomial(F, (0, 0, k))
    return h.monic()


def gcd_iterated(polys: Iterable[HomPoly]) -> HomPoly:
    g = None
    for p in polys:
        if p.is_zero():
            continue
        if g is None:
            g = p.monic()
        elif not g.divides(p):
            g = gcd_hom(g, p)
        if g is not None and g.degree == 0:
            break
    if g is None:
        raise BothZero("all polynomials are zero")
    return g


def span_basis(polys: Sequence[HomPoly]) -> list[HomPoly]:
    """Row-reduced basis of the GF(q)-span of forms of one degree."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    F = polys[0].F
    d = polys[0].degree
    m, pivots = linalg.rref(F, [p.to_vector() for p in polys])
    return [HomPoly.from_vector(F, d, row) for row in m[: len(pivots)]]


@dataclass
class SpanGcdStats:
    basis_size: int = 0
    random_rounds: int = 0
    fallback_steps: int = 0
    degree_too_high: bool = False


def gcd_of_span(polys: Sequence[HomPoly], trials: int = 50, seed: int = 0,
                strict: bool = False, stats: SpanGcdStats | None = None) -> HomPoly:
    """Gcd of the linear span of ``polys``.

    Random pairs of combinations give a first candidate, refined with fresh
    combinations until five rounds in a row fail to lower the degree, then
    trial-divided into every basis element.  Any basis element not divisible
    is folded in with a plain gcd, so the result always divides the span.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise BothZero("empty or zero span")
    F = polys[0].F
    d = polys[0].degree
    if any(p.degree != d for p in polys):
        raise ValueError("span members must share a degree")
    if stats is None:
        stats = SpanGcdStats()
    if d > F.q:
        stats.degree_too_high = True
        if strict:
            raise DegreeTooHigh(f"degree {d} exceeds q = {F.q}")
        warnings.warn(f"degree {d} exceeds q = {F.q}; two-element witness not guaranteed")
    basis = span_basis(polys)
    stats.basis_size = len(basis)
    if len(basis) == 1:
        return basis[0].monic()
    rng = random.Random(seed)

    def combo():
        out = HomPoly.zero(F, d)
        while out.is_zero():
            for b in basis:
                out = out + b.scale(rng.randrange(F.q))
        return out

    g = gcd_hom(combo(), combo())
    stable = 0
    rounds = 0
    while stable < 5 and rounds < trials and g.degree > 0:
        rounds += 1
        c = combo()
        if g.divides(c):
            stable += 1
            continue
        g2 = gcd_hom(g, c)
        if g2.degree < g.degree:
            g, stable = g2, 0
        else:
            stable += 1
    stats.random_rounds = rounds
    for b in basis:
        if not g.divides(b):
            g = gcd_hom(g, b)
            stats.fallback_steps += 1
    return g


# -- conics ---------------------------------------------------------------------------

CONIC_MONOMIALS = monomials(2)


@dataclass
class ConicFit:
    poly: HomPoly
    rank: int

    @property
    def nondegenerate(self) -> bool:
        return self.rank == 3


def conic_matrix(f: HomPoly):
    """Symmetric matrix of a quadratic form (q odd)."""
    F = f.F
    half = F.inv(2)
    t = f.terms
    a, b, c = t.get((2, 0, 0), 0), t.get((0, 2, 0), 0), t.get((0, 0, 2), 0)
    d = F.mul(half, t.get((1, 1, 0), 0))
    e = F.mul(half, t.get((1, 0, 1), 0))
    g = F.mul(half, t.get((0, 1, 1), 0))
    return ((a, d, e), (d, b, g), (e, g, c))


def conic_rank(f: HomPoly) -> int:
    if f.F.p == 2:
        raise ValueError("conic rank via symmetric matrix needs odd q")
    return linalg.rank(f.F, conic_matrix(f))


def fit_conic(F: GF, points: Sequence) -> ConicFit:
    """The conic through five points."""
    pts = [tuple(p) for p in points]
    if len(pts) != 5:
        raise ValueError("fit_conic needs exactly 5 points")
    mul = F.mul
    rows = []
    for v in pts:
        row = []
        for (a, b, c) in CONIC_MONOMIALS:
            val = 1
            for x, e in zip(v, (a, b, c)):
                for _ in range(e):
                    val = mul(val, x)
            row.append(val)
        rows.append(row)
    if linalg.rank(F, [list(p) for p in pts]) <= 2:
        raise AllCollinear("all five points are collinear")
    ns = linalg.nullspace(F, rows, 6)
    if len(ns) != 1:
        raise UnderDetermined(f"conic through the points is not unique (dimension {len(ns)})")
    poly = HomPoly.from_vector(F, 2, ns[0]).monic()
    rank = conic_rank(poly) if F.p != 2 else -1
    return ConicFit(poly, rank)


def conic_tangent(f: HomPoly, v) -> tuple[int, int, int]:
    """Coefficients of the tangent line to the conic at ``v``."""
    return tuple(evaluate(g, v) for g in gradient(f))


# -- Gamma ---------------------------------------------------------------------------

@dataclass
class GammaReport:
    gamma: HomPoly
    degree: int
    quotients: list[HomPoly]
    factorization_verified: bool
    conic_divides: bool | None = None
    conic_multiplicity: int = 0
    line_factors: list[tuple[int, int]] = field(default_factory=list)
    stats: SpanGcdStats = field(default_factory=SpanGcdStats)

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma.to_json(),
            "degree": self.degree,
            "factorization_verified": self.factorization_verified,
            "n_inputs": len(self.quotients),
            "conic_divides": self.conic_divides,
            "conic_multiplicity": self.conic_multiplicity,
            "line_factors": [{"line": li, "multiplicity": m} for li, m in self.line_factors],
            "basis_size": self.stats.basis_size,
            "random_rounds": self.stats.random_rounds,
            "fallback_steps": self.stats.fallback_steps,
            "degree_too_high": self.stats.degree_too_high,
        }


def factor_multiplicity(f: HomPoly, g: HomPoly) -> int:
    """Largest k with g^k dividing f (f nonzero, deg g >= 1)."""
    k = 0
    while f.degree >= g.degree:
        quot, rem = divide(f, g)
        if not rem.is_zero():
            break
        f = quot
        k += 1
    return k


def line_components(f: HomPoly, P: Plane | None = None) -> list[tuple[int, int]]:
    """(line id, multiplicity) for every linear factor of ``f``, by trial
    division over all lines of the plane."""
    if P is None:
        P = plane_for(f.F)
    if f.degree == 0:
        return []
    out = []
    candidates = set(vanishing_set(f, P))
    for li, ln in enumerate(P.lines):
        # a linear factor vanishes on all of its line
        if not all(pid in candidates for pid in P.line_points[li]):
            continue
        k = factor_multiplicity(f, HomPoly.linear(f.F, ln))
        if k:
            out.append((li, k))
    return out


def compute_gamma(psis: Sequence[HomPoly], conic: HomPoly | None = None,
                  trials: int = 50, seed: int = 0) -> GammaReport:
    stats = SpanGcdStats()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        gamma = gcd_of_span(psis, trials=trials, seed=seed, stats=stats)
    quotients = []
    ok = True
    for psi in psis:
        quot, rem = divide(psi, gamma)
        quotients.append(quot)
        if not rem.is_zero() or quot * gamma != psi:
            ok = False
    report = GammaReport(gamma, gamma.degree, quotients, ok, stats=stats)
    if conic is not None:
        report.conic_multiplicity = factor_multiplicity(gamma, conic) if gamma.degree >= 2 else 0
        report.conic_divides = report.conic_multiplicity > 0
    report.line_factors = line_components(gamma)
    return report


def random_poly(F: GF, degree: int, rng: random.Random, density: float = 1.0) -> HomPoly:
    terms = {}
    for m in monomials(degree):
        if rng.random() < density:
            terms[m] = rng.randrange(F.q)
    return HomPoly(F, degree, terms)


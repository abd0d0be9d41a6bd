"""Secant distributions, odd-secant counts, weights and point classes.

For a point set S the weight of x in S is the sum of 1/|l cap S| over the
odd lines l through x.  Every odd line with k points of S is counted k times
with weight 1/k, so the weights sum to the number of odd secants.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import SizeMismatch
from .field import GF
from .plane import FixedVector, Plane, Point, plane_for


@dataclass(frozen=True)
class PointSet:
    """An ordered set of points of one plane, stored as point ids.

    ``fixed`` optionally overrides the representative vector of a point;
    by default the normalized coordinates are used.
    """

    plane: Plane
    ids: tuple[int, ...]
    fixed: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("duplicate points in point set")

    @classmethod
    def from_points(cls, F: GF, points: Iterable, keep_vectors: bool = False) -> "PointSet":
        """Build from coordinate triples; with ``keep_vectors`` the given
        triples are kept as the fixed representatives."""
        P = plane_for(F)
        ids = []
        fx = {}
        for v in points:
            pid = P.point_id(v)
            ids.append(pid)
            if keep_vectors:
                fx[pid] = FixedVector(*v)
        return cls(P, tuple(sorted(ids)), fx)

    @classmethod
    def from_ids(cls, P: Plane, ids: Iterable[int]) -> "PointSet":
        return cls(P, tuple(sorted(ids)))

    @property
    def F(self) -> GF:
        return self.plane.F

    @property
    def q(self) -> int:
        return self.plane.q

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        return iter(self.ids)

    def __contains__(self, pid):
        return pid in set(self.ids)

    def points(self) -> list[Point]:
        return [self.plane.points[i] for i in self.ids]

    def vector(self, pid: int) -> FixedVector:
        v = self.fixed.get(pid)
        if v is not None:
            return v
        return FixedVector(*self.plane.points[pid])

    def with_point(self, pid: int) -> "PointSet":
        return PointSet(self.plane, tuple(sorted(self.ids + (pid,))), dict(self.fixed))


@dataclass
class SecantProfile:
    counts: list[int]
    odd_count: int
    spectrum: dict[int, int]

    def lines_with(self, k: int) -> list[int]:
        return [li for li, c in enumerate(self.counts) if c == k]


@dataclass
class WeightTable:
    weights: dict[int, Fraction]

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def as_strings(self) -> dict[int, str]:
        return {k: f"{w.numerator}/{w.denominator}" for k, w in self.weights.items()}


@dataclass
class Classification:
    t: int
    S_0: list[int]
    S_43: list[int]
    S_t: list[int]
    parts: list[list[int]]
    S_prime: list[int]
    tangent: dict[int, int] = field(default_factory=dict)
    three_secant: dict[int, int] = field(default_factory=dict)

    def sizes(self) -> dict[str, int]:
        return {
            "S_0": len(self.S_0),
            "S_43": len(self.S_43),
            "S_t": len(self.S_t),
            "parts": len(self.parts),
            "S_prime": len(self.S_prime),
        }


def secant_profile(S: PointSet) -> SecantProfile:
    P = S.plane
    counts = [0] * P.n
    for pid in S.ids:
        for li in P.point_lines[pid]:
            counts[li] += 1
    odd = sum(1 for c in counts if c & 1)
    return SecantProfile(counts, odd, dict(sorted(Counter(counts).items())))


def odd_count(P: Plane, ids: Iterable[int]) -> int:
    """o(S) via XOR of line bitmasks: a line is odd iff its bit survives."""
    acc = 0
    masks = P.point_masks
    for pid in ids:
        acc ^= masks[pid]
    return acc.bit_count()


def weights(S: PointSet, profile: SecantProfile | None = None) -> WeightTable:
    if profile is None:
        profile = secant_profile(S)
    P = S.plane
    out = {}
    for pid in S.ids:
        w = Fraction(0)
        for li in P.point_lines[pid]:
            c = profile.counts[li]
            if c & 1:
                w += Fraction(1, c)
        out[pid] = w
    return WeightTable(out)


def line_signature(S: PointSet, profile: SecantProfile, pid: int) -> Counter:
    """How many lines through ``pid`` meet S in k points, for each k."""
    return Counter(profile.counts[li] for li in S.plane.point_lines[pid])


def classify(S: PointSet, t: int = 1, profile: SecantProfile | None = None) -> Classification:
    if profile is None:
        profile = secant_profile(S)
    P = S.plane
    q = P.q
    S_0, S_43, S_t = [], [], []
    tangent, three = {}, {}
    for pid in S.ids:
        sig = line_signature(S, profile, pid)
        if sig.get(2, 0) == q + 1:
            S_0.append(pid)
        if sig.get(1, 0) <= 1:
            S_t.append(pid)
        if sig.get(1, 0) == 1 and sig.get(3, 0) == 1 and sig.get(2, 0) == q - 1:
            S_43.append(pid)
        for li in P.point_lines[pid]:
            c = profile.counts[li]
            if c == 1:
                tangent[pid] = li
            elif c == 3:
                three.setdefault(pid, li)
    groups: dict[int, list[int]] = {}
    for pid in S_43:
        groups.setdefault(three[pid], []).append(pid)
    parts = sorted(groups.values())
    if t == 1:
        candidates = sorted(part[0] for part in parts)
    else:
        candidates = [pid for pid in S_t if line_signature(S, profile, pid).get(1, 0) == 1]
    S_prime = select_bisecant_subset(S, profile, candidates)
    return Classification(t, S_0, S_43, S_t, parts, S_prime, tangent, three)


def select_bisecant_subset(S: PointSet, profile: SecantProfile, candidates: Sequence[int]) -> list[int]:
    """Greedy (lowest id first) subset whose members are pairwise joined by
    bisecants of S."""
    P = S.plane
    chosen: list[int] = []
    for pid in sorted(candidates):
        if all(profile.counts[P.join_id(pid, other)] == 2 for other in chosen):
            chosen.append(pid)
    return chosen


@dataclass
class SzeroReport:
    s0: list[int]
    q_odd: bool
    product_checks: int
    product_ok: bool

    @property
    def ok(self) -> bool:
        return len(self.s0) <= 2 and self.product_ok

    def __bool__(self):
        return self.ok


def nucleus_product(F: GF, x, y, z, others) -> int:
    """Product of -s2/s3 over ``others``, with s = s1 x + s2 y + s3 z."""
    m = linalg.transpose((tuple(x), tuple(y), tuple(z)))
    inv = linalg.inverse3(F, m)
    prod = 1
    for v in others:
        s = linalg.matvec(F, inv, v)
        prod = F.mul(prod, F.neg(F.div(s[1], s[2])))
    return prod


def verify_szero(S: PointSet, check_pairs: int | None = None) -> SzeroReport:
    """Count internal nuclei and check the nucleus product identity.

    For each nucleus x and each pair y, z of other points the product of
    -s2/s3 over the remaining points is -1 (the lines through x other than
    xy and xz each carry exactly one of them).  ``check_pairs`` caps the
    number of pairs tried per nucleus.
    """
    P = S.plane
    q = P.q
    if len(S) != q + 2:
        raise SizeMismatch(f"expected {q + 2} points, got {len(S)}")
    profile = secant_profile(S)
    s0 = [pid for pid in S.ids if all(profile.counts[li] == 2 for li in P.point_lines[pid])]
    checks = 0
    ok = True
    if q % 2 == 1:
        F = P.F
        minus_one = F.neg(1)
        for x in s0:
            rest = [pid for pid in S.ids if pid != x]
            pairs = itertools.combinations(rest, 2)
            if check_pairs is not None:
                pairs = itertools.islice(pairs, check_pairs)
            for y, z in pairs:
                others = [S.vector(s) for s in rest if s not in (y, z)]
                prod = nucleus_product(F, S.vector(x), S.vector(y), S.vector(z), others)
                checks += 1
                if prod != minus_one:
                    ok = False
    return SzeroReport(s0, q % 2 == 1, checks, ok)


def report_dict(S: PointSet, t: int = 1) -> dict:
    """JSON-ready summary of a point set."""
    profile = secant_profile(S)
    wt = weights(S, profile)
    cl = classify(S, t, profile)
    F = S.F
    return {
        "q": S.q,
        "field": {"p": F.p, "e": F.e, "modulus": F.format_modulus()},
        "size": len(S),
        "spectrum": {str(k): v for k, v in profile.spectrum.items()},
        "odd_count": profile.odd_count,
        "weights": {str(k): v for k, v in wt.as_strings().items()},
        "weight_sum": str(wt.total()),
        "classification": cl.sizes(),
        "S_0": cl.S_0,
        "S_43": cl.S_43,
        "S_prime": cl.S_prime,
    }

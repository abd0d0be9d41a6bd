"""Points, lines and collineations of PG(2,q).

Coordinates are triples of field codes.  A :class:`Point` or :class:`Line`
is always normalized (first nonzero coordinate equal to 1), while a
:class:`FixedVector` keeps whatever representative it was given.  The
scaled tangent identities depend on the representative, so the two types
are kept apart on purpose.

Each field gets one shared :class:`Plane` holding the enumeration order,
incidence lists and per-point line bitmasks used by the search code.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import linalg
from .errors import BudgetExceeded, DegenerateFrame, EqualPoints, FieldMismatch, ParseError
from .field import GF, field as make_field


class Point(NamedTuple):
    x1: int
    x2: int
    x3: int


class Line(NamedTuple):
    a1: int
    a2: int
    a3: int


class FixedVector(NamedTuple):
    x1: int
    x2: int
    x3: int


def normalize(F: GF, v) -> tuple[int, int, int]:
    for c in v:
        if c:
            if c == 1:
                return tuple(v)
            inv = F.inv(c)
            return tuple(F.mul(inv, t) for t in v)
    raise ValueError("zero vector is not a projective point")


def _enumerate_triples(q: int):
    for a in range(q):
        for b in range(q):
            yield (1, a, b)
    for b in range(q):
        yield (0, 1, b)
    yield (0, 0, 1)


def triple_id(q: int, v) -> int:
    """Enumeration index of a normalized triple."""
    if v[0] == 1:
        return v[1] * q + v[2]
    if v[1] == 1:
        return q * q + v[2]
    return q * q + q


class Plane:
    """PG(2,q) over a given field with precomputed incidence."""

    def __init__(self, F: GF):
        self.F = F
        q = F.q
        self.q = q
        self.n = q * q + q + 1
        self.points = [Point(*t) for t in _enumerate_triples(q)]
        self.lines = [Line(*t) for t in _enumerate_triples(q)]
        self._build_incidence()
        self._join = None

    def _build_incidence(self):
        F = self.F
        n, q = self.n, self.q
        line_points = []
        if F.vectorised:
            P = np.array(self.points, dtype=np.int64)
            for ln in self.lines:
                acc = F.vmul(np.full(n, ln[0], dtype=np.int64), P[:, 0])
                acc = F.vadd(acc, F.vmul(np.full(n, ln[1], dtype=np.int64), P[:, 1]))
                acc = F.vadd(acc, F.vmul(np.full(n, ln[2], dtype=np.int64), P[:, 2]))
                line_points.append(np.flatnonzero(acc == 0).tolist())
            self.coords = P
        else:
            for ln in self.lines:
                pts = []
                for i, pt in enumerate(self.points):
                    if dot(F, ln, pt) == 0:
                        pts.append(i)
                line_points.append(pts)
            self.coords = np.array(self.points, dtype=np.int64)
        assert all(len(lp) == q + 1 for lp in line_points)
        point_lines = [[] for _ in range(n)]
        for li, pts in enumerate(line_points):
            for pi in pts:
                point_lines[pi].append(li)
        self.line_points = line_points
        self.point_lines = point_lines
        self.point_masks = [sum(1 << li for li in pl) for pl in point_lines]
        self.line_masks = [sum(1 << pi for pi in lp) for lp in line_points]

    # -- lookups -------------------------------------------------------------

    def point_id(self, v) -> int:
        return triple_id(self.q, normalize(self.F, v))

    def line_id(self, v) -> int:
        return triple_id(self.q, normalize(self.F, v))

    def point(self, i: int) -> Point:
        return self.points[i]

    def line(self, i: int) -> Line:
        return self.lines[i]

    @property
    def join(self):
        """``join[a][b]`` is the id of the line through points a != b."""
        if self._join is None:
            n = self.n
            table = [[-1] * n for _ in range(n)]
            for li, pts in enumerate(self.line_points):
                for a in pts:
                    row = table[a]
                    for b in pts:
                        row[b] = li
            for a in range(n):
                table[a][a] = -1
            self._join = table
        return self._join

    def join_id(self, a: int, b: int) -> int:
        if a == b:
            raise EqualPoints("a line needs two distinct points")
        if self._join is not None:
            return self._join[a][b]
        return self.line_id(linalg.cross(self.F, self.points[a], self.points[b]))

    def meet_id(self, l1: int, l2: int) -> int:
        if l1 == l2:
            raise EqualPoints("two distinct lines needed")
        return self.point_id(linalg.cross(self.F, self.lines[l1], self.lines[l2]))

    def incident(self, pid: int, lid: int) -> bool:
        return (self.point_masks[pid] >> lid) & 1 == 1

    def collinear(self, a: int, b: int, c: int) -> bool:
        P = self.points
        return linalg.det3(self.F, P[a], P[b], P[c]) == 0

    def apply(self, matrix, pid: int) -> int:
        return self.point_id(linalg.matvec(self.F, matrix, self.points[pid]))

    def __repr__(self):
        return f"Plane(PG(2,{self.q}) over {self.F!r})"


@functools.lru_cache(maxsize=None)
def plane_for(F: GF) -> Plane:
    return Plane(F)


def plane(q: int) -> Plane:
    return plane_for(make_field(q))


def dot(F: GF, a, b) -> int:
    mul, add = F.mul, F.add
    return add(add(mul(a[0], b[0]), mul(a[1], b[1])), mul(a[2], b[2]))


def enumerate_points(F: GF) -> list[Point]:
    return list(plane_for(F).points)


def enumerate_lines(F: GF) -> list[Line]:
    return list(plane_for(F).lines)


def line_through(F: GF, a, b) -> Line:
    """Line joining two points, as the normalized cross product."""
    na, nb = normalize(F, a), normalize(F, b)
    if na == nb:
        raise EqualPoints(f"{a} and {b} are the same point")
    return Line(*normalize(F, linalg.cross(F, na, nb)))


def det3(F: GF, a, b, c) -> int:
    return linalg.det3(F, a, b, c)


@dataclass(frozen=True)
class ProjFrame:
    """Basis of GF(q)^3 given by three fixed vectors.

    ``matrix`` has the basis vectors as columns, so plane coordinates are
    ``matrix @ frame_coords``.
    """

    F: GF
    x: FixedVector
    y: FixedVector
    z: FixedVector
    matrix: tuple
    inverse: tuple

    @classmethod
    def from_vectors(cls, F: GF, x, y, z) -> "ProjFrame":
        m = linalg.transpose((tuple(x), tuple(y), tuple(z)))
        if linalg.det3(F, x, y, z) == 0:
            raise DegenerateFrame("frame vectors are linearly dependent")
        inv = linalg.inverse3(F, m)
        return cls(F, FixedVector(*x), FixedVector(*y), FixedVector(*z), m, inv)

    def to_frame(self, v) -> FixedVector:
        return FixedVector(*linalg.matvec(self.F, self.inverse, v))

    def from_frame(self, c) -> FixedVector:
        return FixedVector(*linalg.matvec(self.F, self.matrix, c))


def to_frame(v, frame: ProjFrame) -> FixedVector:
    return frame.to_frame(v)


def from_frame(c, frame: ProjFrame) -> FixedVector:
    return frame.from_frame(c)


# -- collineations -----------------------------------------------------------

@dataclass(frozen=True)
class Collineation:
    """Element of PGL(3,q) as a normalized invertible matrix acting on
    column vectors."""

    F: GF
    matrix: tuple

    @classmethod
    def from_matrix(cls, F: GF, m) -> "Collineation":
        m = tuple(tuple(r) for r in m)
        if linalg.det3(F, *m) == 0:
            raise ValueError("singular matrix")
        flat = normalize(F, [c for r in m for c in r])
        return cls(F, tuple(tuple(flat[3 * i: 3 * i + 3]) for i in range(3)))

    def __call__(self, v) -> Point:
        return Point(*normalize(self.F, linalg.matvec(self.F, self.matrix, v)))

    def apply_line(self, ln) -> Line:
        # lines transform by the inverse transpose
        inv_t = linalg.transpose(linalg.inverse3(self.F, self.matrix))
        return Line(*normalize(self.F, linalg.matvec(self.F, inv_t, ln)))

    def compose(self, other: "Collineation") -> "Collineation":
        """``self after other``."""
        return Collineation.from_matrix(self.F, linalg.matmul(self.F, self.matrix, other.matrix))

    def inverse(self) -> "Collineation":
        return Collineation.from_matrix(self.F, linalg.inverse3(self.F, self.matrix))


def random_collineation(F: GF, rng: random.Random) -> Collineation:
    while True:
        m = [[rng.randrange(F.q) for _ in range(3)] for _ in range(3)]
        if linalg.det3(F, *m):
            return Collineation.from_matrix(F, m)


def pgl3_order(q: int) -> int:
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


def iter_pgl3(F: GF):
    """All matrices of PGL(3,q), normalized."""
    q = F.q
    for flat in itertools.product(range(q), repeat=9):
        first = next((c for c in flat if c), 0)
        if first != 1:
            continue
        m = (flat[0:3], flat[3:6], flat[6:9])
        if linalg.det3(F, *m):
            yield m


def frame_map(F: GF, a, b, c, d):
    """Matrix sending a, b, c, d to e1, e2, e3, (1,1,1) projectively."""
    m = linalg.transpose((a, b, c))
    if linalg.det3(F, a, b, c) == 0:
        raise DegenerateFrame("first three points are collinear")
    lam = linalg.solve(F, m, d)
    if not all(lam):
        raise DegenerateFrame("points not in general position")
    scaled = linalg.transpose(tuple(tuple(F.mul(l, t) for t in v) for l, v in zip(lam, (a, b, c))))
    return linalg.inverse3(F, scaled)


# -- canonical forms -----------------------------------------------------------

DEFAULT_BUDGET = 400_000


def _point_invariants(P: Plane, S: Sequence[int]):
    """Per-point sorted tuple of |line cap S| over lines through the point."""
    members = set(S)
    counts = {}
    for li, pts in enumerate(P.line_points):
        c = sum(1 for p in pts if p in members)
        if c:
            counts[li] = c
    inv = {}
    for p in S:
        inv[p] = tuple(sorted((counts[li] for li in P.point_lines[p] if counts.get(li, 0) > 1), reverse=True))
    spectrum = tuple(sorted(counts.values()))
    return inv, spectrum


def hash_key(P: Plane, S: Sequence[int]) -> tuple:
    """PGL-invariant (but not complete) key: spectrum plus point profiles."""
    inv, spectrum = _point_invariants(P, S)
    return ("hash", len(S), spectrum, tuple(sorted(inv.values())))


def canonical_labeling(P: Plane, S: Sequence[int], budget: int = DEFAULT_BUDGET):
    """Canonical key of ``S`` and the point maps achieving it.

    For sets containing four points in general position, the key is the
    least sorted image of ``S`` over all ordered frames of ``S`` whose
    point-invariant signature is minimal, mapped onto the standard frame.
    This is a complete invariant: two sets get equal keys iff they are
    projectively equivalent.  Sets without a frame fall back to enumerating
    PGL(3,q) when its order fits in ``budget``.

    Returns ``(key, maps)`` where each map is a dict from ``S`` onto the
    canonical image.
    """
    S = sorted(S)
    F = P.F
    inv, spectrum = _point_invariants(P, S)
    pts = P.points
    general = []
    coll = {}

    def is_coll(a, b, c):
        k = (a, b, c) if a < b < c else tuple(sorted((a, b, c)))
        r = coll.get(k)
        if r is None:
            r = linalg.det3(F, pts[a], pts[b], pts[c]) == 0
            coll[k] = r
        return r

    best_sig = None
    for quad in itertools.permutations(S, 4):
        sig = (inv[quad[0]], inv[quad[1]], inv[quad[2]], inv[quad[3]])
        if best_sig is not None and sig > best_sig:
            continue
        a, b, c, d = quad
        if is_coll(a, b, c) or is_coll(a, b, d) or is_coll(a, c, d) or is_coll(b, c, d):
            continue
        if best_sig is None or sig < best_sig:
            best_sig = sig
            general = [quad]
        else:
            general.append(quad)

    if general:
        if len(general) > budget:
            raise BudgetExceeded(f"{len(general)} frames exceed budget {budget}")
        best = None
        maps = []
        for a, b, c, d in general:
            g = frame_map(F, pts[a], pts[b], pts[c], pts[d])
            image = {s: P.apply(g, s) for s in S}
            key = tuple(sorted(image.values()))
            if best is None or key < best:
                best = key
                maps = [image]
            elif key == best:
                maps.append(image)
        return ("frame", len(S), spectrum, best_sig, best), maps

    order = pgl3_order(P.q)
    if order > budget:
        raise BudgetExceeded(f"|PGL(3,{P.q})| = {order} exceeds budget {budget}")
    best = None
    maps = []
    for g in iter_pgl3(F):
        image = {s: P.apply(g, s) for s in S}
        key = tuple(sorted(image.values()))
        if best is None or key < best:
            best = key
            maps = [image]
        elif key == best:
            maps.append(image)
    return ("group", len(S), best), maps


def canonicalize_set(P: Plane, S: Sequence[int], budget: int = DEFAULT_BUDGET, mode: str = "full"):
    """Canonical key of a point set (ids).  ``mode="hash"`` returns the
    cheap invariant key; ``mode="auto"`` falls back to it over budget."""
    if mode == "hash":
        return hash_key(P, S)
    try:
        return canonical_labeling(P, S, budget)[0]
    except BudgetExceeded:
        if mode == "auto":
            return hash_key(P, S)
        raise


# -- point-set files -----------------------------------------------------------

def read_point_file(path) -> tuple[GF, list[Point]]:
    with open(path) as fh:
        return parse_point_text(fh.read())


def parse_point_text(text: str) -> tuple[GF, list[Point]]:
    F = None
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if F is None:
            F = _parse_header(tokens, lineno)
            continue
        if len(tokens) != 3:
            raise ParseError(f"expected 3 coordinates, got {len(tokens)}", lineno)
        try:
            v = [F.parse(t) for t in tokens]
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from exc
        if not any(v):
            raise ParseError("zero vector is not a point", lineno)
        points.append(Point(*normalize(F, v)))
    if F is None:
        raise ParseError("missing 'q <p> <e>' header")
    return F, points


def _parse_header(tokens, lineno) -> GF:
    """``q <p> <e> [modulus <c0:c1:...>]`` or the short ``q <order>``."""
    if tokens[0] != "q" or len(tokens) not in (2, 3, 5):
        raise ParseError("header must be 'q <p> <e> [modulus <c0:c1:...>]' or 'q <order>'", lineno)
    if len(tokens) == 2:
        try:
            return make_field(int(tokens[1]))
        except ValueError as exc:
            raise ParseError(f"bad field order: {exc}", lineno) from exc
    try:
        p, e = int(tokens[1]), int(tokens[2])
        modulus = None
        if len(tokens) == 5:
            if tokens[3] != "modulus":
                raise ParseError("expected 'modulus'", lineno)
            modulus = tuple(int(c) for c in tokens[4].split(":"))
    except ValueError as exc:
        raise ParseError(f"bad header: {exc}", lineno) from exc
    try:
        if modulus is None:
            return make_field(p ** e)
        F = GF(p, e, modulus)
        return make_field(p ** e, F.modulus)
    except Exception as exc:
        raise ParseError(f"bad field: {exc}", lineno) from exc


def format_point_text(F: GF, points, comment: str | None = None) -> str:
    head = f"q {F.p} {F.e}"
    if F.modulus is not None:
        head += f" modulus {F.format_modulus()}"
    lines = [head]
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    for pt in points:
        lines.append(" ".join(F.format(c) for c in pt))
    return "\n".join(lines) + "\n"


def write_point_file(path, F: GF, points, comment: str | None = None):
    with open(path, "w") as fh:
        fh.write(format_point_text(F, points, comment))


def check_field(F: GF, expected: GF):
    if F != expected:
        raise FieldMismatch(f"{F!r} does not match {expected!r}")

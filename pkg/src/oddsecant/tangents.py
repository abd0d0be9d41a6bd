"""The scaled lemma-of-tangents system and the sextic curves it produces.

For a point x with exactly one tangent and one 3-secant, ``f_x`` and
``g_x`` are linear forms whose kernels are those two lines.  After fixing a
base point e and rescaling so that ``f_x(e) = f_e(x)`` and
``g_x(e) = g_e(x)``, the products ``f_x(y) g_y(x)`` and ``f_y(x) g_x(y)``
differ exactly by a sign.  Everything here evaluates on fixed vectors, never
on normalized projective points, since the scalings depend on the chosen
representatives.

The sign identity is proved with x, y and e as a basis, so it holds for
x, y in S' other than e; at x = e it would force 2 f_e(y) g_e(y) = 0.  The
base point is therefore a reference only and every check runs over
``active``, the points of S' other than e.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import (
    HypothesisFailed,
    InvalidParams,
    MultiplicityMismatch,
    NotS43,
    ScalingDegenerate,
    TangentConeMismatch,
)
from .field import GF
from .plane import FixedVector, ProjFrame, normalize
from .poly import (
    GammaReport,
    HomPoly,
    compute_gamma,
    conic_tangent,
    evaluate,
    fit_conic,
    multiplicity,
    proportional,
    taylor_part,
    vanishing_set,
)
from .secants import PointSet, SecantProfile, classify, line_signature, secant_profile


@dataclass(frozen=True)
class LinearForm:
    """A linear form with its scale; ``coeffs`` are never normalized."""

    F: GF
    coeffs: tuple[int, int, int]

    def __call__(self, v) -> int:
        F = self.F
        a = self.coeffs
        return F.add(F.add(F.mul(a[0], v[0]), F.mul(a[1], v[1])), F.mul(a[2], v[2]))

    def scaled(self, c: int) -> "LinearForm":
        return LinearForm(self.F, tuple(self.F.mul(c, a) for a in self.coeffs))

    def as_poly(self) -> HomPoly:
        return HomPoly.linear(self.F, self.coeffs)

    def in_frame(self, frame: ProjFrame) -> "LinearForm":
        """The same form in coordinates relative to the frame's basis."""
        return LinearForm(self.F, (self(frame.x), self(frame.y), self(frame.z)))

    def kernel(self) -> tuple[int, int, int]:
        return normalize(self.F, self.coeffs)


@dataclass
class ScaledTangentSystem:
    S: PointSet
    S_prime: tuple[int, ...]
    e: int
    fixed: dict[int, FixedVector]
    f: dict[int, LinearForm]
    g: dict[int, LinearForm]

    @property
    def F(self) -> GF:
        return self.S.F

    @property
    def active(self) -> tuple[int, ...]:
        return tuple(x for x in self.S_prime if x != self.e)

    def vec(self, pid: int) -> FixedVector:
        return self.fixed[pid]

    def fv(self, x: int, y: int) -> int:
        """f_x evaluated at the fixed vector of y."""
        return self.f[x](self.fixed[y])

    def gv(self, x: int, y: int) -> int:
        return self.g[x](self.fixed[y])

    def with_f(self, x: int, form: LinearForm) -> "ScaledTangentSystem":
        f = dict(self.f)
        f[x] = form
        return ScaledTangentSystem(self.S, self.S_prime, self.e, self.fixed, f, self.g)

    def with_g(self, x: int, form: LinearForm) -> "ScaledTangentSystem":
        g = dict(self.g)
        g[x] = form
        return ScaledTangentSystem(self.S, self.S_prime, self.e, self.fixed, self.f, g)


def _require_odd(F: GF):
    if F.p == 2:
        raise InvalidParams("the tangent machinery needs q odd")


def base_forms(S: PointSet, x: int, profile: SecantProfile | None = None):
    """Unscaled (f_x, g_x) for a point with one tangent and one 3-secant."""
    if profile is None:
        profile = secant_profile(S)
    P = S.plane
    sig = line_signature(S, profile, x)
    if sig.get(1, 0) != 1 or sig.get(3, 0) != 1 or sig.get(2, 0) != P.q - 1:
        raise NotS43(f"point {x} is not incident with one tangent, one 3-secant and q-1 bisecants")
    tan = next(li for li in P.point_lines[x] if profile.counts[li] == 1)
    three = next(li for li in P.point_lines[x] if profile.counts[li] == 3)
    return LinearForm(S.F, tuple(P.lines[tan])), LinearForm(S.F, tuple(P.lines[three]))


def build_system(S: PointSet, S_prime: Sequence[int], e: int | None = None) -> ScaledTangentSystem:
    """Scale tangent and 3-secant forms of ``S_prime`` relative to ``e``."""
    F = S.F
    _require_odd(F)
    S_prime = tuple(S_prime)
    if e is None:
        e = S_prime[0]
    if e not in S_prime:
        raise ValueError("base point must belong to S'")
    profile = secant_profile(S)
    fixed = {x: S.vector(x) for x in S_prime}
    f0, g0 = {}, {}
    for x in S_prime:
        f0[x], g0[x] = base_forms(S, x, profile)
    f = {e: f0[e]}
    g = {e: g0[e]}
    ve = fixed[e]
    for x in S_prime:
        if x == e:
            continue
        vx = fixed[x]
        for base, out, name in ((f0, f, "f"), (g0, g, "g")):
            num = base[e](vx)
            den = base[x](ve)
            if num == 0 or den == 0:
                raise ScalingDegenerate(f"cannot scale {name}_{x}: base point lies on a kernel")
            out[x] = base[x].scaled(F.div(num, den))
    return ScaledTangentSystem(S, S_prime, e, fixed, f, g)


def build_system_any(S: PointSet, S_prime: Sequence[int]) -> ScaledTangentSystem:
    """Try every base point of S' in order until the scaling is defined."""
    last = None
    for e in S_prime:
        try:
            return build_system(S, S_prime, e)
        except ScalingDegenerate as exc:
            last = exc
    raise last if last else ValueError("empty S'")


# -- the sign identity ---------------------------------------------------------------

def segre_failures(sys: ScaledTangentSystem) -> list[tuple[int, int]]:
    F = sys.F
    bad = []
    for x in sys.active:
        for y in sys.active:
            lhs = F.mul(sys.fv(x, y), sys.gv(y, x))
            rhs = F.neg(F.mul(sys.fv(y, x), sys.gv(x, y)))
            if lhs != rhs:
                bad.append((x, y))
    return bad


def check_segre(sys: ScaledTangentSystem) -> bool:
    return not segre_failures(sys)


# -- b-forms and their identities -----------------------------------------------------

@dataclass(frozen=True)
class BForm:
    poly: HomPoly
    pair: tuple[int, int]

    def __call__(self, v) -> int:
        return evaluate(self.poly, v)


def bpoly(f: dict, g: dict, x: int, y: int) -> HomPoly:
    """f_x g_y - g_x f_y from dicts of LinearForms."""
    return f[x].as_poly() * g[y].as_poly() - g[x].as_poly() * f[y].as_poly()


def bform(sys: ScaledTangentSystem, x: int, y: int) -> BForm:
    return BForm(bpoly(sys.f, sys.g, x, y), (x, y))


def check_identities(sys: ScaledTangentSystem, x: int, y: int, z: int, s: int) -> bool:
    """Both cyclic identities as polynomial identities (every coefficient)."""
    return _identities_vanish(sys.f, sys.g, x, y, z, s)


def _identities_vanish(f, g, x, y, z, s) -> bool:
    def b(u, v):
        return bpoly(f, g, u, v)

    def G(u):
        return g[u].as_poly()

    one = G(x) * b(y, z) + G(y) * b(z, x) + G(z) * b(x, y)
    two = b(x, s) * b(y, z) + b(y, s) * b(z, x) + b(z, s) * b(x, y)
    return one.is_zero() and two.is_zero()


def check_gfunc(sys: ScaledTangentSystem, w: int, x: int, y: int, z: int) -> bool:
    F = sys.F
    vw, vx, vy, vz = (sys.vec(u) for u in (w, x, y, z))
    lhs = F.mul(
        F.mul(linalg.det3(F, vw, vx, vz), sys.gv(w, y)),
        F.mul(sys.gv(z, w), bform(sys, y, x)(vw)),
    )
    rhs = F.mul(
        F.mul(linalg.det3(F, vw, vx, vy), sys.gv(w, z)),
        F.mul(sys.gv(y, w), bform(sys, z, x)(vw)),
    )
    return lhs == rhs


def box_failures(sys: ScaledTangentSystem) -> list[tuple[int, int, int]]:
    """Triples of distinct active points with b_xy(z) = 0."""
    bad = []
    for x, y in itertools.permutations(sys.active, 2):
        b = bform(sys, x, y)
        for z in sys.active:
            if z not in (x, y) and b(sys.vec(z)) == 0:
                bad.append((x, y, z))
    return bad


# -- the sextic -----------------------------------------------------------------------

def _sextic(f, g, quad, s_coords, coord_forms) -> HomPoly:
    x, y, z, s = quad
    s1, s2, s3 = s_coords
    c1, c2, c3 = coord_forms

    def b(u, v):
        return bpoly(f, g, u, v)

    return (
        (b(x, s) * b(y, z) * c2 * c3).scale(s1)
        + (b(y, s) * b(z, x) * c1 * c3).scale(s2)
        + (b(z, s) * b(x, y) * c1 * c2).scale(s3)
    )


@dataclass
class PsiCurve:
    """The sextic attached to an ordered quadruple (x, y, z, s) of S'.

    ``poly`` is in coordinates relative to the basis of fixed vectors x, y, z;
    ``plane_poly`` is the same curve in the plane's coordinates.
    """

    sys: ScaledTangentSystem
    quad: tuple[int, int, int, int]
    frame: ProjFrame
    s_coords: tuple[int, int, int]
    poly: HomPoly
    _plane_poly: HomPoly | None = field(default=None, repr=False)

    @property
    def plane_poly(self) -> HomPoly:
        if self._plane_poly is None:
            self._plane_poly = psi_plane(self.sys, *self.quad)
        return self._plane_poly

    def frame_forms(self, u: int) -> tuple[LinearForm, LinearForm]:
        return self.sys.f[u].in_frame(self.frame), self.sys.g[u].in_frame(self.frame)

    def frame_coords(self, u: int) -> FixedVector:
        return self.frame.to_frame(self.sys.vec(u))

    def vanishing_ids(self) -> list[int]:
        return vanishing_set(self.plane_poly, self.sys.S.plane)


def _frame_for(sys: ScaledTangentSystem, x, y, z) -> ProjFrame:
    return ProjFrame.from_vectors(sys.F, sys.vec(x), sys.vec(y), sys.vec(z))


def build_psi(sys: ScaledTangentSystem, x: int, y: int, z: int, s: int) -> PsiCurve:
    _require_odd(sys.F)
    if len({x, y, z, s}) != 4:
        raise ValueError("psi needs four distinct points")
    frame = _frame_for(sys, x, y, z)
    F = sys.F
    quad = (x, y, z, s)
    f = {u: sys.f[u].in_frame(frame) for u in quad}
    g = {u: sys.g[u].in_frame(frame) for u in quad}
    s_coords = tuple(frame.to_frame(sys.vec(s)))
    coords = [HomPoly.variable(F, i) for i in range(3)]
    poly = _sextic(f, g, quad, s_coords, coords)
    return PsiCurve(sys, quad, frame, s_coords, poly)


def psi_plane(sys: ScaledTangentSystem, x: int, y: int, z: int, s: int) -> HomPoly:
    """The sextic written directly in plane coordinates: the frame
    coordinates are the rows of the inverse frame matrix."""
    frame = _frame_for(sys, x, y, z)
    F = sys.F
    s_coords = tuple(frame.to_frame(sys.vec(s)))
    coords = [HomPoly.linear(F, frame.inverse[i]) for i in range(3)]
    return _sextic(sys.f, sys.g, (x, y, z, s), s_coords, coords)


def psi_vanishes_on_S_prime(curve: PsiCurve) -> list[int]:
    """Active points where the sextic fails to vanish (should be empty)."""
    return [w for w in curve.sys.active if evaluate(curve.poly, curve.frame_coords(w)) != 0]


def x1_4_x2_2_coefficient(curve: PsiCurve) -> int:
    return curve.poly.terms.get((4, 2, 0), 0)


def permutation_vanishing_sets(sys: ScaledTangentSystem, quad) -> dict[tuple, frozenset]:
    """Vanishing sets (plane point ids) for all 24 orderings of ``quad``."""
    out = {}
    P = sys.S.plane
    for perm in itertools.permutations(quad):
        out[perm] = frozenset(vanishing_set(psi_plane(sys, *perm), P))
    return out


def permutation_ratios(sys: ScaledTangentSystem, quad) -> dict[tuple, int | None]:
    """Scalar c with psi_perm = c psi_quad in plane coordinates, if any."""
    base = psi_plane(sys, *quad)
    return {perm: proportional(psi_plane(sys, *perm), base) for perm in itertools.permutations(quad)}


# -- double points ---------------------------------------------------------------------

@dataclass
class DoublePointReport:
    point: int
    multiplicity: int
    cone: HomPoly
    cone_ratio: int | None
    quartic_ok: bool

    @property
    def ok(self) -> bool:
        return self.multiplicity == 2 and bool(self.cone_ratio) and self.quartic_ok


def quartic_blocks(curve: PsiCurve) -> HomPoly:
    """The predicted terms of degree >= 4 in one of the frame variables."""
    sys = curve.sys
    F = sys.F
    x, y, z, s = curve.quad
    s1, s2, s3 = curve.s_coords
    total = HomPoly.zero(F, 6)
    for idx, (u, (v, w), (a, b)) in enumerate((
        (x, (z, y), (s2, s3)),
        (y, (x, z), (s1, s3)),
        (z, (y, x), (s1, s2)),
    )):
        fu, gu = curve.frame_forms(u)
        ratio = F.div(sys.gv(s, u), sys.gv(u, s))
        c = F.mul(F.mul(F.from_int(2), F.mul(a, b)), F.mul(bform(sys, v, w)(sys.vec(u)), ratio))
        mono = [0, 0, 0]
        mono[idx] = 4
        total = total + (fu.as_poly() * gu.as_poly() * HomPoly.monomial(F, mono)).scale(c)
    return total


def high_degree_part(f: HomPoly, k: int = 4) -> HomPoly:
    return HomPoly(f.F, f.degree, {m: c for m, c in f.terms.items() if max(m) >= k})


def double_point_check(curve: PsiCurve, u: int, strict: bool = False) -> DoublePointReport:
    """Multiplicity and tangent cone of the sextic at u in {x, y, z, s}."""
    if u not in curve.quad:
        raise ValueError("u must be one of the four construction points")
    v = curve.frame_coords(u)
    mult = multiplicity(curve.poly, v)
    cone = taylor_part(curve.poly, v, 2)
    fu, gu = curve.frame_forms(u)
    ratio = proportional(cone, fu.as_poly() * gu.as_poly())
    quartic_ok = high_degree_part(curve.poly) == quartic_blocks(curve)
    report = DoublePointReport(u, mult, cone, ratio, quartic_ok)
    if strict:
        if mult != 2:
            raise MultiplicityMismatch(f"multiplicity {mult} at {u}")
        if not ratio:
            raise TangentConeMismatch(f"tangent cone at {u} is not f_u g_u")
    return report


def multiplicity_at(curve: PsiCurve, w: int) -> int:
    return multiplicity(curve.poly, curve.frame_coords(w))


# -- concurrency of 3-secant lines -----------------------------------------------------

@dataclass
class ConcurrencyResult:
    triple: tuple[int, int, int]
    special: bool
    point: int | None
    formula_point: int | None
    formula_ok: bool
    ok: bool


def gsconcur_check(S: PointSet, conic: HomPoly, x: int, y: int, z: int,
                   profile: SecantProfile | None = None) -> ConcurrencyResult:
    """Concurrency of the three 3-secant lines at points of a conic whose
    tangents there are the tangents of S."""
    F = S.F
    _require_odd(F)
    if profile is None:
        profile = secant_profile(S)
    P = S.plane
    triple = (x, y, z)
    f, g, vec = {}, {}, {}
    for u in triple:
        f[u], g[u] = base_forms(S, u, profile)
        vec[u] = S.vector(u)
        if evaluate(conic, vec[u]) != 0:
            raise HypothesisFailed(f"point {u} is not on the conic")
        tan = conic_tangent(conic, vec[u])
        if not any(tan) or normalize(F, tan) != f[u].kernel():
            raise HypothesisFailed(f"conic tangent at {u} is not the tangent of S")
    lines = {u: P.line_id(g[u].coeffs) for u in triple}

    # special case: two of the points share their 3-secant
    for a, b, c in ((x, y, z), (x, z, y), (y, z, x)):
        if lines[a] == lines[b]:
            third = [p for p in P.line_points[lines[a]] if p in set(S.ids) and p not in (a, b)]
            ok = len(third) == 1 and g[c](S.vector(third[0])) == 0
            return ConcurrencyResult(triple, True, third[0] if third else None, None, False, ok)

    meet = P.meet_id(lines[x], lines[y])
    concurrent = P.incident(meet, lines[z])
    frame = ProjFrame.from_vectors(F, vec[x], vec[y], vec[z])
    gxy, gxz = g[x](vec[y]), g[x](vec[z])
    gyx, gyz = g[y](vec[x]), g[y](vec[z])
    pf = (F.mul(gyz, gxy), F.mul(gxz, gyx), F.neg(F.mul(gxy, gyx)))
    formula_point = None
    formula_ok = False
    if any(pf):
        pv = frame.from_frame(pf)
        formula_point = P.point_id(pv)
        formula_ok = all(g[u](pv) == 0 for u in triple)
    return ConcurrencyResult(triple, False, meet, formula_point, formula_ok,
                             concurrent and formula_ok and formula_point == meet)


# -- larger sets: products of secant forms ------------------------------------------------

@dataclass
class GeneralSystem:
    S: PointSet
    t: int
    S_prime: tuple[int, ...]
    e: int
    fixed: dict[int, FixedVector]
    f: dict[int, HomPoly]
    g: dict[int, HomPoly]

    @property
    def active(self) -> tuple[int, ...]:
        return tuple(x for x in self.S_prime if x != self.e)

    def fv(self, x, y):
        return evaluate(self.f[x], self.fixed[y])

    def gv(self, x, y):
        return evaluate(self.g[x], self.fixed[y])


def general_forms(S: PointSet, x: int, profile: SecantProfile) -> tuple[HomPoly, HomPoly]:
    """f_x: the tangent form (or 1); g_x: product of i-secant forms, each
    to the power i - 2, over the lines through x with i >= 3 points."""
    F = S.F
    P = S.plane
    f = HomPoly.constant(F)
    g = HomPoly.constant(F)
    for li in P.point_lines[x]:
        c = profile.counts[li]
        form = HomPoly.linear(F, P.lines[li])
        if c == 1:
            f = form
        elif c >= 3:
            g = g * form ** (c - 2)
    return f, g


def build_general_system(S: PointSet, t: int, S_prime: Sequence[int] | None = None,
                         e: int | None = None) -> GeneralSystem:
    F = S.F
    _require_odd(F)
    profile = secant_profile(S)
    if S_prime is None:
        S_prime = classify(S, t, profile).S_prime
    S_prime = tuple(S_prime)
    if e is None:
        e = S_prime[0]
    fixed = {x: S.vector(x) for x in S_prime}
    f0, g0 = {}, {}
    for x in S_prime:
        f0[x], g0[x] = general_forms(S, x, profile)
    f = {e: f0[e]}
    g = {e: g0[e]}
    for x in S_prime:
        if x == e:
            continue
        for base, out, name in ((f0, f, "f"), (g0, g, "g")):
            num = evaluate(base[e], fixed[x])
            den = evaluate(base[x], fixed[e])
            if num == 0 or den == 0:
                raise ScalingDegenerate(f"cannot scale {name}_{x}")
            out[x] = base[x].scale(F.div(num, den))
    return GeneralSystem(S, t, S_prime, e, fixed, f, g)


def segre_general_failures(sys: GeneralSystem) -> list[tuple[int, int]]:
    F = sys.S.F
    sign = 1 if sys.t % 2 == 0 else F.neg(1)
    bad = []
    for x in sys.active:
        for y in sys.active:
            lhs = F.mul(sys.fv(x, y), sys.gv(y, x))
            rhs = F.mul(sign, F.mul(sys.fv(y, x), sys.gv(x, y)))
            if lhs != rhs:
                bad.append((x, y))
    return bad


def check_segre_general(S: PointSet, t: int, S_prime: Sequence[int] | None = None,
                        e: int | None = None) -> bool:
    return not segre_general_failures(build_general_system(S, t, S_prime, e))


# -- the common component of the sextics ------------------------------------------------

def all_psi_plane(sys: ScaledTangentSystem) -> dict[tuple, HomPoly]:
    """One sextic per 4-subset of the active points (s the largest id)."""
    return {quad: psi_plane(sys, *quad) for quad in itertools.combinations(sys.active, 4)}


def gamma_for_system(sys: ScaledTangentSystem, conic: HomPoly | None = None,
                     trials: int = 50, seed: int = 0) -> GammaReport:
    if len(sys.active) < 5:
        raise ValueError("the sextic span needs at least 5 active points")
    psis = list(all_psi_plane(sys).values())
    if conic is None:
        fit = fit_conic(sys.F, [sys.vec(x) for x in sys.active[:5]])
        conic = fit.poly
    return compute_gamma(psis, conic=conic, trials=trials, seed=seed)

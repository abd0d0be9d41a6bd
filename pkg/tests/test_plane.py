import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddsecant.errors import BudgetExceeded, DegenerateFrame, EqualPoints, FieldMismatch, ParseError
from oddsecant.field import field
from oddsecant.plane import (
    Collineation,
    ProjFrame,
    canonical_labeling,
    canonicalize_set,
    check_field,
    det3,
    enumerate_lines,
    enumerate_points,
    format_point_text,
    frame_map,
    hash_key,
    iter_pgl3,
    parse_point_text,
    pgl3_order,
    plane_for,
    random_collineation,
)
from oddsecant.search import conic_points

from oracles import NaiveField, naive_points


@pytest.mark.parametrize("q,n", [(2, 7), (3, 13), (5, 31), (9, 91)])
def test_counts(q, n):
    F = field(q)
    assert len(enumerate_points(F)) == n
    assert len(enumerate_lines(F)) == n


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_incidence_matches_dot_products(q):
    F = field(q)
    P = plane_for(F)
    N = NaiveField(F.p, F.e, F.modulus)
    assert sorted(map(tuple, P.points)) == sorted(naive_points(N))
    for li, ln in enumerate(P.lines):
        pts = [pid for pid, v in enumerate(P.points) if N.dot(ln, v) == 0]
        assert sorted(P.line_points[li]) == pts
        assert len(pts) == q + 1
    for pid in range(P.n):
        assert len(P.point_lines[pid]) == q + 1


def test_enumeration_order():
    P = plane_for(field(3))
    assert P.points[0] == (1, 0, 0)
    assert P.points[1 * 3 + 2] == (1, 1, 2)
    assert P.points[9] == (0, 1, 0)
    assert P.points[12] == (0, 0, 1)


def test_line_through_examples():
    from oddsecant.plane import line_through

    F = field(5)
    assert line_through(F, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert line_through(F, (1, 1, 1), (1, 2, 3)) == (1, 3, 1)
    with pytest.raises(EqualPoints):
        line_through(F, (1, 0, 0), (1, 0, 0))
    with pytest.raises(EqualPoints):
        line_through(F, (1, 2, 0), (2, 4, 0))


def test_join_meet():
    P = plane_for(field(7))
    rng = random.Random(0)
    for _ in range(200):
        a, b = rng.sample(range(P.n), 2)
        li = P.join_id(a, b)
        assert P.incident(a, li) and P.incident(b, li)
        assert P.meet_id(*P.point_lines[a][:2]) == a
    with pytest.raises(EqualPoints):
        P.join_id(3, 3)


def test_det3_examples():
    F = field(5)
    assert det3(F, (1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1
    assert det3(F, (1, 2, 3), (0, 1, 4), (0, 1, 4)) == 0
    assert det3(F, (1, 0, 0), (0, 1, 0), (1, 1, 2)) == 2


def test_frames():
    F = field(7)
    fr = ProjFrame.from_vectors(F, (1, 2, 3), (0, 1, 5), (2, 2, 1))
    assert fr.to_frame(fr.x) == (1, 0, 0)
    s = tuple(F.add(a, b) for a, b in zip(fr.x, fr.y))
    assert fr.to_frame(s) == (1, 1, 0)
    for v in [(3, 4, 5), (0, 0, 1), (6, 6, 6)]:
        assert fr.from_frame(fr.to_frame(v)) == v
    with pytest.raises(DegenerateFrame):
        ProjFrame.from_vectors(F, (1, 0, 0), (0, 1, 0), (1, 1, 0))


def test_frame_map_standard():
    F = field(5)
    P = plane_for(F)
    pts = [(1, 2, 0), (0, 1, 1), (1, 0, 4), (1, 1, 1)]
    g = frame_map(F, *pts)
    images = [P.points[P.apply(g, P.point_id(v))] for v in pts]
    assert images == [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    with pytest.raises(DegenerateFrame):
        frame_map(F, (1, 2, 0), (0, 1, 1), (1, 0, 3), (1, 1, 1))


@pytest.mark.parametrize("q", [3, 4, 5, 9])
def test_collineation_preserves_incidence(q):
    F = field(q)
    P = plane_for(F)
    rng = random.Random(q)
    for _ in range(5):
        g = random_collineation(F, rng)
        for li in rng.sample(range(P.n), 5):
            img = P.line_id(g.apply_line(P.lines[li]))
            assert sorted(P.point_id(g(P.points[p])) for p in P.line_points[li]) == P.line_points[img]
        h = g.compose(g.inverse())
        assert all(h(v) == v for v in P.points[:10])


def test_pgl_order_small():
    assert pgl3_order(2) == 168
    assert sum(1 for _ in iter_pgl3(field(2))) == 168


def _image(P, g, ids):
    return [P.point_id(g(P.points[i])) for i in ids]


def test_canonical_frames_equal():
    P = plane_for(field(3))
    rng = random.Random(1)
    frames = []
    while len(frames) < 2:
        ids = rng.sample(range(P.n), 4)
        if not any(P.collinear(*c) for c in [ids[:3], ids[1:], ids[::2][:1] + ids[2:], ids[:2] + ids[3:]]):
            frames.append(ids)
    assert canonicalize_set(P, frames[0]) == canonicalize_set(P, frames[1])


@pytest.mark.parametrize("q", [5, 7, 9])
def test_canonical_invariant_under_collineations(q):
    F = field(q)
    P = plane_for(F)
    rng = random.Random(10 + q)
    for size in (5, 6, 8):
        ids = rng.sample(range(P.n), size)
        key = canonicalize_set(P, ids)
        for _ in range(4):
            assert canonicalize_set(P, _image(P, random_collineation(F, rng), ids)) == key


def test_canonical_separates_conic_from_three_secant():
    F = field(5)
    P = plane_for(F)
    conic = [P.point_id(v) for v in conic_points(F)]
    other = [P.point_id(v) for v in [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)]]
    assert canonicalize_set(P, conic) != canonicalize_set(P, other)


def test_canonical_is_complete_on_small_plane():
    # projectively equivalent iff keys agree, checked against brute-force orbits
    F = field(3)
    P = plane_for(F)
    group = [Collineation(F, m) for m in iter_pgl3(F)]
    rng = random.Random(3)
    sets = [tuple(sorted(rng.sample(range(P.n), 6))) for _ in range(12)]
    for a in sets:
        orbit = {tuple(sorted(_image(P, g, a))) for g in group}
        for b in sets:
            same = b in orbit
            assert (canonicalize_set(P, a) == canonicalize_set(P, b)) == same


def test_frameless_sets_use_group_or_budget():
    P = plane_for(field(3))
    line = P.line_points[0]
    key, maps = canonical_labeling(P, line[:3])
    assert key[0] == "group" and maps
    P7 = plane_for(field(7))
    with pytest.raises(BudgetExceeded):
        canonicalize_set(P7, P7.line_points[0][:4])
    assert canonicalize_set(P7, P7.line_points[0][:4], mode="auto") == hash_key(P7, P7.line_points[0][:4])


def test_point_file_roundtrip():
    F = field(9)
    pts = [(1, 3, 5), (0, 1, 8), (0, 0, 1)]
    text = format_point_text(F, pts, comment="three points")
    G, back = parse_point_text(text)
    assert G == F and back == pts
    G, short = parse_point_text("q 7\n1 2 3  # trailing comment\n\n2 4 6\n")
    assert G == field(7) and short == [(1, 2, 3), (1, 2, 3)]


@pytest.mark.parametrize("text,lineno", [
    ("q 5\n1 2\n", 2),
    ("q 5\n1 2 3\n1 7x 2\n", 3),
    ("q 5\n0 0 0\n", 2),
    ("p 5\n", 1),
    ("q 6\n", 1),
])
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_point_text(text)
    assert info.value.lineno == lineno


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        check_field(field(9), field(3 ** 2, (2, 2, 1)))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7, 9]), st.integers(0, 10 ** 6))
def test_three_random_points_collinear_iff_det_zero(q, seed):
    F = field(q)
    P = plane_for(F)
    rng = random.Random(seed)
    a, b, c = rng.sample(range(P.n), 3)
    assert P.collinear(a, b, c) == (det3(F, P.points[a], P.points[b], P.points[c]) == 0)

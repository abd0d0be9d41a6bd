"""Constructions and searches for point sets with few odd secants."""

from __future__ import annotations

import csv
import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidParams
from .field import GF
from .field import field as make_field
from .plane import DEFAULT_BUDGET, Plane, canonical_labeling, plane_for, read_point_file, check_field
from .secants import PointSet, odd_count

KINDS = ("conic_plus_external", "conic_plus_two_external", "arc", "hyperoval", "from_file")


# -- constructions --------------------------------------------------------------

def conic_points(F: GF) -> list[tuple[int, int, int]]:
    """The conic X2^2 = X1 X3 as (1, t, t^2) for t in field order, then (0, 0, 1)."""
    return [(1, t, F.mul(t, t)) for t in F.elements()] + [(0, 0, 1)]


def conic_tangent_lines(F: GF) -> list[int]:
    """Line ids of the tangents of the standard conic."""
    P = plane_for(F)
    two = F.from_int(2)
    lines = [P.line_id((F.mul(t, t), F.neg(F.mul(two, t)), 1)) for t in F.elements()]
    lines.append(P.line_id((1, 0, 0)))
    return lines


def external_points(F: GF) -> list[int]:
    """Ids (ascending) of points off the conic on exactly two of its tangents."""
    if F.p == 2:
        raise InvalidParams("external points need q odd")
    P = plane_for(F)
    on_conic = {P.point_id(v) for v in conic_points(F)}
    hits = [0] * P.n
    for li in conic_tangent_lines(F):
        for pid in P.line_points[li]:
            hits[pid] += 1
    return [pid for pid in range(P.n) if hits[pid] == 2 and pid not in on_conic]


def is_external(F: GF, v) -> bool:
    """Discriminant test: (a, b, c) is external to X2^2 = X1 X3 iff b^2 - ac
    is a nonzero square."""
    a, b, c = v
    d = F.sub(F.mul(b, b), F.mul(a, c))
    return d != 0 and F.is_square(d)


def nucleus(F: GF) -> tuple[int, int, int]:
    """Common point of all conic tangents (q even)."""
    if F.p != 2:
        raise InvalidParams("the conic has a nucleus only for q even")
    P = plane_for(F)
    tangents = conic_tangent_lines(F)
    common = set(P.line_points[tangents[0]])
    for li in tangents[1:]:
        common &= set(P.line_points[li])
    (pid,) = common
    return tuple(P.points[pid])


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    q: int = 0
    size: int | None = None
    path: str | None = None
    seed: int = 0


def construct(spec: ConstructionSpec, F: GF | None = None) -> PointSet:
    kind = spec.kind.replace("-", "_")
    if kind == "from_file":
        if spec.path is None:
            raise InvalidParams("from_file needs a path")
        G, points = read_point_file(spec.path)
        if F is not None:
            check_field(G, F)
        return PointSet.from_points(G, points)
    if kind not in KINDS:
        raise InvalidParams(f"unknown construction {spec.kind!r}")
    if F is None:
        try:
            F = make_field(spec.q)
        except ValueError as exc:
            raise InvalidParams(str(exc)) from None
    P = plane_for(F)
    conic = conic_points(F)
    if kind == "conic_plus_external":
        if F.p == 2:
            raise InvalidParams("conic plus external point needs q odd")
        ext = external_points(F)[0]
        return PointSet.from_points(F, conic + [P.points[ext]])
    if kind == "conic_plus_two_external":
        if F.p == 2:
            raise InvalidParams("conic plus external points needs q odd")
        a, b = external_points(F)[:2]
        return PointSet.from_points(F, conic + [P.points[a], P.points[b]])
    if kind == "arc":
        k = spec.size
        if k is None or not 0 <= k <= F.q + 1:
            raise InvalidParams(f"arc size must lie in [0, {F.q + 1}]")
        return PointSet.from_points(F, conic[:k])
    if kind == "hyperoval":
        if F.p != 2:
            raise InvalidParams("hyperovals exist only for q even")
        return PointSet.from_points(F, conic + [nucleus(F)])
    raise InvalidParams(f"unknown construction {spec.kind!r}")


# -- outcomes ---------------------------------------------------------------------

@dataclass
class SearchOutcome:
    q: int
    size: int
    mode: str
    min_o: int | None
    witness: tuple[int, ...]
    classes: int = 0
    evaluated: int = 0
    exhaustive: bool = False
    symmetry: bool = False
    seed: int | None = None
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self, with_time: bool = False) -> dict:
        d = {
            "q": self.q,
            "size": self.size,
            "mode": self.mode,
            "min_o": self.min_o,
            "witness": list(self.witness),
            "classes": self.classes,
            "evaluated": self.evaluated,
            "exhaustive": self.exhaustive,
            "symmetry": self.symmetry,
            "seed": self.seed,
        }
        d.update(self.extra)
        if with_time:
            d["seconds"] = round(self.seconds, 3)
        return d


CSV_FIELDS = ("q", "size", "mode", "min_o", "exhaustive", "witness_path", "seed", "seconds")


def write_minima_csv(path, rows: Iterable[tuple[SearchOutcome, str]]):
    """One row per (outcome, witness file path)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_FIELDS)
        for out, wpath in rows:
            w.writerow([out.q, out.size, out.mode, out.min_o, int(out.exhaustive), wpath,
                        "" if out.seed is None else out.seed, f"{out.seconds:.3f}"])


# -- exhaustive search ------------------------------------------------------------------

CHUNK = 200_000


def _combination_chunks(n: int, k: int, chunk: int = CHUNK):
    if k == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    it = itertools.combinations(range(n), k)
    dt = np.dtype((np.int64, k))
    while True:
        block = np.fromiter(itertools.islice(it, chunk), dtype=dt)
        if len(block) == 0:
            return
        yield block.reshape(-1, k)


def _line_masks_u64(P: Plane) -> np.ndarray:
    if P.n > 64:
        raise InvalidParams("vectorised XOR needs at most 64 lines")
    return np.array(P.point_masks, dtype=np.uint64)


def _exhaustive_raw(P: Plane, size: int, deadline: float) -> SearchOutcome:
    masks = _line_masks_u64(P)
    best, witness, evaluated = None, (), 0
    for block in _combination_chunks(P.n, size):
        if time.perf_counter() > deadline:
            raise BudgetExceeded("time budget exhausted",
                                 SearchOutcome(P.q, size, "exhaustive", best, witness, evaluated=evaluated))
        if size:
            o = np.bitwise_count(np.bitwise_xor.reduce(masks[block], axis=1))
        else:
            o = np.zeros(len(block), dtype=np.uint8)
        i = int(np.argmin(o))
        if best is None or int(o[i]) < best:
            best = int(o[i])
            witness = tuple(int(v) for v in block[i])
        evaluated += len(block)
    return SearchOutcome(P.q, size, "exhaustive", best, witness, classes=evaluated,
                         evaluated=evaluated, exhaustive=True)


def _frameless_sets(P: Plane, size: int):
    """Representatives covering every set without four points in general
    position: subsets of one line, possibly with one point off it."""
    line = P.line_id((0, 0, 1))
    on = P.line_points[line]
    off = P.point_id((0, 0, 1))
    if size <= len(on):
        for c in itertools.combinations(on, size):
            yield c
    if 1 <= size <= len(on) + 1:
        for c in itertools.combinations(on, size - 1):
            yield tuple(sorted(c + (off,)))


def _exhaustive_orderly(P: Plane, size: int, deadline: float, budget: int) -> SearchOutcome:
    best, witness = None, ()
    classes = evaluated = 0

    def consider(ids):
        nonlocal best, witness
        o = odd_count(P, ids)
        if best is None or o < best or (o == best and tuple(ids) < witness):
            best, witness = o, tuple(sorted(ids))

    for ids in _frameless_sets(P, size):
        consider(ids)
        evaluated += 1
    if size >= 4:
        frame = tuple(sorted(P.point_id(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))))
        level = {canonical_labeling(P, frame, budget)[0]: frame}
        for _ in range(size - 4):
            nxt = {}
            for rep in level.values():
                members = set(rep)
                for pid in range(P.n):
                    if pid in members:
                        continue
                    if time.perf_counter() > deadline:
                        raise BudgetExceeded("time budget exhausted",
                                             SearchOutcome(P.q, size, "exhaustive", best, witness,
                                                           classes=classes, evaluated=evaluated, symmetry=True))
                    ext = tuple(sorted(rep + (pid,)))
                    key = canonical_labeling(P, ext, budget)[0]
                    if key not in nxt:
                        nxt[key] = ext
            level = nxt
        for key in sorted(level):
            consider(level[key])
            evaluated += 1
        classes = len(level)
    return SearchOutcome(P.q, size, "exhaustive", best, witness, classes=classes,
                         evaluated=evaluated, exhaustive=True, symmetry=True)


def exhaustive_min(q: int | GF, size: int, symmetry: bool = False,
                   budget: float | None = None, canon_budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Exact minimum of o(S) over all ``size``-subsets of PG(2,q).

    ``budget`` is wall-clock seconds; on overrun BudgetExceeded carries the
    partial outcome.  With ``symmetry`` one representative per projective
    class is generated level by level from the standard frame.
    """
    F = q if isinstance(q, GF) else make_field(q)
    P = plane_for(F)
    if not 0 <= size <= P.n:
        raise InvalidParams(f"size must lie in [0, {P.n}]")
    start = time.perf_counter()
    deadline = math.inf if budget is None else start + budget
    try:
        if symmetry:
            out = _exhaustive_orderly(P, size, deadline, canon_budget)
        else:
            out = _exhaustive_raw(P, size, deadline)
    except BudgetExceeded as exc:
        if exc.partial is not None:
            exc.partial.seconds = time.perf_counter() - start
        raise
    out.seconds = time.perf_counter() - start
    return out


# -- internal nuclei over all (q+2)-sets ---------------------------------------------------

@dataclass
class SzeroSweep:
    q: int
    sets: int
    max_s0: int
    nuclei: int
    product_checks: int
    product_failures: int
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.max_s0 <= 2 and self.product_failures == 0


def _vcross(F: GF, a, b):
    neg1 = F.neg(1)

    def sub(u, v):
        return F.vadd(u, F.vscale(neg1, v))

    return np.stack([
        sub(F.vmul(a[:, 1], b[:, 2]), F.vmul(a[:, 2], b[:, 1])),
        sub(F.vmul(a[:, 2], b[:, 0]), F.vmul(a[:, 0], b[:, 2])),
        sub(F.vmul(a[:, 0], b[:, 1]), F.vmul(a[:, 1], b[:, 0])),
    ], axis=1)


def _vdot(F: GF, a, b):
    return F.vadd(F.vadd(F.vmul(a[:, 0], b[:, 0]), F.vmul(a[:, 1], b[:, 1])), F.vmul(a[:, 2], b[:, 2]))


def _product_failures(P: Plane, sets: np.ndarray, nuc: np.ndarray) -> tuple[int, int]:
    """Check prod over v of -det(x,v,z)/det(x,y,v) = -1 for every nucleus
    x (row, column pairs in ``nuc``) and every pair y, z of other points."""
    F = P.F
    coords = P.coords.astype(np.int64)
    rows, cols = nuc
    k = sets.shape[1]
    checks = failures = 0
    neg1 = F.neg(1)
    for yi, zi in itertools.combinations(range(k - 1), 2):
        # positions of the other points relative to the nucleus column
        others = np.array([[j for j in range(k) if j != c] for c in range(k)])
        oth = others[cols]
        x = coords[sets[rows, cols]]
        y = coords[sets[rows, oth[:, yi]]]
        z = coords[sets[rows, oth[:, zi]]]
        a = _vcross(F, z, x)
        b = _vcross(F, x, y)
        num = np.ones(len(rows), dtype=np.int64)
        den = np.ones(len(rows), dtype=np.int64)
        for j in range(k - 1):
            if j in (yi, zi):
                continue
            v = coords[sets[rows, oth[:, j]]]
            num = F.vmul(num, _vdot(F, v, a))
            den = F.vmul(den, _vdot(F, v, b))
        # (-1)^(q-1) = 1 for q odd, so the identity reads num = -den
        bad = num != F.vscale(neg1, den)
        checks += len(rows)
        failures += int(bad.sum())
    return checks, failures


def szero_sweep(q: int | GF, check_products: bool = True, budget: float | None = None) -> SzeroSweep:
    """|S_0| over every (q+2)-subset, with the nucleus product identity
    checked for every nucleus and every pair of other points."""
    F = q if isinstance(q, GF) else make_field(q)
    P = plane_for(F)
    size = F.q + 2
    masks = _line_masks_u64(P)
    start = time.perf_counter()
    sets = max_s0 = nuclei = checks = failures = 0
    for block in _combination_chunks(P.n, size):
        if budget is not None and time.perf_counter() - start > budget:
            raise BudgetExceeded("time budget exhausted")
        m = masks[block]
        odd = np.bitwise_xor.reduce(m, axis=1)
        isnuc = (m & odd[:, None]) == 0
        cnt = isnuc.sum(axis=1)
        sets += len(block)
        nuclei += int(cnt.sum())
        max_s0 = max(max_s0, int(cnt.max()))
        if check_products and F.p != 2 and cnt.any():
            c, f = _product_failures(P, block, np.nonzero(isnuc))
            checks += c
            failures += f
    return SzeroSweep(F.q, sets, max_s0, nuclei, checks, failures, time.perf_counter() - start)


# -- local search -------------------------------------------------------------------------

@dataclass
class AnnealConfig:
    restarts: int = 10
    moves: int = 20_000
    cooling: float = 0.995
    cool_every: int = 50
    accept_uphill: float = 0.8
    calibration: int = 200
    seed: int = 0
    initial: Sequence[Sequence[int]] = ()
    check_every: int = 100


class _SwapState:
    """A point set with line counts, updated incrementally under swaps."""

    def __init__(self, P: Plane, ids: Sequence[int]):
        self.P = P
        self.ids = list(ids)
        self.member = [False] * P.n
        for pid in self.ids:
            self.member[pid] = True
        self.counts = [0] * P.n
        for pid in self.ids:
            for li in P.point_lines[pid]:
                self.counts[li] += 1
        self.o = sum(c & 1 for c in self.counts)

    def delta(self, out_pid: int, in_pid: int) -> int:
        """Change in o(S) from swapping; touches only lines through the two
        points, the shared line being unchanged."""
        P = self.P
        shared = P.join_id(out_pid, in_pid)
        d = 0
        counts = self.counts
        for li in P.point_lines[out_pid]:
            if li != shared:
                d += 1 - 2 * (counts[li] & 1)
        for li in P.point_lines[in_pid]:
            if li != shared:
                d += 1 - 2 * (counts[li] & 1)
        return d

    def swap(self, idx: int, in_pid: int, d: int):
        out_pid = self.ids[idx]
        P = self.P
        for li in P.point_lines[out_pid]:
            self.counts[li] -= 1
        for li in P.point_lines[in_pid]:
            self.counts[li] += 1
        self.member[out_pid] = False
        self.member[in_pid] = True
        self.ids[idx] = in_pid
        self.o += d


def local_min(q: int | GF, size: int, config: AnnealConfig | None = None) -> SearchOutcome:
    """Simulated annealing over single-point swaps."""
    cfg = config or AnnealConfig()
    F = q if isinstance(q, GF) else make_field(q)
    P = plane_for(F)
    if not 0 < size < P.n:
        raise InvalidParams(f"size must lie in [1, {P.n - 1}]")
    rng = random.Random(cfg.seed)
    start = time.perf_counter()
    best, witness = None, ()
    mismatches = 0
    for r in range(cfg.restarts):
        if r < len(cfg.initial):
            init = list(cfg.initial[r])
            if len(init) != size:
                raise InvalidParams("initial set has the wrong size")
        else:
            init = rng.sample(range(P.n), size)
        st = _SwapState(P, init)
        T = _calibrate(st, rng, cfg)
        cur_best, cur_wit = st.o, tuple(sorted(st.ids))
        for m in range(cfg.moves):
            idx = rng.randrange(size)
            in_pid = rng.randrange(P.n)
            while st.member[in_pid]:
                in_pid = rng.randrange(P.n)
            d = st.delta(st.ids[idx], in_pid)
            if d <= 0 or (T > 0 and rng.random() < math.exp(-d / T)):
                st.swap(idx, in_pid, d)
                if st.o < cur_best:
                    cur_best, cur_wit = st.o, tuple(sorted(st.ids))
            if (m + 1) % cfg.cool_every == 0:
                T *= cfg.cooling
            if cfg.check_every and m % cfg.check_every == 0 and st.o != odd_count(P, st.ids):
                mismatches += 1
        if best is None or (cur_best, cur_wit) < (best, witness):
            best, witness = cur_best, cur_wit
    return SearchOutcome(F.q, size, "local", best, witness, evaluated=cfg.restarts * cfg.moves,
                         seed=cfg.seed, seconds=time.perf_counter() - start,
                         extra={"restarts": cfg.restarts, "moves": cfg.moves,
                                "incremental_mismatches": mismatches})


def _calibrate(st: _SwapState, rng: random.Random, cfg: AnnealConfig) -> float:
    """Temperature at which the mean uphill move is accepted with
    probability ``accept_uphill``."""
    ups = []
    for _ in range(cfg.calibration):
        idx = rng.randrange(len(st.ids))
        in_pid = rng.randrange(st.P.n)
        if st.member[in_pid]:
            continue
        d = st.delta(st.ids[idx], in_pid)
        if d > 0:
            ups.append(d)
    if not ups or not 0 < cfg.accept_uphill < 1:
        return 0.0
    return -(sum(ups) / len(ups)) / math.log(cfg.accept_uphill)

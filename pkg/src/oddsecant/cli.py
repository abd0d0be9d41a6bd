"""Command-line entry point: analyze, verify, search, construct, gamma.

Exit codes: 0 success, 1 a check failed (or a search ran out of budget),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from . import tangents as T
from .errors import BudgetExceeded, OddSecantError, ParseError
from .field import GF
from .field import field as make_field
from .plane import check_field, format_point_text, plane_for, read_point_file, write_point_file
from .search import (
    AnnealConfig,
    ConstructionSpec,
    construct,
    exhaustive_min,
    local_min,
    write_minima_csv,
)
from .secants import PointSet, classify, report_dict
from .suites import SUITES, run_suites

KIND_ALIASES = {
    "conic-external": "conic_plus_external",
    "conic-two-external": "conic_plus_two_external",
}


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int | None
    version: str = __version__
    field_spec: dict | None = None
    inputs: dict = field(default_factory=dict)
    timestamp: str | None = None


def _field_json(F: GF) -> dict:
    return {"q": F.q, "p": F.p, "e": F.e, "modulus": F.format_modulus()}


def _sha256(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _manifest(args, F: GF | None = None, inputs=()) -> RunManifest:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "stamp")}
    stamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()) if args.stamp else None
    return RunManifest(args.command, config, getattr(args, "seed", None),
                       field_spec=_field_json(F) if F else None,
                       inputs={p: _sha256(p) for p in inputs}, timestamp=stamp)


def _emit(args, manifest: RunManifest, body: dict):
    report = {"manifest": asdict(manifest), **body}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.json == "-":
        sys.stdout.write(text)
    elif args.json:
        with open(args.json, "w") as fh:
            fh.write(text)


def _load(path, q: int | None) -> PointSet:
    F, points = read_point_file(path)
    if q is not None:
        check_field(F, make_field(q))
    return PointSet.from_points(F, points)


# -- commands -------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    S = _load(args.file, args.q)
    body = report_dict(S, args.t)
    print(f"q={S.q} |S|={len(S)} odd secants={body['odd_count']} weight sum={body['weight_sum']}")
    print("secant spectrum: " + ", ".join(f"{k}:{v}" for k, v in body["spectrum"].items()))
    print("classes: " + ", ".join(f"{k}={v}" for k, v in body["classification"].items()))
    _emit(args, _manifest(args, S.F, [args.file]), {"report": body})
    return 0


def cmd_verify(args) -> int:
    suites = [s for s in args.suite.split(",") if s]
    results = run_suites(args.q, suites, trials=args.trials, seed=args.seed, t=args.t)
    for r in results:
        print(f"{r.suite:<11} {'PASS' if r.passed else 'FAIL'}  checked={r.checked} failures={r.failures}")
    ok = all(r.passed for r in results)
    _emit(args, _manifest(args, make_field(args.q)),
          {"passed": ok, "suites": [r.to_json() for r in results]})
    return 0 if ok else 1


def cmd_search(args) -> int:
    F = make_field(args.q)
    status = 0
    try:
        if args.mode == "exhaustive":
            out = exhaustive_min(F, args.size, symmetry=args.symmetry, budget=args.budget)
        else:
            cfg = AnnealConfig(restarts=args.trials, moves=args.moves, seed=args.seed)
            if args.seed_construction:
                base = construct(ConstructionSpec("conic_plus_external", F.q), F)
                if len(base) == args.size:
                    cfg.initial = [base.ids]
            out = local_min(F, args.size, cfg)
    except BudgetExceeded as exc:
        out = exc.partial
        status = 1
        print(f"budget exhausted: partial minimum {out.min_o}", file=sys.stderr)
    wpath = ""
    if args.out and out.witness:
        P = PointSet.from_ids(plane_for(F), out.witness)
        write_point_file(args.out, F, P.points(), comment=f"o(S) = {out.min_o}")
        wpath = args.out
    if args.csv:
        write_minima_csv(args.csv, [(out, wpath)])
    print("q,size,mode,min_o,exhaustive,witness_path,seed,seconds")
    print(f"{out.q},{out.size},{out.mode},{out.min_o},{int(out.exhaustive)},{wpath},"
          f"{'' if out.seed is None else out.seed},{out.seconds:.3f}")
    _emit(args, _manifest(args, F), {"outcome": out.to_json()})
    return status


def cmd_construct(args) -> int:
    kind = KIND_ALIASES.get(args.kind, args.kind)
    S = construct(ConstructionSpec(kind, args.q, size=args.size, path=args.file))
    text = format_point_text(S.F, S.points(), comment=f"{kind} q={S.q}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _emit(args, _manifest(args, S.F), {"size": len(S), "points": [list(p) for p in S.points()]})
    return 0


def cmd_gamma(args) -> int:
    S = _load(args.file, args.q)
    cl = classify(S)
    system = T.build_system_any(S, cl.S_prime)
    rep = T.gamma_for_system(system, trials=args.trials, seed=args.seed)
    print(f"active points={len(system.active)} deg Gamma={rep.degree} "
          f"conic divides={rep.conic_divides} line components={len(rep.line_factors)}")
    print(f"Gamma = {rep.gamma.to_string()}")
    _emit(args, _manifest(args, S.F, [args.file]),
          {"S_prime": list(system.S_prime), "base_point": system.e, "gamma": rep.to_json()})
    return 0 if rep.factorization_verified else 1


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddsecant", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
        sp.add_argument("--stamp", action="store_true", help="record a timestamp in the manifest")

    a = sub.add_parser("analyze", help="secant profile, weights and classes of a point set")
    a.add_argument("file")
    a.add_argument("--q", type=int, help="expected field order")
    a.add_argument("--t", type=int, default=1)
    common(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run identity suites on the standard constructions")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--suite", default=",".join(SUITES), help=f"comma list from {','.join(SUITES)}")
    v.add_argument("--t", type=int, default=1)
    v.add_argument("--trials", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="minimum number of odd secants")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--mode", choices=("exhaustive", "local"), default="exhaustive")
    s.add_argument("--symmetry", action="store_true", help="one set per projective class")
    s.add_argument("--budget", type=float, metavar="SECONDS")
    s.add_argument("--trials", type=int, default=10, help="annealing restarts")
    s.add_argument("--moves", type=int, default=20_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--seed-construction", action="store_true",
                   help="start the first restart from conic plus external point")
    s.add_argument("--out", metavar="PATH", help="witness point file")
    s.add_argument("--csv", metavar="PATH", help="minima table")
    common(s)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("construct", help="write a standard point set")
    c.add_argument("kind", help="conic-external, conic-two-external, arc, hyperoval, from_file")
    c.add_argument("--q", type=int, default=0)
    c.add_argument("--size", type=int)
    c.add_argument("--file", help="input for from_file")
    c.add_argument("--out", metavar="PATH")
    common(c)
    c.set_defaults(func=cmd_construct)

    g = sub.add_parser("gamma", help="common component of the sextics of a point set")
    g.add_argument("file")
    g.add_argument("--q", type=int)
    g.add_argument("--trials", type=int, default=50)
    g.add_argument("--seed", type=int, default=0)
    common(g)
    g.set_defaults(func=cmd_gamma)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OddSecantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

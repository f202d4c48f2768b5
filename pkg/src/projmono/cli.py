"""Command-line front end: ``projmono {classify,sweep,degenerate,group}``.

Exit codes: 0 verdict computed, 1 input error, 2 degenerate configuration
(no verdict), 3 unsupported center, 4 verdict computed but negative (a sweep
with a non-uniform trial, or a failed containment).

Input files hold ``key = value`` lines; ``#`` starts a comment.  Keys:

* classify: ``poly``, ``point``
* degenerate: ``Y``, ``H``, ``F``, ``point`` and optionally ``s`` (comma list)
* group: ``degree`` and one ``gen`` line per generator

The default seed is 0, or the value of the ``PROJMONO_SEED`` environment
variable when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .classifier import (
    decomposability_report,
    degeneration_experiment,
    monodromy_report,
    random_degeneration_data,
    random_general_hypersurface,
    random_inner_point,
    random_outer_point,
    uniform_sweep,
)
from .config import DEFAULT_TOLERANCES
from .exceptions import (
    DeflationError,
    DegenerateConfiguration,
    InputError,
    NonConvergence,
    ParseError,
    PreconditionError,
    TrackingError,
    UnsupportedCenter,
)
from .permgroup import PermGroup, block_systems, is_primitive, k_transitivity, orbits, parse_permutation
from .polycore import format_poly, parse_complex, parse_poly
from .tracker import DEFAULT_ARC_SEGMENTS
from .validation import check_point, check_seed

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE, EXIT_UNSUPPORTED, EXIT_NEGATIVE = 0, 1, 2, 3, 4
SEED_ENV = "PROJMONO_SEED"


# ---------------------------------------------------------------------------
# input parsing
# ---------------------------------------------------------------------------


def read_keyvalue(text: str) -> list[tuple[str, str, int, int]]:
    """``(key, value, line, value column)`` for every non-blank line."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, value = line.split("=", 1)
        col = len(key) + 2 + (len(value) - len(value.lstrip()))
        out.append((key.strip(), value.strip(), lineno, col))
    return out


def _at(fn, value, line, col):
    """Run a text parser and shift its error position into file coordinates."""
    try:
        return fn(value)
    except ParseError as e:
        c = col + e.column - 1 if e.line == 1 else e.column
        raise ParseError(str(e).rsplit(" (line", 1)[0], line + e.line - 1, c) from None


def parse_point(text: str):
    body = text.strip()
    if body.startswith("[") and body.endswith("]") or body.startswith("(") and body.endswith(")") and "," in body:
        body = body[1:-1]
    parts = [p for p in body.split(",")]
    if len(parts) < 3:
        raise ParseError("a point needs at least 3 comma-separated coordinates")
    return [parse_complex(p) for p in parts]


def _single(entries, key, required=True):
    found = [e for e in entries if e[0] == key]
    if len(found) > 1:
        raise ParseError(f"key {key!r} given more than once", found[1][2], 1)
    if not found:
        if required:
            raise InputError(f"missing key {key!r}")
        return None
    return found[0]


def _tol_overrides(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"--tol expects NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise InputError(f"tolerance {name!r} needs a real value") from None
    return out


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _emit(args, doc: dict, text: str):
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(text)


def _group_text(G: PermGroup) -> list[str]:
    lines = [
        f"degree        {G.degree}",
        f"order         {G.order}",
        f"generators    {' '.join(str(g) for g in G.generators) or '()'}",
        f"labels        {', '.join(G.labels)}",
    ]
    return lines


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_classify(args, tol) -> int:
    if args.file:
        entries = read_keyvalue(_read(args.file))
        _, ptext, pl, pc = _single(entries, "poly")
        F = _at(parse_poly, ptext, pl, pc)
        _, xtext, xl, xc = _single(entries, "point")
        P = _at(parse_point, xtext, xl, xc)
    elif args.poly is not None:
        F = parse_poly(args.poly)
        if args.point is None:
            raise InputError("--poly needs --point")
        P = parse_point(args.point)
    elif args.random_degree is not None:
        F = random_general_hypersurface(args.n, args.random_degree, args.seed)
        sampler = random_outer_point if args.center == "outer" else random_inner_point
        P = sampler(F, args.seed, tol)
    else:
        raise InputError("classify needs an input file, --poly/--point or --random-degree")
    P = check_point(P, F.num_vars)
    R = monodromy_report(F, P, seed=args.seed, tol=tol, arc_segments=args.arc_segments)
    doc = R.to_dict()
    doc["instance"]["polynomial"] = format_poly(F)
    doc["decomposability"] = decomposability_report(R)
    lines = [
        f"projmono {__version__}  seed {args.seed}",
        f"surface       {format_poly(F)}",
        f"center        {R.center_kind.value}, effective degree {R.effective_degree}",
        *_group_text(R.group),
        f"branch points {len(R.branch_points)}",
        f"retries       {len(R.retries)}",
        f"verdict       {R.summary()}",
        f"blocks        {doc['decomposability']['statement']}",
    ]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_sweep(args, tol) -> int:
    S = uniform_sweep(args.n, args.d, args.trials, seed=args.seed, tol=tol, arc_segments=args.arc_segments, n_jobs=args.jobs)
    doc = {"tool": "projmono", "version": __version__, "seed": args.seed, "tolerances": tol.as_dict(), **S.to_dict()}
    lines = [f"projmono {__version__}  sweep n={args.n} d={args.d} trials={args.trials} seed={args.seed}",
             f"{'trial':>5} {'seed':>12} {'center':>6} {'order':>8}  verdict"]
    for r in S.rows:
        verdict = "UNIFORM" if r["uniform"] else "NON-UNIFORM"
        lines.append(f"{r['trial']:>5} {r['trial_seed']:>12} {r['center_kind']:>6} {r.get('order', '-'):>8}  {verdict}"
                     + (f"  ({r['error']})" if "error" in r else ""))
    lines.append(f"outer uniform {S.outer_uniform}/{S.trials}, inner uniform {S.inner_uniform}/{S.trials}")
    if S.failures:
        lines.append("failure seeds: " + ", ".join(str(r["trial_seed"]) for r in S.failures))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if S.all_uniform else EXIT_NEGATIVE


def cmd_degenerate(args, tol) -> int:
    s_values = None
    if args.file:
        entries = read_keyvalue(_read(args.file))
        polys = {}
        for key in ("Y", "H", "F"):
            _, text, line, col = _single(entries, key)
            polys[key] = _at(parse_poly, text, line, col)
        nv = max(p.num_vars for p in polys.values())
        polys = {k: parse_poly(format_poly(p), nv) for k, p in polys.items()}
        _, xtext, xl, xc = _single(entries, "point")
        P = _at(parse_point, xtext, xl, xc)
        s_entry = _single(entries, "s", required=False)
        if s_entry:
            s_values = _at(lambda v: [parse_complex(x) for x in v.split(",")], s_entry[1], s_entry[2], s_entry[3])
        Y, H, F = polys["Y"], polys["H"], polys["F"]
        P = check_point(P, nv)
    else:
        if args.d is None:
            raise InputError("degenerate needs --d (and optionally --n) or an input file")
        Y, H, F, P = random_degeneration_data(args.n, args.d, args.seed)
    if args.s:
        s_values = [parse_complex(x) for x in args.s.split(",")]
    E = degeneration_experiment(Y, H, F, P, s_values=s_values, seed=args.seed, tol=tol, arc_segments=args.arc_segments)
    doc = E.to_dict()
    lines = [f"projmono {__version__}  degeneration d={E.d} seed={args.seed}",
             f"M0 (Y, {E.d - 1} labels): order {E.base_group.order}, {', '.join(E.base_group.labels)}",
             f"{'s':>24} {'halved':>6} {'order Ms':>9} {'margin':>8}  contained"]
    for run in doc["runs"]:
        s = complex(*run["s"])
        lines.append(f"{s:>24.3e} {run['halvings']:>6} {run['group']['order']:>9} {run['matching_margin']:>8.4f}  {run['contained']}")
    lines.append("containment holds for all tested s" if E.contained else "containment FAILS for some s")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if E.contained else EXIT_NEGATIVE


def cmd_group(args, tol) -> int:
    gens_text = []
    degree = args.degree
    if args.file:
        entries = read_keyvalue(_read(args.file))
        deg_entry = _single(entries, "degree", required=degree is None)
        if deg_entry is not None:
            try:
                degree = int(deg_entry[1])
            except ValueError:
                raise ParseError("degree must be an integer", deg_entry[2], deg_entry[3]) from None
        gens_text = [(v, line, col) for k, v, line, col in entries if k == "gen"]
    gens_text += [(g, 1, 1) for g in args.generators]
    if degree is None or degree < 1:
        raise InputError("group needs a positive --degree")
    gens = [_at(lambda v: parse_permutation(v, degree), v, line, col) for v, line, col in gens_text]
    G = PermGroup(degree, gens)
    orbs = orbits(G)
    trans = len(orbs) == 1
    systems = block_systems(G) if trans and degree > 2 else []
    doc = {
        "tool": "projmono",
        "version": __version__,
        "seed": args.seed,
        "tolerances": tol.as_dict(),
        "group": {
            "degree": degree,
            "order": str(G.order),
            "generators": [str(g) for g in G.generators],
            "labels": list(G.labels),
            "orbits": [list(o) for o in orbs],
            "transitive": trans,
            "transitivity": k_transitivity(G),
            "primitive": bool(trans and is_primitive(G)),
            "block_systems": [[list(b) for b in s] for s in systems],
        },
    }
    lines = _group_text(G) + [
        f"orbits        {' '.join('{' + ','.join(map(str, o)) + '}' for o in orbs)}",
        f"transitivity  {k_transitivity(G)}",
        f"primitive     {doc['group']['primitive']}",
    ]
    for s in systems:
        lines.append(f"blocks        size {len(s[0])}: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in s))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return 0
    try:
        return check_seed(int(raw))
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default: ${SEED_ENV} or 0)")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a named tolerance; repeatable")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--arc-segments", type=int, default=DEFAULT_ARC_SEGMENTS)

    parser = argparse.ArgumentParser(prog="projmono", description="Monodromy groups of linear projections of hypersurfaces.")
    parser.add_argument("--version", action="version", version=f"projmono {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="monodromy group and verdict for one center")
    p.add_argument("file", nargs="?", help="key = value file with 'poly' and 'point'")
    p.add_argument("--poly")
    p.add_argument("--point", help="comma-separated homogeneous coordinates, e.g. '0,0,1'")
    p.add_argument("--random-degree", type=int, help="use a seeded random hypersurface of this degree")
    p.add_argument("--n", type=int, default=1, help="dimension of the random hypersurface")
    p.add_argument("--center", choices=("outer", "inner"), default="outer")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", parents=[common], help="random hypersurfaces, one outer and one inner center each")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("degenerate", parents=[common], help="containment test along the pencil Y*H + s*F")
    p.add_argument("file", nargs="?", help="key = value file with Y, H, F, point and optional s")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--d", type=int)
    p.add_argument("--s", help="comma-separated pencil parameters")
    p.set_defaults(func=cmd_degenerate)

    p = sub.add_parser("group", parents=[common], help="analyze a permutation group given by generators")
    p.add_argument("generators", nargs="*", help="cycle notation, e.g. '(0 1)(2 3)'")
    p.add_argument("--degree", type=int)
    p.add_argument("--file")
    p.set_defaults(func=cmd_group)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.seed = _default_seed() if args.seed is None else check_seed(args.seed)
        if args.jobs < 1:
            raise InputError("--jobs must be positive")
        if args.arc_segments < 3:
            raise InputError("--arc-segments must be at least 3")
        tol = DEFAULT_TOLERANCES.replace(**_tol_overrides(args.tol))
        return args.func(args, tol)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedCenter as e:
        print(f"unsupported: {e}" if not str(e).startswith("unsupported") else str(e), file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (DegenerateConfiguration, TrackingError, NonConvergence, DeflationError, PreconditionError) as e:
        print(f"degenerate configuration, no verdict: {e}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 invalid input or failed validation, 2 usage error.
Rationals are printed as "p/q" strings in JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .conrep import (
    ConicalRepModel,
    generated_subrep,
    norms_round_trip,
    restrict_to_level,
    same_tree,
    smooth_report,
)
from .errors import InvalidTree, LimconeError, NotConsistent, SpecParseError
from .exact import GaussRat, fmt_frac
from .limits import DirectSystemSpec, ProfiniteWeight, TailRule, is_smooth_weight, limit_rank, restrict_weight
from .measure import StepSection, atom_mass, atoms, measure_from_spec, section_norm, validate_measure
from .rootsys import (
    build_system,
    from_fundamental_coords,
    is_dominant_integral,
    to_fundamental_coords,
)
from .treeset import (
    INF,
    Smooth,
    cylinder,
    decompose_smooth,
    is_isolated,
    parse_path,
    splitting_report,
    validate_tree,
)

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class UsageError(Exception):
    pass


# --- serialization ----------------------------------------------------------------


def plain(x):
    """Turn report values into JSON-ready data with exact rationals as strings."""
    if isinstance(x, Fraction):
        return fmt_frac(x)
    if isinstance(x, GaussRat):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return x


def _coords(w) -> list:
    return [fmt_frac(c) for c in w.canonical()]


def _emit(args, data: dict, text: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(plain(data), indent=2, ensure_ascii=False))
    else:
        print("\n".join(text))


# --- input parsing ----------------------------------------------------------------


def _load(source: str, what: str):
    """JSON (or TOML, by file extension) from a path or an inline string."""
    text = source
    is_toml = False
    if not source.lstrip().startswith(("{", "[")):
        path = Path(source)
        if not path.exists():
            raise SpecParseError(f"{what}: no such file {source!r}")
        text = path.read_text()
        is_toml = path.suffix == ".toml"
    if is_toml:
        try:
            return tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise SpecParseError(f"{what}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{what}: {exc.msg}", exc.lineno, exc.colno) from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _node(text: str) -> tuple[int, int]:
    lv, sep, i = text.partition(":")
    if not sep:
        raise UsageError(f"nodes are written level:index, got {text!r}")
    return int(lv), int(i)


def _tail(text: str) -> TailRule:
    if text == "zero":
        return TailRule()
    kind, _, rest = text.partition(":")
    if kind == "constant":
        return TailRule("constant", int(rest))
    if kind == "affine":
        offset, slope = _ints(rest)
        return TailRule("affine", offset, slope)
    raise UsageError(f"tail must be zero, constant:c or affine:a,b, got {text!r}")


def _system(args) -> DirectSystemSpec:
    if args.system:
        return DirectSystemSpec.from_json(_load(args.system, "system"))
    if not args.type or not args.ranks:
        raise UsageError("give --system, or --type with --ranks")
    return DirectSystemSpec(args.type, tuple(_ints(args.ranks)), args.rule)


def _tree(args):
    return validate_tree(_load(args.tree, "tree"))


def _model(args, spec_text=None):
    tree = _tree(args)
    mu = measure_from_spec(tree, _load(spec_text or args.measure, "measure"))
    return ConicalRepModel(tree, mu)


# --- subcommands ------------------------------------------------------------------


def cmd_roots(args) -> int:
    sys_ = build_system(args.type, args.rank)
    data = {
        "type": f"{sys_.kind}{sys_.rank}",
        "positive_roots": [_coords(r) for r in sys_.positive_roots],
        "simple_roots": [_coords(r) for r in sys_.simple_roots],
        "fundamental_weights": [_coords(w) for w in sys_.fundamental_weights],
    }
    text = [f"type {data['type']}", "positive roots:"]
    text += [f"  ({', '.join(r)})" for r in data["positive_roots"]]
    text.append("simple roots:")
    text += [f"  alpha_{i} = ({', '.join(r)})" for i, r in enumerate(data["simple_roots"], 1)]
    text.append("fundamental weights:")
    text += [f"  xi_{i} = ({', '.join(w)})" for i, w in enumerate(data["fundamental_weights"], 1)]
    _emit(args, data, text)
    return 0


def cmd_weights(args) -> int:
    sys_ = build_system(args.type, args.rank)
    if (args.coeffs is None) == (args.weight is None):
        raise UsageError("give exactly one of --coeffs and --weight")
    if args.coeffs is not None:
        lam = from_fundamental_coords(sys_, _rationals(args.coeffs))
    else:
        lam = sys_.weight(_rationals(args.weight))
    coeffs = to_fundamental_coords(sys_, lam)
    dominant = is_dominant_integral(sys_, lam)
    data = {
        "type": f"{sys_.kind}{sys_.rank}",
        "weight": _coords(lam),
        "fundamental_coords": list(coeffs),
        "dominant_integral": dominant,
    }
    text = [
        f"weight ({', '.join(data['weight'])}) in {data['type']}",
        f"fundamental coordinates ({', '.join(fmt_frac(c) for c in coeffs)})",
        f"dominant integral: {'yes' if dominant else 'no'}",
    ]
    _emit(args, data, text)
    return 0


def cmd_restrict(args) -> int:
    sys_ = build_system(args.type, args.rank)
    lam = sys_.weight(_rationals(args.weight))
    low = restrict_weight(lam, args.to)
    low_sys = build_system(args.type, args.to, warn=False)
    data = {
        "from": {"type": f"{sys_.kind}{sys_.rank}", "weight": _coords(lam)},
        "to": {"type": f"{low_sys.kind}{low_sys.rank}", "weight": _coords(low)},
        "dominant_integral": is_dominant_integral(low_sys, low),
    }
    text = [f"({', '.join(_coords(lam))}) -> ({', '.join(_coords(low))}) in {data['to']['type']}"]
    _emit(args, data, text)
    return 0


def cmd_smooth(args) -> int:
    spec = _system(args)
    mu = ProfiniteWeight(spec, tuple(_ints(args.coeffs)), _tail(args.tail))
    verdict = is_smooth_weight(mu)
    lim = limit_rank(spec)
    data = {
        "system": spec.to_json(),
        "weight": mu.to_json(),
        "smooth": verdict.smooth,
        "bound": verdict.bound,
        "norms": [{"level": n, "sup_norm": v} for n, v in verdict.witness],
        "limit_rank": lim.rank,
        "spherical_conical": lim.verdict,
    }
    text = [f"smooth: {'yes' if verdict.smooth else 'no'}"]
    if verdict.smooth:
        text.append(f"bound M = {fmt_frac(verdict.bound)}")
    else:
        text.append("witness norms: " + ", ".join(f"{fmt_frac(v)} (level {n})" for n, v in verdict.witness))
    text.append(f"limit rank: {'infinite' if lim.rank is None else lim.rank}; {lim.verdict}")
    _emit(args, data, text)
    return 0


def _path_str(x) -> str:
    return str(x)


def _decomposition(dec) -> tuple[dict, list[str]]:
    if isinstance(dec, Smooth):
        data = {
            "smooth": True,
            "bound": dec.bound,
            "summands": [
                {"path": _path_str(x), "fundamental_coords": list(s.head)} for x, s in zip(dec.paths, dec.summands)
            ],
        }
        text = [f"smooth, {len(dec.summands)} summand(s), bound {fmt_frac(dec.bound)}"]
        text += [f"  path {_path_str(x)}: ({', '.join(map(str, s.head))})" for x, s in zip(dec.paths, dec.summands)]
        return data, text
    data = {
        "smooth": False,
        "witness": [{"level": lv, "weight": _coords(w), "sup_norm": n} for lv, _x, w, n in dec.witness],
    }
    text = ["not smooth; witness norms: " + ", ".join(fmt_frac(n) for *_, n in dec.witness)]
    return data, text


def cmd_tree(args) -> int:
    tree = _tree(args)
    if args.action == "validate":
        paths = tree.represented_paths()
        data = {
            "valid": True,
            "depth": tree.depth,
            "nodes_per_level": [len(lv) for lv in tree.levels],
            "paths": [
                {"path": str(x), "isolated": is_isolated(tree, x), "count": tree.path_count(tree.depth, x.indices[-1])}
                for x in paths
            ],
        }
        text = [f"valid tree, depth {tree.depth}, nodes per level {data['nodes_per_level']}"]
        for p in data["paths"]:
            many = "infinitely many paths" if p["count"] is INF else f"{p['count']} path(s)"
            text.append(f"  {p['path']}: {many}, isolated: {'yes' if p['isolated'] else 'no'}")
        _emit(args, data, text)
        return 0
    if args.action == "split":
        rep = splitting_report(tree)
        data = {
            "splits": [list(lv) for lv in rep.splits],
            "stabilization": {str(x): s for x, s in rep.stabilization.items()},
        }
        text = [f"level {lv}: splits {[int(s) for s in row]}" for lv, row in enumerate(rep.splits, 1)]
        text += [f"path {x}: stabilizes at {'never' if s is INF else s}" for x, s in rep.stabilization.items()]
        _emit(args, data, text)
        return 0
    if args.action == "smooth":
        data, text = _decomposition(decompose_smooth(tree))
        _emit(args, data, text)
        return 0
    if args.node is None:
        raise UsageError("tree cylinder needs --node level:index")
    lv, i = _node(args.node)
    cyl = cylinder(tree, lv, i)
    data = {"node": args.node, "tree": cyl.tree.to_json(), "paths": [str(x) for x in cyl.tree.represented_paths()]}
    text = [f"cylinder of {args.node}: {len(data['paths'])} represented path(s)"] + [f"  {p}" for p in data["paths"]]
    _emit(args, data, text)
    return 0


def cmd_measure(args) -> int:
    tree = _tree(args)
    mu = measure_from_spec(tree, _load(args.measure, "measure"))
    if args.action == "validate":
        rep = validate_measure(mu)
        data = {"ok": rep.ok, "violations": [{"level": a, "index": b, "problem": c} for a, b, c in rep.violations]}
        text = ["measure ok"] if rep.ok else [f"level {a}, node {b}: {c}" for a, b, c in rep.violations]
        _emit(args, data, text)
        return 0 if rep.ok else 1
    if args.action == "masses":
        data = {"masses": [list(row) for row in mu.masses], "tail": mu.tail, "total": mu.total}
        text = [f"level {lv}: " + ", ".join(fmt_frac(m) for m in row) for lv, row in enumerate(mu.masses, 1)]
        _emit(args, data, text)
        return 0
    if args.action == "atoms":
        if args.path:
            x = parse_path(args.path)
            table = {x: atom_mass(mu, x)}
        else:
            table = atoms(mu)
        data = {"atoms": [{"path": str(x), "mass": m} for x, m in table.items()]}
        text = [f"{x}: {fmt_frac(m)}" for x, m in table.items()]
        _emit(args, data, text)
        return 0
    if args.level is None or args.values is None:
        raise UsageError("measure norm needs --level and --values")
    f = StepSection.of(args.level, _rationals(args.values))
    value = section_norm(mu, f)
    _emit(args, {"level": args.level, "norm_squared": value}, [fmt_frac(value)])
    return 0


def cmd_rep(args) -> int:
    rep = _model(args)
    if args.action == "restrict":
        if args.level is None:
            raise UsageError("rep restrict needs --level")
        parts = restrict_to_level(rep, args.level)
        data = {
            "level": args.level,
            "summands": [
                {"index": s.index, "weight": _coords(s.weight), "mass": s.mass, "multiplicity": s.multiplicity}
                for s in parts
            ],
        }
        text = [f"node {s.index}: ({', '.join(_coords(s.weight))}) mass {fmt_frac(s.mass)}" for s in parts]
        _emit(args, data, text)
        return 0
    if args.action == "same":
        if not args.other:
            raise UsageError("rep same needs --other (a second measure spec)")
        other = _model(args, args.other)
        r = same_tree(rep, other)
        data = {
            "same_tree": r.same,
            "differs_at": r.differs_at,
            "levels": list(r.levels),
            "identical_measures": r.identical_measures,
            "same_atoms": r.same_atoms,
            "verdict": r.verdict,
        }
        _emit(args, data, [r.verdict])
        return 0
    if args.action == "smooth":
        r = smooth_report(rep)
        data, text = _decomposition(r.decomposition)
        data["blocks_per_level"] = list(r.blocks_per_level)
        _emit(args, data, text)
        return 0
    if args.action == "subrep":
        if args.level is None or args.values is None:
            raise UsageError("rep subrep needs --level and --values")
        sub = generated_subrep(rep, StepSection.of(args.level, _rationals(args.values)))
        data = {"tree": sub.tree.to_json(), "measure": sub.measure.to_json(), "total": sub.measure.total}
        text = [f"sub-model with {len(sub.tree.levels[-1])} leaves, total mass {fmt_frac(sub.measure.total)}"]
        _emit(args, data, text)
        return 0
    back = norms_round_trip(rep)
    same = back.masses == rep.measure.masses
    _emit(args, {"round_trip": same}, [f"round trip exact: {'yes' if same else 'no'}"])
    return 0 if same else 1


def cmd_admissible(args) -> int:
    from .matrixlie.analysis import check_admissible, verify_row

    if args.full:
        report = verify_row(args.row, p=args.p)
        ok = all(a["verdict"] == "admissible" for a in report["admissibility"])
        lines = [f"row {report['row']} ({report['group']})"]
        for lv in report["levels"]:
            lines.append(
                f"  level {lv['level']}: dims u/k/p/a/m = {lv['dim_u']}/{lv['dim_k']}/{lv['dim_p']}/{lv['dim_a']}/{lv['dim_m']}, "
                f"roots {lv['found_type']} (listed {lv['expected_type']})"
            )
        for e in report["embedding"]:
            lines.append(f"  embedding {e['level']} -> {e['level'] + 1}: {e['form']} (claimed {e['claimed']})")
        for a in report["admissibility"]:
            lines.append(f"  k={a['k']}, m={a['m']}: {a['verdict']}")
        _emit(args, report, lines)
        return 0 if ok else 1
    if args.k is None or args.m is None:
        raise UsageError("admissible needs --k and --m (or --full)")
    v = check_admissible(args.row, args.k, args.m, args.p)
    text = [v.to_json()["verdict"]]
    text += [f"  {name}: {val}" for name, val in v.certificate.items()]
    _emit(args, v.to_json(), text)
    return 0 if v.admissible else 1


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="limcone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def typed(p):
        p.add_argument("--type", required=True, choices=("A", "B", "C", "D"))
        p.add_argument("--rank", required=True, type=int)

    p = sub.add_parser("roots", parents=[common], help="roots and fundamental weights")
    typed(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("weights", parents=[common], help="convert between e- and fundamental coordinates")
    typed(p)
    p.add_argument("--coeffs", help="fundamental coordinates, e.g. 1,0,2")
    p.add_argument("--weight", help="e-coordinates, e.g. 2,4,4")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("restrict", parents=[common], help="restrict a weight to a lower rank")
    typed(p)
    p.add_argument("--weight", required=True)
    p.add_argument("--to", required=True, type=int)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("smooth", parents=[common], help="smoothness of a profinite weight")
    p.add_argument("--system", help="direct system spec (JSON/TOML file or inline JSON)")
    p.add_argument("--type", choices=("A", "B", "C", "D"))
    p.add_argument("--ranks", help="rank prefix, e.g. 1,2")
    p.add_argument("--rule", help="constant or step<d>; omit for a finite system")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--tail", default="zero", help="zero, constant:c or affine:a,b")
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("tree", parents=[common], help="tree set queries")
    p.add_argument("action", choices=("validate", "split", "smooth", "cylinder"))
    p.add_argument("--tree", required=True)
    p.add_argument("--node", help="level:index, for cylinder")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("measure", parents=[common], help="cylinder measure queries")
    p.add_argument("action", choices=("masses", "validate", "atoms", "norm"))
    p.add_argument("--tree", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--path", help="e.g. 0,1 or 0,1|1,0")
    p.add_argument("--level", type=int)
    p.add_argument("--values", help="step-section values at --level")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("rep", parents=[common], help="conical representation models")
    p.add_argument("action", choices=("restrict", "same", "smooth", "subrep", "roundtrip"))
    p.add_argument("--tree", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--other", help="second measure spec, for 'same'")
    p.add_argument("--level", type=int)
    p.add_argument("--values")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("admissible", parents=[common], help="admissibility of a table row")
    p.add_argument("--row", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int, default=2, help="parameter of the rank-stable rows")
    p.add_argument("--full", action="store_true", help="full per-level verification report")
    p.set_defaults(func=cmd_admissible)
    return parser


def _fail(args_format: str, exc: Exception) -> None:
    info = {"error": type(exc).__name__.rstrip("_"), "message": str(exc)}
    if isinstance(exc, SpecParseError) and exc.line is not None:
        info["line"], info["column"] = exc.line, exc.column
    if isinstance(exc, InvalidTree):
        info["violations"] = exc.violations
    if isinstance(exc, NotConsistent) and exc.node is not None:
        info["node"] = list(exc.node)
    if args_format == "json":
        print(json.dumps(plain(info), indent=2, ensure_ascii=False))
    else:
        where = f" (line {info['line']}, column {info['column']})" if "line" in info else ""
        print(f"error: {info['error']}: {info['message']}{where}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (LimconeError, KeyError, ValueError) as exc:
        _fail(args.format, exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: ``addcomp <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import engine
from .catalog import CatalogError, catalog_ids, default_window, describe, named_sets
from .group import FiniteSubgroup, GroupError, GroupSpec, SublatticeSpec, Window
from .moderation import ball_moderation, poly_moderation, subgroup_valued_moderation
from .scenario import EXIT_FAIL, EXIT_OK, EXIT_UNVERIFIED, run_scenario
from .serialize import DescriptorError, dumps, function_from_json, load_set, set_to_json

EXIT_USAGE = 64


def _emit(args, obj, text: str | None = None):
    if args.json or text is None:
        sys.stdout.write(dumps(obj))
    else:
        print(text)


def _json_arg(value: str):
    """Inline JSON (starting with '{' or '[') or a path to a JSON file."""
    v = value.strip()
    if v.startswith("{") or v.startswith("["):
        return json.loads(v)
    return json.loads(Path(value).read_text())


def _set_arg(value: str, group: GroupSpec | None = None):
    v = value.strip()
    if v.startswith("{"):
        return load_set(json.loads(v), group)
    return load_set(value, group)


def _radius(text: str):
    if text == "certified":
        return "certified"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("radius must be 'certified' or an integer") from None


def _window(text: str) -> Window:
    try:
        return Window.parse(text)
    except GroupError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rows(text: str) -> list[tuple[int, ...]]:
    """``"3,0;0,4"`` -> [(3, 0), (0, 4)]."""
    return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]


# --------------------------------------------------------------------------
# subcommands


def cmd_check_complement(args) -> int:
    W, C = _set_arg(args.w), _set_arg(args.c)
    cert = engine.is_complement_on_window(W, C, args.window, args.radius)
    out = cert.to_json(with_witnesses=args.witnesses)
    _emit(args, out, f"{cert.status}: {len(cert.witnesses)}/{cert.window.size} points witnessed"
                     + (f"; first failure at {list(cert.point)} ({cert.reason})" if cert.point else ""))
    return {engine.COVERED: EXIT_OK, engine.NOT_COVERED: EXIT_FAIL}.get(cert.status, EXIT_UNVERIFIED)


def cmd_check_minimal(args) -> int:
    W, C = _set_arg(args.w), _set_arg(args.c)
    env = _set_arg(args.envelope) if args.envelope else None
    cert = engine.minimality_witnesses(W, C, base_window=args.base_window, radius=args.radius,
                                       envelope=env, witness_bound=args.witness_bound)
    lines = [f"{cert.status}: {len(cert.witnesses)}/{len(cert.entries)} witnesses"]
    if cert.reason:
        lines.append(cert.reason)
    for e in cert.entries:
        lines.append(f"  c={list(e.c)} -> x0={list(e.x0) if e.x0 else None} {e.reason}".rstrip())
    _emit(args, cert.to_json(), "\n".join(lines))
    return EXIT_OK if cert.status == engine.MINIMAL else EXIT_UNVERIFIED


def cmd_moderation(args) -> int:
    u = function_from_json(_json_arg(args.u))
    v, bound = (ball_moderation(u) if args.method == "ball" else poly_moderation(u))
    if args.subgroup_index:
        if u.dim != 1:
            raise GroupError("--subgroup-index applies to rank-one heights; pass a basis with --subgroup")
        v, bound = subgroup_valued_moderation(v, SublatticeSpec.of((args.subgroup_index,)), bound)
    elif args.subgroup:
        v, bound = subgroup_valued_moderation(v, SublatticeSpec.of(*_rows(args.subgroup)), bound)
    sample = Window.parse(args.sample) if args.sample else Window.cube(u.arity, -3, 3)
    table = [[list(x), _plain(v(x)), bound(x)] for x in sample.points()]
    try:
        v_json = v.to_json()
    except TypeError:
        v_json = None
    out = {"method": args.method, "u": u.to_json(), "v": v_json, "bound": bound.description,
           "bound_kind": bound.kind, "sample": table}
    text = [f"v via {args.method} moderation; bound: {bound.description}", "x  v(x)  m0(x)"]
    text += [f"{x}  {vx}  {m}" for x, vx, m in table]
    _emit(args, out, "\n".join(text))
    return EXIT_OK


def _plain(v):
    return list(v) if isinstance(v, tuple) else v


def cmd_build(args) -> int:
    from .constructions import coset_lift, graph_min_complement, thm511_max_set

    if args.recipe == "graph":
        need(args, "b", "m", "v")
        B, M = _set_arg(args.b), _set_arg(args.m)
        v = function_from_json(_json_arg(args.v))
        u = function_from_json(_json_arg(args.u)) if args.u else None
        rec = graph_min_complement(B, M, v, u)
        out = {"recipe": "graph", "result": set_to_json(rec.result), "notes": rec.notes}
    elif args.recipe == "coset-lift":
        need(args, "m", "subgroup", "reps")
        M = _set_arg(args.m)
        G = GroupSpec.parse(args.group) if args.group else M.group
        gens = _rows(args.subgroup)
        H = FiniteSubgroup.generated(G, gens) if G.rank == 0 else SublatticeSpec.of(*gens)
        if G.rank == 0 and M.group != G:
            raise GroupError("M must be given in the ambient group")
        res = coset_lift(M, H, _rows(args.reps), G)
        out = {"recipe": "coset-lift", "result": set_to_json(res), "notes": []}
    else:
        need(args, "b", "u", "subgroup", "g2", "m", "v")
        B, M = _set_arg(args.b), _set_arg(args.m)
        u = function_from_json(_json_arg(args.u))
        v = function_from_json(_json_arg(args.v))
        rec = thm511_max_set(B, u, SublatticeSpec.of(*_rows(args.subgroup)), _rows(args.g2)[0], M, v)
        out = {"recipe": "thm511", "result": set_to_json(rec.result), "X": set_to_json(rec.extra["X"]),
               "notes": rec.notes}
    if args.out:
        Path(args.out).write_text(dumps(out))
    _emit(args, out, dumps(out).rstrip())
    return EXIT_OK


def need(args, *names):
    missing = [n for n in names if getattr(args, n) in (None, "")]
    if missing:
        raise GroupError(f"--recipe {args.recipe} needs " + ", ".join(f"--{n}" for n in missing))


def cmd_catalog(args) -> int:
    if not args.id:
        rows = [{"id": i, "description": describe(i)} for i in catalog_ids()]
        _emit(args, rows, "\n".join(f"{r['id']:<22} {r['description']}" for r in rows))
        return EXIT_OK
    S = named_sets(args.id)
    try:
        desc = set_to_json(S)
    except TypeError:
        desc = None
    out = {"id": args.id, "description": describe(args.id), "group": S.group.to_json(), "set": desc,
           "default_window": str(default_window(S))}
    _emit(args, out, dumps(out).rstrip())
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import FiniteGroupTable, minimal_complements, parse_subset, thm24_all, translation_closed

    G = GroupSpec.parse(args.group)
    T = FiniteGroupTable(G)
    if args.thm24:
        reps = thm24_all(G, rep_limit=args.rep_limit)
        bad = [r for r in reps if not r.ok]
        out = {"group": str(args.group), "triples": len(reps), "failures": len(bad),
               "examples": [{"H": [list(h) for h in r.subgroup], "W": [list(w) for w in r.W],
                             "failures": r.failures} for r in bad[:5]]}
        _emit(args, out, f"{len(reps)} triples checked, {len(bad)} failures")
        return EXIT_OK if not bad else EXIT_FAIL
    if not args.w:
        raise GroupError("--w is required unless --thm24 is given")
    Wm = T.mask(parse_subset(args.w, G))
    mins = minimal_complements(Wm, T)
    out = {"group": args.group, "W": [list(w) for w in T.members(Wm)], "count": len(mins),
           "translation_closed": translation_closed(mins, T)}
    if args.list_minimal:
        out["minimal_complements"] = [[list(e) for e in T.members(m)] for m in mins]
    if args.c:
        Cm = T.mask(parse_subset(args.c, G))
        out["C"] = [list(c) for c in T.members(Cm)]
        out["is_complement"] = T.is_complement(Wm, Cm)
        out["is_minimal"] = T.is_minimal(Wm, Cm)
    text = [f"{len(mins)} minimal complements of {out['W']} in {args.group}"]
    if args.list_minimal:
        text += ["  " + " ".join(str(tuple(e)) for e in m) for m in out["minimal_complements"]]
    if args.c:
        text.append(f"C complement: {out['is_complement']}, minimal: {out['is_minimal']}")
    _emit(args, out, "\n".join(text))
    return EXIT_OK


def cmd_render(args) -> int:
    from .render import Layer, Slice, audit, render_ascii, render_svg

    layers = []
    for i, s in enumerate(args.set):
        name, _, ref = s.rpartition("=") if "=" in s and not s.strip().startswith("{") else ("", "", s)
        layers.append(Layer(name or ref, _set_arg(ref)))
    win = args.window
    if win is None:
        win = default_window(layers[0].set)
    elif layers:
        win = win.for_group(layers[0].set.group)
    sl = Slice.parse(args.slice) if args.slice else None
    problems = audit(layers, win, sl)
    if problems:
        print("\n".join(problems), file=sys.stderr)
        return EXIT_FAIL
    if args.format == "png":
        from .plotting import plot_layers

        if not args.out:
            raise GroupError("--format png needs --out")
        plot_layers(args.out, layers, win, sl, args.title)
        return EXIT_OK
    text = (render_svg if args.format == "svg" else render_ascii)(layers, win, sl, args.title)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_run(args) -> int:
    report, code, msg = run_scenario(args.scenario, args.out)
    if report is None:
        print(msg, file=sys.stderr)
        return code
    if args.json:
        sys.stdout.write(dumps(report.to_json()))
    else:
        for c in report.checks:
            print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.status}")
        for name, r in report.renders.items():
            print(f"render {name}: {len(r['audit_problems'])} audit problems")
        if args.out:
            print(f"report written to {args.out}")
    return code


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="addcomp", description="Minimal additive complements in Z^n x torsion.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output on stdout")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check-complement", cmd_check_complement, "verify W + C covers a window")
    sp.add_argument("--w", required=True, help="set descriptor file, inline JSON or catalog id")
    sp.add_argument("--c", required=True)
    sp.add_argument("--window", required=True, type=_window)
    sp.add_argument("--radius", type=_radius, default="certified")
    sp.add_argument("--witnesses", action="store_true", help="include per-point witnesses in JSON")

    sp = add("check-minimal", cmd_check_minimal, "find minimality witnesses")
    sp.add_argument("--w", required=True)
    sp.add_argument("--c", required=True)
    sp.add_argument("--base-window", type=_window, default=None)
    sp.add_argument("--envelope", default=None)
    sp.add_argument("--radius", type=_radius, default="certified")
    sp.add_argument("--witness-bound", type=int, default=None)

    sp = add("moderation", cmd_moderation, "build a moderation of u")
    sp.add_argument("--u", required=True, help="function descriptor (file or inline JSON)")
    sp.add_argument("--method", choices=["ball", "poly"], default="poly")
    sp.add_argument("--subgroup-index", type=int, default=None)
    sp.add_argument("--subgroup", default=None, help='sublattice basis rows, e.g. "3,0;0,4"')
    sp.add_argument("--sample", default=None, help="window on which v and the bound are tabulated")

    sp = add("build", cmd_build, "build a complement from a recipe")
    sp.add_argument("--recipe", required=True, choices=["graph", "coset-lift", "thm511"])
    for a in ("b", "m", "u", "v", "subgroup", "reps", "g2", "group", "out"):
        sp.add_argument(f"--{a}", default=None)

    sp = add("catalog", cmd_catalog, "list or show named sets")
    sp.add_argument("--id", default=None)

    sp = add("oracle", cmd_oracle, "exhaustive search in a finite group")
    sp.add_argument("--group", required=True, help='e.g. "Z4xZ2"')
    sp.add_argument("--w", default=None, help='elements, e.g. "0,0;1,0"')
    sp.add_argument("--c", default=None)
    sp.add_argument("--list-minimal", action="store_true")
    sp.add_argument("--thm24", action="store_true", help="check subgroup confinement on every (H, W)")
    sp.add_argument("--rep-limit", type=int, default=64)

    sp = add("render", cmd_render, "draw sets on a 2-D window")
    sp.add_argument("--set", action="append", required=True, help="[name=]catalog id, file or inline JSON")
    sp.add_argument("--window", type=_window, default=None)
    sp.add_argument("--format", choices=["ascii", "svg", "png"], default="ascii")
    sp.add_argument("--slice", default=None, help='"0,2@0,0,0": axes and the fixed point')
    sp.add_argument("--title", default=None)
    sp.add_argument("--out", default=None)

    sp = add("run", cmd_run, "run a scenario file")
    sp.add_argument("scenario")
    sp.add_argument("--out", default=None, help="report directory")
    return p


def _join_negative_values(argv: list[str]) -> list[str]:
    """``--window -10..10`` -> ``--window=-10..10`` so argparse does not read it as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (a.startswith("--") and "=" not in a and nxt is not None and len(nxt) > 1
                and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == ".")):
            out.append(f"{a}={nxt}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        return args.fn(args)
    except (CatalogError, DescriptorError, GroupError, ValueError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, CatalogError) and exc.args else exc
        print(f"addcomp: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

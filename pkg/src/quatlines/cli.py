"""Command-line interface: ``quatlines <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .grouplib import (
    DEFAULT_CAP,
    GroupClosureError,
    PIT_SEED,
    close_group,
    enumerate_subgroups,
    group_report,
    save_generators,
)
from .linesys import (
    LineSystem,
    absolute_bound,
    angle_set,
    angle_shape,
    is_t_design,
    orbit_lines,
    special_bound,
)
from .parsing import InputError, parse_vector, resolve_group_generators

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(args, data, text_lines):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(text_lines))


def _group(args, source):
    name, gens = resolve_group_generators(source)
    return close_group(gens, cap=args.cap, name=name)


def _bound_info(values, dim, n):
    try:
        shape, _ = angle_shape(values)
    except ValueError:
        return None, None, False
    nu = special_bound(values, dim)
    ab = absolute_bound(shape, dim)
    return nu, ab, nu is not None and nu == n


def _lines_report(L, tmax):
    a = angle_set(L) if len(L) > 1 else None
    values = [v.to_fraction() if v.is_rational() else float(v) for v in a.values] if a else []
    rational = a is not None and all(v.is_rational() for v in a.values)
    nu, ab, meets = _bound_info(values, L.dim, len(L)) if rational else (None, None, False)
    designs = {}
    for t in range(1, tmax + 1):
        dc = is_t_design(L, t)
        designs[str(t)] = {"is_design": dc.is_design, "defect": str(dc.defect)}
    return {
        "n": len(L),
        "dim": L.dim,
        "angles": {str(k): m for k, m in sorted(a.multiset.items(), key=lambda kv: float(kv[0]))} if a else {},
        "homogeneous": a.homogeneous if a else True,
        "equiangular": a.equiangular if a else False,
        "designs": designs,
        "special_bound": str(nu) if nu is not None else None,
        "absolute_bound": str(ab) if ab is not None else None,
        "meets_special_bound": meets,
    }


def _report_text(rep):
    out = [f"{rep['n']} lines in H^{rep['dim']}",
           "angles per line: " + ", ".join(f"{k} x{m}" for k, m in rep["angles"].items())]
    if rep["equiangular"]:
        out.append("equiangular")
    if not rep["homogeneous"]:
        out.append("angle multisets differ between lines")
    for t, d in rep["designs"].items():
        out.append(f"({t},{t})-design: {'yes' if d['is_design'] else 'no'} (defect {d['defect']})")
    if rep["special_bound"] is not None:
        out.append(f"special bound {rep['special_bound']}, absolute bound {rep['absolute_bound']}"
                   + (", met with equality" if rep["meets_special_bound"] else ""))
    return out


# -- subcommands ----------------------------------------------------------


def cmd_verify_paper(args):
    from .verify import run_checks, check_ids

    records = run_checks(only=args.only, seed=args.seed, threads=args.threads)
    if not records:
        raise InputError(f"no check matches {args.only!r}; known: {', '.join(check_ids())}")
    failing = [r for r in records if not r.passed and not r.informational]
    doc = {
        "tool": "quatlines",
        "version": __version__,
        "seed": args.seed,
        "checks": [r.to_json() for r in records],
        "passed": not failing,
    }
    lines = []
    for r in records:
        tag = "PASS" if r.passed else ("NOTE" if r.informational else "FAIL")
        lines.append(f"{tag} {r.name} [{r.location}]: expected {r.expected}, computed {r.computed}")
    notes = sum(1 for r in records if r.informational and not r.passed)
    lines.append(f"{len(records) - len(failing) - notes} passed, {len(failing)} failed, {notes} informational")
    _emit(args, doc, lines)
    if failing:
        print(f"first failing check: {failing[0].name}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_group(args):
    G = _group(args, args.group)
    if args.save:
        save_generators(G, args.save)
    rep = group_report(G)
    lines = [f"group {rep['name']}: order {rep['order']}",
             "center: " + ", ".join(rep["center"]),
             f"{len(rep['classes'])} conjugacy classes (size / element order / fixed lines of the orbit of w):"]
    lines += [f"  {c['size']:5d} {c['order']:4d} {c['fixed_lines'] if c['fixed_lines'] is not None else '-':>4}"
              for c in rep["classes"]]
    r = rep["reflections"]
    lines.append(f"reflections: {r['count']} of orders {r['orders']}, {r['root_lines']} root lines")
    _emit(args, rep, lines)
    return EXIT_OK


def cmd_orbit(args):
    G = _group(args, args.group)
    v = parse_vector(args.vector)
    if v.dim != G.dim:
        raise InputError(f"vector has dimension {v.dim}, group acts on H^{G.dim}")
    if v.is_zero():
        raise InputError("the zero vector has no orbit of lines")
    L = orbit_lines(G, v)
    rep = _lines_report(L, args.tmax)
    rep["vectors"] = L.n_vectors
    _emit(args, rep, [f"orbit of {args.vector} under {G.name} ({G.order} elements, {L.n_vectors} distinct vectors)"]
          + _report_text(rep))
    return EXIT_OK


def cmd_design_check(args):
    vecs = [parse_vector(v) for v in args.vectors]
    if any(v.is_zero() for v in vecs):
        raise InputError("zero vector in the line list")
    if args.group:
        G = _group(args, args.group)
        L = LineSystem()
        for v in vecs:
            for x in orbit_lines(G, v):
                L.add(x)
    else:
        L = LineSystem(vecs)
    if len(L) < 2:
        raise InputError("need at least two distinct lines")
    rep = _lines_report(L, max(args.t))
    ok = all(rep["designs"][str(t)]["is_design"] for t in args.t)
    rep["requested"] = {str(t): rep["designs"][str(t)]["is_design"] for t in args.t}
    _emit(args, rep, _report_text(rep))
    return EXIT_OK if ok else EXIT_FAIL


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"angle {text!r} is not a rational number") from None


def cmd_bounds(args):
    angles = [_fraction(a) for a in args.angles]
    try:
        shape, _ = angle_shape(angles)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    nu = special_bound(angles, args.d)
    ab = absolute_bound(shape, args.d)
    rep = {"angles": [str(a) for a in angles], "d": args.d, "shape": shape,
           "special_bound": str(nu) if nu is not None else None, "absolute_bound": str(ab)}
    _emit(args, rep, [f"angle set {{{', '.join(rep['angles'])}}} in H^{args.d} ({shape})",
                      f"special bound: {rep['special_bound'] or 'not applicable (restriction fails)'}",
                      f"absolute bound: {ab}"])
    return EXIT_OK


def cmd_stabilizer(args):
    from .qlinalg import perp_vector
    from .stabilizers import projective_stabilizer, restriction_characters

    G = _group(args, args.group)
    v = parse_vector(args.vector)
    if v.dim != G.dim or v.is_zero():
        raise InputError("vector must be nonzero and match the group's dimension")
    S = projective_stabilizer(G, v)
    rep = S.to_json()
    rep["fs_indicator"] = _safe_fs(S)
    lines = [f"stabilizer of the line of {args.vector} in {G.name}: order {S.order}",
             f"scalar image: {rep['hstar_class']}, faithful: {rep['faithful']}, indicator: {rep['fs_indicator']}"]
    if G.dim == 2:
        Sp = projective_stabilizer(G, perp_vector(v))
        chi, chip, distinct = restriction_characters(S, Sp)
        rep["perp"] = {"hstar_class": str(Sp.hstar_class()), "fs_indicator": _safe_fs(Sp),
                       "character_values": {str(G[i]): str(x) for i, x in chip.items()},
                       "distinct_from_line": distinct}
        lines.append("class rep: character on the line / on its complement")
        lines += [f"  {G[i]}: {chi[i]} / {chip[i]}" for i in chi]
        lines.append(f"characters {'differ' if distinct else 'agree'}")
    _emit(args, rep, lines)
    return EXIT_OK


def _safe_fs(S):
    try:
        return S.fs_indicator()
    except ValueError:
        return None


def cmd_fixed_lines(args):
    from .fixedlines import maximal_memberships, search_fixed_lines

    name, gens = resolve_group_generators(args.group)
    close_group(gens, cap=args.cap)  # validates unitarity and finiteness
    found = search_fixed_lines(gens, restarts=args.restarts, seed=args.seed, tol=args.tol,
                               denom_bound=args.denom_bound, threads=args.threads)
    rep = {"group": name, "restarts": args.restarts, "seed": args.seed,
           "candidates": [c.to_json() for c in found]}
    lines = [f"{len(found)} fixed line(s) for {name}"]
    parent = _group(args, args.parent) if args.parent else None
    subs = enumerate_subgroups(parent) if parent is not None else None
    for n, c in enumerate(found):
        lines.append(f"  [{n}] residual {c.residual:.2e}, exact {c.exact if c.exact is not None else '-'}, "
                     f"certified {c.certified}")
        if parent is not None and c.certified:
            L = orbit_lines(parent, c.exact)
            r = _lines_report(L, 3)
            mem = maximal_memberships(parent, subs, c.exact)
            rep["candidates"][n]["orbit"] = {"parent": parent.name, **r, "maximal_reducible_orders": mem}
            lines.append(f"      orbit under {parent.name}: {len(L)} lines, angles {r['angles']}, "
                         f"in maximal reducible classes of orders {mem}")
    _emit(args, rep, lines)
    return EXIT_OK


def cmd_subgroups(args):
    G = _group(args, args.group)
    subs = enumerate_subgroups(G, min_order=args.min_order, seed=args.seed)
    if args.reducible:
        subs = [s for s in subs if s.reducible]
    rows = []
    counts = {}
    for s in subs:
        counts[s.order] = counts.get(s.order, 0) + 1
        tag = f"{G.name or 'group'}_{s.order}_{counts[s.order]}"
        rows.append({"id": tag, "order": s.order, "class_size": s.class_size,
                     "reducible": s.reducible, "maximal_reducible": s.maximal_reducible})
        if args.save_dir:
            out = Path(args.save_dir)
            out.mkdir(parents=True, exist_ok=True)
            gens = s.generator_matrices(G) or [G[0]]
            save_generators(close_group(gens, cap=s.order, name=tag), out / f"{tag}.json")
    red = [r for r in rows if r["reducible"]]
    rep = {"group": G.name, "order": G.order, "classes": rows,
           "reducible_count": len(red), "maximal_reducible_orders": [r["order"] for r in red if r["maximal_reducible"]]}
    lines = [f"{len(rows)} subgroup classes of {G.name} (order {G.order})", "  id  order  class-size  reducible  maximal"]
    lines += [f"  {r['id']}  {r['order']}  {r['class_size']}  {r['reducible']}  {r['maximal_reducible']}" for r in rows]
    lines.append(f"reducible: {len(red)}; maximal reducible orders: {rep['maximal_reducible_orders']}")
    _emit(args, rep, lines)
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=PIT_SEED, help="seed for random vectors and restarts")
    common.add_argument("--threads", type=int, default=1, help="worker threads where supported")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum group order during closure")

    p = argparse.ArgumentParser(prog="quatlines", description="Quaternionic reflection groups, line systems and designs.")
    p.add_argument("--version", action="version", version=f"quatlines {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-paper", parents=[common], help="run the reproduction checks")
    s.add_argument("--only", help="run only checks whose id or name starts with this")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("group", parents=[common], help="order, classes and reflections of a group")
    s.add_argument("group", help="built-in name or generator file")
    s.add_argument("--save", help="write the generators as JSON")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("orbit", parents=[common], help="line system of a group orbit")
    s.add_argument("group")
    s.add_argument("vector", help="e.g. '(1, j)', '(sqrt(2)*i, 1+sqrt(3))' or 'w'")
    s.add_argument("--tmax", type=int, default=4, help="largest t to test")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("design-check", parents=[common], help="(t,t)-design test for given lines")
    s.add_argument("vectors", nargs="+")
    s.add_argument("--group", help="use the orbits of the vectors under this group")
    s.add_argument("--t", type=int, action="append", required=True, help="design strength (repeatable)")
    s.set_defaults(func=cmd_design_check)

    s = sub.add_parser("bounds", parents=[common], help="special and absolute bounds for an angle set")
    s.add_argument("angles", nargs="+", help="angles such as 0 1/3 2/3")
    s.add_argument("--d", type=int, default=2, help="quaternionic dimension")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("stabilizer", parents=[common], help="projective stabilizer of a line")
    s.add_argument("group")
    s.add_argument("vector")
    s.set_defaults(func=cmd_stabilizer)

    from .fixedlines import DEFAULT_DENOM_BOUND, DEFAULT_RESTARTS, DEFAULT_TOL

    s = sub.add_parser("fixed-lines", parents=[common], help="numerical search and exact certification of fixed lines")
    s.add_argument("group", help="built-in name or generator file")
    s.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--denom-bound", type=int, default=DEFAULT_DENOM_BOUND)
    s.add_argument("--parent", help="report orbits and maximal reducible classes inside this group")
    s.set_defaults(func=cmd_fixed_lines)

    s = sub.add_parser("subgroups", parents=[common], help="subgroup classes with reducibility")
    s.add_argument("group")
    s.add_argument("--min-order", type=int, default=1)
    s.add_argument("--reducible", action="store_true", help="list reducible classes only")
    s.add_argument("--save-dir", help="write each class's generators as JSON here")
    s.set_defaults(func=cmd_subgroups)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "cap", 1) < 1:
            raise InputError("--cap must be positive")
        if getattr(args, "threads", 1) < 1:
            raise InputError("--threads must be positive")
        return args.func(args)
    except (InputError, GroupClosureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

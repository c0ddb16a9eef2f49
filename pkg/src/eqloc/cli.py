"""Batch front end: parse workspace documents, run operations, emit reports.

Every report names the caps and budgets it was computed with and flags
truncation.  Exit status: 0 on decisive success, 2 on inconclusive verdicts
or exhausted budgets, 1 on errors.  Default caps can be overridden with the
environment variable EQLOC_CAPS, e.g. EQLOC_CAPS="stages=4,n_cap=2".
"""

from __future__ import annotations

import argparse
import os
import sys

from .cat import colim, hom_complex, terminal_dmap
from .documents import (
    DocumentError,
    SCHEMA,
    Workspace,
    diagram_cells_doc,
    dmap_doc,
    sset_doc,
    trace_doc,
    verdict_doc,
    write_report,
)
from .homotopy import (
    cone,
    default_orbit_category,
    is_kan,
    is_null_homotopic,
    pi0,
    pi_n,
    properness_probe,
)
from .localization import (
    LocalizationCaps,
    LocalizationSpec,
    fixed_point_locality_report,
    is_S_local,
    localize,
)
from .orbits import orbit_category_of
from .soa import Budget, rlp_check, setup_I, setup_J, small_object_argument

ENV_CAPS = "EQLOC_CAPS"

_CAP_KEYS = ("stages", "n_cap", "dim_cap", "hor_n_cap", "j_n_cap",
             "probe_n_cap", "hom_cap", "pi_cap", "level_cap")


def env_caps() -> dict:
    raw = os.environ.get(ENV_CAPS, "")
    out = {}
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, value = chunk.partition("=")
        if key not in _CAP_KEYS:
            raise DocumentError(f"{ENV_CAPS}: unknown cap {key!r}")
        out[key] = int(value)
    return out


def cap(args, name, default):
    explicit = getattr(args, name, None)
    if explicit is not None:
        return explicit
    return env_caps().get(name, default)


def load_workspace(args) -> Workspace:
    ws = Workspace()
    for path in args.workspace or []:
        ws.load(path)
    return ws


def provenance(args) -> dict:
    # the output path is where the report lands, not part of its derivation
    skip = ("func", "command", "out")
    items = sorted(vars(args).items())
    return {"command": args.command,
            "args": {k: v for k, v in items
                     if k not in skip and v is not None}}


def emit(args, report, human):
    report = {"schema": SCHEMA, "provenance": provenance(args), **report}
    text = write_report(getattr(args, "out", None), report)
    print(human)
    if getattr(args, "out", None):
        print(f"report written to {args.out}")
    return text


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args):
    ws = load_workspace(args)
    summary = ws.summary()
    emit(args, {"workspace": summary},
         "; ".join(f"{len(v)} {k}" for k, v in summary.items()))
    return 0


def cmd_colim(args):
    ws = load_workspace(args)
    X = ws.diagram(args.diagram)
    c = colim(X)
    report = {
        "colim": sset_doc(c.space),
        "cocone": {d: {cell: [list(s.word), s.cell]
                       for cell, s in sorted(c.cocone[d].assignment.items())}
                   for d in X.shape.objects},
    }
    counts = [len(level) for level in c.space.levels]
    emit(args, report, f"colim cells per dimension: {counts}")
    return 0


def cmd_orbits(args):
    ws = load_workspace(args)
    X = ws.diagram(args.diagram)
    level_cap = cap(args, "level_cap", 0)
    dim_cap = cap(args, "dim_cap", 1)
    E = orbit_category_of(X, level_cap, dim_cap)
    orbits = []
    for i, T in enumerate(E.orbits):
        orbits.append({
            "cells": diagram_cells_doc(T),
            "witnesses": [[n, v] for n, v in E.witnesses[i]],
        })
    report = {
        "orbits": orbits,
        "hom_counts": {f"{i}->{j}": len(maps)
                       for (i, j), maps in sorted(E.homs.items())},
        "caps": {"level_cap": level_cap, "dim_cap": dim_cap},
        "truncated": True,
    }
    emit(args, report, f"{len(orbits)} orbit(s) up to isomorphism "
         f"at level_cap={level_cap}")
    return 0


def cmd_homcx(args):
    ws = load_workspace(args)
    A = ws.diagram(args.source)
    X = ws.diagram(args.target)
    if A.shape != X.shape:
        raise DocumentError("source and target have different shapes")
    dim_cap = cap(args, "dim_cap", 2)
    hc = hom_complex(A, X, dim_cap)
    report = {
        "hom_complex": sset_doc(hc.space),
        "caps": {"dim_cap": dim_cap},
        "truncated": True,
    }
    counts = [len(level) for level in hc.space.levels]
    emit(args, report, f"hom complex cells per dimension: {counts} "
         f"(truncated at {dim_cap})")
    return 0


def cmd_rlp(args):
    ws = load_workspace(args)
    i = ws.dmap(args.left)
    p = ws.dmap(args.right)
    if i.source.shape != p.source.shape:
        raise DocumentError("the two maps live over different shapes")
    rep = rlp_check(i, p)
    report = {"holds": rep.holds, "n_squares": rep.n_squares}
    if rep.counterexample is not None:
        a, b = rep.counterexample
        report["counterexample"] = {"left": dmap_doc(a), "right": dmap_doc(b)}
    emit(args, report,
         f"rlp {'holds' if rep.holds else 'fails'} over {rep.n_squares} squares")
    return 0


def _budget(args):
    return Budget(stages=cap(args, "stages", 4),
                  n_cap=cap(args, "n_cap", 2),
                  dim_cap=cap(args, "dim_cap", 1))


def cmd_factorize(args):
    ws = load_workspace(args)
    f = ws.dmap(args.map)
    budget = _budget(args)
    instr = setup_I(budget) if args.klass == "I" else setup_J(budget)
    r = small_object_argument(f, instr, strict=args.strict)
    delta_report = {"stabilized": r.stopped_by == "stabilization"}
    if r.stopped_by == "stabilization":
        # re-verify independently: every assigned square of delta lifts
        from .soa import find_lift
        unsolved = [sq.member_id for sq in instr.assign(r.delta)
                    if find_lift(sq.top, r.delta, sq.left, sq.right) is None]
        delta_report["delta_rlp_verified"] = not unsolved
    report = {"trace": trace_doc(r), "delta_report": delta_report}
    emit(args, report,
         f"factorized in {r.n_stages} stage(s), stopped by {r.stopped_by}")
    return 0 if r.stopped_by == "stabilization" else 2


def _loc_caps(args) -> LocalizationCaps:
    return LocalizationCaps(
        hor_n_cap=cap(args, "n_cap", 2),
        j_n_cap=cap(args, "j_n_cap", 1),
        probe_n_cap=cap(args, "probe_n_cap", 2),
        dim_cap=cap(args, "dim_cap", 1),
        hom_cap=cap(args, "hom_cap", 2),
        pi_cap=cap(args, "pi_cap", 0),
        stages=cap(args, "stages", 3))


def _loc_spec(args, ws) -> LocalizationSpec:
    caps = _loc_caps(args)
    shape = ws.diagram(args.diagram).shape
    if getattr(args, "spec", None):
        doc = ws.spec_docs.get(args.spec)
        if doc is None:
            raise DocumentError(f"unknown localization spec {args.spec!r}")
        doc_caps = doc.get("caps", {})
        caps = LocalizationCaps(**{
            **{k: getattr(caps, k) for k in
               ("hor_n_cap", "j_n_cap", "probe_n_cap", "dim_cap",
                "hom_cap", "pi_cap", "stages", "uniqueness_limit")},
            **doc_caps})
        if "fixedpointwise" in doc:
            f = ws.maps.get(doc["fixedpointwise"])
            if f is None:
                raise DocumentError(
                    f"unknown map {doc['fixedpointwise']!r} in spec")
            return LocalizationSpec(shape, fixedpointwise=f, caps=caps)
        gens = [ws.dmap(n) for n in doc.get("generators", [])]
        return LocalizationSpec(shape, generators=gens, caps=caps)
    if args.fixedpointwise_f:
        f = ws.maps.get(args.fixedpointwise_f)
        if f is None:
            raise DocumentError(f"unknown map {args.fixedpointwise_f!r}")
        return LocalizationSpec(shape, fixedpointwise=f, caps=caps)
    if not args.generators:
        raise DocumentError("one of --spec, --generators or "
                            "--fixedpointwise-f is needed")
    gens = [ws.dmap(n) for n in args.generators.split(",")]
    return LocalizationSpec(shape, generators=gens, caps=caps)


def cmd_localize(args):
    ws = load_workspace(args)
    X = ws.diagram(args.diagram)
    spec = _loc_spec(args, ws)
    r = localize(X, spec)
    report = {
        "local_object": {d: sset_doc(r.local_object.at[d])
                         for d in r.local_object.shape.objects},
        "coaugmentation": dmap_doc(r.j),
        "trace": trace_doc(r.trace),
        "locality": verdict_doc(r.locality),
    }
    if spec.mode == "fixedpointwise":
        E = default_orbit_category(r.j, 0, spec.caps.dim_cap)
        reports = fixed_point_locality_report(r.local_object, spec.f, E,
                                              spec.caps)
        report["fixed_points"] = [
            {"orbit": rep.orbit_index, "fibrant": rep.fibrant,
             "pi0": rep.components, "local": verdict_doc(rep.local)}
            for rep in reports]
    emit(args, report,
         f"localized in {r.trace.n_stages} stage(s), "
         f"stopped by {r.trace.stopped_by}; locality: {r.locality.value}")
    if r.trace.stopped_by != "stabilization" or \
            r.locality.value == "inconclusive":
        return 2
    return 0


def cmd_locality(args):
    ws = load_workspace(args)
    Z = ws.diagram(args.diagram)
    spec = _loc_spec(args, ws)
    v = is_S_local(Z, spec)
    report = {"locality": verdict_doc(v)}
    if spec.mode == "fixedpointwise":
        E = default_orbit_category(terminal_dmap(Z), 0, spec.caps.dim_cap)
        reports = fixed_point_locality_report(Z, spec.f, E, spec.caps)
        report["fixed_points"] = [
            {"orbit": rep.orbit_index, "fibrant": rep.fibrant,
             "pi0": rep.components, "local": verdict_doc(rep.local)}
            for rep in reports]
    emit(args, report, f"locality: {v.value} ({v.reason or 'at caps'})")
    return {"yes": 0, "no": 0, "inconclusive": 2}[v.value]


def cmd_pi(args):
    ws = load_workspace(args)
    X = ws.sset(args.complex)
    if args.n == 0:
        classes = pi0(X)
        report = {"n": 0, "classes": [list(c) for c in classes]}
        emit(args, report, f"pi0 has {len(classes)} class(es)")
        return 0
    kan_cap = args.n + 1
    if not is_kan(X, kan_cap):
        print(f"error: complex is not fibrant up to level {kan_cap}",
              file=sys.stderr)
        return 1
    if args.basepoint and args.basepoint not in X.cells(0):
        raise DocumentError(f"unknown basepoint {args.basepoint!r}")
    basepoints = [args.basepoint] if args.basepoint else \
        [cls[0] for cls in pi0(X)]
    result = {}
    for v in basepoints:
        classes = pi_n(X, v, args.n, kan_checked=True)
        result[v] = len(classes)
    report = {"n": args.n, "classes_per_basepoint": result,
              "caps": {"kan_checked_to": kan_cap}}
    emit(args, report,
         "; ".join(f"pi_{args.n} at {v}: {k}" for v, k in result.items()))
    return 0


def cmd_cone(args):
    ws = load_workspace(args)
    A = ws.diagram(args.diagram)
    cn = cone(A)
    c = colim(cn.space)
    report = {
        "cone": {d: sset_doc(cn.space.at[d]) for d in cn.space.shape.objects},
        "inclusion": dmap_doc(cn.inclusion),
        "colim_cells": [len(level) for level in c.space.levels],
    }
    emit(args, report,
         f"cone cells: {diagram_cells_doc(cn.space)}; "
         f"colim cells: {[len(l) for l in c.space.levels]}")
    return 0


def cmd_nullcheck(args):
    ws = load_workspace(args)
    f = ws.dmap(args.map)
    verdict, H = is_null_homotopic(f, search_budget=args.budget)
    report = {"verdict": verdict_doc(verdict)}
    if H is not None:
        report["homotopy"] = dmap_doc(H)
    emit(args, report, f"null-homotopic: {verdict.value}")
    return {"yes": 0, "no": 0, "inconclusive": 2}[verdict.value]


def cmd_proper_probe(args):
    ws = load_workspace(args)
    weq = ws.dmap(args.weq)
    along = ws.dmap(args.along)
    pi_cap = cap(args, "pi_cap", 0)
    hom_cap = cap(args, "hom_cap", 1)
    E = default_orbit_category(weq, 0, cap(args, "dim_cap", 1))
    v = properness_probe(args.kind, weq, along, E, pi_cap, hom_cap)
    emit(args, {"verdict": verdict_doc(v), "kind": args.kind},
         f"{args.kind} properness probe: {v.value}")
    return {"yes": 0, "no": 0, "inconclusive": 2}[v.value]


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqloc",
        description="Finite simplicial sets, diagram categories, and "
                    "equivariant localization at desk scale.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-w", "--workspace", action="append",
                       help="workspace document (repeatable)")
        p.add_argument("--out", help="write the JSON report here")

    p = sub.add_parser("parse", help="validate workspace documents")
    common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("colim", help="colimit of a diagram")
    common(p)
    p.add_argument("-d", "--diagram", required=True)
    p.set_defaults(func=cmd_colim)

    p = sub.add_parser("orbits", help="orbit category of a diagram")
    common(p)
    p.add_argument("-d", "--diagram", required=True)
    p.add_argument("--level-cap", dest="level_cap", type=int)
    p.add_argument("--dim-cap", dest="dim_cap", type=int)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("homcx", help="mapping complex of two diagrams")
    common(p)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--dim-cap", dest="dim_cap", type=int)
    p.set_defaults(func=cmd_homcx)

    p = sub.add_parser("rlp", help="right lifting property check")
    common(p)
    p.add_argument("-i", "--left", required=True, help="the lifting map")
    p.add_argument("-p", "--right", required=True, help="the map tested")
    p.set_defaults(func=cmd_rlp)

    p = sub.add_parser("factorize", help="generalized small object argument")
    common(p)
    p.add_argument("--map", required=True)
    p.add_argument("--class", dest="klass", choices=("I", "J"), default="I")
    p.add_argument("--n-cap", dest="n_cap", type=int)
    p.add_argument("--dim-cap", dest="dim_cap", type=int)
    p.add_argument("--stages", type=int)
    p.add_argument("--strict", action="store_true",
                   help="re-attach squares whose lift already exists")
    p.set_defaults(func=cmd_factorize)

    def loc_flags(p):
        p.add_argument("-d", "--diagram", required=True)
        p.add_argument("--spec", help="a named localization spec")
        p.add_argument("--generators", help="comma-separated map names")
        p.add_argument("--fixedpointwise-f", dest="fixedpointwise_f",
                       help="a map of simplicial sets, e.g. empty-to-point")
        p.add_argument("--n-cap", dest="n_cap", type=int)
        p.add_argument("--j-n-cap", dest="j_n_cap", type=int)
        p.add_argument("--probe-n-cap", dest="probe_n_cap", type=int)
        p.add_argument("--dim-cap", dest="dim_cap", type=int)
        p.add_argument("--hom-cap", dest="hom_cap", type=int)
        p.add_argument("--pi-cap", dest="pi_cap", type=int)
        p.add_argument("--stages", type=int)

    p = sub.add_parser("localize", help="localization functor")
    common(p)
    loc_flags(p)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("locality", help="is the diagram local?")
    common(p)
    loc_flags(p)
    p.set_defaults(func=cmd_locality)

    p = sub.add_parser("pi", help="homotopy classes of a complex")
    common(p)
    p.add_argument("--complex", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basepoint")
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("cone", help="cone of a diagram")
    common(p)
    p.add_argument("-d", "--diagram", required=True)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("nullcheck", help="is a map null-homotopic?")
    common(p)
    p.add_argument("--map", required=True)
    p.add_argument("--budget", type=int, help="search node budget")
    p.set_defaults(func=cmd_nullcheck)

    p = sub.add_parser("proper-probe", help="properness probe on an instance")
    common(p)
    p.add_argument("--kind", choices=("left", "right"), required=True)
    p.add_argument("--weq", required=True)
    p.add_argument("--along", required=True)
    p.add_argument("--pi-cap", dest="pi_cap", type=int)
    p.add_argument("--hom-cap", dest="hom_cap", type=int)
    p.add_argument("--dim-cap", dest="dim_cap", type=int)
    p.set_defaults(func=cmd_proper_probe)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

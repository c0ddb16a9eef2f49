"""Equivariant weak-equivalence and fibration probes, Kan machinery,
combinatorial homotopy groups at a cap, cylinders, cones and null homotopies.

Weak-equivalence checking is a semi-decision: verdicts are three-valued and
every report names the caps it was computed at.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cat import (
    Diagram,
    DiagramMap,
    hom_D,
    hom_complex_post,
    point_diagram,
    pullback_D,
    pushout_D,
    tensor,
    tensor_projection,
    tensor_unit_section,
    terminal_dmap,
    wrap_smap,
    wrap_sset,
)
from .glue import UnionFind
from .orbits import OrbitCategory, orbit_category_of, orbit_category_union
from .simplicial import (
    BudgetExceeded,
    SimplicialMap,
    SimplicialSet,
    degenerate_at,
    enumerate_maps,
    hom_set,
    horn,
    is_injective,
    nondeg,
    standard_simplex,
)
from .soa import Budget, setup_J, small_object_argument


@dataclass(frozen=True)
class Verdict:
    """A three-valued answer with the caps it was decided at."""

    value: str  # "yes" | "no" | "inconclusive"
    caps: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.value == "yes"


YES = "yes"
NO = "no"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# Kan conditions and homotopy groups of simplicial sets


def horn_has_filler(X: SimplicialSet, n, k, phi: SimplicialMap) -> bool:
    required = {}
    for i in range(n + 1):
        if i == k:
            continue
        facet = ".".join(str(v) for v in range(n + 1) if v != i)
        required[i] = phi(nondeg(facet))
    idx = X._faces_index(n)
    i0 = next(iter(required))
    pool = idx.get((i0, required[i0]), ())
    for cand in pool:
        if all(X.face(cand, i) == required[i] for i in required):
            return True
    return False


def is_kan(X: SimplicialSet, n_cap) -> bool:
    """Right lifting against all horns of dimension <= n_cap, exhaustively.

    This certifies fibrancy only up to the cap; callers flag truncation.
    """
    for n in range(1, n_cap + 1):
        for k in range(n + 1):
            H = horn(n, k)
            for phi in hom_set(H, X):
                if not horn_has_filler(X, n, k, phi):
                    return False
    return True


def pi0(X: SimplicialSet):
    """Connected components: vertices modulo the edge relation.

    Computed by graph traversal; canonical class order by least vertex.
    """
    vertices = list(X.cells(0))
    adjacency = {v: set() for v in vertices}
    for e in X.cells(1):
        a = X.face(nondeg(e), 0).cell
        b = X.face(nondeg(e), 1).cell
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = set()
    classes = []
    for v in vertices:
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in sorted(adjacency[u]):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        classes.append(tuple(sorted(comp)))
    return tuple(classes)


def sphere_simplices(X: SimplicialSet, basepoint, n):
    """n-simplices whose every face is the degenerate basepoint."""
    base = degenerate_at(X, basepoint, n - 1)
    out = []
    for s in X.simplices(n):
        if all(X.face(s, i) == base for i in range(n + 1)):
            out.append(s)
    return out


def pi_n(X: SimplicialSet, basepoint, n, kan_checked=False):
    """Homotopy classes of n-spheres at the basepoint, for Kan X.

    Two spheres are identified when an (n+1)-simplex has them as its last two
    faces and the degenerate basepoint elsewhere; the closure is computed by
    union-find.  Requires fibrancy up to n+1, checked unless the caller
    already did.
    """
    if not kan_checked and not is_kan(X, n + 1):
        raise ValueError("pi_n needs a Kan complex up to level n+1")
    spheres = sphere_simplices(X, basepoint, n)
    uf = UnionFind(spheres)
    base = degenerate_at(X, basepoint, n)
    for w in X.simplices(n + 1):
        if all(X.face(w, i) == base for i in range(n)):
            a, b = X.face(w, n), X.face(w, n + 1)
            if a in uf.parent and b in uf.parent:
                uf.union(a, b)
    classes = {}
    for s in spheres:
        classes.setdefault(uf.find(s), []).append(s)
    return tuple(tuple(sorted(cls, key=X.skey)) for cls in
                 sorted(classes.values(), key=lambda c: X.skey(c[0])))


@dataclass
class HomotopyReport:
    pi0: tuple
    pi_n: dict            # (basepoint, n) -> tuple of classes
    cap: int
    is_kan_at_cap: bool
    truncated: bool = True


def homotopy_report(X: SimplicialSet, cap) -> HomotopyReport:
    components = pi0(X)
    kan = is_kan(X, cap + 1)
    groups = {}
    if kan:
        for cls in components:
            v = cls[0]
            for n in range(1, cap + 1):
                groups[(v, n)] = pi_n(X, v, n, kan_checked=True)
    return HomotopyReport(pi0=components, pi_n=groups, cap=cap,
                          is_kan_at_cap=kan)


# ---------------------------------------------------------------------------
# lifting and weak-equivalence probes for plain simplicial sets


def sset_rlp(i: SimplicialMap, p: SimplicialMap) -> bool:
    """Right lifting property of p against i, at the simplicial-set level."""
    from .simplicial import divide_word
    X = p.source
    rights = hom_set(i.target, p.target)
    for a in hom_set(i.source, p.source):
        ap = a.then(p)
        for b in rights:
            if i.then(b) != ap:
                continue
            pins = {}
            ok = True
            for e in i.source.all_cells():
                img = i(nondeg(e))
                sol = divide_word(X, a(nondeg(e)), img.word)
                if sol is None or pins.get(img.cell, sol) != sol:
                    ok = False
                    break
                pins[img.cell] = sol
            if not ok:
                return False

            def fiber(cell, cand):
                return p(cand) == b(nondeg(cell))

            lifts = enumerate_maps(i.target, X, pins=pins,
                                   cell_filter=fiber, limit=1)
            if not lifts:
                return False
    return True


def fibrant_replace(X: SimplicialSet, budget: Budget):
    """Kan-ify by gluing horn fillers; returns (replacement, unit, stabilized)."""
    f = terminal_dmap(wrap_sset(X))
    r = small_object_argument(f, setup_J(budget))
    return (r.gamma.target.at["*"], r.gamma.components["*"],
            r.stopped_by == "stabilization")


def fibrant_replace_map(phi: SimplicialMap, budget: Budget):
    """Replace a map by one between Kan complexes, up to the budget.

    The target is Kan-ified first, then the composite is factored with horn
    fillers; the middle map is anodyne, so homotopy comparisons transfer.
    Returns (phi_hat, stabilized).
    """
    Yh, jY, okY = fibrant_replace(phi.target, budget)
    r = small_object_argument(wrap_smap(phi.then(jY)), setup_J(budget))
    return r.delta.components["*"], okY and r.stopped_by == "stabilization"


def _compare_pi_n(phi: SimplicialMap, v, n) -> bool:
    """Bijectivity of the induced map on pi_n at the basepoint v."""
    X, Y = phi.source, phi.target
    cls_x = pi_n(X, v, n, kan_checked=True)
    w = phi(nondeg(v)).cell
    cls_y = pi_n(Y, w, n, kan_checked=True)
    index_y = {}
    for idx, cls in enumerate(cls_y):
        for s in cls:
            index_y[s] = idx
    images = []
    for cls in cls_x:
        img = phi(cls[0])
        if img not in index_y:
            return False
        images.append(index_y[img])
    return len(set(images)) == len(images) and set(images) == \
        set(range(len(cls_y)))


def sset_weq_probe(phi: SimplicialMap, pi_cap, budget: Budget) -> Verdict:
    """Weak-equivalence probe: pi0 bijection and pi_n bijections at the cap.

    Non-Kan inputs are fibrant-replaced first; a budget-stopped replacement
    makes the verdict inconclusive.
    """
    caps = ("pi_cap", pi_cap, "n_cap", budget.n_cap, "stages", budget.stages)
    if not (is_kan(phi.source, pi_cap + 1) and is_kan(phi.target, pi_cap + 1)):
        phi, ok = fibrant_replace_map(phi, budget)
        if not ok:
            return Verdict(INCONCLUSIVE, caps, "fibrant replacement hit budget")
    cls_x, cls_y = pi0(phi.source), pi0(phi.target)
    if len(cls_x) != len(cls_y):
        return Verdict(NO, caps, "pi0 cardinality differs")
    index_y = {v: i for i, cls in enumerate(cls_y) for v in cls}
    images = {index_y[phi(nondeg(cls[0])).cell] for cls in cls_x}
    if len(images) != len(cls_x):
        return Verdict(NO, caps, "pi0 not bijective")
    for cls in cls_x:
        v = cls[0]
        for n in range(1, pi_cap + 1):
            if not _compare_pi_n(phi, v, n):
                return Verdict(NO, caps, f"pi_{n} not bijective at {v}")
    return Verdict(YES, caps)


# ---------------------------------------------------------------------------
# equivariant probes through orbit mapping complexes


def default_orbit_category(f: DiagramMap, level_cap=0, dim_cap=1):
    return orbit_category_union(
        orbit_category_of(f.source, level_cap, dim_cap),
        orbit_category_of(f.target, level_cap, dim_cap))


def is_fibration_equivariant(f: DiagramMap, orbits: OrbitCategory,
                             n_cap, hom_cap) -> bool:
    """Horn-RLP of hom(T, f) for every orbit T, at the caps."""
    from .simplicial import horn_inclusion
    for T in orbits.orbits:
        phi = hom_complex_post(T, f, hom_cap)
        for n in range(1, n_cap + 1):
            for k in range(n + 1):
                if not sset_rlp(horn_inclusion(n, k), phi):
                    return False
    return True


def is_weq_equivariant(f: DiagramMap, orbits: OrbitCategory,
                       pi_cap, hom_cap,
                       budget: Optional[Budget] = None) -> Verdict:
    """Equivariant weak-equivalence probe through all orbit mapping complexes."""
    budget = budget or Budget(stages=3, n_cap=pi_cap + 1, dim_cap=0)
    worst = YES
    for idx, T in enumerate(orbits.orbits):
        phi = hom_complex_post(T, f, hom_cap)
        v = sset_weq_probe(phi, pi_cap, budget)
        if v.value == NO:
            return Verdict(NO, v.caps, f"orbit {idx}: {v.reason}")
        if v.value == INCONCLUSIVE:
            worst = INCONCLUSIVE
    return Verdict(worst, ("pi_cap", pi_cap, "hom_cap", hom_cap))


def is_cofibration(g: DiagramMap) -> bool:
    """Levelwise injectivity, the cofibration test used at desk scale."""
    return all(is_injective(g.components[d])
               for d in g.source.shape.objects)


# ---------------------------------------------------------------------------
# cylinders, cones, null homotopies


@dataclass
class Cylinder:
    space: Diagram
    i0: DiagramMap
    i1: DiagramMap
    projection: DiagramMap


def cylinder(A: Diagram) -> Cylinder:
    t = tensor(A, standard_simplex(1))
    return Cylinder(space=t.diagram,
                    i0=tensor_unit_section(A, standard_simplex(1), "0"),
                    i1=tensor_unit_section(A, standard_simplex(1), "1"),
                    projection=tensor_projection(A, standard_simplex(1)))


@dataclass
class Cone:
    space: Diagram
    inclusion: DiagramMap   # A -> CA through the 0-end of the cylinder
    apex: DiagramMap        # point -> CA
    _pushout: object = field(repr=False, default=None)
    _cylinder: Cylinder = field(repr=False, default=None)


def cone(A: Diagram) -> Cone:
    """CA = pt glued to the cylinder of A along its 1-end."""
    cyl = cylinder(A)
    po = pushout_D(terminal_dmap(A), cyl.i1)
    return Cone(space=po.diagram,
                inclusion=cyl.i0.then(po.from_right),
                apex=po.from_left,
                _pushout=po, _cylinder=cyl)


def diagram_vertices(X: Diagram):
    """Global vertices: maps from the terminal diagram."""
    return hom_D(point_diagram(X.shape), X)


def is_null_homotopic(f: DiagramMap, search_budget: Optional[int] = None):
    """Search for a homotopy from f to a map factoring through the point.

    Enumerates H on the cylinder with H i0 = f pinned and H i1 forced to be
    vertexwise constant; returns (verdict, homotopy).  The verdict is
    inconclusive when the node budget runs out.
    """
    A, X = f.source, f.target
    cyl = cylinder(A)
    D = A.shape
    budget = [search_budget] if search_budget is not None else None
    pools = {}
    try:
        for d in D.objects:
            pins = {}
            for c in A.at[d].all_cells():
                img = cyl.i0.components[d](nondeg(c))
                assert not img.word
                pins[img.cell] = f.components[d](nondeg(c))
            end_cells = set()
            for c in A.at[d].all_cells():
                img = cyl.i1.components[d](nondeg(c))
                assert not img.word
                end_cells.add(img.cell)

            def constant_at_end(cell, cand, end_cells=end_cells, d=d):
                if cell not in end_cells:
                    return True
                n = cyl.space.at[d].cell_dim(cell)
                return cand == degenerate_at(X.at[d], cand.cell, n) \
                    and len(cand.word) == n
            pools[d] = enumerate_maps(cyl.space.at[d], X.at[d], pins=pins,
                                      cell_filter=constant_at_end,
                                      budget=budget)
        candidates = hom_D(cyl.space, X, component_pool=lambda d: pools[d],
                           budget=budget)
    except BudgetExceeded:
        return Verdict(INCONCLUSIVE, ("search_budget", search_budget),
                       "homotopy search hit budget"), None
    vertices = diagram_vertices(X)
    collapse = terminal_dmap(A)
    for H in candidates:
        end = cyl.i1.then(H)
        for iota in vertices:
            if end == collapse.then(iota):
                return Verdict(YES), H
    return Verdict(NO), None


def null_factorization(f: DiagramMap, H: DiagramMap):
    """Factor a null-homotopic map through the cone of its source.

    H must be a homotopy with H i0 = f and H i1 factoring through the point;
    the cone mediator makes the factorization commute on the nose.
    """
    A, X = f.source, f.target
    cn = cone(A)
    cyl = cn._cylinder
    end = cyl.i1.then(H)
    iota = None
    for cand in diagram_vertices(X):
        if end == terminal_dmap(A).then(cand):
            iota = cand
            break
    assert iota is not None, "H does not end at a vertex"
    m = cn._pushout.mediate(iota, H)
    assert cn.inclusion.then(m) == f
    return cn, m


# ---------------------------------------------------------------------------
# properness probes


def properness_probe(kind, weq: DiagramMap, along: DiagramMap,
                     orbits: OrbitCategory, pi_cap, hom_cap,
                     budget: Optional[Budget] = None) -> Verdict:
    """Instance-wise (left or right) properness check.

    kind "left": pushout of a weak equivalence along a cofibration; kind
    "right": pullback of a weak equivalence along a fibration.  The verdict
    is the equivariant weak-equivalence probe of the (co)base change.
    """
    if kind == "left":
        assert weq.source == along.source
        if not is_cofibration(along):
            return Verdict(NO, (), "leg is not a levelwise injection")
        po = pushout_D(weq, along)
        probe = po.from_right  # cobase change of the weak equivalence
    elif kind == "right":
        assert weq.target == along.target
        pb = pullback_D(weq, along)
        probe = pb.proj2  # base change of the weak equivalence
    else:
        raise ValueError(f"unknown probe kind {kind!r}")
    return is_weq_equivariant(probe, orbits, pi_cap, hom_cap, budget)

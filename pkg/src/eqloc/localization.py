"""Localization functors: horns of a class of maps, the instrumented class
K = J with the horns adjoined, locality and local-equivalence probes, and
fixed-pointwise localization with respect to a map of simplicial sets.

Two kinds of generators are accepted: a finite set S of levelwise-injective
diagram maps, and a single map f of simplicial sets presenting the class
{f tensored with every orbit}.  Localization factors X -> point through the
generalized small object argument for the combined class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cat import (
    Diagram,
    DiagramMap,
    SmallCategory,
    cotensor,
    cotensor_map,
    cotensor_restriction,
    hom_D,
    hom_complex,
    hom_complex_pre,
    identity_dmap,
    limit_D,
    pushout_D,
    tensor_map,
    terminal_dmap,
    wrap_sset,
)
from .glue import induced_tuple_map, product
from .homotopy import (
    INCONCLUSIVE,
    NO,
    YES,
    Verdict,
    cylinder,
    is_kan,
    pi0,
    pi_n,
    sset_weq_probe,
)
from .orbits import OrbitCategory, orbit_setup
from .simplicial import (
    SimplicialMap,
    SimplicialSet,
    boundary,
    boundary_inclusion,
    divide_word,
    enumerate_maps,
    identity_map,
    is_injective,
    is_isomorphism,
    nondeg,
    standard_simplex,
)
from .soa import (
    Budget,
    FactorizationResult,
    Instrumentation,
    Square,
    find_lift,
    setup_J,
    setup_from_set,
    setup_union,
    small_object_argument,
)


@dataclass(frozen=True)
class LocalizationCaps:
    """Finite truncation parameters for localization runs.

    hor_n_cap bounds the pushout-product exponent of the horn class; j_n_cap
    bounds the horn-filler family glued during factorization (horn fillers
    bring fresh cells with them and never stabilize, so this is kept below
    the probe cap); probe_n_cap is the cap at which locality reports check
    horn lifting; dim_cap truncates the mapping-complex pullbacks.
    """

    hor_n_cap: int = 2
    j_n_cap: int = 1
    probe_n_cap: int = 2
    dim_cap: int = 1
    hom_cap: int = 2
    pi_cap: int = 0
    stages: int = 3
    uniqueness_limit: int = 6


class LocalizationSpec:
    """Generators of a localization: a finite set S, or a single map of
    simplicial sets in fixed-pointwise mode."""

    def __init__(self, shape: SmallCategory, generators=None, fixedpointwise=None,
                 caps: LocalizationCaps = LocalizationCaps()):
        if (generators is None) == (fixedpointwise is None):
            raise ValueError("exactly one of generators/fixedpointwise required")
        self.shape = shape
        self.generators = tuple(generators) if generators is not None else None
        self.f = fixedpointwise
        self.caps = caps

    @property
    def mode(self) -> str:
        return "set" if self.generators is not None else "fixedpointwise"


def validate_spec(spec: LocalizationSpec):
    """Generators must be levelwise injections and non-trivial."""
    problems = []
    if spec.mode == "set":
        for idx, g in enumerate(spec.generators):
            if not all(is_injective(g.components[d])
                       for d in g.source.shape.objects):
                problems.append(("not-injective", idx))
            elif all(is_isomorphism(g.components[d]) is not None
                     for d in g.source.shape.objects):
                problems.append(("trivial-generator", idx))
    else:
        f = spec.f
        if not is_injective(f):
            problems.append(("not-injective", "f"))
        elif is_isomorphism(f) is not None:
            problems.append(("trivial-generator", "f"))
    return problems


# ---------------------------------------------------------------------------
# horns of a set of maps


@dataclass
class Horn:
    """The pushout-product of a generator with a boundary inclusion."""

    arrow: DiagramMap
    generator_index: int
    n: int
    pushout: object = field(repr=False, default=None)


def horns_of(generators, n_cap):
    """Hor(S): pushout-products of each generator with bd(n) in Delta^n."""
    out = []
    for idx, f in enumerate(generators):
        A, B = f.source, f.target
        for n in range(n_cap + 1):
            incl = boundary_inclusion(n)
            a_incl = tensor_map(identity_dmap(A), incl)
            f_bd = tensor_map(f, identity_map(boundary(n)))
            po = pushout_D(a_incl, f_bd)
            arrow = po.mediate(tensor_map(f, identity_map(standard_simplex(n))),
                               tensor_map(identity_dmap(B), incl))
            out.append(Horn(arrow=arrow, generator_index=idx, n=n, pushout=po))
    return tuple(out)


def class_K(spec: LocalizationSpec, probe: bool = False) -> Instrumentation:
    """The instrumented class J with the horns of the generators adjoined.

    Disjointness of the two classes is guaranteed by non-triviality of the
    generators.  With probe=True the horn-filler family is capped at the
    probe cap instead of the gluing cap, for locality checks.
    """
    problems = validate_spec(spec)
    if problems:
        raise ValueError(f"invalid localization generators: {problems}")
    caps = spec.caps
    j_cap = caps.probe_n_cap if probe else caps.j_n_cap
    j = setup_J(Budget(stages=caps.stages, n_cap=j_cap, dim_cap=caps.dim_cap))
    if spec.mode == "set":
        horns = horns_of(spec.generators, caps.hor_n_cap)
        hor = setup_from_set([h.arrow for h in horns], name="Hor",
                             budget=Budget(stages=caps.stages,
                                           n_cap=caps.hor_n_cap,
                                           dim_cap=caps.dim_cap))
    else:
        hor = hor_F_instrumentation(spec.f, spec.shape, caps)
    return setup_union(j, hor, name="K")


# ---------------------------------------------------------------------------
# the fixed-pointwise instrumentation (class F = {f tensor T})


class _HorFFamily:
    """Instrumentation of Hor(F) for F = {f (x) T over all orbits T}.

    For an arrow g the three-dimensional pullback W of mapping complexes is
    formed for each exponent n; each of its level-0 orbits converts by
    adjunction into an attachment square whose top is the pushout-product of
    f (x) T with the boundary inclusion.
    """

    def __init__(self, f: SimplicialMap, shape, caps: LocalizationCaps):
        self.f = f
        self.shape = shape
        self.caps = caps
        self._corner_cache = {}

    def _corners(self, n):
        """Product complexes and inclusion maps for exponent n."""
        if n in self._corner_cache:
            return self._corner_cache[n]
        f = self.f
        A, B = f.source, f.target
        dn, bdn = standard_simplex(n), boundary(n)
        incl = boundary_inclusion(n)
        pAB = {
            "dB": product(dn, B), "bB": product(bdn, B),
            "dA": product(dn, A), "bA": product(bdn, A),
        }
        maps = {
            # bd x B -> Delta x B, etc.
            "bB_dB": induced_tuple_map(pAB["bB"], pAB["dB"],
                                       (incl, identity_map(B))),
            "bA_bB": induced_tuple_map(pAB["bA"], pAB["bB"],
                                       (identity_map(bdn), f)),
            "bA_dA": induced_tuple_map(pAB["bA"], pAB["dA"],
                                       (incl, identity_map(A))),
            "dA_dB": induced_tuple_map(pAB["dA"], pAB["dB"],
                                       (identity_map(dn), f)),
        }
        self._corner_cache[n] = (pAB, maps)
        return pAB, maps

    def _w_limit(self, g: DiagramMap, n):
        caps = self.caps
        pAB, maps = self._corners(n)
        X, Y = g.source, g.target
        cX_bB = cotensor(X, pAB["bB"].space, caps.dim_cap)
        cY_dB = cotensor(Y, pAB["dB"].space, caps.dim_cap)
        cX_dA = cotensor(X, pAB["dA"].space, caps.dim_cap)
        constraints = (
            # g-image of the (bd x B)-corner matches the restriction of dB
            (0, cotensor_map(g, pAB["bB"].space, caps.dim_cap),
             1, cotensor_restriction(Y, maps["bB_dB"], caps.dim_cap)),
            # both X-corners agree on bd x A
            (0, cotensor_restriction(X, maps["bA_bB"], caps.dim_cap),
             2, cotensor_restriction(X, maps["bA_dA"], caps.dim_cap)),
            # g-image of the (Delta x A)-corner matches the dB restriction
            (2, cotensor_map(g, pAB["dA"].space, caps.dim_cap),
             1, cotensor_restriction(Y, maps["dA_dB"], caps.dim_cap)),
        )
        lim = limit_D([cX_bB.diagram, cY_dB.diagram, cX_dA.diagram],
                      constraints)
        return lim, (cX_bB, cY_dB, cX_dA)

    def _member(self, T: Diagram, n):
        """The Hor(F) member at (n, T) with its structure pushout."""
        from .cat import adjoint_to_tensor  # local to avoid cycles
        pAB, maps = self._corners(n)
        t_bA_dA = tensor_map(identity_dmap(T), maps["bA_dA"])
        t_bA_bB = tensor_map(identity_dmap(T), maps["bA_bB"])
        po = pushout_D(t_bA_dA, t_bA_bB)
        arrow = po.mediate(tensor_map(identity_dmap(T), maps["dA_dB"]),
                           tensor_map(identity_dmap(T), maps["bB_dB"]))
        return po, arrow

    def assign(self, g: DiagramMap):
        from .cat import adjoint_to_tensor
        squares = []
        for n in range(self.caps.hor_n_cap + 1):
            lim, (cX_bB, cY_dB, cX_dA) = self._w_limit(g, n)
            for o in orbit_setup(lim.diagram):
                T = o.orbit
                adj_bB = adjoint_to_tensor(o.into.then(lim.projections[0]),
                                           cX_bB)
                adj_dB = adjoint_to_tensor(o.into.then(lim.projections[1]),
                                           cY_dB)
                adj_dA = adjoint_to_tensor(o.into.then(lim.projections[2]),
                                           cX_dA)
                po, arrow = self._member(T, n)
                left = po.mediate(adj_dA, adj_bB)
                squares.append(Square(
                    top=arrow, left=left, right=adj_dB, bottom=g,
                    member_id=f"HorF@{n}",
                    meta=("HorF", n, o.witness), orbit=o))
        return tuple(squares)

    def transport(self, gsq, sq: Square):
        from .orbits import orbit_naturality
        n = sq.meta[1]
        lim1, _ = self._w_limit(gsq.source, n)
        lim2, (cX2, cY2, cA2) = self._w_limit(gsq.target, n)
        caps = self.caps
        pAB, maps = self._corners(n)
        g_tilde = lim2.mediate([
            lim1.projections[0].then(
                cotensor_map(gsq.upper, pAB["bB"].space, caps.dim_cap)),
            lim1.projections[1].then(
                cotensor_map(gsq.lower, pAB["dB"].space, caps.dim_cap)),
            lim1.projections[2].then(
                cotensor_map(gsq.upper, pAB["dA"].space, caps.dim_cap)),
        ])
        F, o2 = orbit_naturality(g_tilde, sq.orbit)
        from .cat import adjoint_to_tensor
        T2 = o2.orbit
        adj_bB = adjoint_to_tensor(o2.into.then(lim2.projections[0]), cX2)
        adj_dB = adjoint_to_tensor(o2.into.then(lim2.projections[1]), cY2)
        adj_dA = adjoint_to_tensor(o2.into.then(lim2.projections[2]), cA2)
        po2, arrow2 = self._member(T2, n)
        left2 = po2.mediate(adj_dA, adj_bB)
        target = Square(top=arrow2, left=left2, right=adj_dB,
                        bottom=gsq.target, member_id=f"HorF@{n}",
                        meta=("HorF", n, o2.witness), orbit=o2)
        po1, _ = self._member(sq.orbit.orbit, n)
        connect_dom = po1.mediate(
            tensor_map(F, identity_map(pAB["dA"].space)).then(po2.from_left),
            tensor_map(F, identity_map(pAB["bB"].space)).then(po2.from_right))
        connect_cod = tensor_map(F, identity_map(pAB["dB"].space))
        return target, (connect_dom, connect_cod)


def hor_F_instrumentation(f: SimplicialMap, shape,
                          caps: LocalizationCaps) -> Instrumentation:
    fam = _HorFFamily(f, shape, caps)
    budget = Budget(stages=caps.stages, n_cap=caps.hor_n_cap,
                    dim_cap=caps.dim_cap)
    return Instrumentation("HorF", fam.assign, fam.transport,
                           ("HorF@",), budget)


# ---------------------------------------------------------------------------
# localization runs and locality probes


@dataclass
class LocalizationResult:
    local_object: Diagram
    j: DiagramMap                 # the coaugmentation X -> L X
    trace: FactorizationResult
    locality: Verdict
    spec: LocalizationSpec


def localize(X: Diagram, spec: LocalizationSpec) -> LocalizationResult:
    """Factor X -> point through the instrumented class K = J + horns.

    The cellular factor is the coaugmentation; budget exhaustion is flagged
    on the trace and reflected in the locality verdict.
    """
    instr = class_K(spec)
    r = small_object_argument(terminal_dmap(X), instr,
                              stages=spec.caps.stages)
    local_object = r.gamma.target
    verdict = is_S_local(local_object, spec)
    return LocalizationResult(local_object=local_object, j=r.gamma,
                              trace=r, locality=verdict, spec=spec)


def is_S_local(Z: Diagram, spec: LocalizationSpec) -> Verdict:
    """Right lifting of Z -> point against every assigned J- and horn-square."""
    instr = class_K(spec, probe=True)
    t = terminal_dmap(Z)
    caps = ("hor_n_cap", spec.caps.hor_n_cap,
            "probe_n_cap", spec.caps.probe_n_cap,
            "dim_cap", spec.caps.dim_cap)
    for sq in instr.assign(t):
        if find_lift(sq.top, t, sq.left, sq.right) is None:
            return Verdict(NO, caps, f"no lift for {sq.member_id}")
    return Verdict(YES, caps)


def is_S_equivalence(g: DiagramMap, spec: LocalizationSpec, probes,
                     budget: Optional[Budget] = None) -> Verdict:
    """Mapping-space comparison against the supplied local diagrams.

    Cofibrant replacement is omitted: every diagram of simplicial sets is
    cofibrant in the equivariant structure.
    """
    caps = spec.caps
    budget = budget or Budget(stages=caps.stages, n_cap=caps.pi_cap + 1,
                              dim_cap=0)
    worst = YES
    for idx, P in enumerate(probes):
        phi = hom_complex_pre(g, P, caps.hom_cap)
        v = sset_weq_probe(phi, caps.pi_cap, budget)
        if v.value == NO:
            return Verdict(NO, v.caps, f"probe {idx}: {v.reason}")
        if v.value == INCONCLUSIVE:
            worst = INCONCLUSIVE
    return Verdict(worst, ("pi_cap", caps.pi_cap, "hom_cap", caps.hom_cap))


class ObstructedLift(Exception):
    def __init__(self, square):
        super().__init__(f"no lift against {square.member_id}")
        self.square = square


def extend_to_local(g: DiagramMap, result: LocalizationResult) -> DiagramMap:
    """Extend g: X -> P over the coaugmentation j: X -> L X.

    Walks the trace: every attached square's top lifts against P -> point
    because P is local, and the pushout mediators assemble the extension.
    Raises ObstructedLift with the failing square when P is not local enough
    at the caps.
    """
    assert g.source == result.j.source
    P = g.target
    t = terminal_dmap(P)
    h = g
    for stage in result.trace.stages:
        lifts = []
        for idx in stage.attached:
            sq = stage.squares[idx]
            lift = find_lift(sq.top, t, sq.left.then(h),
                             terminal_dmap(sq.top.target))
            if lift is None:
                raise ObstructedLift(sq)
            lifts.append(lift)
        from .soa import _coproduct_mediate
        coA, coB = stage.tops_coproduct
        h = stage.pushout.mediate(h, _coproduct_mediate(coB, lifts, P))
    assert result.j.then(h) == g
    return h


def maps_extending(j: DiagramMap, g: DiagramMap, limit=None, budget=None):
    """All maps l with l . j = g (up to the limit), by pinned search."""
    L, P = j.target, g.target
    D = L.shape
    pools = {}
    for d in D.objects:
        pins = {}
        for c in j.source.at[d].all_cells():
            img = j.components[d](nondeg(c))
            sol = divide_word(P.at[d], g.components[d](nondeg(c)), img.word)
            if sol is None or pins.get(img.cell, sol) != sol:
                return []
            pins[img.cell] = sol
        pools[d] = enumerate_maps(L.at[d], P.at[d], pins=pins, budget=budget)
    return hom_D(L, P, component_pool=lambda d: pools[d], limit=limit,
                 budget=budget)


def simplicially_homotopic(l1: DiagramMap, l2: DiagramMap,
                           budget=None) -> Optional[DiagramMap]:
    """A simplicial homotopy on the cylinder from l1 to l2, if one exists."""
    assert l1.source == l2.source and l1.target == l2.target
    cyl = cylinder(l1.source)
    D = l1.source.shape
    pools = {}
    for d in D.objects:
        pins = {}
        for c in l1.source.at[d].all_cells():
            i0c = cyl.i0.components[d](nondeg(c))
            i1c = cyl.i1.components[d](nondeg(c))
            pins[i0c.cell] = l1.components[d](nondeg(c))
            pins[i1c.cell] = l2.components[d](nondeg(c))
        pools[d] = enumerate_maps(cyl.space.at[d], l1.target.at[d],
                                  pins=pins, budget=budget)
    found = hom_D(cyl.space, l1.target, component_pool=lambda d: pools[d],
                  limit=1, budget=budget)
    return found[0] if found else None


@dataclass
class ExtensionReport:
    lifts: list
    all_homotopic: Optional[bool]
    truncated: bool


def extension_uniqueness(g: DiagramMap, result: LocalizationResult,
                         limit=None) -> ExtensionReport:
    """Enumerate extensions of g over the coaugmentation and probe pairwise
    simplicial homotopy within the budget."""
    limit = limit if limit is not None else result.spec.caps.uniqueness_limit
    lifts = maps_extending(result.j, g, limit=limit + 1)
    truncated = len(lifts) > limit
    lifts = lifts[:limit]
    verdict = True
    for i in range(len(lifts)):
        for j in range(i + 1, len(lifts)):
            if simplicially_homotopic(lifts[i], lifts[j]) is None:
                verdict = False
    return ExtensionReport(lifts=lifts, all_homotopic=verdict,
                           truncated=truncated)


# ---------------------------------------------------------------------------
# fixed-pointwise locality reports


@dataclass
class OrbitLocalityReport:
    orbit_index: int
    fibrant: bool
    components: int
    trivial_pi: Optional[bool]
    local: Verdict


def fixed_point_locality_report(Z: Diagram, f: SimplicialMap,
                                orbits: OrbitCategory,
                                caps: LocalizationCaps):
    """Per-orbit f-locality of the fixed-point spaces hom(T, Z).

    For f: empty -> point the criterion is executed exactly: fibrant and
    contractible at the caps.  For general f the mapping-space criterion is
    evaluated with inconclusive verdicts where truncation bites.
    """
    empty_to_point = (f.source.dim == -1 and
                      isomorphic_to_point(f.target))
    reports = []
    for idx, T in enumerate(orbits.orbits):
        M = hom_complex(T, Z, caps.hom_cap).space
        fib = is_kan(M, caps.probe_n_cap)
        comps = len(pi0(M))
        trivial = None
        if empty_to_point:
            if fib:
                trivial = all(
                    len(pi_n(M, cls[0], n, kan_checked=True)) == 1
                    for cls in pi0(M) for n in range(1, caps.pi_cap + 1))
            ok = fib and comps == 1 and (trivial is None or trivial)
            local = Verdict(YES if ok else NO,
                            ("probe_n_cap", caps.probe_n_cap,
                             "pi_cap", caps.pi_cap))
        else:
            wrapped = wrap_sset(M)
            restriction = cotensor_restriction(wrapped, f, caps.hom_cap)
            phi = restriction.components["*"]
            v = sset_weq_probe(phi, caps.pi_cap,
                               Budget(stages=caps.stages,
                                      n_cap=caps.pi_cap + 1, dim_cap=0))
            local = v if fib else Verdict(
                INCONCLUSIVE, v.caps, "fixed points not fibrant at caps")
        reports.append(OrbitLocalityReport(
            orbit_index=idx, fibrant=fib, components=comps,
            trivial_pi=trivial, local=local))
    return reports


def isomorphic_to_point(X: SimplicialSet) -> bool:
    return X.dim == 0 and len(X.cells(0)) == 1


def arrow_isomorphic(f: DiagramMap, g: DiagramMap) -> bool:
    """Isomorphism of arrows: isos of sources and targets commuting with them."""
    from .simplicial import is_isomorphism as sset_iso
    for psi in hom_D(f.target, g.target):
        if not all(sset_iso(psi.components[d]) is not None
                   for d in f.target.shape.objects):
            continue
        for phi in hom_D(f.source, g.source):
            if not all(sset_iso(phi.components[d]) is not None
                       for d in f.source.shape.objects):
                continue
            if phi.then(g) == f.then(psi):
                return True
    return False

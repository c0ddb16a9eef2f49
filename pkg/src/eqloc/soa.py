"""Factorization setups, instrumented classes, lifting search, and the
generalized small object argument with full traces and functorial action.

An instrumentation assigns to every arrow a finite set of attachment squares,
functorially in the arrow.  The argument iterates: attach the squares by a
pushout of the coproduct of their tops, stop when every assigned square
already lifts.  Transfinite stages are replaced by a stage budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cat import (
    Cotensor,
    CoproductD,
    Diagram,
    DiagramMap,
    adjoint_to_tensor,
    colim,
    colim_map,
    constant_diagram,
    coproduct_D,
    cotensor,
    cotensor_map,
    cotensor_restriction,
    hom_D,
    identity_dmap,
    pullback_D,
    pushout_D,
    tensor_map,
)
from .orbits import OrbitMap, orbit_naturality, orbit_setup
from .simplicial import (
    Simplex,
    SimplicialMap,
    boundary_inclusion,
    divide_word,
    enumerate_maps,
    horn_inclusion,
    identity_map,
    is_isomorphism,
    nondeg,
)


@dataclass(frozen=True)
class Square:
    """A commutative square from a class member (top) to an ambient arrow."""

    top: DiagramMap     # g: A -> B, the class member
    left: DiagramMap    # A -> X
    right: DiagramMap   # B -> Y
    bottom: DiagramMap  # X -> Y
    member_id: str
    meta: tuple = ()
    orbit: Optional[OrbitMap] = field(default=None, compare=False, repr=False)


def verify_square(sq: Square) -> bool:
    return sq.left.then(sq.bottom) == sq.top.then(sq.right)


@dataclass(frozen=True)
class ArrowSquare:
    """A morphism f1 -> f2 in the category of arrows: a commutative square."""

    source: DiagramMap  # f1
    target: DiagramMap  # f2
    upper: DiagramMap   # dom f1 -> dom f2
    lower: DiagramMap   # cod f1 -> cod f2

    def verify(self) -> bool:
        return self.source.then(self.lower) == self.upper.then(self.target)


@dataclass(frozen=True)
class Budget:
    """Finite stand-ins for the transfinite parameters of the argument."""

    stages: int = 4
    n_cap: int = 2
    dim_cap: int = 1
    search_nodes: Optional[int] = None


class Instrumentation:
    """A class of maps with a factorization setup and iteration budgets.

    assign maps an arrow to its finite tuple of attachment squares, in
    canonical order; transport carries squares along morphisms of arrows and
    returns the target square together with the connecting maps of tops.
    """

    def __init__(self, name, assign_fn, transport_fn, prefixes, budget: Budget):
        self.name = name
        self._assign = assign_fn
        self._transport = transport_fn
        self.prefixes = tuple(prefixes)
        self.budget = budget

    def assign(self, arrow: DiagramMap):
        return self._assign(arrow)

    def transport(self, g: ArrowSquare, sq: Square):
        return self._transport(g, sq)

    def owns(self, sq: Square) -> bool:
        return any(sq.member_id.startswith(p) for p in self.prefixes)


# ---------------------------------------------------------------------------
# set-based setups


def setup_from_set(members, name="set", budget: Budget = Budget()):
    """The factorization setup of a small subcategory: all maps from the
    members into the arrow, transported by postcomposition."""
    members = tuple(members)

    def assign(f: DiagramMap):
        squares = []
        for idx, m in enumerate(members):
            rights = hom_D(m.target, f.target)
            for a in hom_D(m.source, f.source):
                af = a.then(f)
                for b in rights:
                    if m.then(b) == af:
                        squares.append(Square(
                            top=m, left=a, right=b, bottom=f,
                            member_id=f"{name}#{idx}", meta=(name, idx)))
        return tuple(squares)

    def transport(g: ArrowSquare, sq: Square):
        target = Square(top=sq.top,
                        left=sq.left.then(g.upper),
                        right=sq.right.then(g.lower),
                        bottom=g.target,
                        member_id=sq.member_id, meta=sq.meta)
        connect = (identity_dmap(sq.top.source), identity_dmap(sq.top.target))
        return target, connect

    return Instrumentation(name, assign, transport, (f"{name}#",), budget)


def setup_union(a: Instrumentation, b: Instrumentation,
                name=None) -> Instrumentation:
    """Disjoint union of two setups; member classes must be disjoint."""
    if set(a.prefixes) & set(b.prefixes):
        raise ValueError("instrumentations overlap: "
                         f"{set(a.prefixes) & set(b.prefixes)}")

    def assign(f):
        return tuple(a.assign(f)) + tuple(b.assign(f))

    def transport(g, sq):
        if a.owns(sq):
            return a.transport(g, sq)
        if b.owns(sq):
            return b.transport(g, sq)
        raise ValueError(f"square {sq.member_id} belongs to neither setup")

    budget = Budget(stages=max(a.budget.stages, b.budget.stages),
                    n_cap=max(a.budget.n_cap, b.budget.n_cap),
                    dim_cap=max(a.budget.dim_cap, b.budget.dim_cap),
                    search_nodes=a.budget.search_nodes)
    return Instrumentation(name or f"{a.name}+{b.name}", assign, transport,
                           a.prefixes + b.prefixes, budget)


def empty_instrumentation(name="empty", budget: Budget = Budget()):
    return Instrumentation(name, lambda f: (), None, (f"{name}#",), budget)


# ---------------------------------------------------------------------------
# the orbit setups for generating (trivial) cofibrations


def _build_orbit_square(o: OrbitMap, pb, incl, member_id, meta,
                        f: DiagramMap, cX: Cotensor, cY: Cotensor) -> Square:
    """The attachment square adjoint to an orbit map into W_{f,n}."""
    phi_x = o.into.then(pb.proj1)
    phi_y = o.into.then(pb.proj2)
    left = adjoint_to_tensor(phi_x, cX)
    right = adjoint_to_tensor(phi_y, cY)
    top = tensor_map(identity_dmap(o.orbit), incl)
    return Square(top=top, left=left, right=right, bottom=f,
                  member_id=member_id, meta=meta, orbit=o)


class _OrbitSetupFamily:
    """Setup for a family of tensored inclusions T (x) (K_i -> L_i).

    For each family member the pullback W of mapping complexes is formed, its
    level-0 orbits are extracted, and each orbit map converts by adjunction
    into an attachment square.  The same construction transports squares
    along morphisms of arrows through the induced map of pullbacks.
    """

    def __init__(self, name, family, budget: Budget):
        # family: tuple of (meta, inclusion) with inclusion: K -> L in sSet
        self.name = name
        self.family = tuple(family)
        self.budget = budget

    def _w_pullback(self, f: DiagramMap, incl):
        cX = cotensor(f.source, incl.source, self.budget.dim_cap)
        cY_L = cotensor(f.target, incl.target, self.budget.dim_cap)
        s = cotensor_map(f, incl.source, self.budget.dim_cap)
        r = cotensor_restriction(f.target, incl, self.budget.dim_cap)
        return pullback_D(s, r), cX, cY_L

    def assign(self, f: DiagramMap):
        squares = []
        for meta, incl in self.family:
            pb, cX, cY_L = self._w_pullback(f, incl)
            member_id = f"{self.name}@" + "_".join(str(x) for x in meta)
            for o in orbit_setup(pb.diagram):
                squares.append(_build_orbit_square(
                    o, pb, incl, member_id, (self.name,) + meta + (o.witness,),
                    f, cX, cY_L))
        return tuple(squares)

    def transport(self, g: ArrowSquare, sq: Square):
        meta = sq.meta[1:-1]
        incl = dict(self.family)[meta]
        pb1, _, _ = self._w_pullback(g.source, incl)
        pb2, cX2, cY2 = self._w_pullback(g.target, incl)
        # the induced natural map W_{f1,n} -> W_{f2,n}
        dim_cap = self.budget.dim_cap
        to_x2 = pb1.proj1.then(cotensor_map(g.upper, incl.source, dim_cap))
        to_y2 = pb1.proj2.then(cotensor_map(g.lower, incl.target, dim_cap))
        g_tilde = pb2.mediate(to_x2, to_y2)
        F, o2 = orbit_naturality(g_tilde, sq.orbit)
        member_id = f"{self.name}@" + "_".join(str(x) for x in meta)
        target = _build_orbit_square(
            o2, pb2, incl, member_id, (self.name,) + meta + (o2.witness,),
            g.target, cX2, cY2)
        connect = (tensor_map(F, identity_map(incl.source)),
                   tensor_map(F, identity_map(incl.target)))
        return target, connect


def _family_instrumentation(name, family, budget) -> Instrumentation:
    fam = _OrbitSetupFamily(name, family, budget)
    return Instrumentation(name, fam.assign, fam.transport,
                           (f"{name}@",), budget)


def setup_I(budget: Budget = Budget()) -> Instrumentation:
    """Instrumentation of the generating cofibrations T (x) (bd n -> Delta^n)."""
    family = [((n,), boundary_inclusion(n))
              for n in range(budget.n_cap + 1)]
    return _family_instrumentation("I", family, budget)


def setup_J(budget: Budget = Budget()) -> Instrumentation:
    """Instrumentation of the generating trivial cofibrations (horn fillers)."""
    family = [((n, k), horn_inclusion(n, k))
              for n in range(1, budget.n_cap + 1)
              for k in range(n + 1)]
    return _family_instrumentation("J", family, budget)


# ---------------------------------------------------------------------------
# lifting search


def find_lift(i: DiagramMap, p: DiagramMap, a: DiagramMap, b: DiagramMap,
              budget: Optional[list] = None,
              all_lifts: bool = False):
    """A diagonal filler for the square (a, b) of i against p.

    Pins come from i (on image cells, by word division) and the fiber
    condition from p; returns the first lift in canonical order, or the full
    list when all_lifts is set, or None/[] when no lift exists.
    """
    D = i.source.shape
    B, X = i.target, p.source
    pools = {}
    for d in D.objects:
        pins = {}
        consistent = True
        for e in i.source.at[d].all_cells():
            img = i.components[d](nondeg(e))
            val = a.components[d](nondeg(e))
            sol = divide_word(X.at[d], val, img.word)
            if sol is None or pins.get(img.cell, sol) != sol:
                consistent = False
                break
            pins[img.cell] = sol
        if not consistent:
            return [] if all_lifts else None

        def fiber(cell, cand, d=d):
            return p.components[d](cand) == b.components[d](nondeg(cell))

        pools[d] = enumerate_maps(B.at[d], X.at[d], pins=pins,
                                  cell_filter=fiber, budget=budget)
    lifts = hom_D(B, X, component_pool=lambda d: pools[d],
                  limit=None if all_lifts else 1, budget=budget)
    if all_lifts:
        return lifts
    return lifts[0] if lifts else None


@dataclass
class RlpReport:
    holds: bool
    n_squares: int
    lifts: list
    counterexample: Optional[tuple]  # (a, b) square without a lift


def rlp_check(i: DiagramMap, p: DiagramMap,
              budget: Optional[list] = None) -> RlpReport:
    """Right lifting property of p against i, by exhaustive square search.

    Every commutative square of i over p is enumerated; the report carries a
    lift per square or the first counterexample square.
    """
    rights = hom_D(i.target, p.target, budget=budget)
    squares = []
    for a in hom_D(i.source, p.source, budget=budget):
        ap = a.then(p)
        for b in rights:
            if i.then(b) == ap:
                squares.append((a, b))
    lifts = []
    for a, b in squares:
        l = find_lift(i, p, a, b, budget=budget)
        if l is None:
            return RlpReport(False, len(squares), lifts, (a, b))
        lifts.append(l)
    return RlpReport(True, len(squares), lifts, None)


# ---------------------------------------------------------------------------
# the generalized small object argument


def _coproduct_arrow(coA: CoproductD, coB: CoproductD, maps) -> DiagramMap:
    comps = {}
    for d in coA.diagram.shape.objects:
        assignment = {}
        for k, m in enumerate(maps):
            for c in m.source.at[d].all_cells():
                img = m.components[d](nondeg(c))
                assignment[f"{k}:{c}"] = Simplex(img.word, f"{k}:{img.cell}")
        comps[d] = SimplicialMap(coA.diagram.at[d], coB.diagram.at[d],
                                 assignment)
    return DiagramMap(coA.diagram, coB.diagram, comps)


def _coproduct_mediate(co: CoproductD, legs, target: Diagram) -> DiagramMap:
    comps = {}
    for d in co.diagram.shape.objects:
        assignment = {}
        for k, leg in enumerate(legs):
            for c in leg.source.at[d].all_cells():
                assignment[f"{k}:{c}"] = leg.components[d](nondeg(c))
        comps[d] = SimplicialMap(co.diagram.at[d], target.at[d], assignment)
    return DiagramMap(co.diagram, target, comps)


@dataclass
class Stage:
    squares: tuple          # all assigned squares, canonical order
    attached: tuple         # indices of squares glued at this stage
    stage_map: DiagramMap   # i_beta: Z_beta -> Z_{beta+1}
    rho: DiagramMap         # Z_{beta+1} -> Y
    pushout: object = field(repr=False, default=None)
    tops_coproduct: object = field(repr=False, default=None)


@dataclass
class FactorizationResult:
    """The staged record of a run of the generalized small object argument."""

    arrow: DiagramMap
    gamma: DiagramMap
    delta: DiagramMap
    stages: tuple
    stopped_by: str         # "stabilization" or "budget"
    strict: bool
    instrumentation: str
    budget: Budget

    @property
    def n_stages(self) -> int:
        return len(self.stages)


def small_object_argument(f: DiagramMap, instr: Instrumentation,
                          stages: Optional[int] = None,
                          strict: bool = False) -> FactorizationResult:
    """Factor f as a cellular map followed by an injective one.

    At each stage the assigned squares are tested for lifts; when all lift the
    run stops with stabilization, otherwise the unsolved squares (all squares
    in strict mode) are glued in by a single pushout.  delta . gamma = f holds
    exactly for every run, including budget-stopped ones.
    """
    max_stages = instr.budget.stages if stages is None else stages
    Z = f.source
    rho = f
    records = []
    stopped = "budget"
    for _ in range(max_stages):
        squares = instr.assign(rho)
        unsolved = []
        for idx, sq in enumerate(squares):
            if find_lift(sq.top, rho, sq.left, sq.right) is None:
                unsolved.append(idx)
        if not unsolved:
            stopped = "stabilization"
            break
        attach = tuple(range(len(squares))) if strict else tuple(unsolved)
        tops = [squares[i].top for i in attach]
        coA = coproduct_D([t.source for t in tops])
        coB = coproduct_D([t.target for t in tops])
        top_sum = _coproduct_arrow(coA, coB, tops)
        left_sum = _coproduct_mediate(coA, [squares[i].left for i in attach], Z)
        right_sum = _coproduct_mediate(coB, [squares[i].right for i in attach],
                                       rho.target)
        po = pushout_D(left_sum, top_sum)
        stage_map = po.from_left
        rho_next = po.mediate(rho, right_sum)
        records.append(Stage(squares=squares, attached=attach,
                             stage_map=stage_map, rho=rho_next,
                             pushout=po, tops_coproduct=(coA, coB)))
        Z = po.diagram
        rho = rho_next

    gamma = identity_dmap(f.source)
    for rec in records:
        gamma = gamma.then(rec.stage_map)
    result = FactorizationResult(
        arrow=f, gamma=gamma, delta=rho, stages=tuple(records),
        stopped_by=stopped, strict=strict, instrumentation=instr.name,
        budget=instr.budget)
    assert result.gamma.then(result.delta) == f
    return result


def soa_functorial(g: ArrowSquare, r1: FactorizationResult,
                   r2: FactorizationResult, instr: Instrumentation) -> DiagramMap:
    """The natural map between two factorizations induced by g: f1 -> f2.

    Both runs must be strict-mode with the same instrumentation and equal
    stage counts; the map is built stagewise through the transported squares.
    """
    if not (r1.strict and r2.strict):
        raise ValueError("functorial action requires strict-mode traces")
    if r1.instrumentation != r2.instrumentation or r1.budget != r2.budget:
        raise ValueError("factorizations ran with different instrumentations")
    if r1.n_stages != r2.n_stages:
        raise ValueError("stage mismatch between factorizations")
    xi = g.upper
    rho1, rho2 = r1.arrow, r2.arrow
    for s1, s2 in zip(r1.stages, r2.stages):
        g_beta = ArrowSquare(source=rho1, target=rho2, upper=xi, lower=g.lower)
        coA1, coB1 = s1.tops_coproduct
        coA2, coB2 = s2.tops_coproduct
        po2 = s2.pushout
        # route each attached square of run 1 to its transported counterpart
        b_maps = []
        for pos, idx in enumerate(s1.attached):
            sq = s1.squares[idx]
            tsq, (cA, cB) = instr.transport(g_beta, sq)
            j = s2.squares.index(tsq)
            assert j in s2.attached, "transported square was not attached"
            b_maps.append(cB.then(coB2.injections[s2.attached.index(j)]))
        to_b2 = _coproduct_mediate(coB1, b_maps, coB2.diagram)
        xi = s1.pushout.mediate(xi.then(po2.from_left),
                                to_b2.then(po2.from_right))
        rho1, rho2 = s1.rho, s2.rho
    # the two functoriality squares commute
    assert r1.gamma.then(xi) == g.upper.then(r2.gamma)
    assert xi.then(r2.delta) == r1.delta.then(g.lower)
    return xi


@dataclass
class RetractWitness:
    factorization: FactorizationResult
    section: DiagramMap  # B -> Z with delta . section = id, section . f = gamma


def retract_witness(f: DiagramMap, instr: Instrumentation,
                    stages: Optional[int] = None,
                    strict: bool = False) -> Optional[RetractWitness]:
    """Exhibit a cofibration as a retract of its own cellular factor.

    Runs the argument on f and searches a lift of f against its delta; the
    retraction fixes the domain.  None when the lift search fails within the
    budget (reported by the caller).
    """
    r = small_object_argument(f, instr, stages=stages, strict=strict)
    q = find_lift(f, r.delta, r.gamma, identity_dmap(f.target))
    if q is None:
        return None
    assert f.then(q) == r.gamma
    assert q.then(r.delta) == identity_dmap(f.target)
    return RetractWitness(factorization=r, section=q)


# ---------------------------------------------------------------------------
# trace verification


def stage_pullback_squares(result: FactorizationResult):
    """The colimit comparison squares of every stage map of a trace."""
    out = []
    Z = result.arrow.source
    for rec in result.stages:
        out.append((Z, rec.stage_map))
        Z = rec.stage_map.target
    return out


def verify_pullback_over_colim(Z: Diagram, stage_map: DiagramMap) -> bool:
    """Check that (Z, Z', colim Z, colim Z') is a pullback square.

    The canonical comparison map from Z into the fiber product must be an
    isomorphism in every component.
    """
    Znext = stage_map.target
    cZ, cN = colim(Z), colim(Znext)
    m = colim_map(stage_map)
    D = Z.shape
    constN = constant_diagram(D, cN.space)
    constZ = constant_diagram(D, cZ.space)
    q_next = DiagramMap(Znext, constN, {d: cN.cocone[d] for d in D.objects})
    incl = DiagramMap(constZ, constN, {d: m for d in D.objects})
    pb = pullback_D(q_next, incl)
    q_z = DiagramMap(Z, constZ, {d: cZ.cocone[d] for d in D.objects})
    comparison = pb.mediate(stage_map, q_z)
    return all(is_isomorphism(comparison.components[d]) is not None
               for d in D.objects)

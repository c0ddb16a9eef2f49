"""Finite index categories and diagrams of simplicial sets.

Diagrams are functors from a finite category into simplicial sets; colimits
and the pointwise (co)limits are computed with the engines from glue, and the
simplicial structure (tensor, cotensor, mapping complexes) is realized level
by level with explicit truncation dimensions.
"""

from __future__ import annotations

from typing import Callable, Optional

from . import glue
from .simplicial import (
    BudgetExceeded,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    coface_map,
    codegeneracy_map,
    compose_words,
    constant_map,
    empty_simplicial_set,
    enumerate_maps,
    hom_set,
    identity_map,
    nondeg,
    point,
    standard_simplex,
    verify_map,
)


class SmallCategory:
    """A finite category: named objects and arrows plus a composition table."""

    def __init__(self, objects, arrows, identities, composition):
        """arrows: (name, src, tgt) triples; identities: object -> arrow name;
        composition: (g, f) -> name of g after f, for composable non-identity
        pairs (identity compositions are filled in automatically)."""
        self.objects = tuple(objects)
        self.arrows = tuple(a[0] for a in arrows)
        self.src = {a[0]: a[1] for a in arrows}
        self.tgt = {a[0]: a[2] for a in arrows}
        self.identity = dict(identities)
        comp = dict(composition)
        for m in self.arrows:
            comp[(m, self.identity[self.src[m]])] = m
            comp[(self.identity[self.tgt[m]], m)] = m
        self.comp = comp
        self._key_cache = None
        self._hash = None

    def compose(self, g, f):
        """g after f."""
        return self.comp[(g, f)]

    def is_identity(self, m) -> bool:
        return self.identity[self.src[m]] == m

    def non_identities(self):
        return tuple(m for m in self.arrows if not self.is_identity(m))

    def hom(self, a, b):
        return tuple(m for m in self.arrows
                     if self.src[m] == a and self.tgt[m] == b)

    def _key(self):
        if self._key_cache is None:
            self._key_cache = (
                self.objects,
                tuple((m, self.src[m], self.tgt[m]) for m in self.arrows),
                tuple(sorted(self.identity.items())),
                tuple(sorted(self.comp.items())))
        return self._key_cache

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SmallCategory):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"SmallCategory({len(self.objects)} objects, {len(self.arrows)} arrows)"


def validate_category(D: SmallCategory):
    problems = []
    for d in D.objects:
        e = D.identity.get(d)
        if e is None or D.src.get(e) != d or D.tgt.get(e) != d:
            problems.append(("identity", d))
    for g in D.arrows:
        for f in D.arrows:
            if D.src[g] != D.tgt[f]:
                continue
            gf = D.comp.get((g, f))
            if gf is None:
                problems.append(("missing-composite", g, f))
            elif D.src[gf] != D.src[f] or D.tgt[gf] != D.tgt[g]:
                problems.append(("composite-typing", g, f))
    for h in D.arrows:
        for g in D.arrows:
            for f in D.arrows:
                if D.src[g] != D.tgt[f] or D.src[h] != D.tgt[g]:
                    continue
                lhs = D.comp.get((h, D.comp.get((g, f))))
                rhs = D.comp.get((D.comp.get((h, g)), f))
                if lhs != rhs:
                    problems.append(("associativity", h, g, f))
    return problems


def terminal_category() -> SmallCategory:
    return SmallCategory(["*"], [("id", "*", "*")], {"*": "id"}, {})


def arrow_category() -> SmallCategory:
    return SmallCategory(
        ["a", "b"],
        [("ida", "a", "a"), ("idb", "b", "b"), ("f", "a", "b")],
        {"a": "ida", "b": "idb"}, {})


def cyclic_category(n) -> SmallCategory:
    """The cyclic group of order n as a one-object category, arrows g0..g{n-1}."""
    arrows = [(f"g{k}", "*", "*") for k in range(n)]
    comp = {(f"g{k}", f"g{l}"): f"g{(k + l) % n}"
            for k in range(n) for l in range(n)}
    return SmallCategory(["*"], arrows, {"*": "g0"}, comp)


def opposite(D: SmallCategory) -> SmallCategory:
    arrows = [(m, D.tgt[m], D.src[m]) for m in D.arrows]
    comp = {(f, g): gf for (g, f), gf in D.comp.items()}
    return SmallCategory(D.objects, arrows, D.identity, comp)


# ---------------------------------------------------------------------------
# diagrams and their maps


class Diagram:
    """A functor from a finite category into simplicial sets."""

    def __init__(self, shape: SmallCategory, at, act):
        self.shape = shape
        self.at = dict(at)
        self.act = dict(act)
        for d in shape.objects:
            e = shape.identity[d]
            if e not in self.act:
                self.act[e] = identity_map(self.at[d])
        self._key_cache = None
        self._hash = None

    def _key(self):
        if self._key_cache is None:
            self._key_cache = (
                self.shape._key(),
                tuple((d, self.at[d]._key()) for d in self.shape.objects),
                tuple((m, self.act[m]._key()) for m in self.shape.arrows))
        return self._key_cache

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Diagram):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        sizes = {d: self.at[d].n_nondegenerate() for d in self.shape.objects}
        return f"Diagram({sizes})"

    @property
    def dim(self) -> int:
        return max((self.at[d].dim for d in self.shape.objects), default=-1)


def validate_diagram(X: Diagram):
    problems = []
    D = X.shape
    for m in D.arrows:
        f = X.act.get(m)
        if f is None:
            problems.append(("missing-action", m))
            continue
        if f.source != X.at[D.src[m]] or f.target != X.at[D.tgt[m]]:
            problems.append(("action-typing", m))
        elif verify_map(f):
            problems.append(("action-not-simplicial", m))
    if problems:
        return problems
    for d in D.objects:
        if X.act[D.identity[d]] != identity_map(X.at[d]):
            problems.append(("identity-action", d))
    for g in D.arrows:
        for f in D.arrows:
            if D.src[g] != D.tgt[f]:
                continue
            if X.act[D.comp[(g, f)]] != X.act[f].then(X.act[g]):
                problems.append(("functoriality", g, f))
    return problems


class DiagramMap:
    """A natural transformation between diagrams of the same shape."""

    def __init__(self, source: Diagram, target: Diagram, components):
        self.source = source
        self.target = target
        self.components = dict(components)
        self._key_cache = None
        self._hash = None

    def __getitem__(self, d) -> SimplicialMap:
        return self.components[d]

    def _key(self):
        if self._key_cache is None:
            self._key_cache = (
                self.source._key(), self.target._key(),
                tuple((d, self.components[d]._key())
                      for d in self.source.shape.objects))
        return self._key_cache

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, DiagramMap):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"DiagramMap({self.source!r} -> {self.target!r})"

    def then(self, other: "DiagramMap") -> "DiagramMap":
        assert self.target == other.source
        return DiagramMap(self.source, other.target,
                          {d: self.components[d].then(other.components[d])
                           for d in self.components})


def identity_dmap(X: Diagram) -> DiagramMap:
    return DiagramMap(X, X, {d: identity_map(X.at[d])
                             for d in X.shape.objects})


def validate_dmap(h: DiagramMap):
    problems = []
    if h.source.shape != h.target.shape:
        return [("shape-mismatch",)]
    D = h.source.shape
    for d in D.objects:
        f = h.components.get(d)
        if f is None or f.source != h.source.at[d] or f.target != h.target.at[d]:
            problems.append(("component-typing", d))
        elif verify_map(f):
            problems.append(("component-not-simplicial", d))
    if problems:
        return problems
    for m in D.non_identities():
        a, b = D.src[m], D.tgt[m]
        if h.source.act[m].then(h.components[b]) != \
                h.components[a].then(h.target.act[m]):
            problems.append(("naturality", m))
    return problems


def constant_diagram(D: SmallCategory, K: SimplicialSet) -> Diagram:
    return Diagram(D, {d: K for d in D.objects},
                   {m: identity_map(K) for m in D.arrows})


def point_diagram(D: SmallCategory) -> Diagram:
    return constant_diagram(D, point())


def empty_diagram(D: SmallCategory) -> Diagram:
    return constant_diagram(D, empty_simplicial_set())


def wrap_sset(X: SimplicialSet) -> Diagram:
    """A plain simplicial set as a diagram over the one-object category."""
    return Diagram(terminal_category(), {"*": X}, {})


def wrap_smap(f: SimplicialMap) -> DiagramMap:
    return DiagramMap(wrap_sset(f.source), wrap_sset(f.target), {"*": f})


def terminal_dmap(X: Diagram) -> DiagramMap:
    P = point_diagram(X.shape)
    return DiagramMap(X, P, {d: constant_map(X.at[d], point(), "0")
                             for d in X.shape.objects})


def empty_dmap_into(X: Diagram) -> DiagramMap:
    E = empty_diagram(X.shape)
    return DiagramMap(E, X, {d: SimplicialMap(empty_simplicial_set(),
                                              X.at[d], {})
                             for d in X.shape.objects})


def nerve(D: SmallCategory, dim_cap) -> SimplicialSet:
    """The nerve of a finite category, truncated at dim_cap.

    Nondegenerate k-simplices are chains (f_1, ..., f_k) of composable
    non-identity arrows, f_i from a_{i-1} to a_i.  Inner faces compose
    adjacent arrows; a composite that collapses to an identity makes the
    chain a degeneracy of the shorter one.
    """

    def name_of(chain, obj=None):
        return "|".join(chain) if chain else obj

    def normal_form(chain, obj):
        # strip identity entries greedily from the largest position; an
        # identity at index j is the j-th degeneracy of the shorter chain
        word = []
        chain = list(chain)
        while True:
            ids = [j for j, m in enumerate(chain) if D.is_identity(m)]
            if not ids:
                break
            j = max(ids)
            chain.pop(j)
            word.append(j)
        return Simplex(tuple(word), name_of(tuple(chain), obj))

    chains = {0: [()]}
    for k in range(1, dim_cap + 1):
        chains[k] = [chain + (m,) for chain in chains[k - 1]
                     for m in D.non_identities()
                     if not chain or D.src[m] == D.tgt[chain[-1]]]

    levels = [list(D.objects)]
    faces = {}
    for k in range(1, dim_cap + 1):
        cells = sorted(chains[k], key=name_of)
        levels.append([name_of(c) for c in cells])
        for c in cells:
            fs = []
            for i in range(k + 1):
                if i == 0:
                    fs.append(Simplex((), name_of(c[1:], D.tgt[c[0]])))
                elif i == k:
                    fs.append(Simplex((), name_of(c[:-1], D.src[c[0]])))
                else:
                    merged = c[:i - 1] + (D.comp[(c[i], c[i - 1])],) + c[i + 1:]
                    fs.append(normal_form(merged, D.src[c[0]]))
            faces[name_of(c)] = tuple(fs)
    return SimplicialSet(levels, faces)


def free_diagram(D: SmallCategory, d) -> Diagram:
    """The free (representable) diagram generated at d: discrete hom-sets."""
    at = {}
    for d2 in D.objects:
        at[d2] = SimplicialSet([list(D.hom(d, d2))], {})
    act = {}
    for m in D.arrows:
        a, b = D.src[m], D.tgt[m]
        act[m] = SimplicialMap(at[a], at[b],
                               {u: nondeg(D.compose(m, u)) for u in D.hom(d, a)})
    return Diagram(D, at, act)


# ---------------------------------------------------------------------------
# colimits


class Colim:
    def __init__(self, space, cocone, _co, _q, shape):
        self.space = space
        self.cocone = cocone  # object -> SimplicialMap into the colimit
        self._co = _co
        self._q = _q
        self._shape = shape

    def mediate(self, legs, target) -> SimplicialMap:
        """The unique map out of the colimit agreeing with a commuting cocone."""
        assignment = {}
        for cell in self.space.all_cells():
            rep = self._q.rep_of[cell]
            i, orig = self._co.summand_of[rep.cell]
            img = legs[self._shape.objects[i]].assignment[orig]
            assignment[cell] = Simplex(compose_words(rep.word, img.word),
                                       img.cell)
        return SimplicialMap(self.space, target, assignment)


_colim_cache = {}


def colim(X: Diagram) -> Colim:
    """Levelwise colimit: coequalizer of the morphism actions on the coproduct."""
    if X in _colim_cache:
        return _colim_cache[X]
    D = X.shape
    co = glue.coproduct([X.at[d] for d in D.objects])
    inj = {d: co.injections[i] for i, d in enumerate(D.objects)}
    pairs = []
    for m in D.non_identities():
        a, b = D.src[m], D.tgt[m]
        for c in X.at[a].all_cells():
            pairs.append((inj[a](nondeg(c)), inj[b](X.act[m](nondeg(c)))))
    q = glue.quotient(co.space, pairs)
    result = Colim(q.space,
                   {d: inj[d].then(q.projection) for d in D.objects},
                   co, q, D)
    _colim_cache[X] = result
    return result


def colim_map(f: DiagramMap) -> SimplicialMap:
    """The induced map of colimits."""
    cx, cy = colim(f.source), colim(f.target)
    legs = {d: f.components[d].then(cy.cocone[d])
            for d in f.source.shape.objects}
    return cx.mediate(legs, cy.space)


# ---------------------------------------------------------------------------
# pointwise (co)limits of diagrams


class CoproductD:
    def __init__(self, diagram, injections):
        self.diagram = diagram
        self.injections = injections


def coproduct_D(diagrams) -> CoproductD:
    D = diagrams[0].shape
    cos = {d: glue.coproduct([X.at[d] for X in diagrams]) for d in D.objects}
    at = {d: cos[d].space for d in D.objects}
    act = {}
    for m in D.arrows:
        a, b = D.src[m], D.tgt[m]
        assignment = {}
        for i, X in enumerate(diagrams):
            for c in X.at[a].all_cells():
                img = X.act[m](nondeg(c))
                assignment[f"{i}:{c}"] = Simplex(img.word, f"{i}:{img.cell}")
        act[m] = SimplicialMap(at[a], at[b], assignment)
    diagram = Diagram(D, at, act)
    injections = [DiagramMap(X, diagram,
                             {d: cos[d].injections[i] for d in D.objects})
                  for i, X in enumerate(diagrams)]
    return CoproductD(diagram, injections)


class PushoutD:
    def __init__(self, diagram, from_left, from_right, pos):
        self.diagram = diagram
        self.from_left = from_left
        self.from_right = from_right
        self.pos = pos  # object -> glue.Pushout

    def mediate(self, p: DiagramMap, q: DiagramMap) -> DiagramMap:
        comps = {d: self.pos[d].mediate(p.components[d], q.components[d])
                 for d in self.diagram.shape.objects}
        return DiagramMap(self.diagram, p.target, comps)


def pushout_D(f: DiagramMap, g: DiagramMap) -> PushoutD:
    """Pointwise pushout of f: A -> X along g: A -> B, with induced actions."""
    assert f.source == g.source
    D = f.source.shape
    X, B = f.target, g.target
    pos = {d: glue.pushout(f.components[d], g.components[d])
           for d in D.objects}
    at = {d: pos[d].space for d in D.objects}
    act = {}
    for m in D.arrows:
        a, b = D.src[m], D.tgt[m]
        act[m] = pos[a].mediate(X.act[m].then(pos[b].from_left),
                                B.act[m].then(pos[b].from_right))
    diagram = Diagram(D, at, act)
    from_left = DiagramMap(X, diagram, {d: pos[d].from_left for d in D.objects})
    from_right = DiagramMap(B, diagram, {d: pos[d].from_right for d in D.objects})
    return PushoutD(diagram, from_left, from_right, pos)


class PullbackD:
    def __init__(self, diagram, proj1, proj2, tcs):
        self.diagram = diagram
        self.proj1 = proj1
        self.proj2 = proj2
        self.tcs = tcs  # object -> glue.TupleComplex

    def mediate(self, a: DiagramMap, b: DiagramMap) -> DiagramMap:
        src = a.source
        comps = {d: self.tcs[d].mediate((a.components[d], b.components[d]),
                                        source=src.at[d])
                 for d in src.shape.objects}
        return DiagramMap(src, self.diagram, comps)


class LimitD:
    """Finite limit of diagrams cut out of a product by map equalities."""

    def __init__(self, diagram, projections, tcs):
        self.diagram = diagram
        self.projections = projections
        self.tcs = tcs

    def mediate(self, maps) -> DiagramMap:
        src = maps[0].source
        comps = {d: self.tcs[d].mediate([m.components[d] for m in maps],
                                        source=src.at[d])
                 for d in src.shape.objects}
        return DiagramMap(src, self.diagram, comps)


def limit_D(factors, constraints) -> LimitD:
    """Pointwise limit of several diagrams; constraints are (i, f, j, g)
    with f, g DiagramMaps out of factors i and j into a shared corner."""
    D = factors[0].shape
    tcs = {}
    for d in D.objects:
        cons = tuple((i, f.components[d], j, g.components[d])
                     for (i, f, j, g) in constraints)
        tcs[d] = glue.tuple_complex(tuple(X.at[d] for X in factors), cons)
    at = {d: tcs[d].space for d in D.objects}
    act = {}
    for m in D.arrows:
        a, b = D.src[m], D.tgt[m]
        act[m] = glue.induced_tuple_map(tcs[a], tcs[b],
                                        tuple(X.act[m] for X in factors))
    diagram = Diagram(D, at, act)
    projections = [DiagramMap(diagram, X,
                              {d: tcs[d].projection(i) for d in D.objects})
                   for i, X in enumerate(factors)]
    return LimitD(diagram, projections, tcs)


def pullback_D(f: DiagramMap, g: DiagramMap) -> PullbackD:
    """Pointwise fiber product of f: X -> Z and g: Y -> Z."""
    assert f.target == g.target
    D = f.source.shape
    X, Y = f.source, g.source
    tcs = {d: glue.pullback(f.components[d], g.components[d])
           for d in D.objects}
    at = {d: tcs[d].space for d in D.objects}
    act = {}
    for m in D.arrows:
        a, b = D.src[m], D.tgt[m]
        act[m] = glue.induced_tuple_map(tcs[a], tcs[b],
                                        (X.act[m], Y.act[m]))
    diagram = Diagram(D, at, act)
    proj1 = DiagramMap(diagram, X, {d: tcs[d].projection(0) for d in D.objects})
    proj2 = DiagramMap(diagram, Y, {d: tcs[d].projection(1) for d in D.objects})
    return PullbackD(diagram, proj1, proj2, tcs)


# ---------------------------------------------------------------------------
# tensor with a simplicial set


class Tensor:
    def __init__(self, diagram, tcs, base, K):
        self.diagram = diagram
        self.tcs = tcs  # object -> glue.TupleComplex for at[d] x K
        self.base = base
        self.K = K


_tensor_cache = {}


def tensor(X: Diagram, K: SimplicialSet) -> Tensor:
    """Objectwise product with a constant diagram at K."""
    key = (X, K)
    if key in _tensor_cache:
        return _tensor_cache[key]
    D = X.shape
    tcs = {d: glue.product(X.at[d], K) for d in D.objects}
    at = {d: tcs[d].space for d in D.objects}
    act = {}
    for m in D.arrows:
        a, b = D.src[m], D.tgt[m]
        act[m] = glue.induced_tuple_map(tcs[a], tcs[b],
                                        (X.act[m], identity_map(K)))
    result = Tensor(Diagram(D, at, act), tcs, X, K)
    _tensor_cache[key] = result
    return result


def tensor_map(f: DiagramMap, k: SimplicialMap) -> DiagramMap:
    """The map tensor(A, K) -> tensor(B, L) induced by f: A -> B and k: K -> L."""
    tsrc = tensor(f.source, k.source)
    tdst = tensor(f.target, k.target)
    comps = {d: glue.induced_tuple_map(tsrc.tcs[d], tdst.tcs[d],
                                       (f.components[d], k))
             for d in f.source.shape.objects}
    return DiagramMap(tsrc.diagram, tdst.diagram, comps)


def tensor_unit_section(X: Diagram, K: SimplicialSet, vertex) -> DiagramMap:
    """The slice X -> X tensor K over a vertex of K."""
    t = tensor(X, K)
    comps = {}
    for d in X.shape.objects:
        tc = t.tcs[d]
        assignment = {}
        for c in X.at[d].all_cells():
            n = X.at[d].cell_dim(c)
            kv = Simplex(tuple(range(n - 1, -1, -1)), vertex)
            assignment[c] = tc.locate((nondeg(c), kv))
        comps[d] = SimplicialMap(X.at[d], tc.space, assignment)
    return DiagramMap(X, t.diagram, comps)


def tensor_projection(X: Diagram, K: SimplicialSet) -> DiagramMap:
    t = tensor(X, K)
    return DiagramMap(t.diagram, X,
                      {d: t.tcs[d].projection(0) for d in X.shape.objects})


# ---------------------------------------------------------------------------
# levelwise presentations (cotensor, mapping complexes)


class LevelPresentation:
    """A truncated simplicial set given by levelwise element sets.

    Records the normal form of every element up to the cap, so maps defined
    on elements can be transported to the extracted presentation.
    """

    def __init__(self, space, levels, to_simplex, elem_of_cell, deg_fn, cap):
        self.space = space
        self.levels = levels
        self.to_simplex = to_simplex    # (n, element) -> Simplex
        self.elem_of_cell = elem_of_cell
        self._deg_fn = deg_fn
        self.cap = cap

    def element_of(self, s: Simplex):
        e = self.elem_of_cell[s.cell]
        n = self.space.cell_dim(s.cell)
        for j in reversed(s.word):
            e = self._deg_fn(n, e, j)
            n += 1
        return e


def complex_from_levels(levels, face_fn, deg_fn, cap) -> LevelPresentation:
    """Extract a normal-form presentation from levelwise data.

    levels[n] lists the n-elements in canonical order; face_fn(n, e, i) and
    deg_fn(n, e, j) are the operators (deg_fn raises the level from n to n+1).
    Cells above the cap are unknown; the result presents the cap-skeleton.
    """
    to_simplex = {}
    elem_of_cell = {}
    new_levels = []
    faces = {}
    for n, elems in enumerate(levels):
        level = []
        for e in elems:
            js = [j for j in range(n)
                  if deg_fn(n - 1, face_fn(n, e, j), j) == e]
            if js:
                j = max(js)
                sub = to_simplex[(n - 1, face_fn(n, e, j))]
                to_simplex[(n, e)] = Simplex(compose_words((j,), sub.word),
                                             sub.cell)
            else:
                name = f"e{n}_{len(level)}"
                level.append(name)
                elem_of_cell[name] = e
                if n >= 1:
                    faces[name] = tuple(to_simplex[(n - 1, face_fn(n, e, i))]
                                        for i in range(n + 1))
                to_simplex[(n, e)] = nondeg(name)
        new_levels.append(level)
    space = SimplicialSet(new_levels, faces)
    return LevelPresentation(space, [list(l) for l in levels],
                             to_simplex, elem_of_cell, deg_fn, cap)


class _ProductTower:
    """product(Delta^m, K) with coface/codegeneracy actions, grown on demand."""

    def __init__(self, K):
        self.K = K
        self._coface = {}
        self._codeg = {}

    def tc(self, m) -> glue.TupleComplex:
        return glue.product(standard_simplex(m), K := self.K)

    def coface(self, m, i) -> SimplicialMap:
        """product(Delta^{m-1}, K) -> product(Delta^m, K)."""
        if (m, i) not in self._coface:
            self._coface[(m, i)] = glue.induced_tuple_map(
                self.tc(m - 1), self.tc(m),
                (coface_map(m, i), identity_map(self.K)))
        return self._coface[(m, i)]

    def codeg(self, m, j) -> SimplicialMap:
        """product(Delta^{m+1}, K) -> product(Delta^m, K)."""
        if (m, j) not in self._codeg:
            self._codeg[(m, j)] = glue.induced_tuple_map(
                self.tc(m + 1), self.tc(m),
                (codegeneracy_map(m, j), identity_map(self.K)))
        return self._codeg[(m, j)]


_tower_cache = {}


def _tower(K) -> _ProductTower:
    if K not in _tower_cache:
        _tower_cache[K] = _ProductTower(K)
    return _tower_cache[K]


class Cotensor:
    """Objectwise mapping complex X^K, truncated at a dimension cap."""

    def __init__(self, diagram, pres, base, K, cap):
        self.diagram = diagram
        self.pres = pres  # object -> LevelPresentation (elements: SimplicialMaps)
        self.base = base
        self.K = K
        self.cap = cap
        self.truncated = True


_cotensor_cache = {}


def cotensor(X: Diagram, K: SimplicialSet, cap) -> Cotensor:
    """X^K with m-simplices hom(Delta^m x K, X(d)) for m <= cap."""
    key = (X, K, cap)
    if key in _cotensor_cache:
        return _cotensor_cache[key]
    D = X.shape
    tower = _tower(K)

    def face_fn(n, e, i):
        return tower.coface(n, i).then(e)

    def deg_fn(n, e, j):
        return tower.codeg(n, j).then(e)

    pres = {}
    for d in D.objects:
        levels = [hom_set(tower.tc(m).space, X.at[d])
                  for m in range(cap + 1)]
        pres[d] = complex_from_levels(levels, face_fn, deg_fn, cap)
    at = {d: pres[d].space for d in D.objects}
    act = {}
    for m in D.arrows:
        a, b = D.src[m], D.tgt[m]
        assignment = {}
        for c in at[a].all_cells():
            n = at[a].cell_dim(c)
            e = pres[a].elem_of_cell[c]
            assignment[c] = pres[b].to_simplex[(n, e.then(X.act[m]))]
        act[m] = SimplicialMap(at[a], at[b], assignment)
    result = Cotensor(Diagram(D, at, act), pres, X, K, cap)
    _cotensor_cache[key] = result
    return result


def cotensor_map(f: DiagramMap, K: SimplicialSet, cap) -> DiagramMap:
    """Postcomposition X^K -> Y^K induced by f: X -> Y."""
    cs, ct = cotensor(f.source, K, cap), cotensor(f.target, K, cap)
    comps = {}
    for d in f.source.shape.objects:
        assignment = {}
        for c in cs.diagram.at[d].all_cells():
            n = cs.diagram.at[d].cell_dim(c)
            e = cs.pres[d].elem_of_cell[c]
            assignment[c] = ct.pres[d].to_simplex[(n, e.then(f.components[d]))]
        comps[d] = SimplicialMap(cs.diagram.at[d], ct.diagram.at[d], assignment)
    return DiagramMap(cs.diagram, ct.diagram, comps)


def cotensor_restriction(X: Diagram, k: SimplicialMap, cap) -> DiagramMap:
    """Precomposition X^L -> X^K induced by an inclusion k: K -> L."""
    K, L = k.source, k.target
    cL, cK = cotensor(X, L, cap), cotensor(X, K, cap)
    tK, tL = _tower(K), _tower(L)
    # product(Delta^m, K) -> product(Delta^m, L), one per level
    incls = [glue.induced_tuple_map(tK.tc(m), tL.tc(m),
                                    (identity_map(standard_simplex(m)), k))
             for m in range(cap + 1)]
    comps = {}
    for d in X.shape.objects:
        assignment = {}
        for c in cL.diagram.at[d].all_cells():
            n = cL.diagram.at[d].cell_dim(c)
            e = cL.pres[d].elem_of_cell[c]
            assignment[c] = cK.pres[d].to_simplex[(n, incls[n].then(e))]
        comps[d] = SimplicialMap(cL.diagram.at[d], cK.diagram.at[d], assignment)
    return DiagramMap(cL.diagram, cK.diagram, comps)


# ---------------------------------------------------------------------------
# hom sets and mapping complexes of diagrams


def hom_D(A: Diagram, X: Diagram,
          component_pool: Optional[Callable] = None,
          limit: Optional[int] = None,
          budget: Optional[list] = None):
    """All natural transformations A -> X, in canonical order.

    component_pool(d) optionally narrows the candidate simplicial maps used
    at each object; naturality is enforced across all arrows; limit caps the
    number of results.
    """
    D = A.shape
    assert D == X.shape
    objects = list(D.objects)
    pools = {}
    for d in objects:
        if component_pool is not None:
            pools[d] = list(component_pool(d))
        else:
            pools[d] = enumerate_maps(A.at[d], X.at[d], budget=budget)
    arrows_by_pair = {}
    for m in D.non_identities():
        a, b = D.src[m], D.tgt[m]
        arrows_by_pair.setdefault((a, b), []).append(m)

    results = []
    chosen = {}

    def consistent(d):
        for (a, b), ms in arrows_by_pair.items():
            if a not in chosen or b not in chosen:
                continue
            if a != d and b != d:
                continue
            for m in ms:
                if A.act[m].then(chosen[b]) != chosen[a].then(X.act[m]):
                    return False
        return True

    def search(pos):
        if limit is not None and len(results) >= limit:
            return
        if pos == len(objects):
            results.append(DiagramMap(A, X, dict(chosen)))
            return
        d = objects[pos]
        for cand in pools[d]:
            if budget is not None:
                budget[0] -= 1
                if budget[0] < 0:
                    raise BudgetExceeded()
            chosen[d] = cand
            if consistent(d):
                search(pos + 1)
            del chosen[d]
            if limit is not None and len(results) >= limit:
                return

    search(0)
    return results


class HomComplex:
    """The mapping complex of diagrams, truncated at a dimension cap.

    Level n is the set of natural transformations A tensor Delta^n -> X.
    """

    def __init__(self, pres: LevelPresentation, A, X, cap):
        self.pres = pres
        self.space = pres.space
        self.A = A
        self.X = X
        self.cap = cap
        self.truncated = True


class _TensorTower:
    """tensor(A, Delta^m) with coface/codegeneracy actions, grown on demand."""

    def __init__(self, A):
        self.A = A
        self._coface = {}
        self._codeg = {}

    def tensor(self, m) -> Tensor:
        return tensor(self.A, standard_simplex(m))

    def coface(self, m, i) -> DiagramMap:
        if (m, i) not in self._coface:
            self._coface[(m, i)] = tensor_map(identity_dmap(self.A),
                                              coface_map(m, i))
        return self._coface[(m, i)]

    def codeg(self, m, j) -> DiagramMap:
        if (m, j) not in self._codeg:
            self._codeg[(m, j)] = tensor_map(identity_dmap(self.A),
                                             codegeneracy_map(m, j))
        return self._codeg[(m, j)]


_tensor_tower_cache = {}


def _tensor_tower(A) -> _TensorTower:
    if A not in _tensor_tower_cache:
        _tensor_tower_cache[A] = _TensorTower(A)
    return _tensor_tower_cache[A]


_hom_complex_cache = {}


def hom_complex(A: Diagram, X: Diagram, cap) -> HomComplex:
    key = (A, X, cap)
    if key in _hom_complex_cache:
        return _hom_complex_cache[key]
    tower = _tensor_tower(A)

    def face_fn(n, e, i):
        return tower.coface(n, i).then(e)

    def deg_fn(n, e, j):
        return tower.codeg(n, j).then(e)

    levels = [hom_D(tower.tensor(m).diagram, X) for m in range(cap + 1)]
    pres = complex_from_levels(levels, face_fn, deg_fn, cap)
    result = HomComplex(pres, A, X, cap)
    _hom_complex_cache[key] = result
    return result


def hom_complex_post(A: Diagram, f: DiagramMap, cap) -> SimplicialMap:
    """hom(A, X) -> hom(A, Y) induced by postcomposition with f: X -> Y."""
    hs, ht = hom_complex(A, f.source, cap), hom_complex(A, f.target, cap)
    assignment = {}
    for c in hs.space.all_cells():
        n = hs.space.cell_dim(c)
        e = hs.pres.elem_of_cell[c]
        assignment[c] = ht.pres.to_simplex[(n, e.then(f))]
    return SimplicialMap(hs.space, ht.space, assignment)


def hom_complex_pre(h: DiagramMap, X: Diagram, cap) -> SimplicialMap:
    """hom(B, X) -> hom(A, X) induced by precomposition with h: A -> B."""
    hs, ht = hom_complex(h.target, X, cap), hom_complex(h.source, X, cap)
    assignment = {}
    for c in hs.space.all_cells():
        n = hs.space.cell_dim(c)
        e = hs.pres.elem_of_cell[c]
        pre = tensor_map(h, identity_map(standard_simplex(n)))
        assignment[c] = ht.pres.to_simplex[(n, pre.then(e))]
    return SimplicialMap(hs.space, ht.space, assignment)


def adjoint_to_cotensor(a: DiagramMap, T: Diagram, cot: Cotensor) -> DiagramMap:
    """Convert a: tensor(T, K) -> X into T -> X^K; inverse of adjoint_to_tensor.

    The element assigned to a cell t evaluates a along the operator action
    of the Delta-coordinate on t.
    """
    from .simplicial import apply_operator, simplex_vertices
    X, K = cot.base, cot.K
    t_tensor = tensor(T, K)
    tower = _tower(K)
    comps = {}
    for d in T.shape.objects:
        tc = t_tensor.tcs[d]
        assignment = {}
        for t in T.at[d].all_cells():
            m = T.at[d].cell_dim(t)
            ptc = tower.tc(m)
            psi = {}
            for cell in ptc.space.all_cells():
                sigma, kappa = ptc.coords[cell]
                moved = apply_operator(T.at[d], nondeg(t),
                                       simplex_vertices(sigma))
                psi[cell] = a.components[d](tc.locate((moved, kappa)))
            element = SimplicialMap(ptc.space, X.at[d], psi)
            assignment[t] = cot.pres[d].to_simplex[(m, element)]
        comps[d] = SimplicialMap(T.at[d], cot.diagram.at[d], assignment)
    return DiagramMap(T, cot.diagram, comps)


def adjoint_to_tensor(phi: DiagramMap, cot: Cotensor) -> DiagramMap:
    """Convert phi: T -> X^K into the adjoint map tensor(T, K) -> X.

    The value on a pair (t, k) evaluates the mapping-complex element at the
    top simplex of Delta^n paired with k.
    """
    T = phi.source
    X = cot.base
    K = cot.K
    t = tensor(T, K)
    tower = _tower(K)
    comps = {}
    for d in T.shape.objects:
        tc = t.tcs[d]
        assignment = {}
        for cell in tc.space.all_cells():
            u, v = tc.coords[cell]
            n = tc.space.cell_dim(cell)
            e = cot.pres[d].element_of(phi.components[d](u))
            iota = Simplex((), ".".join(str(k) for k in range(n + 1)))
            assignment[cell] = e(tower.tc(n).locate((iota, v)))
        comps[d] = SimplicialMap(tc.space, X.at[d], assignment)
    return DiagramMap(t.diagram, X, comps)

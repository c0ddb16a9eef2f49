"""Orbit extraction, orbit categories of a diagram, and orbit-point diagrams.

An orbit is a diagram whose colimit is the one-point simplicial set.  The
orbits of a diagram X are the pullbacks of vertices of colim of X (or of its
cotensor levels) along the canonical map to the colimit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cat import (
    Diagram,
    DiagramMap,
    SmallCategory,
    colim,
    colim_map,
    constant_diagram,
    cotensor,
    hom_D,
    hom_complex,
    hom_complex_pre,
    identity_dmap,
    opposite,
    point_diagram,
    pullback_D,
    terminal_dmap,
)
from .simplicial import (
    constant_map,
    is_isomorphism,
    point,
    standard_simplex,
)


@dataclass(frozen=True)
class OrbitMap:
    """An orbit with its structure map into an ambient diagram.

    level is the cotensor exponent n of the witnessing vertex; witness is the
    vertex of colim of the n-th cotensor over which the orbit was pulled back.
    """

    orbit: Diagram
    into: DiagramMap
    level: int
    witness: str
    pullback: object = field(compare=False, repr=False, default=None)

    @property
    def ambient(self) -> Diagram:
        return self.into.target


def is_orbit(T: Diagram) -> bool:
    """True exactly when colim of T is the one-point simplicial set."""
    c = colim(T).space
    return c.dim == 0 and len(c.cells(0)) == 1


_setup_cache = {}


def orbit_setup(X: Diagram):
    """One orbit map per vertex of colim X, pulled back along X -> colim X.

    This is the level-0 factorization setup for maps of orbits into X: any
    map from an orbit factors through the member over the matching vertex.
    """
    if X in _setup_cache:
        return _setup_cache[X]
    co = colim(X)
    D = X.shape
    constC = constant_diagram(D, co.space)
    q = DiagramMap(X, constC, {d: co.cocone[d] for d in D.objects})
    P = point_diagram(D)
    out = []
    for v in co.space.cells(0):
        vmap = DiagramMap(P, constC,
                          {d: constant_map(point(), co.space, v)
                           for d in D.objects})
        pb = pullback_D(q, vmap)
        out.append(OrbitMap(orbit=pb.diagram, into=pb.proj1,
                            level=0, witness=v, pullback=pb))
    result = tuple(out)
    _setup_cache[X] = result
    return result


def factor_through_setup(phi: DiagramMap, setup) -> Optional[tuple]:
    """Factor a map from an orbit through a setup member, if possible.

    Returns (member, psi) with member.into . psi == phi; the pullback
    universal property supplies psi once the matching vertex is identified.
    """
    T = phi.source
    if not is_orbit(T):
        return None
    co_t = colim(T)
    m = colim_map(phi)
    v = m.assignment[co_t.space.cells(0)[0]].cell
    for member in setup:
        if member.witness == v and member.level == 0:
            psi = member.pullback.mediate(phi, terminal_dmap(T))
            return member, psi
    return None


def orbit_naturality(f: DiagramMap, o: OrbitMap):
    """The square carrying an orbit of the source to one of the target.

    Returns (F, target) where F: o.orbit -> target.orbit covers f, and target
    belongs to orbit_setup(f.target) over the image vertex.
    """
    assert o.ambient == f.source
    m = colim_map(f)
    y = m.assignment[o.witness].cell
    target = None
    for member in orbit_setup(f.target):
        if member.witness == y:
            target = member
            break
    assert target is not None
    F = target.pullback.mediate(o.into.then(f), terminal_dmap(o.orbit))
    return F, target


# ---------------------------------------------------------------------------
# orbit categories


class OrbitCategory:
    """A finite fragment of the category of orbits of a diagram.

    Orbits are deduplicated up to isomorphism; hom sets are stored for every
    ordered pair.  witnesses[i] records the (cotensor level, vertex) pairs
    that produced orbit i.
    """

    def __init__(self, orbits, homs, witnesses, level_cap, dim_cap):
        self.orbits = tuple(orbits)
        self.homs = homs
        self.witnesses = witnesses
        self.level_cap = level_cap
        self.dim_cap = dim_cap

    def hom(self, i, j):
        return self.homs[(i, j)]

    def __len__(self):
        return len(self.orbits)

    def as_category(self):
        """The orbit category as a finite category with named arrows."""
        objects = [f"T{i}" for i in range(len(self.orbits))]
        arrows = []
        lookup = {}
        for (i, j), maps in sorted(self.homs.items()):
            for k, h in enumerate(maps):
                name = f"m{i}_{j}_{k}"
                arrows.append((name, f"T{i}", f"T{j}"))
                lookup[name] = h
        identities = {}
        for i, T in enumerate(self.orbits):
            idx = self.homs[(i, i)].index(identity_dmap(T))
            identities[f"T{i}"] = f"m{i}_{i}_{idx}"
        comp = {}
        for (i, j), fs in self.homs.items():
            for (j2, k), gs in self.homs.items():
                if j2 != j:
                    continue
                for a, fmap in enumerate(fs):
                    for b, gmap in enumerate(gs):
                        comp[(f"m{j}_{k}_{b}", f"m{i}_{j}_{a}")] = \
                            f"m{i}_{k}_{self.homs[(i, k)].index(fmap.then(gmap))}"
        cat = SmallCategory(objects, arrows, identities, comp)
        return cat, lookup


def diagram_isomorphic(T1: Diagram, T2: Diagram) -> Optional[DiagramMap]:
    """An isomorphism T1 -> T2 when one exists.

    A natural transformation with isomorphism components is invertible, so it
    suffices to scan hom_D for one.
    """
    for d in T1.shape.objects:
        if [len(l) for l in T1.at[d].levels] != [len(l) for l in T2.at[d].levels]:
            return None
    for h in hom_D(T1, T2):
        if all(is_isomorphism(h.components[d]) is not None
               for d in T1.shape.objects):
            return h
    return None


def orbit_category_of(X: Diagram, level_cap=1, dim_cap=2) -> OrbitCategory:
    """Orbits of X over vertices of colim of the cotensor levels n <= level_cap.

    The cotensor levels are truncated at dim_cap; both caps are recorded on
    the result.  Orbits are deduplicated up to isomorphism, ties broken by
    discovery order.
    """
    kept = []
    witnesses = []
    for n in range(level_cap + 1):
        C = cotensor(X, standard_simplex(n), dim_cap).diagram
        for o in orbit_setup(C):
            found = None
            for i, T in enumerate(kept):
                if diagram_isomorphic(o.orbit, T) is not None:
                    found = i
                    break
            if found is None:
                kept.append(o.orbit)
                witnesses.append([(n, o.witness)])
            else:
                witnesses[found].append((n, o.witness))
    homs = {(i, j): tuple(hom_D(Ti, Tj))
            for i, Ti in enumerate(kept) for j, Tj in enumerate(kept)}
    return OrbitCategory(kept, homs, witnesses, level_cap, dim_cap)


def orbit_category_union(*cats) -> OrbitCategory:
    """Merge orbit categories, deduplicating orbits up to isomorphism."""
    kept = []
    witnesses = []
    for cat in cats:
        for i, T in enumerate(cat.orbits):
            if any(diagram_isomorphic(T, K) is not None for K in kept):
                continue
            kept.append(T)
            witnesses.append(list(cat.witnesses[i]))
    homs = {(i, j): tuple(hom_D(Ti, Tj))
            for i, Ti in enumerate(kept) for j, Tj in enumerate(kept)}
    level_cap = max(c.level_cap for c in cats)
    dim_cap = max(c.dim_cap for c in cats)
    return OrbitCategory(kept, homs, witnesses, level_cap, dim_cap)


def orbit_point_diagram(X: Diagram, E: OrbitCategory, dim_cap) -> Diagram:
    """The diagram of orbit-points over the opposite of the orbit category.

    The value at an orbit T is the mapping complex hom(T, X) truncated at
    dim_cap; functoriality is by precomposition.
    """
    cat, lookup = E.as_category()
    shape = opposite(cat)
    at = {f"T{i}": hom_complex(T, X, dim_cap).space
          for i, T in enumerate(E.orbits)}
    act = {}
    for name, h in lookup.items():
        act[name] = hom_complex_pre(h, X, dim_cap)
    return Diagram(shape, at, act)

"""Independent brute-force oracles and a seeded random-instance generator.

The oracles deliberately avoid the pruned search paths of the package: hom
sets by filtering the full product of dimension-preserving assignments, pi0
by union-find, lifting by filtering full hom sets.
"""

import itertools
import random

from eqloc.glue import UnionFind, pushout, quotient
from eqloc.simplicial import (
    SimplicialMap,
    SimplicialSet,
    boundary,
    boundary_inclusion,
    constant_map,
    hom_set,
    nondeg,
    point,
    verify_map,
)


def naive_hom(X, Y):
    """Every dimension-preserving cell assignment, filtered by face checks."""
    cells = [c for level in X.levels for c in level]
    pools = [Y.simplices(X.cell_dim(c)) for c in cells]
    out = []
    for combo in itertools.product(*pools):
        f = SimplicialMap(X, Y, dict(zip(cells, combo)))
        if not verify_map(f):
            out.append(f)
    return out


def pi0_oracle(X):
    """Component count by union-find over vertices and edges."""
    if not X.cells(0):
        return 0
    uf = UnionFind(X.cells(0))
    for e in X.cells(1):
        uf.union(X.face(nondeg(e), 0).cell, X.face(nondeg(e), 1).cell)
    return len({uf.find(v) for v in X.cells(0)})


def rlp_oracle(i, p):
    """RLP by filtering full hom sets, no pruning anywhere."""
    A, B = i.source, i.target
    X, Y = p.source, p.target
    all_lifts = naive_hom(B, X)
    for a in naive_hom(A, X):
        for b in naive_hom(B, Y):
            composite_ok = all(
                b(i(nondeg(c))) == p(a(nondeg(c))) for c in A.all_cells())
            if not composite_ok:
                continue
            found = False
            for l in all_lifts:
                if all(l(i(nondeg(c))) == a(nondeg(c)) for c in A.all_cells()) \
                        and all(p(l(nondeg(c))) == b(nondeg(c))
                                for c in B.all_cells()):
                    found = True
                    break
            if not found:
                return False
    return True


def random_sset(rng: random.Random, max_cells=10) -> SimplicialSet:
    """A random finite complex built by gluing standard pieces.

    Grown through the public pushout/quotient operations, so the result is
    valid by construction and the draw is reproducible from the seed.
    """
    n_start = rng.randint(1, 3)
    X = SimplicialSet([[f"v{i}" for i in range(n_start)]], {})
    for _ in range(rng.randint(0, 6)):
        if X.n_nondegenerate() >= max_cells:
            break
        op = rng.choice(["edge", "edge", "cell2", "merge"])
        if op == "edge":
            verts = [s.cell for s in X.simplices(0)]
            a, b = rng.choice(verts), rng.choice(verts)
            attach = SimplicialMap(boundary(1), X,
                                   {"0": nondeg(a), "1": nondeg(b)})
            X = pushout(attach, boundary_inclusion(1)).space
        elif op == "cell2":
            maps = hom_set(boundary(2), X)
            if maps:
                attach = rng.choice(maps)
                X = pushout(attach, boundary_inclusion(2)).space
        elif op == "merge" and len(X.cells(0)) >= 2:
            verts = list(X.cells(0))
            a, b = rng.sample(verts, 2)
            X = quotient(X, [(nondeg(a), nondeg(b))]).space
    return X


def random_collapse_map(rng: random.Random, X) -> SimplicialMap:
    """A random map from X onto a quotient of itself."""
    verts = list(X.cells(0))
    if len(verts) >= 2 and rng.random() < 0.7:
        a, b = rng.sample(verts, 2)
        q = quotient(X, [(nondeg(a), nondeg(b))])
        return q.projection
    return constant_map(X, point(), "0")

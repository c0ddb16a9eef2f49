"""Finite simplicial sets: degeneracy words, normal forms, maps, hom enumeration.

Every simplex is kept in Eilenberg-Zilber normal form: a strictly decreasing
degeneracy word applied to a nondegenerate cell.  All face/degeneracy algebra
happens on words, so a complex only ever materializes its nondegenerate cells.
"""

from __future__ import annotations

import itertools
from typing import Callable, NamedTuple, Optional


class BudgetExceeded(Exception):
    """Raised when a backtracking search runs out of its node budget."""


# ---------------------------------------------------------------------------
# degeneracy words
#
# A word (i_k, ..., i_1) with i_k > ... > i_1 >= 0 denotes the operator
# composite s_{i_k} .. s_{i_1} (rightmost applied first).  The empty word is
# the identity.

Word = tuple  # tuple[int, ...], strictly decreasing


def is_admissible(word) -> bool:
    return all(word[t] > word[t + 1] for t in range(len(word) - 1))


def normalize_word(indices) -> Word:
    """Admissible form of an arbitrary composite of degeneracy operators.

    Rewrites adjacent pairs by s_i s_j = s_{j+1} s_i (i <= j) until the
    sequence is strictly decreasing.
    """
    word = list(indices)
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a <= b:
                word[k], word[k + 1] = b + 1, a
                changed = True
    return tuple(word)


def compose_words(outer, inner) -> Word:
    """Admissible form of the composite (outer word) after (inner word)."""
    return normalize_word(tuple(outer) + tuple(inner))


def word_face(word, i):
    """Push d_i through a degeneracy word.

    Returns (word', residual) where the composite d_i . s_word equals
    s_word' . d_residual, with residual None when d_i is absorbed by the word.
    """
    out = []
    rest = list(word)
    while rest:
        j = rest.pop(0)
        if i < j:
            out.append(j - 1)
        elif i == j or i == j + 1:
            return normalize_word(out + rest), None
        else:
            out.append(j)
            i -= 1
    return normalize_word(out), i


def admissible_words(length, base_dim):
    """All admissible words of the given length acting on a base_dim-simplex.

    Sorted; there are C(base_dim + length, length) of them.
    """
    if length == 0:
        return ((),)
    # stored word (i_k,...,i_1) reversed is strictly increasing with
    # i_t <= base_dim + t - 1 (t counted from the right, 1-based)
    words = []

    def grow(prefix, pos):
        if pos > length:
            words.append(tuple(reversed(prefix)))
            return
        lo = prefix[-1] + 1 if prefix else 0
        for i in range(lo, base_dim + pos):
            grow(prefix + [i], pos + 1)

    grow([], 1)
    words.sort()
    return tuple(words)


class Simplex(NamedTuple):
    """A (possibly degenerate) simplex in EZ normal form: word applied to a cell."""

    word: Word
    cell: str


def nondeg(cell: str) -> Simplex:
    return Simplex((), cell)


# ---------------------------------------------------------------------------
# simplicial sets


class SimplicialSet:
    """A finite simplicial set presented by nondegenerate cells.

    levels: per-dimension lists of cell names (the canonical order).
    faces: for each cell of dimension n >= 1, an (n+1)-tuple of Simplex values
    of dimension n-1, listed d_0 .. d_n.
    """

    def __init__(self, levels, faces):
        lv = [tuple(l) for l in levels]
        while lv and not lv[-1]:
            lv.pop()
        self._levels = tuple(lv)
        self._faces = {c: tuple(Simplex(tuple(s[0]), s[1]) for s in fs)
                       for c, fs in faces.items()}
        self._dim = {}
        self._pos = {}
        for n, cells in enumerate(self._levels):
            for idx, c in enumerate(cells):
                if c in self._dim:
                    raise ValueError(f"duplicate cell name {c!r}")
                self._dim[c] = n
                self._pos[c] = (n, idx)
        self._hash = None
        self._key_cache = None
        self._simplices_cache = {}
        self._face_index = {}

    # -- basic structure ----------------------------------------------------

    @property
    def levels(self):
        return self._levels

    @property
    def dim(self) -> int:
        """Dimension: max level holding a nondegenerate cell, -1 if empty."""
        return len(self._levels) - 1

    def cells(self, n) -> tuple:
        if 0 <= n < len(self._levels):
            return self._levels[n]
        return ()

    def all_cells(self):
        for cells in self._levels:
            yield from cells

    def n_nondegenerate(self) -> int:
        return sum(len(l) for l in self._levels)

    def cell_dim(self, cell) -> int:
        return self._dim[cell]

    def cell_faces(self, cell) -> tuple:
        return self._faces[cell]

    def has_cell(self, cell) -> bool:
        return cell in self._dim

    def simplex_dim(self, s: Simplex) -> int:
        return self._dim[s.cell] + len(s.word)

    def skey(self, s: Simplex):
        """Canonical sort key among simplices of equal dimension."""
        return (self._pos[s.cell], s.word)

    def _key(self):
        if self._key_cache is None:
            self._key_cache = (
                self._levels,
                tuple((c, self._faces[c]) for c in self.all_cells()
                      if c in self._faces))
        return self._key_cache

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        counts = ",".join(str(len(l)) for l in self._levels)
        return f"SimplicialSet[{counts}]"

    # -- simplex algebra ----------------------------------------------------

    def face(self, s: Simplex, i) -> Simplex:
        """d_i of a simplex in normal form; result is in normal form."""
        n = self.simplex_dim(s)
        if n < 1 or not 0 <= i <= n:
            raise IndexError(f"face index {i} out of range for dim {n}")
        word, residual = word_face(s.word, i)
        if residual is None:
            return Simplex(word, s.cell)
        f = self._faces[s.cell][residual]
        return Simplex(compose_words(word, f.word), f.cell)

    def degeneracy(self, s: Simplex, j) -> Simplex:
        n = self.simplex_dim(s)
        if not 0 <= j <= n:
            raise IndexError(f"degeneracy index {j} out of range for dim {n}")
        return Simplex(compose_words((j,), s.word), s.cell)

    def simplices(self, n) -> tuple:
        """All n-simplices (degenerate included), canonical order."""
        if n < 0:
            return ()
        if n not in self._simplices_cache:
            out = []
            for q in range(min(n, self.dim) + 1):
                for cell in self._levels[q]:
                    for w in admissible_words(n - q, q):
                        out.append(Simplex(w, cell))
            out.sort(key=self.skey)
            self._simplices_cache[n] = tuple(out)
        return self._simplices_cache[n]

    def faces_of(self, s: Simplex) -> tuple:
        n = self.simplex_dim(s)
        return tuple(self.face(s, i) for i in range(n + 1))

    def _faces_index(self, n):
        """Index (i, face simplex) -> tuple of n-simplices with that i-face."""
        if n not in self._face_index:
            idx = {}
            for s in self.simplices(n):
                for i in range(n + 1):
                    idx.setdefault((i, self.face(s, i)), []).append(s)
            self._face_index[n] = {k: tuple(v) for k, v in idx.items()}
        return self._face_index[n]


def normalize(X: SimplicialSet, word, face_index, cell) -> Simplex:
    """d_{face_index} of (word . cell) in X, in admissible normal form."""
    return X.face(Simplex(tuple(word), cell), face_index)


def validate(X: SimplicialSet):
    """Check well-formedness and the simplicial identities.

    Returns a list of violations; empty means valid.  Face-data violations
    are reported per (cell, slot); identity violations as (cell, i, j) where
    d_i d_j != d_{j-1} d_i.
    """
    problems = []
    for cell in X.all_cells():
        n = X.cell_dim(cell)
        if n == 0:
            if cell in X._faces:
                problems.append(("faces-on-vertex", cell))
            continue
        fs = X._faces.get(cell)
        if fs is None:
            problems.append(("missing-faces", cell))
            continue
        if len(fs) != n + 1:
            problems.append(("face-count", cell, len(fs)))
            continue
        ok = True
        for i, f in enumerate(fs):
            if not is_admissible(f.word):
                problems.append(("inadmissible-word", cell, i))
                ok = False
            elif not X.has_cell(f.cell):
                problems.append(("unknown-face-target", cell, i, f.cell))
                ok = False
            elif X.simplex_dim(f) != n - 1:
                problems.append(("face-dimension", cell, i))
                ok = False
        if not ok or n < 2:
            continue
        s = nondeg(cell)
        for j in range(n + 1):
            for i in range(j):
                lhs = X.face(X.face(s, j), i)
                rhs = X.face(X.face(s, i), j - 1)
                if lhs != rhs:
                    problems.append(("identity", cell, i, j))
    return problems


# ---------------------------------------------------------------------------
# standard complexes
#
# Cells of the standard family are named by dot-joined vertex labels, e.g.
# "0.2.3" for the face of a simplex spanned by vertices 0, 2, 3.

_standard_cache = {}


def _subset_name(vs) -> str:
    return ".".join(str(v) for v in vs)


def _simplex_on_subsets(n, subsets):
    """Complex whose cells are the given downward-closed vertex subsets."""
    by_dim = {}
    for vs in subsets:
        by_dim.setdefault(len(vs) - 1, []).append(tuple(vs))
    levels = []
    faces = {}
    for d in range(max(by_dim) + 1 if by_dim else 0):
        cells = sorted(by_dim.get(d, []))
        levels.append([_subset_name(vs) for vs in cells])
        if d >= 1:
            for vs in cells:
                faces[_subset_name(vs)] = tuple(
                    nondeg(_subset_name(vs[:i] + vs[i + 1:]))
                    for i in range(len(vs)))
    return SimplicialSet(levels, faces)


def standard_simplex(n) -> SimplicialSet:
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if ("std", n) not in _standard_cache:
        subsets = [c for m in range(n + 1)
                   for c in itertools.combinations(range(n + 1), m + 1)]
        _standard_cache[("std", n)] = _simplex_on_subsets(n, subsets)
    return _standard_cache[("std", n)]


def boundary(n) -> SimplicialSet:
    """The boundary of the standard n-simplex; empty when n = 0."""
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if ("bd", n) not in _standard_cache:
        subsets = [c for m in range(n)
                   for c in itertools.combinations(range(n + 1), m + 1)]
        _standard_cache[("bd", n)] = _simplex_on_subsets(n, subsets)
    return _standard_cache[("bd", n)]


def horn(n, k) -> SimplicialSet:
    """The horn missing the k-th facet; requires n >= 1."""
    if n < 1:
        raise ValueError("horn requires n >= 1")
    if not 0 <= k <= n:
        raise ValueError("horn index out of range")
    if ("horn", n, k) not in _standard_cache:
        skipped = tuple(v for v in range(n + 1) if v != k)
        subsets = [c for m in range(n)
                   for c in itertools.combinations(range(n + 1), m + 1)
                   if c != skipped]
        _standard_cache[("horn", n, k)] = _simplex_on_subsets(n, subsets)
    return _standard_cache[("horn", n, k)]


def empty_simplicial_set() -> SimplicialSet:
    return SimplicialSet([], {})


def point() -> SimplicialSet:
    return standard_simplex(0)


def apply_operator(X: SimplicialSet, s: Simplex, values) -> Simplex:
    """The action X(f)(s) of a monotone operator f: [r] -> [m] on an
    m-simplex, given by its value list of length r+1.

    The operator factors as a surjection after an injection: faces strip the
    values missed by the image, then the repeat positions give the word.
    """
    m = X.simplex_dim(s)
    assert all(values[i] <= values[i + 1] for i in range(len(values) - 1))
    assert 0 <= values[0] and values[-1] <= m
    image = set(values)
    t = s
    for i in range(m, -1, -1):
        if i not in image:
            t = X.face(t, i)
    word = tuple(sorted((j for j in range(len(values) - 1)
                         if values[j] == values[j + 1]), reverse=True))
    return Simplex(compose_words(word, t.word), t.cell)


def simplex_vertices(s: Simplex):
    """The vertex value list of a simplex of a standard-family complex."""
    values = [int(v) for v in s.cell.split(".")]
    for j in reversed(s.word):
        values.insert(j, values[j])
    return values


def vertex_image(Y: SimplicialSet, verts) -> Simplex:
    """Normal form of the simplex of Y spanned by a weakly increasing vertex list.

    Only meaningful for complexes of the standard family, where a cell is
    determined by its vertex set.
    """
    assert all(verts[i] <= verts[i + 1] for i in range(len(verts) - 1))
    distinct = []
    repeats = []
    for i, v in enumerate(verts):
        if i + 1 < len(verts) and verts[i + 1] == v:
            repeats.append(i)
        else:
            distinct.append(v)
    name = _subset_name(distinct)
    assert Y.has_cell(name), f"no cell {name!r} in target"
    return Simplex(tuple(sorted(repeats, reverse=True)), name)


# ---------------------------------------------------------------------------
# simplicial maps


class SimplicialMap:
    """A simplicial map, given on nondegenerate cells of the source."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, assignment):
        self.source = source
        self.target = target
        self.assignment = {c: Simplex(tuple(s[0]), s[1])
                           for c, s in assignment.items()}
        self._hash = None
        self._key_cache = None

    def __call__(self, s: Simplex) -> Simplex:
        img = self.assignment[s.cell]
        return Simplex(compose_words(s.word, img.word), img.cell)

    def _key(self):
        if self._key_cache is None:
            self._key_cache = (self.source._key(), self.target._key(),
                               tuple(sorted(self.assignment.items())))
        return self._key_cache

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"SimplicialMap({self.source!r}->{self.target!r})"

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        assert self.target is other.source or self.target == other.source
        return SimplicialMap(self.source, other.target,
                             {c: other(s) for c, s in self.assignment.items()})


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {c: nondeg(c) for c in X.all_cells()})


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g after f."""
    return f.then(g)


def verify_map(f: SimplicialMap):
    """Violations of dimension preservation and face commutation."""
    problems = []
    X, Y = f.source, f.target
    for c in X.all_cells():
        if c not in f.assignment:
            problems.append(("unassigned", c))
            continue
        img = f.assignment[c]
        if not Y.has_cell(img.cell) or Y.simplex_dim(img) != X.cell_dim(c):
            problems.append(("dimension", c))
    if problems:
        return problems
    for c in X.all_cells():
        n = X.cell_dim(c)
        for i in range(n + 1) if n >= 1 else ():
            if f(X.face(nondeg(c), i)) != Y.face(f(nondeg(c)), i):
                problems.append(("face", c, i))
    return problems


def constant_map(X: SimplicialSet, Y: SimplicialSet, vertex: str) -> SimplicialMap:
    assignment = {}
    for c in X.all_cells():
        n = X.cell_dim(c)
        assignment[c] = Simplex(tuple(range(n - 1, -1, -1)), vertex)
    return SimplicialMap(X, Y, assignment)


def terminal_map(X: SimplicialSet) -> SimplicialMap:
    return constant_map(X, point(), "0")


def degenerate_at(X: SimplicialSet, vertex: str, n) -> Simplex:
    """The n-fold degenerate simplex on a vertex."""
    return Simplex(tuple(range(n - 1, -1, -1)), vertex)


def standard_map(src: SimplicialSet, tgt: SimplicialSet, vmap) -> SimplicialMap:
    """Map between standard-family complexes induced by a monotone vertex map."""
    assignment = {}
    for c in src.all_cells():
        verts = [vmap[int(v)] for v in c.split(".")]
        assignment[c] = vertex_image(tgt, verts)
    return SimplicialMap(src, tgt, assignment)


def coface_map(n, i) -> SimplicialMap:
    """delta_i: the inclusion of the i-th facet Delta^{n-1} -> Delta^n."""
    if ("delta", n, i) not in _standard_cache:
        vmap = [v if v < i else v + 1 for v in range(n)]
        _standard_cache[("delta", n, i)] = standard_map(
            standard_simplex(n - 1), standard_simplex(n), vmap)
    return _standard_cache[("delta", n, i)]


def codegeneracy_map(n, j) -> SimplicialMap:
    """sigma_j: the collapse Delta^{n+1} -> Delta^n repeating vertex j."""
    if ("sigma", n, j) not in _standard_cache:
        vmap = [v if v <= j else v - 1 for v in range(n + 2)]
        _standard_cache[("sigma", n, j)] = standard_map(
            standard_simplex(n + 1), standard_simplex(n), vmap)
    return _standard_cache[("sigma", n, j)]


def boundary_inclusion(n) -> SimplicialMap:
    B = boundary(n)
    return SimplicialMap(B, standard_simplex(n),
                         {c: nondeg(c) for c in B.all_cells()})


def horn_inclusion(n, k) -> SimplicialMap:
    H = horn(n, k)
    return SimplicialMap(H, standard_simplex(n),
                         {c: nondeg(c) for c in H.all_cells()})


def subcomplex_inclusion(A: SimplicialSet, X: SimplicialSet) -> SimplicialMap:
    """Inclusion of a complex whose cells are shared with X by name."""
    return SimplicialMap(A, X, {c: nondeg(c) for c in A.all_cells()})


# ---------------------------------------------------------------------------
# hom enumeration and lift search


def enumerate_maps(X: SimplicialSet, Y: SimplicialSet,
                   pins: Optional[dict] = None,
                   cell_filter: Optional[Callable] = None,
                   limit: Optional[int] = None,
                   budget: Optional[list] = None):
    """All simplicial maps X -> Y by backtracking, in canonical order.

    pins forces cell values; cell_filter(cell, candidate) prunes candidates;
    limit caps the number of maps returned; budget is a one-element mutable
    counter of candidate tries, raising BudgetExceeded at zero.
    """
    pins = pins or {}
    order = [c for level in X.levels for c in level]
    results = []
    assignment = {}

    def candidates(cell):
        m = X.cell_dim(cell)
        required = None
        if m >= 1:
            required = []
            for i in range(m + 1):
                fs = X.face(nondeg(cell), i)
                img = assignment[fs.cell]
                required.append(Simplex(compose_words(fs.word, img.word),
                                        img.cell))
        if cell in pins:
            pinned = pins[cell]
            if Y.simplex_dim(pinned) != m:
                return ()
            if required is not None and any(Y.face(pinned, i) != required[i]
                                            for i in range(m + 1)):
                return ()
            pool = (pinned,)
        elif m == 0:
            pool = Y.simplices(0)
        else:
            idx = Y._faces_index(m)
            pool = idx.get((0, required[0]), ())
            pool = tuple(s for s in pool
                         if all(Y.face(s, i) == required[i]
                                for i in range(1, m + 1)))
        if cell_filter is not None:
            pool = tuple(s for s in pool if cell_filter(cell, s))
        return pool

    def search(pos):
        if limit is not None and len(results) >= limit:
            return
        if pos == len(order):
            results.append(SimplicialMap(X, Y, dict(assignment)))
            return
        cell = order[pos]
        for cand in candidates(cell):
            if budget is not None:
                budget[0] -= 1
                if budget[0] < 0:
                    raise BudgetExceeded()
            assignment[cell] = cand
            search(pos + 1)
            del assignment[cell]
            if limit is not None and len(results) >= limit:
                return

    search(0)
    return results


def hom_set(X: SimplicialSet, Y: SimplicialSet):
    """The finite set of simplicial maps X -> Y, canonically ordered."""
    return enumerate_maps(X, Y)


def divide_word(Y: SimplicialSet, s: Simplex, word) -> Optional[Simplex]:
    """Solve s_word(t) = s for t, or None when s is not word-divisible.

    Degeneracies are split injections, so the solution is unique when it
    exists; it is found by stripping the word outermost-first with d_j s_j = id.
    """
    t = s
    for j in word:
        if Y.simplex_dim(t) == 0:
            return None
        t = Y.face(t, j)
    check = Simplex(compose_words(word, t.word), t.cell)
    return t if check == s else None


def is_injective(f: SimplicialMap) -> bool:
    """Levelwise injectivity, checked on nondegenerate cells.

    A simplicial map is a monomorphism iff nondegenerate cells map to
    distinct nondegenerate simplices in every dimension.
    """
    seen = set()
    for c in f.source.all_cells():
        img = f.assignment[c]
        if img.word or img in seen:
            return False
        seen.add(img)
    return True


def is_isomorphism(f: SimplicialMap) -> Optional[SimplicialMap]:
    """The inverse map when f is an isomorphism, else None."""
    X, Y = f.source, f.target
    inv = {}
    for c in X.all_cells():
        img = f.assignment[c]
        if img.word or img.cell in inv:
            return None
        inv[img.cell] = nondeg(c)
    if set(inv) != set(Y.all_cells()):
        return None
    g = SimplicialMap(Y, X, inv)
    if verify_map(g):
        return None
    return g


def isomorphic(X: SimplicialSet, Y: SimplicialSet) -> Optional[SimplicialMap]:
    """Search for an isomorphism X -> Y; None when the complexes differ."""
    if [len(l) for l in X.levels] != [len(l) for l in Y.levels]:
        return None
    used = set()

    def only_nondeg_unused(cell, cand):
        return not cand.word and cand not in used

    # backtracking with an injectivity filter needs used-set maintenance,
    # so run a dedicated search rather than enumerate_maps
    order = [c for level in X.levels for c in level]
    assignment = {}

    def search(pos):
        if pos == len(order):
            return SimplicialMap(X, Y, dict(assignment))
        cell = order[pos]
        m = X.cell_dim(cell)
        if m == 0:
            pool = Y.simplices(0)
        else:
            required = []
            for i in range(m + 1):
                fs = X.face(nondeg(cell), i)
                img = assignment[fs.cell]
                required.append(Simplex(compose_words(fs.word, img.word), img.cell))
            idx = Y._faces_index(m)
            pool = idx.get((0, required[0]), ())
            pool = tuple(s for s in pool
                         if all(Y.face(s, i) == required[i] for i in range(1, m + 1)))
        for cand in pool:
            if cand.word or cand in used:
                continue
            used.add(cand)
            assignment[cell] = cand
            found = search(pos + 1)
            if found is not None:
                return found
            del assignment[cell]
            used.discard(cand)
        return None

    f = search(0)
    if f is not None and is_isomorphism(f) is not None:
        return f
    return None

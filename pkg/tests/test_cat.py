from eqloc.cat import (
    DiagramMap,
    arrow_category,
    colim,
    colim_map,
    constant_diagram,
    coproduct_D,
    cotensor,
    cotensor_map,
    cotensor_restriction,
    cyclic_category,
    empty_diagram,
    free_diagram,
    hom_D,
    hom_complex,
    hom_complex_post,
    hom_complex_pre,
    identity_dmap,
    opposite,
    point_diagram,
    pullback_D,
    pushout_D,
    tensor,
    tensor_projection,
    tensor_unit_section,
    terminal_category,
    validate_category,
    validate_diagram,
    validate_dmap,
    wrap_sset,
)
from eqloc.fixtures import (
    arrow_orbit,
    free_z2_orbit,
    trivial_z2_orbit,
    z2_category,
    z2_collapse,
    z2_two_orbits,
)
from eqloc.simplicial import (
    boundary,
    boundary_inclusion,
    hom_set,
    isomorphic,
    point,
    standard_simplex,
    verify_map,
)


def cell_counts(X):
    return [len(l) for l in X.levels]


class TestCategories:
    def test_validate_standard_shapes(self):
        for D in (terminal_category(), arrow_category(), cyclic_category(2),
                  cyclic_category(3)):
            assert validate_category(D) == []

    def test_broken_composition(self):
        from eqloc.cat import SmallCategory
        B = cyclic_category(3)
        B.comp[("g1", "g1")] = "g1"  # should be g2; breaks associativity
        problems = validate_category(B)
        assert any(p[0] == "associativity" for p in problems)
        M = SmallCategory(["a", "b", "c"],
                          [("ia", "a", "a"), ("ib", "b", "b"), ("ic", "c", "c"),
                           ("f", "a", "b"), ("g", "b", "c")],
                          {"a": "ia", "b": "ib", "c": "ic"}, {})
        problems = validate_category(M)
        assert ("missing-composite", "g", "f") in problems

    def test_opposite(self):
        D = arrow_category()
        assert validate_category(opposite(D)) == []
        assert opposite(D).src["f"] == "b"


class TestDiagrams:
    def test_validate_fixtures(self):
        for X in (free_z2_orbit(), trivial_z2_orbit(), z2_two_orbits(),
                  arrow_orbit(standard_simplex(1))):
            assert validate_diagram(X) == []

    def test_validate_dmap(self):
        assert validate_dmap(z2_collapse()) == []
        assert validate_dmap(identity_dmap(free_z2_orbit())) == []

    def test_free_diagram_on_arrow(self):
        D = arrow_category()
        F = free_diagram(D, "a")
        assert validate_diagram(F) == []
        assert cell_counts(F.at["a"]) == [1]
        assert cell_counts(F.at["b"]) == [1]
        G = free_diagram(D, "b")
        assert F.at["b"].cells(0) == ("f",)
        assert cell_counts(G.at["a"]) == []

    def test_yoneda_count(self):
        # hom_D(F^d, X) bijects with the vertices of X(d)
        D = z2_category()
        F = free_diagram(D, "*")
        X = z2_two_orbits()
        assert len(hom_D(F, X)) == len(X.at["*"].cells(0))


class TestColim:
    def test_constant_over_connected(self):
        for D in (arrow_category(), z2_category()):
            c = colim(constant_diagram(D, point()))
            assert cell_counts(c.space) == [1]

    def test_arrow_orbit(self):
        # colim of (X -> point) over the arrow category is the point
        c = colim(arrow_orbit(boundary(2)))
        assert isomorphic(c.space, point()) is not None

    def test_free_z2(self):
        # Z/2 acting freely on two vertices: one vertex downstairs
        c = colim(free_z2_orbit())
        assert cell_counts(c.space) == [1]

    def test_cocone_commutes(self):
        X = free_z2_orbit()
        c = colim(X)
        g = X.act["g1"]
        assert g.then(c.cocone["*"]) == c.cocone["*"]

    def test_mediator_universal(self):
        from eqloc.simplicial import constant_map
        X = free_z2_orbit()
        c = colim(X)
        W = point()
        legs = {"*": constant_map(X.at["*"], W, "0")}
        m = c.mediate(legs, W)
        assert verify_map(m) == []
        assert c.cocone["*"].then(m) == legs["*"]

    def test_colim_map(self):
        f = z2_collapse()
        m = colim_map(f)
        assert verify_map(m) == []
        assert cell_counts(m.source) == [1] and cell_counts(m.target) == [1]


class TestTensorCotensor:
    def test_tensor_unit(self):
        X = free_z2_orbit()
        t = tensor(X, point())
        assert isomorphic(t.diagram.at["*"], X.at["*"]) is not None
        assert validate_diagram(t.diagram) == []

    def test_tensor_empty(self):
        X = empty_diagram(z2_category())
        t = tensor(X, standard_simplex(1))
        assert t.diagram.at["*"].dim == -1

    def test_colim_tensor_orbit(self):
        # colim(T tensor K) is K for an orbit T
        K = boundary(2)
        for T in (free_z2_orbit(), trivial_z2_orbit(),
                  arrow_orbit(standard_simplex(1))):
            c = colim(tensor(T, K).diagram)
            assert isomorphic(c.space, K) is not None

    def test_tensor_structure_maps(self):
        X = free_z2_orbit()
        t = tensor(X, standard_simplex(1))
        assert validate_dmap(tensor_projection(X, standard_simplex(1))) == []
        s0 = tensor_unit_section(X, standard_simplex(1), "0")
        assert validate_dmap(s0) == []

    def test_cotensor_by_point(self):
        X = free_z2_orbit()
        c = cotensor(X, point(), 2)
        assert validate_diagram(c.diagram) == []
        assert isomorphic(c.diagram.at["*"], X.at["*"]) is not None

    def test_cotensor_delta1_delta1(self):
        # (Delta^1)^(Delta^1) at cap 1: 3 vertices (monotone maps), edges
        X = wrap_sset(standard_simplex(1))
        c = cotensor(X, standard_simplex(1), 1)
        sp = c.diagram.at["*"]
        assert len(sp.cells(0)) == 3
        # level 1 of X^K bijects with hom(Delta^1 x K, X)
        from eqloc.glue import product
        square = product(standard_simplex(1), standard_simplex(1)).space
        assert len(sp.simplices(1)) == len(hom_set(square, standard_simplex(1)))

    def test_cotensor_of_point_diagram(self):
        P = point_diagram(z2_category())
        c = cotensor(P, boundary(2), 1)
        assert isomorphic(c.diagram.at["*"], point()) is not None

    def test_cotensor_functorial(self):
        f = z2_collapse()
        cm = cotensor_map(f, boundary(1), 1)
        assert validate_dmap(cm) == []

    def test_cotensor_restriction(self):
        X = wrap_sset(standard_simplex(1))
        r = cotensor_restriction(X, boundary_inclusion(1), 1)
        assert validate_dmap(r) == []
        # restriction target X^{dDelta^1} = X x X has 2*2 vertices
        assert len(r.target.at["*"].cells(0)) == 4


class TestHomD:
    def test_into_point(self):
        X = z2_two_orbits()
        assert len(hom_D(X, point_diagram(z2_category()))) == 1

    def test_free_to_trivial(self):
        assert len(hom_D(free_z2_orbit(), trivial_z2_orbit())) == 1

    def test_trivial_to_free(self):
        # no fixed vertex in the free orbit
        assert len(hom_D(trivial_z2_orbit(), free_z2_orbit())) == 0

    def test_free_to_free(self):
        # equivariant self-maps of the free orbit: the two group elements
        assert len(hom_D(free_z2_orbit(), free_z2_orbit())) == 2

    def test_adjunction_bijection(self):
        # hom(X tensor K, Y) bijects with hom(X, Y^K) in bounded dimensions
        K = standard_simplex(1)
        X = free_z2_orbit()
        Y = trivial_z2_orbit()
        lhs = hom_D(tensor(X, K).diagram, Y)
        rhs = hom_D(X, cotensor(Y, K, 1).diagram)
        assert len(lhs) == len(rhs)
        X2 = trivial_z2_orbit()
        Y2 = free_z2_orbit()
        lhs2 = hom_D(tensor(X2, K).diagram, Y2)
        rhs2 = hom_D(X2, cotensor(Y2, K, 1).diagram)
        assert len(lhs2) == len(rhs2)


class TestHomComplex:
    def test_over_terminal_shape(self):
        # over D = 1 the mapping complex recovers X^{Delta^n} vertex counts
        X = wrap_sset(boundary(2))
        hc = hom_complex(point_diagram(terminal_category()), X, 1)
        assert len(hc.space.cells(0)) == 3

    def test_free_orbit_self_maps(self):
        T = free_z2_orbit()
        hc = hom_complex(T, T, 1)
        assert len(hc.space.cells(0)) == 2  # the two group elements

    def test_empty_source_terminal(self):
        E = empty_diagram(z2_category())
        hc = hom_complex(E, free_z2_orbit(), 2)
        # one simplex per level: the terminal complex is a point
        assert isomorphic(hc.space, point()) is not None

    def test_level_counts_match_hom_D(self):
        # level n of hom(A, X) equals hom_D(A tensor Delta^n, X)
        A = free_z2_orbit()
        X = z2_two_orbits()
        hc = hom_complex(A, X, 1)
        for n in range(2):
            expected = len(hom_D(tensor(A, standard_simplex(n)).diagram, X))
            assert len(hc.space.simplices(n)) == expected

    def test_post_and_pre_maps(self):
        f = z2_collapse()
        post = hom_complex_post(free_z2_orbit(), f, 1)
        assert verify_map(post) == []
        pre = hom_complex_pre(f, trivial_z2_orbit(), 1)
        assert verify_map(pre) == []


class TestPointwise:
    def test_pushout_D(self):
        A = free_z2_orbit()
        po = pushout_D(identity_dmap(A), identity_dmap(A))
        assert validate_diagram(po.diagram) == []
        assert isomorphic(po.diagram.at["*"], A.at["*"]) is not None

    def test_pullback_over_identity(self):
        X = free_z2_orbit()
        pb = pullback_D(identity_dmap(X), identity_dmap(X))
        assert validate_diagram(pb.diagram) == []
        assert isomorphic(pb.diagram.at["*"], X.at["*"]) is not None

    def test_pullback_fiber_of_colim(self):
        # fiber of the free orbit over its one colimit vertex is the orbit
        X = free_z2_orbit()
        c = colim(X)
        constC = constant_diagram(X.shape, c.space)
        qmap = DiagramMap(X, constC, {"*": c.cocone["*"]})
        vertex = c.space.cells(0)[0]
        P = point_diagram(X.shape)
        from eqloc.simplicial import constant_map
        vmap = DiagramMap(P, constC,
                          {"*": constant_map(point(), c.space, vertex)})
        pb = pullback_D(qmap, vmap)
        assert isomorphic(pb.diagram.at["*"], X.at["*"]) is not None
        assert validate_diagram(pb.diagram) == []

    def test_coproduct_D(self):
        co = coproduct_D([free_z2_orbit(), trivial_z2_orbit()])
        assert validate_diagram(co.diagram) == []
        assert len(co.diagram.at["*"].cells(0)) == 3
        for inj in co.injections:
            assert validate_dmap(inj) == []

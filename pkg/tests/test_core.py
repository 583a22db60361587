import pytest
from hypothesis import given, strategies as st

from phl import core
from phl.core import (
    PresheafMap,
    ValidationError,
    build_object,
    chain_colimit,
    coproduct,
    enumerate_homs,
    fin_graph,
    fin_set,
    identity,
    is_mono,
    product,
    pushout,
    terminal_object,
)

from conftest import brute_force_homs


def vertex_map(dom, cod, vertices, edges=None):
    return PresheafMap(dom, cod, {"vertex": vertices, "edge": edges or {}})


class TestBuildObject:
    def test_one_vertex_graph(self):
        g = build_object({"kind": "graph", "vertices": ["a"], "edges": []})
        assert g.cells["vertex"] == ("a",)
        assert g.cells["edge"] == ()

    def test_two_element_set(self):
        s = build_object({"kind": "set", "elements": ["x", "y"]})
        assert s.cells["element"] == ("x", "y")

    def test_dangling_endpoint(self):
        with pytest.raises(ValidationError, match="dangling|not a declared vertex"):
            build_object({"kind": "graph", "vertices": ["a"], "edges": [["e", "a", "b"]]})

    def test_duplicate_label(self):
        with pytest.raises(ValidationError, match="duplicate"):
            build_object({"kind": "set", "elements": ["x", "x"]})

    def test_unknown_sort(self):
        with pytest.raises(ValidationError, match="unknown sort"):
            build_object({"kind": "widget"})

    def test_enumeration_order_is_sorted(self):
        s = build_object({"kind": "set", "elements": ["c", "a", "b"]})
        assert s.cells["element"] == ("a", "b", "c")


class TestIsMono:
    def test_identity_is_mono(self):
        g = fin_graph(["a", "b"], [("e", "a", "b")])
        assert is_mono(identity(g))

    def test_constant_collapse_is_not(self):
        two = fin_set(["x", "y"])
        one = fin_set(["p"])
        f = PresheafMap(two, one, {"element": {"x": "p", "y": "p"}})
        assert not is_mono(f)

    def test_edge_collapse_with_injective_vertices(self):
        # oracle: a direct injectivity scan on the edge sort
        par = fin_graph(["a", "b"], [("e", "a", "b"), ("f", "a", "b")])
        single = fin_graph(["a", "b"], [("e", "a", "b")])
        collapse = vertex_map(par, single, {"a": "a", "b": "b"}, {"e": "e", "f": "e"})
        edge_images = [collapse.on["edge"][e] for e in par.cells["edge"]]
        assert len(set(edge_images)) < len(edge_images)
        assert not is_mono(collapse)
        vertex_images = [collapse.on["vertex"][v] for v in par.cells["vertex"]]
        assert len(set(vertex_images)) == len(vertex_images)


class TestCoproduct:
    def test_points(self):
        obj, _, _ = coproduct(fin_set(["p"]), fin_set(["p"]))
        assert len(obj.cells["element"]) == 2

    def test_unit_law_up_to_relabelling(self):
        x = fin_graph(["a", "b"], [("e", "a", "b")])
        empty = core.empty_object(x.signature)
        obj, inl, _ = coproduct(x, empty)
        assert core.is_iso(inl)

    def test_loop_plus_vertex(self):
        obj, _, _ = coproduct(
            fin_graph(["a"], [("l", "a", "a")]), fin_graph(["b"], [])
        )
        assert len(obj.cells["vertex"]) == 2
        assert len(obj.cells["edge"]) == 1


class TestPushout:
    def test_absorption(self):
        a = fin_graph(["a", "b"], [("e", "a", "b")])
        po = pushout(identity(a), identity(a))
        assert core.is_iso(po.left)
        assert core.is_iso(po.right)

    def test_wedge_of_two_edges(self):
        # oracle: the quotient of 4 vertices by one identification has 3
        # vertices; no edge identifications happen
        pt = fin_graph(["p"], [])
        e1 = fin_graph(["p", "q"], [("e", "p", "q")])
        e2 = fin_graph(["p", "r"], [("f", "p", "r")])
        po = pushout(vertex_map(pt, e1, {"p": "p"}), vertex_map(pt, e2, {"p": "p"}))
        assert len(po.apex.cells["vertex"]) == 3
        assert len(po.apex.cells["edge"]) == 2

    def test_glued_interval_is_two_edge_chain(self):
        # pushout of {1} -> [1-chain] against {0} -> [1-chain]
        pt = fin_graph(["x"], [])
        chain = fin_graph(["0", "1"], [("e", "0", "1")])
        po = pushout(
            vertex_map(pt, chain, {"x": "1"}), vertex_map(pt, chain, {"x": "0"})
        )
        apex = po.apex
        assert len(apex.cells["vertex"]) == 3
        assert len(apex.cells["edge"]) == 2
        sources = {apex.op("src", e) for e in apex.cells["edge"]}
        targets = {apex.op("tgt", e) for e in apex.cells["edge"]}
        # a genuine chain: one shared middle vertex
        assert len(sources & targets) == 1

    def test_mediating_map_is_unique(self):
        # oracle: enumerate all maps out of the apex and count the ones
        # that satisfy both triangles
        pt = fin_set(["x"])
        b = fin_set(["x", "y"])
        c = fin_set(["x", "z"])
        f = PresheafMap(pt, b, {"element": {"x": "x"}})
        g = PresheafMap(pt, c, {"element": {"x": "x"}})
        po = pushout(f, g)
        z = fin_set(["0", "1", "2"])
        for p in enumerate_homs(b, z):
            for q in enumerate_homs(c, z):
                mediating = po.mediate(p, q)
                candidates = [
                    m
                    for m in brute_force_homs(po.apex, z)
                    if po.left.then(m) == p and po.right.then(m) == q
                ]
                if f.then(p) == g.then(q):
                    assert mediating is not None
                    assert candidates == [mediating]
                else:
                    assert mediating is None
                    assert not candidates

    def test_pushout_of_mono_is_mono_exhaustive(self):
        # adhesivity at desk scale, over spans on <= 3 cells per sort
        a = fin_set(["x"])
        b = fin_set(["x", "y"])
        cs = [fin_set([]), fin_set(["p"]), fin_set(["p", "q"])]
        monos = [m for m in enumerate_homs(a, b) if is_mono(m)]
        for c in cs:
            for g in enumerate_homs(a, c):
                for f in monos:
                    po = pushout(f, g)
                    assert is_mono(po.right)


class TestChainColimit:
    def test_single_map(self):
        f = PresheafMap(fin_set(["a"]), fin_set(["a", "b"]), {"element": {"a": "b"}})
        top, cocone = chain_colimit([f])
        assert top == f.codomain
        assert cocone[0] == f
        assert cocone[1] == identity(top)

    def test_identity_chain(self):
        x = fin_graph(["a"], [("l", "a", "a")])
        top, cocone = chain_colimit([identity(x), identity(x), identity(x)])
        assert top == x
        assert all(leg == identity(x) for leg in cocone)

    def test_non_composable_chain(self):
        f = PresheafMap(fin_set(["a"]), fin_set(["a", "b"]), {"element": {"a": "b"}})
        g = PresheafMap(fin_set(["z"]), fin_set(["z"]), {"element": {"z": "z"}})
        with pytest.raises(core.MismatchError):
            chain_colimit([f, g])

    def test_cocone_legs_compose(self):
        a, b, c = fin_set(["a"]), fin_set(["a", "b"]), fin_set(["a", "b", "c"])
        f = PresheafMap(a, b, {"element": {"a": "b"}})
        g = PresheafMap(b, c, {"element": {"a": "a", "b": "c"}})
        top, cocone = chain_colimit([f, g])
        assert cocone[0] == f.then(g)
        assert cocone[1] == g


class TestProduct:
    def test_unit_graph(self):
        x = fin_graph(["a"], [("l", "a", "a")])
        one = terminal_object(x.signature)
        obj, pr1, _ = product(x, one)
        assert core.is_iso(pr1)

    def test_two_by_two(self):
        obj, _, _ = product(fin_set(["a", "b"]), fin_set(["0", "1"]))
        assert len(obj.cells["element"]) == 4

    def test_vertex_times_interval_has_no_edges(self, graph_instance):
        # componentwise pair enumeration: the left factor has no edges
        v = fin_graph(["a"], [])
        obj, _, _ = product(v, graph_instance.interval)
        assert len(obj.cells["vertex"]) == 2
        assert len(obj.cells["edge"]) == 0


class TestEnumerateHoms:
    def test_point_into_n_points(self):
        for n in range(1, 5):
            target = fin_set([f"x{i}" for i in range(n)])
            assert len(enumerate_homs(fin_set(["p"]), target)) == n

    def test_vertex_into_interval(self, graph_instance):
        assert len(enumerate_homs(fin_graph(["a"], []), graph_instance.interval)) == 2

    def test_loop_into_double_loop(self):
        loop = fin_graph(["a"], [("l", "a", "a")])
        double = fin_graph(["v"], [("p", "v", "v"), ("q", "v", "v")])
        assert len(enumerate_homs(loop, double)) == 2

    def test_matches_brute_force(self, graph_instance):
        loop = fin_graph(["a"], [("l", "a", "a")])
        chain = fin_graph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c")])
        for dom, cod in [
            (loop, graph_instance.interval),
            (chain, graph_instance.interval),
            (graph_instance.interval, chain),
            (fin_set(["a", "b"]), fin_set(["0", "1", "2"])),
        ]:
            fast = enumerate_homs(dom, cod)
            slow = brute_force_homs(dom, cod)
            assert fast == slow

    def test_lexicographic_order(self):
        maps = enumerate_homs(fin_set(["a", "b"]), fin_set(["0", "1"]))
        keys = [m.assignment_tuple() for m in maps]
        assert keys == sorted(keys)

    def test_guard_fails_loudly(self):
        big = fin_set([f"x{i}" for i in range(6)])
        with pytest.raises(core.GuardExceeded):
            enumerate_homs(big, big, guard=10)


@st.composite
def small_set_maps(draw):
    sizes = draw(st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3)))
    a, b, c = (fin_set([f"x{i}" for i in range(n)]) for n in sizes)
    f_idx = draw(st.integers(0, len(enumerate_homs(a, b)) - 1))
    g_idx = draw(st.integers(0, len(enumerate_homs(b, c)) - 1))
    return enumerate_homs(a, b)[f_idx], enumerate_homs(b, c)[g_idx]


@given(small_set_maps())
def test_mono_composition_closed(pair):
    f, g = pair
    if is_mono(f) and is_mono(g):
        assert is_mono(f.then(g))

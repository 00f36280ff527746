"""Small graphs: named constructors, enumeration, extension, graph6."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemeforge.graphs import (
    Graph,
    enumerate_regular_graphs,
    extend_locally,
    from_graph6,
    identify_graph,
    is_isomorphic,
    is_locally,
    named_graph,
    to_graph6,
)


NAMED_ORDERS = {
    "K3,3": (6, 3),
    "K2,2,2,2": (8, 6),
    "octahedron": (6, 4),
    "K3xK3": (9, 4),
    "J(5,2)": (10, 6),
    "crown": (10, 4),
    "Q4": (16, 4),
    "24-cell": (24, 8),
    "icosahedron": (12, 5),
    "K3xK2": (6, 3),
    "C5": (5, 2),
}


class TestNamedGraphs:
    @pytest.mark.parametrize("name,expected", sorted(NAMED_ORDERS.items()))
    def test_orders_and_regularity(self, name, expected):
        g = named_graph(name)
        n, k = expected
        assert g.n == n
        assert g.is_regular()
        assert g.degrees() == [k] * n

    def test_identify_round_trip(self):
        for name in NAMED_ORDERS:
            got = identify_graph(named_graph(name))
            # 16-cell and K2,2,2,2 are the same graph under two names
            assert named_graph(got).n == named_graph(name).n
            assert is_isomorphic(named_graph(got), named_graph(name))

    def test_unknown_name_raises(self):
        with pytest.raises((KeyError, ValueError)):
            named_graph("no-such-graph")


class TestEnumeration:
    @pytest.mark.parametrize(
        "n,k,count",
        [
            (4, 3, 1),  # K4
            (5, 2, 1),  # C5
            (6, 2, 2),  # C6, 2K3
            (6, 3, 2),  # K3,3, prism
            (7, 2, 2),  # C7, C3+C4
            (8, 3, 6),  # five connected cubic graphs plus 2K4
            (9, 2, 4),  # C9, C3+C6, C4+C5, 3C3
        ],
    )
    def test_counts(self, n, k, count):
        assert len(enumerate_regular_graphs(n, k)) == count

    def test_odd_degree_odd_order_empty(self):
        assert enumerate_regular_graphs(7, 3) == []

    def test_handshake(self):
        for g in enumerate_regular_graphs(8, 3):
            assert sum(g.degrees()) == 8 * 3

    def test_pairwise_non_isomorphic(self):
        graphs = enumerate_regular_graphs(8, 4)
        for i, g in enumerate(graphs):
            for h in graphs[i + 1:]:
                assert not is_isomorphic(g, h)


class TestLocalStructure:
    def test_is_locally(self):
        assert is_locally(named_graph("icosahedron"), named_graph("C5"))
        assert is_locally(named_graph("J(5,2)"), named_graph("K3xK2"))
        assert not is_locally(named_graph("Q4"), named_graph("K3"))

    def test_extend_locally_prism(self):
        ext = extend_locally(named_graph("K3xK2"), 15)
        assert ext.complete
        assert [identify_graph(g) for g in ext.graphs] == ["J(5,2)"]

    def test_extend_locally_budget_exhaustion_is_reported(self):
        ext = extend_locally(named_graph("C5"), 24, budget=5)
        assert not ext.complete

    def test_every_result_is_locally_h(self):
        h = named_graph("C4")
        for g in extend_locally(h, 12):
            assert is_locally(g, h)


class TestGraph6:
    @given(st.integers(2, 7), st.data())
    @settings(max_examples=40)
    def test_round_trip(self, n, data):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = [e for e in pairs if data.draw(st.booleans())]
        g = Graph(n, edges)
        assert from_graph6(to_graph6(g)) == g

    def test_known_string(self):
        # C5 in graph6 notation
        assert is_isomorphic(from_graph6("DqK"), named_graph("C5"))

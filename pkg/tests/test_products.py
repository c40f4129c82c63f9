import pytest
from hypothesis import given, strategies as st

from sparselim.chromatic import chromatic_polynomial
from sparselim.config import BudgetExceeded, Limits
from sparselim.graph import Graph, complete_bipartite, complete_graph, named_graph
from sparselim.hom import hom_count_dp
from sparselim.products import TensorPowerSpec, blow_up, materialize, tensor_product

from conftest import all_graphs, graphs


def adjacency_rule_product(G, H):
    """Oracle: apply the adjacency rule pair by pair."""
    nh = H.vertex_count
    edges = []
    for a in range(G.vertex_count * nh):
        for b in range(a + 1, G.vertex_count * nh):
            (u, x), (v, y) = divmod(a, nh), divmod(b, nh)
            if G.has_edge(u, v) and H.has_edge(x, y):
                edges.append((a, b))
    return Graph(G.vertex_count * nh, edges)


def test_k2_tensor_k2():
    g = tensor_product(complete_graph(2), complete_graph(2))
    # (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3
    assert g.edges == {(0, 3), (1, 2)}


def test_tensor_with_k1_is_edgeless():
    G = named_graph("C5")
    g = tensor_product(G, complete_graph(1))
    assert g.vertex_count == 5 and g.edge_count == 0


def test_k3_tensor_k3():
    g = tensor_product(complete_graph(3), complete_graph(3))
    assert (g.vertex_count, g.edge_count) == (9, 18)
    assert g.is_regular() and g.degrees()[0] == 4


@given(graphs(0, 5), graphs(0, 5))
def test_tensor_matches_adjacency_rule(G, H):
    assert tensor_product(G, H) == adjacency_rule_product(G, H)


def test_blow_up_examples():
    g = blow_up(complete_graph(2), 2)
    assert g == complete_bipartite(2, 2)
    assert g.edge_count == 4
    G = named_graph("C5")
    assert blow_up(G, 1) == G
    assert hom_count_dp(complete_graph(2), g) == 8


def test_blow_up_rejects_zero():
    with pytest.raises(ValueError):
        blow_up(complete_graph(2), 0)


@pytest.mark.parametrize("n, m, vertices, edges", [(3, 2, 9, 18), (2, 3, 8, 4), (2, 1, 2, 1)])
def test_materialize_examples(n, m, vertices, edges):
    g = materialize(TensorPowerSpec(n, m))
    assert (g.vertex_count, g.edge_count) == (vertices, edges)


def test_materialize_k3_squared_is_k3_tensor_k3():
    assert materialize(TensorPowerSpec(3, 2)) == tensor_product(complete_graph(3), complete_graph(3))


def test_materialize_2_3_is_complement_matching():
    g = materialize(TensorPowerSpec(2, 3))
    assert g.edges == {(a, 7 - a) for a in range(4)}


def test_tuples_adjacent_iff_differ_everywhere():
    n, m = 3, 3
    g = materialize(TensorPowerSpec(n, m))

    def digits(x):
        return [(x // n ** (m - 1 - i)) % n for i in range(m)]

    for a in range(n ** m):
        for b in range(n ** m):
            differ = all(p != q for p, q in zip(digits(a), digits(b)))
            assert g.has_edge(a, b) == differ


def test_materialize_bounds():
    with pytest.raises(BudgetExceeded):
        materialize(TensorPowerSpec(11, 4))  # 14641 vertices
    with pytest.raises(BudgetExceeded):
        materialize(TensorPowerSpec(5, 3), Limits(max_edges=100))
    with pytest.raises(BudgetExceeded):
        tensor_product(complete_graph(200), complete_graph(200))


def test_tensor_power_parse_and_validation():
    s = TensorPowerSpec.parse("4,3")
    assert (s.vertex_count, s.degree, s.edge_count) == (64, 27, 64 * 27 // 2)
    with pytest.raises(ValueError):
        TensorPowerSpec.parse("4")
    with pytest.raises(ValueError):
        TensorPowerSpec(0, 2)


@given(graphs(1, 4), graphs(1, 6), graphs(1, 6))
def test_hom_multiplicative_over_tensor(F, G, H):
    assert hom_count_dp(F, tensor_product(G, H)) == hom_count_dp(F, G) * hom_count_dp(F, H)


@given(graphs(0, 4), graphs(1, 6), st.integers(1, 3))
def test_hom_of_blow_up(F, G, b):
    assert hom_count_dp(F, blow_up(G, b)) == hom_count_dp(F, G) * b ** F.vertex_count


@pytest.mark.parametrize("n, m", [(2, 1), (2, 5), (3, 2), (3, 4), (4, 3), (5, 2), (6, 2), (7, 2)])
def test_materialized_power_regular_and_hom(n, m):
    g = materialize(TensorPowerSpec(n, m))
    assert g.vertex_count == n ** m
    assert set(g.degrees().tolist()) == {(n - 1) ** m}
    for F in all_graphs(1, 4):
        assert hom_count_dp(F, g) == chromatic_polynomial(F)(n) ** m

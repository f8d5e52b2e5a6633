import numpy as np
import pytest


def test_from_graph_unit_weights():
    from kpathcd.graph import Graph
    from kpathcd.proximity import WeightedGraph

    g = Graph.from_edges([(0, 1), (1, 2), (0, 2)])
    wg = WeightedGraph.from_graph(g)
    assert wg.node_count == 3
    assert wg.edge_count == 3
    assert wg.total_weight == 3.0
    assert wg.degrees.tolist() == [2.0, 2.0, 2.0]
    assert wg.self_loops.tolist() == [0.0, 0.0, 0.0]


def test_self_loops_count_twice_in_degree():
    from kpathcd.proximity import WeightedGraph

    wg = WeightedGraph(2, [(0, 0), (0, 1), (1, 1)], [3.0, 1.0, 2.0])
    assert wg.total_weight == 6.0
    assert wg.degrees.tolist() == [7.0, 5.0]
    assert wg.degrees.sum() == 2 * wg.total_weight
    assert wg.self_loops.tolist() == [3.0, 2.0]
    assert wg.adjacency == [[(1, 1.0)], [(0, 1.0)]]

    a = wg.to_sparse().toarray()
    assert a.tolist() == [[3.0, 1.0], [1.0, 2.0]]


def test_rejects_invalid_weights():
    from kpathcd.proximity import WeightedGraph

    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 1)], [0.0])
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 1)], [np.inf])
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 1)], [1.0, 2.0])
    with pytest.raises(ValueError):
        WeightedGraph(2, [(1, 0)], [1.0])
    with pytest.raises(IndexError):
        WeightedGraph(2, [(0, 2)], [1.0])


def test_scaled_and_frame():
    from kpathcd.proximity import WeightedGraph

    wg = WeightedGraph(3, [(0, 1), (1, 2)], [0.5, 1.5])
    doubled = wg.scaled(2.0)
    assert doubled.weights.tolist() == [1.0, 3.0]
    assert doubled.total_weight == 2 * wg.total_weight
    with pytest.raises(ValueError):
        wg.scaled(0.0)

    df = wg.to_frame(["x", "y", "z"])
    assert df.values.tolist() == [["x", "y", 0.5], ["y", "z", 1.5]]

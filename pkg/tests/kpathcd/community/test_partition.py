import numpy as np
import pytest
from pathlib import Path

PARENT = Path(__file__).parent
FILES = PARENT.parents[1] / "files"

TWO_TRIANGLES = FILES / "two_triangles.txt"
BRIDGE = FILES / "two_triangles_bridge.txt"


def _random_weighted_graph(rng, max_nodes=30, self_loops=True):
    from kpathcd.proximity import WeightedGraph

    n = int(rng.integers(2, max_nodes + 1))
    pairs = np.sort(rng.integers(0, n, size=(2 * n, 2)), axis=1)
    if not self_loops:
        pairs = pairs[pairs[:, 0] < pairs[:, 1]]
    pairs = np.unique(np.vstack([pairs, [[0, 1]]]), axis=0)
    weights = rng.uniform(0.1, 3.0, size=len(pairs))
    return WeightedGraph(n, pairs, weights)


def _links(wg, i, assignment):
    out = {}
    for j, w in wg.adjacency[i]:
        out[assignment[j]] = out.get(assignment[j], 0.0) + w
    return out


def _padded(values, size):
    # trailing communities emptied by the moves are missing from a fresh build
    out = np.zeros(size)
    out[: len(values)] = values
    return out


def _unit(path):
    from kpathcd.graph import load_edge_list
    from kpathcd.proximity import WeightedGraph

    g, ids = load_edge_list(path)
    return WeightedGraph.from_graph(g), ids


def test_modularity_single_community():
    from kpathcd.community import modularity

    wg, _ = _unit(BRIDGE)
    assert modularity(wg, np.zeros(6, dtype=int)) == pytest.approx(0.0, abs=1e-12)


def test_modularity_two_triangles():
    from kpathcd.community import modularity, Partition

    wg, ids = _unit(TWO_TRIANGLES)
    assignment = [0 if label in ("1", "2", "3") else 1 for label in ids.labels]
    assert modularity(wg, assignment) == pytest.approx(0.5)
    assert modularity(wg, Partition.from_assignment(wg, assignment)) == pytest.approx(0.5)


def test_modularity_singletons():
    from kpathcd.community import modularity, Partition

    rng = np.random.default_rng(0)
    for _ in range(20):
        wg = _random_weighted_graph(rng, self_loops=False)
        expected = -np.sum((wg.degrees / (2 * wg.total_weight)) ** 2)
        q = modularity(wg, Partition.singletons(wg))
        assert q == pytest.approx(expected)
        assert q < 0


def test_modularity_range_and_label_permutation():
    from kpathcd.community import modularity

    rng = np.random.default_rng(1)
    for _ in range(50):
        wg = _random_weighted_graph(rng)
        k = int(rng.integers(1, wg.node_count + 1))
        assignment = rng.integers(0, k, size=wg.node_count)
        q = modularity(wg, assignment)
        assert -1 <= q <= 1
        permuted = rng.permutation(k)[assignment]
        assert modularity(wg, permuted) == pytest.approx(q, abs=1e-12)


def test_modularity_mismatch():
    from kpathcd.community import modularity, Partition, PartitionMismatchError
    from kpathcd.proximity import WeightedGraph

    wg, _ = _unit(BRIDGE)
    with pytest.raises(PartitionMismatchError):
        modularity(wg, [0, 0, 1])
    with pytest.raises(PartitionMismatchError):
        modularity(wg, [0, 0, 0, 1, 1, -1])

    other = WeightedGraph(6, wg.endpoints, wg.weights * 2)
    with pytest.raises(PartitionMismatchError):
        modularity(wg, Partition.singletons(other))


def test_partition_aggregates():
    from kpathcd.community import Partition

    wg, ids = _unit(BRIDGE)
    assignment = [0 if label in ("1", "2", "3") else 1 for label in ids.labels]
    p = Partition.from_assignment(wg, assignment)
    assert p.internal.tolist() == [3.0, 3.0]
    assert p.total.tolist() == [7.0, 7.0]
    assert p.total.sum() == pytest.approx(2 * wg.total_weight)
    assert p.community_count == 2
    assert len(p) == 6


def test_gain_of_isolated_node_is_zero():
    from kpathcd.community import Partition
    from kpathcd.proximity import WeightedGraph

    wg = WeightedGraph(3, [(0, 1)], [1.0])
    p = Partition.singletons(wg)
    p.remove(2, 0.0)
    assert p.gain(2, 0, 0.0) == 0.0
    assert p.gain(2, 2, 0.0) == 0.0
    with pytest.raises(ValueError):
        p.gain(2, 7, 0.0)


def test_gain_requires_removal():
    from kpathcd.community import Partition, modularity_gain

    wg, _ = _unit(BRIDGE)
    p = Partition.singletons(wg)
    with pytest.raises(ValueError):
        modularity_gain(p, 0, 1, 2.0, 1.0)


def test_gain_bridge_endpoint():
    from kpathcd.community import Partition, modularity

    wg, ids = _unit(BRIDGE)
    left = {"1", "2"}
    assignment = np.array([0 if label in left else 1 for label in ids.labels])
    p = Partition.from_assignment(wg, assignment)
    node = ids.to_internal("3")
    before = modularity(wg, assignment)
    links = _links(wg, node, assignment)

    p.remove(node, links[1])
    gain = p.gain(node, 0, links[0]) - p.gain(node, 1, links[1])
    p.insert(node, 0, links[0])
    after = modularity(wg, p)

    assert gain > 0
    assert before == pytest.approx(24 / 196)
    assert after == pytest.approx(70 / 196)
    assert gain == pytest.approx(after - before, abs=1e-9)


def test_gain_matches_recomputation():
    from kpathcd.community import Partition, modularity

    rng = np.random.default_rng(2)
    moves = 0
    while moves < 1000:
        wg = _random_weighted_graph(rng)
        k = int(rng.integers(1, wg.node_count + 1))
        p = Partition.from_assignment(wg, rng.integers(0, k, size=wg.node_count))
        for _ in range(20):
            i = int(rng.integers(0, wg.node_count))
            target = int(rng.integers(0, p.community_count))
            assignment = p.assignment
            before = modularity(wg, assignment)
            links = _links(wg, i, assignment)
            current = assignment[i]

            p.remove(i, links.get(current, 0.0))
            gain = p.gain(i, target, links.get(target, 0.0)) - p.gain(
                i, current, links.get(current, 0.0)
            )
            p.insert(i, target, links.get(target, 0.0))
            after = modularity(wg, p)
            assert abs(gain - (after - before)) <= 1e-9

            fresh = Partition.from_assignment(wg, p.assignment)
            size = p.community_count
            assert np.allclose(_padded(fresh.internal, size), p.internal, atol=1e-9)
            assert np.allclose(_padded(fresh.total, size), p.total, atol=1e-9)
            moves += 1


def test_renumber():
    from kpathcd.community import Partition

    wg, _ = _unit(BRIDGE)
    p = Partition.from_assignment(wg, [5, 5, 2, 2, 9, 9]).renumber()
    assert p.assignment.tolist() == [0, 0, 1, 1, 2, 2]
    assert p.community_count == 3
    assert p.total.sum() == pytest.approx(2 * wg.total_weight)

"""
Exact kappa-path edge centrality by exhaustive enumeration.

Only feasible on tiny graphs: the number of walks grows exponentially with
kappa. Used to check the simulated estimate.
"""

from typing import List

import numpy as np

from ..graph.base import EmptyGraphError, Graph

__all__ = ["MAX_EXACT_NODES", "exact_kpath_centrality"]

MAX_EXACT_NODES = 12
"""
The largest graph (in nodes) ``exact_kpath_centrality`` accepts by default.
"""


def exact_kpath_centrality(
    g: Graph, kappa: int, max_nodes: int = MAX_EXACT_NODES
) -> np.ndarray:
    """
    The exact kappa-path centrality of every edge.

    For every source node ``s`` all walks of 1 to ``kappa`` hops that start
    at ``s`` and never reuse an edge are enumerated. The centrality of an
    edge is the sum over all sources of the fraction of those walks that
    traverse it.

    Parameters
    ----------
    g : Graph
        The graph.
    kappa : int
        The maximum walk length.
    max_nodes : int
        Refuse graphs with more nodes than this.

    Returns
    -------
    np.ndarray
        The centrality of every edge, indexed by edge id.
    """
    if g.edge_count == 0:
        raise EmptyGraphError("Cannot compute edge centralities of a graph without edges.")
    if kappa < 1:
        raise ValueError(f"kappa must be at least 1, got {kappa}.")
    if g.node_count > max_nodes:
        raise ValueError(
            f"Exact enumeration is limited to {max_nodes} nodes, the graph has {g.node_count}."
        )
    adjacency = g.adjacency
    values = np.zeros(g.edge_count)
    for source in range(g.node_count):
        through = [0] * g.edge_count
        total = _enumerate(adjacency, source, kappa, [], set(), through)
        if total:
            values += np.asarray(through) / total
    return values


def _enumerate(adjacency, node, budget, path: List[int], used: set, through: List[int]) -> int:
    if budget == 0:
        return 0
    count = 0
    for nxt, edge in adjacency[node]:
        if edge in used:
            continue
        used.add(edge)
        path.append(edge)
        count += 1
        for e in path:
            through[e] += 1
        count += _enumerate(adjacency, nxt, budget - 1, path, used, through)
        path.pop()
        used.remove(edge)
    return count

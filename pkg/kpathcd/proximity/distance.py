"""
Node proximity from the centralities of the edges around a pair of nodes.
"""

import math
from typing import Dict, Sequence, Union

import numpy as np
from loguru import logger

from ..centrality.kpath import CentralityMap
from ..graph.base import Graph
from .base import WeightedGraph

__all__ = [
    "WEIGHT_TRANSFORMS",
    "DEFAULT_WEIGHT_TRANSFORM",
    "NotAnEdgeError",
    "proximity",
    "proximities",
    "build_weighted_graph",
]

WEIGHT_TRANSFORMS = ("direct", "inverse")
"""
How a proximity ``r`` becomes an edge weight: "direct" uses ``r + floor``,
"inverse" uses ``1 / (r + floor)``. The floor is ``1/|E|``.
"""

DEFAULT_WEIGHT_TRANSFORM = "direct"


class NotAnEdgeError(KeyError):
    pass


def _weights_of(c: Union[CentralityMap, Sequence[float]]) -> list:
    if isinstance(c, CentralityMap):
        return c.weights.tolist()
    return np.asarray(c, dtype=float).tolist()


def _pair_distance(
    edges_i: Dict[int, int],
    edges_j: Dict[int, int],
    weights: list,
    degrees: list,
    i: int,
    j: int,
) -> float:
    total = 0.0
    for k in sorted(edges_i.keys() | edges_j.keys()):
        if k == i or k == j:
            continue
        a = weights[edges_i[k]] if k in edges_i else 0.0
        b = weights[edges_j[k]] if k in edges_j else 0.0
        total += (a - b) ** 2 / degrees[k]
    return math.sqrt(total)


def proximity(
    g: Graph, c: Union[CentralityMap, Sequence[float]], i: int, j: int
) -> float:
    """
    The proximity of two adjacent nodes.

    ``r_ij = sqrt(sum_k (L(e_ik) - L(e_kj))^2 / d(k))`` where ``k`` runs over
    the neighbors of ``i`` or ``j`` other than ``i`` and ``j`` themselves,
    ``L`` is the edge centrality (0 for a missing edge) and ``d(k)`` the
    degree of ``k``.

    Parameters
    ----------
    g : Graph
        The graph.
    c : CentralityMap or Sequence[float]
        The centrality of every edge.
    i, j : int
        The two nodes. They must be adjacent.

    Returns
    -------
    float
        The proximity, never negative. Symmetric in ``i`` and ``j``.
    """
    if g.edge_between(i, j) is None:
        raise NotAnEdgeError(f"Nodes {i} and {j} are not adjacent.")
    weights = _weights_of(c)
    if len(weights) != g.edge_count:
        raise ValueError(
            f"Got {len(weights)} centralities for {g.edge_count} edges."
        )
    edge_maps = g.edge_maps
    return _pair_distance(
        edge_maps[i], edge_maps[j], weights, g.degrees.tolist(), i, j
    )


def proximities(g: Graph, c: Union[CentralityMap, Sequence[float]]) -> np.ndarray:
    """
    The proximity of the endpoints of every edge.

    Parameters
    ----------
    g : Graph
        The graph.
    c : CentralityMap or Sequence[float]
        The centrality of every edge.

    Returns
    -------
    np.ndarray
        One proximity per edge id.
    """
    weights = _weights_of(c)
    if len(weights) != g.edge_count:
        raise ValueError(
            f"Got {len(weights)} centralities for {g.edge_count} edges."
        )
    edge_maps = g.edge_maps
    degrees = g.degrees.tolist()
    return np.array(
        [
            _pair_distance(edge_maps[u], edge_maps[v], weights, degrees, u, v)
            for u, v in g.endpoints.tolist()
        ],
        dtype=float,
    )


def build_weighted_graph(
    g: Graph,
    c: Union[CentralityMap, Sequence[float]],
    weight_transform: str = DEFAULT_WEIGHT_TRANSFORM,
) -> WeightedGraph:
    """
    Weight every edge by the proximity of its endpoints.

    A floor of ``1/|E|`` is added to every proximity so that edges between
    nodes with identical surroundings keep a positive weight.

    Parameters
    ----------
    g : Graph
        The graph.
    c : CentralityMap or Sequence[float]
        The centrality of every edge.
    weight_transform : str
        "direct" for ``r + floor`` or "inverse" for ``1 / (r + floor)``.

    Returns
    -------
    WeightedGraph
        The weighted graph.
    """
    if weight_transform not in WEIGHT_TRANSFORMS:
        raise ValueError(
            f"weight_transform must be one of {WEIGHT_TRANSFORMS}, got {weight_transform!r}."
        )
    floor = 1.0 / g.edge_count
    r = proximities(g, c) + floor
    weights = r if weight_transform == "direct" else 1.0 / r
    logger.info(
        f"[build_weighted_graph] {g.edge_count} edges weighted ({weight_transform}), mean weight {weights.mean():.6g}"
    )
    return WeightedGraph.from_graph(g, weights)

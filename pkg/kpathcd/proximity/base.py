"""
Weighted graphs as consumed by the modularity layer.
"""

from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.sparse as sp

from ..graph.base import Graph
from ..utils.fileio import labels_or_ids

__all__ = ["WeightedGraph"]


class WeightedGraph:
    """
    An undirected graph with a strictly positive weight on every edge.

    Unlike ``Graph``, a weighted graph may carry self-loops (the meta-graphs
    built by aggregation keep the intra-community weight on them). A
    self-loop of weight ``w`` adds ``w`` to the total weight ``m`` and
    ``2 * w`` to the weighted degree of its node.

    Parameters
    ----------
    node_count : int
        The number of nodes.
    endpoints : array-like of shape (edge_count, 2)
        The edge endpoints with ``u <= v``.
    weights : array-like of shape (edge_count,)
        The edge weights, all strictly positive.
    graph : Graph, optional
        The unweighted graph this one was derived from, if any.
    """

    def __init__(
        self,
        node_count: int,
        endpoints,
        weights,
        graph: Optional[Graph] = None,
    ):
        endpoints = np.asarray(endpoints, dtype=np.int64).reshape(-1, 2)
        weights = np.asarray(weights, dtype=float).reshape(-1)
        if len(weights) != len(endpoints):
            raise ValueError(
                f"Got {len(weights)} weights for {len(endpoints)} edges."
            )
        if len(weights) == 0:
            raise ValueError("A weighted graph needs at least one edge.")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise ValueError("Edge weights must be finite and strictly positive.")
        if endpoints.min() < 0 or endpoints.max() >= node_count:
            raise IndexError(f"Edge endpoints must lie in [0, {node_count}).")
        if np.any(endpoints[:, 0] > endpoints[:, 1]):
            raise ValueError("Edge endpoints must satisfy u <= v.")
        if graph is not None and (
            graph.node_count != node_count or graph.edge_count != len(endpoints)
        ):
            raise ValueError("The weighted graph does not match its underlying graph.")

        self._node_count = int(node_count)
        self._endpoints = endpoints
        self._weights = weights
        self.graph = graph
        self._endpoints.setflags(write=False)
        self._weights.setflags(write=False)

    @classmethod
    def from_graph(cls, g: Graph, weights=None) -> "WeightedGraph":
        """
        Weight the edges of a graph.

        Parameters
        ----------
        g : Graph
            The graph.
        weights : array-like, optional
            One weight per edge id, by default 1 on every edge.

        Returns
        -------
        WeightedGraph
            The weighted graph.
        """
        if weights is None:
            weights = np.ones(g.edge_count)
        return cls(g.node_count, g.endpoints, weights, graph=g)

    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def edge_count(self) -> int:
        return len(self._endpoints)

    @property
    def endpoints(self) -> np.ndarray:
        return self._endpoints

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @cached_property
    def total_weight(self) -> float:
        """
        The total edge weight ``m``.
        """
        return float(self._weights.sum())

    @cached_property
    def degrees(self) -> np.ndarray:
        """
        The weighted degree of every node, self-loops counted twice.
        """
        n = self._node_count
        out = np.bincount(
            self._endpoints[:, 0], weights=self._weights, minlength=n
        ) + np.bincount(self._endpoints[:, 1], weights=self._weights, minlength=n)
        out.setflags(write=False)
        return out

    @cached_property
    def self_loops(self) -> np.ndarray:
        """
        The self-loop weight of every node (zero if it has none).
        """
        loops = self._endpoints[:, 0] == self._endpoints[:, 1]
        out = np.bincount(
            self._endpoints[loops, 0],
            weights=self._weights[loops],
            minlength=self._node_count,
        )
        out.setflags(write=False)
        return out

    @cached_property
    def adjacency(self) -> List[List[Tuple[int, float]]]:
        """
        Per node, the ``(neighbor, weight)`` pairs of its edges, self-loops excluded.
        """
        out = [[] for _ in range(self._node_count)]
        for (u, v), w in zip(self._endpoints.tolist(), self._weights.tolist()):
            if u == v:
                continue
            out[u].append((v, w))
            out[v].append((u, w))
        return out

    def scaled(self, factor: float) -> "WeightedGraph":
        """
        A copy with every weight multiplied by ``factor``.
        """
        if factor <= 0:
            raise ValueError("The scaling factor must be positive.")
        return WeightedGraph(
            self._node_count, self._endpoints, self._weights * factor, graph=self.graph
        )

    def to_sparse(self) -> sp.csr_matrix:
        """
        The symmetric weighted adjacency matrix (self-loops on the diagonal, once).
        """
        u, v = self._endpoints[:, 0], self._endpoints[:, 1]
        off = u != v
        rows = np.concatenate([u, v[off]])
        cols = np.concatenate([v, u[off]])
        data = np.concatenate([self._weights, self._weights[off]])
        n = self._node_count
        return sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()

    def to_frame(self, labels: Optional[Sequence] = None) -> pd.DataFrame:
        """
        The edges as a table with columns "u", "v" and "weight", in edge id order.
        """
        labels = labels_or_ids(labels, self._node_count)
        return pd.DataFrame(
            {
                "u": [labels[u] for u in self._endpoints[:, 0]],
                "v": [labels[v] for v in self._endpoints[:, 1]],
                "weight": self._weights,
            }
        )

    def __repr__(self):
        return f"{self.__class__.__name__}(node_count={self.node_count}, edge_count={self.edge_count}, total_weight={self.total_weight:.6g})"

"""
Immutable undirected graphs in compressed adjacency form.
"""

from functools import cached_property
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

__all__ = [
    "EmptyGraphError",
    "Graph",
    "NodeIdMap",
    "degree",
]


class EmptyGraphError(ValueError):
    pass


class Graph:
    """
    A simple undirected graph with dense node ids in ``[0, node_count)``.

    Every undirected edge is stored once in ``endpoints`` as a pair ``(u, v)``
    with ``u < v``; its position in that array is its edge id. The adjacency
    is kept in compressed form: the incident entries of node ``v`` are
    ``neighbors[indptr[v]:indptr[v + 1]]`` together with the matching
    ``edge_ids``, sorted by neighbor id.

    Graphs are immutable once constructed and all arrays are read-only,
    so a graph can be shared between workers without copying.

    Parameters
    ----------
    node_count : int
        The number of nodes.
    endpoints : array-like of shape (edge_count, 2)
        The edge endpoints. Each row must satisfy ``u < v`` and no row may
        appear twice. Use ``Graph.from_edges`` to build a graph from raw pairs.
    """

    def __init__(self, node_count: int, endpoints):
        endpoints = np.asarray(endpoints, dtype=np.int64).reshape(-1, 2)
        node_count = int(node_count)
        if node_count < 0:
            raise ValueError("node_count must not be negative.")
        if len(endpoints) > 0:
            if endpoints.min() < 0 or endpoints.max() >= node_count:
                raise IndexError(
                    f"Edge endpoints must lie in [0, {node_count}), got range [{endpoints.min()}, {endpoints.max()}]."
                )
            if np.any(endpoints[:, 0] >= endpoints[:, 1]):
                raise ValueError(
                    "Edge endpoints must satisfy u < v (self-loops are not allowed)."
                )
            if len(np.unique(endpoints, axis=0)) != len(endpoints):
                raise ValueError("Duplicate edges are not allowed.")

        edge_count = len(endpoints)
        src = np.concatenate([endpoints[:, 0], endpoints[:, 1]])
        dst = np.concatenate([endpoints[:, 1], endpoints[:, 0]])
        eid = np.concatenate([np.arange(edge_count), np.arange(edge_count)])
        order = np.lexsort((dst, src))

        indptr = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=node_count), out=indptr[1:])

        self._node_count = node_count
        self._endpoints = endpoints
        self._indptr = indptr
        self._neighbors = dst[order]
        self._edge_ids = eid[order]
        for array in (self._endpoints, self._indptr, self._neighbors, self._edge_ids):
            array.setflags(write=False)

    @classmethod
    def from_edges(
        cls, pairs: Iterable[Tuple[int, int]], node_count: Optional[int] = None
    ) -> "Graph":
        """
        Build a graph from integer node pairs.

        Self-loops are dropped and both orientations of a pair collapse into
        one edge. Edge ids follow the order in which pairs are first seen.

        Parameters
        ----------
        pairs : Iterable[Tuple[int, int]]
            The node pairs.
        node_count : int, optional
            The number of nodes. By default the largest node id plus one.

        Returns
        -------
        Graph
            The graph.
        """
        seen = {}
        largest = -1
        for u, v in pairs:
            u, v = int(u), int(v)
            largest = max(largest, u, v)
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key not in seen:
                seen[key] = len(seen)
        if node_count is None:
            node_count = largest + 1
        return cls(node_count, list(seen.keys()))

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
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def neighbors(self) -> np.ndarray:
        return self._neighbors

    @property
    def edge_ids(self) -> np.ndarray:
        return self._edge_ids

    @cached_property
    def degrees(self) -> np.ndarray:
        """
        The degree of every node.
        """
        out = np.diff(self._indptr)
        out.setflags(write=False)
        return out

    @cached_property
    def adjacency(self) -> List[List[Tuple[int, int]]]:
        """
        Per node, the list of ``(neighbor, edge_id)`` pairs sorted by neighbor.
        Plain Python lists, for the inner loops of the random walks.
        """
        neighbors = self._neighbors.tolist()
        edge_ids = self._edge_ids.tolist()
        indptr = self._indptr.tolist()
        return [
            list(zip(neighbors[start:end], edge_ids[start:end]))
            for start, end in zip(indptr[:-1], indptr[1:])
        ]

    @cached_property
    def edge_maps(self) -> List[Dict[int, int]]:
        """
        Per node, a mapping from neighbor to the id of the connecting edge.
        """
        return [dict(incident) for incident in self.adjacency]

    def degree(self, v: int) -> int:
        """
        The number of edges incident to node ``v``.

        Parameters
        ----------
        v : int
            The node id.

        Returns
        -------
        int
            The degree of ``v``.
        """
        self.check_node(v)
        return int(self._indptr[v + 1] - self._indptr[v])

    def check_node(self, v: int) -> None:
        """
        Raise an IndexError if ``v`` is not a node id of this graph.
        """
        if not 0 <= v < self._node_count:
            raise IndexError(
                f"Node id {v} is out of range for a graph with {self._node_count} nodes."
            )

    def incident(self, v: int) -> List[Tuple[int, int]]:
        """
        The ``(neighbor, edge_id)`` pairs of node ``v``, sorted by neighbor.
        """
        self.check_node(v)
        return self.adjacency[v]

    def edge_between(self, u: int, v: int) -> Optional[int]:
        """
        The id of the edge connecting ``u`` and ``v``, or None if there is none.
        """
        self.check_node(u)
        self.check_node(v)
        start, end = self._indptr[u], self._indptr[u + 1]
        pos = start + np.searchsorted(self._neighbors[start:end], v)
        if pos < end and self._neighbors[pos] == v:
            return int(self._edge_ids[pos])
        return None

    def to_sparse(self) -> sp.csr_matrix:
        """
        The symmetric unit-weight adjacency matrix.

        Returns
        -------
        scipy.sparse.csr_matrix
            A ``node_count x node_count`` matrix with a one for every
            (ordered) pair of adjacent nodes.
        """
        data = np.ones(len(self._neighbors), dtype=float)
        return sp.csr_matrix(
            (data, self._neighbors, self._indptr),
            shape=(self._node_count, self._node_count),
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._node_count == other._node_count and np.array_equal(
            self._endpoints, other._endpoints
        )

    __hash__ = None

    def __repr__(self):
        return f"{self.__class__.__name__}(node_count={self.node_count}, edge_count={self.edge_count})"


def degree(g: Graph, v: int) -> int:
    """
    The degree of a node.

    Parameters
    ----------
    g : Graph
        The graph.
    v : int
        The node id.

    Returns
    -------
    int
        The number of incident edges.
    """
    return g.degree(v)


class NodeIdMap:
    """
    Bijection between the node labels of an input file and dense internal ids.

    Ids are handed out in first-seen order.
    """

    def __init__(self, labels: Iterable[Hashable] = ()):
        self._labels = []
        self._index = {}
        for label in labels:
            if label in self._index:
                raise ValueError(f"Duplicate node label: {label!r}")
            self.add(label)

    def add(self, label: Hashable) -> int:
        """
        Return the internal id of ``label``, assigning the next free id if it is new.
        """
        idx = self._index.get(label)
        if idx is None:
            idx = len(self._labels)
            self._index[label] = idx
            self._labels.append(label)
        return idx

    def to_internal(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"Unknown node label: {label!r}") from None

    def to_external(self, idx: int) -> Hashable:
        if not 0 <= idx < len(self._labels):
            raise IndexError(f"Node id {idx} is out of range.")
        return self._labels[idx]

    @property
    def labels(self) -> Tuple[Hashable, ...]:
        """
        The labels ordered by internal id.
        """
        return tuple(self._labels)

    def __len__(self):
        return len(self._labels)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        if not isinstance(other, NodeIdMap):
            return NotImplemented
        return self._labels == other._labels

    __hash__ = None

    def __repr__(self):
        return f"{self.__class__.__name__}(size={len(self)})"

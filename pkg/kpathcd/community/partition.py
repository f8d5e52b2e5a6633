"""
Partitions of weighted graphs and their modularity.
"""

from typing import List, Sequence, Union

import numpy as np

from ..proximity.base import WeightedGraph

__all__ = [
    "PartitionMismatchError",
    "Partition",
    "modularity",
    "modularity_gain",
]

UNASSIGNED = -1
"""
The community id of a node that was taken out of its community.
"""


class PartitionMismatchError(ValueError):
    pass


class Partition:
    """
    An assignment of the nodes of a weighted graph to communities, with the
    per-community aggregates the local moves need.

    Attributes
    ----------
    m : float
        The total edge weight of the graph.
    internal : np.ndarray
        Per community, the weight of the edges with both ends inside it
        (self-loops included).
    total : np.ndarray
        Per community, the sum of the weighted degrees of its members.
    degrees : np.ndarray
        The weighted degree of every node.

    Use ``Partition.from_assignment`` or ``Partition.singletons`` to build one.
    """

    def __init__(
        self,
        assignment: List[int],
        internal: List[float],
        total: List[float],
        degrees: List[float],
        self_loops: List[float],
        m: float,
    ):
        self._assignment = assignment
        self._internal = internal
        self._total = total
        self._degrees = degrees
        self._self_loops = self_loops
        self.m = m

    @classmethod
    def from_assignment(
        cls, wg: WeightedGraph, assignment: Sequence[int]
    ) -> "Partition":
        """
        Build a partition and compute its aggregates from scratch.

        Parameters
        ----------
        wg : WeightedGraph
            The graph.
        assignment : Sequence[int]
            The community id of every node; ids must be non-negative.

        Returns
        -------
        Partition
            The partition.
        """
        assignment = np.asarray(assignment, dtype=np.int64)
        if len(assignment) != wg.node_count:
            raise PartitionMismatchError(
                f"The assignment covers {len(assignment)} nodes but the graph has {wg.node_count}."
            )
        if len(assignment) and assignment.min() < 0:
            raise ValueError("Community ids must be non-negative.")
        k = int(assignment.max()) + 1 if len(assignment) else 0
        cu = assignment[wg.endpoints[:, 0]]
        cv = assignment[wg.endpoints[:, 1]]
        inside = cu == cv
        internal = np.bincount(cu[inside], weights=wg.weights[inside], minlength=k)
        total = np.bincount(assignment, weights=wg.degrees, minlength=k)
        return cls(
            assignment.tolist(),
            internal.tolist(),
            total.tolist(),
            wg.degrees.tolist(),
            wg.self_loops.tolist(),
            wg.total_weight,
        )

    @classmethod
    def singletons(cls, wg: WeightedGraph) -> "Partition":
        """
        Every node in a community of its own.
        """
        return cls.from_assignment(wg, np.arange(wg.node_count))

    @property
    def assignment(self) -> np.ndarray:
        """
        The community id of every node.
        """
        return np.array(self._assignment, dtype=np.int64)

    @property
    def internal(self) -> np.ndarray:
        return np.array(self._internal)

    @property
    def total(self) -> np.ndarray:
        return np.array(self._total)

    @property
    def degrees(self) -> np.ndarray:
        return np.array(self._degrees)

    @property
    def community_count(self) -> int:
        """
        The number of community ids in use, empty communities included.
        """
        return len(self._total)

    def community_of(self, i: int) -> int:
        return self._assignment[i]

    def copy(self) -> "Partition":
        return Partition(
            list(self._assignment),
            list(self._internal),
            list(self._total),
            self._degrees,
            self._self_loops,
            self.m,
        )

    def remove(self, i: int, k_i_in: float) -> None:
        """
        Take node ``i`` out of its community.

        Parameters
        ----------
        i : int
            The node.
        k_i_in : float
            The weight of the edges between ``i`` and the other members of its
            community (self-loops excluded).
        """
        c = self._assignment[i]
        if c == UNASSIGNED:
            raise ValueError(f"Node {i} is not in a community.")
        self._internal[c] -= k_i_in + self._self_loops[i]
        self._total[c] -= self._degrees[i]
        self._assignment[i] = UNASSIGNED

    def insert(self, i: int, c: int, k_i_in: float) -> None:
        """
        Put a removed node ``i`` into community ``c``.

        Parameters
        ----------
        i : int
            The node.
        c : int
            The community.
        k_i_in : float
            The weight of the edges between ``i`` and the members of ``c``
            (self-loops excluded).
        """
        self._check_community(c)
        if self._assignment[i] != UNASSIGNED:
            raise ValueError(f"Node {i} must be removed before it is inserted.")
        self._internal[c] += k_i_in + self._self_loops[i]
        self._total[c] += self._degrees[i]
        self._assignment[i] = c

    def gain(self, i: int, c: int, k_i_in: float) -> float:
        """
        The modularity gain of inserting the removed node ``i`` into ``c``.
        """
        return modularity_gain(self, i, c, self._degrees[i], k_i_in)

    def renumber(self) -> "Partition":
        """
        A copy with dense community ids, numbered in order of first member.
        """
        mapping = {}
        for c in self._assignment:
            if c == UNASSIGNED:
                raise ValueError("Cannot renumber a partition with removed nodes.")
            if c not in mapping:
                mapping[c] = len(mapping)
        internal = [0.0] * len(mapping)
        total = [0.0] * len(mapping)
        for old, new in mapping.items():
            internal[new] = self._internal[old]
            total[new] = self._total[old]
        return Partition(
            [mapping[c] for c in self._assignment],
            internal,
            total,
            self._degrees,
            self._self_loops,
            self.m,
        )

    def _check_community(self, c: int) -> None:
        if not 0 <= c < len(self._total):
            raise ValueError(f"Unknown community id {c}.")

    def __len__(self):
        return len(self._assignment)

    def __repr__(self):
        used = len(set(self._assignment) - {UNASSIGNED})
        return f"{self.__class__.__name__}(nodes={len(self)}, communities={used})"


def _assignment_of(wg: WeightedGraph, p: Union[Partition, Sequence[int]]) -> np.ndarray:
    if isinstance(p, Partition):
        if abs(p.m - wg.total_weight) > 1e-9 * max(1.0, wg.total_weight):
            raise PartitionMismatchError(
                "The partition was built for a graph with a different total weight."
            )
        assignment = p.assignment
    else:
        assignment = np.asarray(p, dtype=np.int64)
    if len(assignment) != wg.node_count:
        raise PartitionMismatchError(
            f"The partition covers {len(assignment)} nodes but the graph has {wg.node_count}."
        )
    if len(assignment) and assignment.min() < 0:
        raise PartitionMismatchError("Every node must be assigned to a community.")
    return assignment


def modularity(wg: WeightedGraph, p: Union[Partition, Sequence[int]]) -> float:
    """
    The weighted modularity of a partition, computed from scratch.

    ``Q = sum_s [ W_s / m - (D_s / 2m)^2 ]`` where ``W_s`` is the weight of the
    edges inside community ``s`` (self-loops included once), ``D_s`` the
    total weighted degree of its members and ``m`` the total edge weight.

    Parameters
    ----------
    wg : WeightedGraph
        The graph.
    p : Partition or Sequence[int]
        The partition, or the community id of every node.

    Returns
    -------
    float
        The modularity, in ``[-1, 1]``.
    """
    assignment = _assignment_of(wg, p)
    m = wg.total_weight
    k = int(assignment.max()) + 1
    cu = assignment[wg.endpoints[:, 0]]
    cv = assignment[wg.endpoints[:, 1]]
    inside = cu == cv
    w_in = np.bincount(cu[inside], weights=wg.weights[inside], minlength=k)
    d = np.bincount(assignment, weights=wg.degrees, minlength=k)
    return float(np.sum(w_in / m - (d / (2.0 * m)) ** 2))


def modularity_gain(
    p: Partition, i: int, target: int, k_i: float, k_i_target: float
) -> float:
    """
    The change in modularity from inserting a removed node into a community.

    ``dQ = k_i_target / m - total_target * k_i / (2 m^2)``. The gain of a
    full move from community A to community B is
    ``gain(B) - gain(A)``, both evaluated after removing the node from A.

    Parameters
    ----------
    p : Partition
        The partition, with node ``i`` removed.
    i : int
        The node.
    target : int
        The community id.
    k_i : float
        The weighted degree of ``i``.
    k_i_target : float
        The weight of the edges between ``i`` and the members of ``target``.

    Returns
    -------
    float
        The modularity after insertion minus the modularity before.
    """
    p._check_community(target)
    if p._assignment[i] != UNASSIGNED:
        raise ValueError(f"Node {i} must be removed from its community first.")
    m = p.m
    return k_i_target / m - p._total[target] * k_i / (2.0 * m * m)

"""
The two-phase Louvain procedure: greedy local moves, then aggregation of
communities into a meta-graph, repeated while modularity improves.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd
import scipy.sparse as sp
from loguru import logger

from ..centrality.kpath import CentralityMap
from ..proximity.base import WeightedGraph
from .partition import Partition, modularity

__all__ = [
    "DEFAULT_EPSILON",
    "MIN_GAIN",
    "Level",
    "Dendrogram",
    "louvain_phase1",
    "aggregate",
    "louvain",
]

DEFAULT_EPSILON = 1e-6
"""
The smallest level-over-level modularity improvement that starts another level.
"""

MIN_GAIN = 1e-12
"""
The smallest modularity improvement for which a node is moved.
"""

RandomState = Union[None, int, np.random.SeedSequence, np.random.Generator]


@dataclass
class Level:
    """
    One level of a dendrogram.

    Attributes
    ----------
    graph : WeightedGraph
        The graph optimized at this level (the input graph at level 0, a
        meta-graph afterwards).
    partition : Partition
        The partition of ``graph`` found by the local moves.
    modularity : float
        The modularity of ``partition`` on ``graph``.
    """

    graph: WeightedGraph
    partition: Partition
    modularity: float


@dataclass
class Dendrogram:
    """
    The levels produced by the Louvain procedure.

    Attributes
    ----------
    levels : List[Level]
        The levels, finest first.
    reference : WeightedGraph
        The graph the headline modularity is measured on; the unit-weight
        input graph.
    epsilon : float
        The improvement threshold the run used.
    centrality : CentralityMap, optional
        The edge centralities the edge weights were derived from, if any.
    weighted_graph : WeightedGraph, optional
        The graph the first level optimized.
    """

    levels: List[Level]
    reference: WeightedGraph
    epsilon: float = DEFAULT_EPSILON
    centrality: Optional[CentralityMap] = None
    weighted_graph: Optional[WeightedGraph] = field(default=None, repr=False)

    def level_partition(self, level: int) -> np.ndarray:
        """
        The community of every original node after ``level`` aggregation steps.

        Parameters
        ----------
        level : int
            The level index.

        Returns
        -------
        np.ndarray
            One community id per node of the input graph.
        """
        if not 0 <= level < len(self.levels):
            raise IndexError(f"The dendrogram has {len(self.levels)} levels, got {level}.")
        flat = self.levels[0].partition.assignment
        for lvl in self.levels[1 : level + 1]:
            flat = lvl.partition.assignment[flat]
        return flat

    @property
    def partition(self) -> np.ndarray:
        """
        The final community of every node of the input graph.
        """
        return self.level_partition(len(self.levels) - 1)

    @property
    def community_count(self) -> int:
        return int(self.partition.max()) + 1

    @property
    def modularity(self) -> float:
        """
        The modularity of the final partition on the unit-weight input graph.
        """
        return modularity(self.reference, self.partition)

    @property
    def level_modularities(self) -> List[float]:
        return [lvl.modularity for lvl in self.levels]

    def summary(self) -> pd.DataFrame:
        """
        One row per level with columns "level", "node_count", "edge_count" and "Q".
        """
        return pd.DataFrame(
            {
                "level": range(len(self.levels)),
                "node_count": [lvl.graph.node_count for lvl in self.levels],
                "edge_count": [lvl.graph.edge_count for lvl in self.levels],
                "Q": self.level_modularities,
            }
        )

    def __repr__(self):
        return f"{self.__class__.__name__}(levels={len(self.levels)}, communities={self.community_count})"


def louvain_phase1(
    wg: WeightedGraph,
    p: Optional[Partition] = None,
    rng: RandomState = None,
) -> Tuple[Partition, bool]:
    """
    Move single nodes between communities while that increases modularity.

    Each sweep visits the nodes in a fresh random order and moves every node
    to the neighboring community with the largest modularity gain, if that
    gain beats staying put. Among equally good communities the lowest id
    wins. Sweeps repeat until one makes no move.

    Parameters
    ----------
    wg : WeightedGraph
        The graph.
    p : Partition, optional
        The starting partition, by default every node on its own. It is not
        modified.
    rng : int or np.random.Generator, optional
        The random generator or its seed.

    Returns
    -------
    Partition
        The improved partition with dense community ids.
    bool
        Whether any node was moved.
    """
    rng = np.random.default_rng(rng)
    p = Partition.singletons(wg) if p is None else p.copy()
    if len(p) != wg.node_count:
        raise ValueError(
            f"The partition covers {len(p)} nodes but the graph has {wg.node_count}."
        )
    adjacency = wg.adjacency
    assignment = p._assignment
    improved = False
    sweep = 0
    while True:
        moves = 0
        for i in rng.permutation(wg.node_count).tolist():
            links = {}
            for j, w in adjacency[i]:
                c = assignment[j]
                links[c] = links.get(c, 0.0) + w
            current = assignment[i]
            p.remove(i, links.get(current, 0.0))
            stay = p.gain(i, current, links.get(current, 0.0))
            best, best_gain = current, -np.inf
            for c in sorted(links):
                if c == current:
                    continue
                gain = p.gain(i, c, links[c])
                if gain > best_gain:
                    best, best_gain = c, gain
            if best != current and best_gain - stay > MIN_GAIN:
                p.insert(i, best, links[best])
                moves += 1
            else:
                p.insert(i, current, links.get(current, 0.0))
        sweep += 1
        logger.debug(f"[louvain_phase1] sweep {sweep}: {moves} moves")
        if moves == 0:
            break
        improved = True
    return p.renumber(), improved


def aggregate(wg: WeightedGraph, p: Union[Partition, np.ndarray]) -> WeightedGraph:
    """
    Collapse every community into a single meta-node.

    The weight between two meta-nodes is the total weight of the edges
    between the two communities; the weight inside a community becomes a
    self-loop on its meta-node. Total weight and modularity are preserved.

    Parameters
    ----------
    wg : WeightedGraph
        The graph.
    p : Partition or np.ndarray
        The partition, or the community id of every node.

    Returns
    -------
    WeightedGraph
        The meta-graph; meta-node ids follow the sorted community ids.
    """
    assignment = p.assignment if isinstance(p, Partition) else np.asarray(p)
    if len(assignment) != wg.node_count:
        raise ValueError(
            f"The partition covers {len(assignment)} nodes but the graph has {wg.node_count}."
        )
    _, labels = np.unique(assignment, return_inverse=True)
    k = int(labels.max()) + 1
    cu = labels[wg.endpoints[:, 0]]
    cv = labels[wg.endpoints[:, 1]]
    meta = sp.coo_matrix(
        (wg.weights, (np.minimum(cu, cv), np.maximum(cu, cv))), shape=(k, k)
    ).tocsr()
    meta.sum_duplicates()
    meta.sort_indices()
    meta = meta.tocoo()
    return WeightedGraph(k, np.column_stack([meta.row, meta.col]), meta.data)


def louvain(
    wg: WeightedGraph,
    epsilon: float = DEFAULT_EPSILON,
    seed: RandomState = None,
    reference: Optional[WeightedGraph] = None,
) -> Dendrogram:
    """
    Run the multi-level Louvain procedure.

    Each level runs ``louvain_phase1`` from singletons on the current graph,
    then aggregates the result into the graph of the next level. The first
    level is always kept; a later level is kept only if it improves the
    modularity by at least ``epsilon``.

    Parameters
    ----------
    wg : WeightedGraph
        The graph.
    epsilon : float
        The minimum modularity improvement per level.
    seed : int or np.random.Generator, optional
        The random generator or its seed, used for the sweep orders.
    reference : WeightedGraph, optional
        The graph the dendrogram's headline modularity is measured on,
        by default ``wg``.

    Returns
    -------
    Dendrogram
        The levels.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}.")
    rng = np.random.default_rng(seed)
    levels = []
    graph = wg
    previous = modularity(graph, Partition.singletons(graph))
    while True:
        p, improved = louvain_phase1(graph, None, rng)
        q = modularity(graph, p)
        if levels and (not improved or q - previous < epsilon):
            break
        levels.append(Level(graph, p, q))
        logger.info(
            f"[louvain] level {len(levels) - 1}: {graph.node_count} nodes -> {p.community_count} communities, Q={q:.6f}"
        )
        if not improved:
            break
        previous = q
        graph = aggregate(graph, p)
    return Dendrogram(
        levels=levels,
        reference=wg if reference is None else reference,
        epsilon=epsilon,
        weighted_graph=wg,
    )

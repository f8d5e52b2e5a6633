"""
Estimate the kappa-path centrality of every edge by simulating bounded,
edge-avoiding random walks whose steps are biased by the current edge weights.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, MutableSequence, Optional, Sequence, Set, Union

import numpy as np
import pandas as pd
from loguru import logger

from ..graph.base import EmptyGraphError, Graph
from ..utils.fileio import labels_or_ids

__all__ = [
    "DEFAULT_KAPPA",
    "CentralityMap",
    "WalkState",
    "SourceDistribution",
    "local_effective_density",
    "initial_weights",
    "select_source",
    "message_propagation",
    "werw_kpath",
    "rank_edges",
]

DEFAULT_KAPPA = 20
"""
The default bound on the number of hops of a single walk.
"""

Seed = Union[None, int, np.random.SeedSequence]


@dataclass(frozen=True)
class CentralityMap:
    """
    The estimated centrality of every edge of a graph.

    Attributes
    ----------
    weights : np.ndarray
        The final weight of every edge, indexed by edge id. Every value lies
        in ``[1/|E|, 1]``. The array is read-only.
    kappa : int
        The bound on the number of hops per walk.
    rho : int
        The number of walks that were simulated.
    seed : int or SeedSequence or None
        The seed the walks were drawn with.
    traversals : int
        The total number of edge traversals over all walks.
    workers : int
        The number of workers the walks were split across.
    """

    weights: np.ndarray
    kappa: int
    rho: int
    seed: Seed = None
    traversals: int = 0
    workers: int = 1

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.weights)

    @property
    def bonus(self) -> float:
        """
        The amount a single traversal adds to an edge weight.
        """
        return 1.0 / len(self.weights)

    def rank(self) -> np.ndarray:
        """
        Edge ids ordered by decreasing centrality.
        """
        return rank_edges(self)

    def to_frame(self, g: Graph, labels: Optional[Sequence] = None) -> pd.DataFrame:
        """
        The centralities as a table with columns "u", "v" and "weight",
        sorted by decreasing weight.

        Parameters
        ----------
        g : Graph
            The graph the centralities were computed on.
        labels : Sequence, optional
            Labels to write for the nodes instead of the internal ids.

        Returns
        -------
        pd.DataFrame
            One row per edge.
        """
        if g.edge_count != len(self.weights):
            raise ValueError(
                f"The graph has {g.edge_count} edges but there are {len(self.weights)} weights."
            )
        labels = labels_or_ids(labels, g.node_count)
        order = self.rank()
        ends = g.endpoints[order]
        return pd.DataFrame(
            {
                "u": [labels[u] for u in ends[:, 0]],
                "v": [labels[v] for v in ends[:, 1]],
                "weight": self.weights[order],
            }
        )


@dataclass
class WalkState:
    """
    The state of one walk.

    Attributes
    ----------
    current : int
        The node the walk is at.
    hops : int
        The number of edges traversed so far.
    traversed : Set[int]
        The ids of the edges traversed by this walk.
    path : List[int]
        The traversed edge ids in order.
    """

    current: int
    hops: int = 0
    traversed: Set[int] = field(default_factory=set)
    path: List[int] = field(default_factory=list)

    def advance(self, node: int, edge: int) -> None:
        self.traversed.add(edge)
        self.path.append(edge)
        self.hops += 1
        self.current = node


@dataclass(frozen=True)
class SourceDistribution:
    """
    The probability of starting a walk at each node, proportional to its
    local effective density.

    Attributes
    ----------
    probabilities : np.ndarray
        ``P(v)`` for every node.
    phi : float
        The normalizer, the sum of the densities.
    cdf : np.ndarray
        The cumulative sum of ``probabilities``, for inversion sampling.
    """

    probabilities: np.ndarray
    phi: float
    cdf: np.ndarray

    @classmethod
    def from_graph(cls, g: Graph) -> "SourceDistribution":
        if g.edge_count == 0:
            raise EmptyGraphError("Cannot sample sources on a graph without edges.")
        density = g.degrees / g.edge_count
        phi = float(density.sum())
        probabilities = density / phi
        return cls(probabilities, phi, np.cumsum(probabilities))


def local_effective_density(g: Graph, v: int) -> float:
    """
    The local effective density of a node.

    Every undirected edge counts as both an ingoing and an outgoing edge,
    so the density reduces to ``degree(v) / |E|``.

    Parameters
    ----------
    g : Graph
        The graph.
    v : int
        The node id.

    Returns
    -------
    float
        The density of ``v``.
    """
    if g.edge_count == 0:
        raise EmptyGraphError("The density is undefined on a graph without edges.")
    return 2 * g.degree(v) / (2 * g.edge_count)


def initial_weights(g: Graph) -> CentralityMap:
    """
    The starting weights: ``1/|E|`` on every edge.

    Parameters
    ----------
    g : Graph
        The graph.

    Returns
    -------
    CentralityMap
        A map with no walks performed.
    """
    if g.edge_count == 0:
        raise EmptyGraphError("Cannot weight the edges of a graph without edges.")
    return CentralityMap(
        weights=np.full(g.edge_count, 1.0 / g.edge_count), kappa=0, rho=0
    )


def select_source(dist: SourceDistribution, rng: np.random.Generator) -> int:
    """
    Draw a start node by inverting the cumulative source distribution.

    Parameters
    ----------
    dist : SourceDistribution
        The distribution.
    rng : np.random.Generator
        The random generator.

    Returns
    -------
    int
        The node id.
    """
    u = rng.random() * dist.cdf[-1]
    idx = int(np.searchsorted(dist.cdf, u, side="right"))
    return min(idx, len(dist.cdf) - 1)


def message_propagation(
    g: Graph,
    weights: MutableSequence[float],
    start: int,
    kappa: int,
    rng: np.random.Generator,
    bonus: Optional[float] = None,
) -> List[int]:
    """
    Simulate one walk of at most ``kappa`` hops that never reuses an edge.

    At every step the next edge is drawn among the not yet traversed edges
    of the current node, with probability proportional to its current
    weight. The drawn edge receives a bonus of ``1/|E|`` right away, so the
    updated weight is seen by every later draw. The walk stops after
    ``kappa`` hops or when all edges of the current node were traversed.

    Parameters
    ----------
    g : Graph
        The graph.
    weights : MutableSequence[float]
        The working weight of every edge, updated in place. For example
        ``initial_weights(g).weights.copy()`` or a plain list.
    start : int
        The start node.
    kappa : int
        The maximum number of hops.
    rng : np.random.Generator
        The random generator.
    bonus : float, optional
        The amount added per traversal, by default ``1/|E|``.

    Returns
    -------
    List[int]
        The traversed edge ids in order.
    """
    if kappa < 1:
        raise ValueError(f"kappa must be at least 1, got {kappa}.")
    g.check_node(start)
    if bonus is None:
        bonus = 1.0 / g.edge_count
    adjacency = g.adjacency
    state = WalkState(current=start)
    while state.hops < kappa:
        candidates = [
            (node, edge)
            for node, edge in adjacency[state.current]
            if edge not in state.traversed
        ]
        if not candidates:
            break
        gamma = 0.0
        for _, edge in candidates:
            gamma += weights[edge]
        threshold = rng.random() * gamma
        cumulative = 0.0
        for node, edge in candidates:
            cumulative += weights[edge]
            if threshold < cumulative:
                break
        weights[edge] += bonus
        state.advance(node, edge)
    return state.path


def werw_kpath(
    g: Graph,
    kappa: int = DEFAULT_KAPPA,
    seed: Seed = None,
    workers: int = 1,
) -> CentralityMap:
    """
    Estimate the kappa-path centrality of every edge.

    Runs ``rho = |E| - 1`` walks (see ``message_propagation``) from start
    nodes drawn proportionally to their local effective density. Every edge
    starts at ``1/|E|`` and gains ``1/|E|`` per traversal.

    With ``workers=1`` the walks run one after the other on a single weight
    vector; this is the reference mode and is reproducible for a fixed
    ``(g, kappa, seed)``. With more workers the walks are split into
    ``workers`` contiguous chunks that run in separate processes, each on
    the start weights plus its own traversals; the traversal counts are
    summed at the end. That output is reproducible for a fixed
    ``(seed, workers)`` only.

    Parameters
    ----------
    g : Graph
        The graph.
    kappa : int
        The maximum number of hops per walk.
    seed : int or SeedSequence, optional
        The seed of the random generator.
    workers : int
        The number of worker processes.

    Returns
    -------
    CentralityMap
        The final edge weights.
    """
    if g.edge_count == 0:
        raise EmptyGraphError("Cannot compute edge centralities of a graph without edges.")
    if kappa < 1:
        raise ValueError(f"kappa must be at least 1, got {kappa}.")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}.")

    m = g.edge_count
    rho = m - 1
    bonus = 1.0 / m
    weights = [bonus] * m
    if rho == 0:
        logger.warning("[werw_kpath] the graph has a single edge, no walks are run")
    dist = SourceDistribution.from_graph(g)
    workers = max(1, min(workers, rho))

    if workers == 1:
        rng = np.random.default_rng(seed)
        traversals = _run_walks(g, weights, dist, rho, kappa, rng, bonus)
    else:
        weights, traversals = _run_parallel(g, weights, dist, rho, kappa, seed, bonus, workers)

    logger.info(
        f"[werw_kpath] {rho} walks with kappa={kappa} on {workers} worker(s): {traversals} traversals"
    )
    return CentralityMap(
        weights=weights,
        kappa=kappa,
        rho=rho,
        seed=seed,
        traversals=traversals,
        workers=workers,
    )


def rank_edges(c: CentralityMap) -> np.ndarray:
    """
    Edge ids ordered by decreasing centrality, ties broken by edge id.

    Parameters
    ----------
    c : CentralityMap
        The centralities.

    Returns
    -------
    np.ndarray
        The edge ids.
    """
    weights = np.asarray(c.weights)
    return np.lexsort((np.arange(len(weights)), -weights))


def _run_walks(
    g: Graph,
    weights: List[float],
    dist: SourceDistribution,
    walks: int,
    kappa: int,
    rng: np.random.Generator,
    bonus: float,
    counts: Optional[List[int]] = None,
) -> int:
    traversals = 0
    for _ in range(walks):
        start = select_source(dist, rng)
        path = message_propagation(g, weights, start, kappa, rng, bonus)
        traversals += len(path)
        if counts is not None:
            for edge in path:
                counts[edge] += 1
    return traversals


def _walk_chunk(g, weights, dist, walks, kappa, seed, bonus):
    counts = [0] * len(weights)
    rng = np.random.default_rng(seed)
    traversals = _run_walks(g, list(weights), dist, walks, kappa, rng, bonus, counts)
    return counts, traversals


def _run_parallel(g, weights, dist, rho, kappa, seed, bonus, workers):
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    chunks = [len(chunk) for chunk in np.array_split(np.arange(rho), workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_walk_chunk, g, weights, dist, walks, kappa, child, bonus)
            for walks, child in zip(chunks, seed.spawn(workers))
        ]
        results = [future.result() for future in futures]
    total = np.zeros(len(weights), dtype=np.int64)
    traversals = 0
    for counts, n in results:
        total += np.asarray(counts, dtype=np.int64)
        traversals += n
    return (np.asarray(weights) + total * bonus).tolist(), traversals

"""
Community detection drivers: the centrality-weighted pipeline and the plain
Louvain baseline on unit weights.
"""

from typing import List, Optional

import numpy as np
from loguru import logger

from ..centrality.kpath import DEFAULT_KAPPA, werw_kpath
from ..graph.base import Graph
from ..proximity.base import WeightedGraph
from ..proximity.distance import DEFAULT_WEIGHT_TRANSFORM, build_weighted_graph
from .base import BaseDetector
from .louvain import DEFAULT_EPSILON, Dendrogram, louvain

__all__ = ["fkcd", "louvain_baseline", "FKCD", "Louvain", "DETECTORS"]


def _streams(seed: Optional[int]) -> List[np.random.SeedSequence]:
    # walks, sweep orders
    return np.random.SeedSequence(seed).spawn(2)


def fkcd(
    g: Graph,
    kappa: int = DEFAULT_KAPPA,
    epsilon: float = DEFAULT_EPSILON,
    seed: Optional[int] = None,
    weight_transform: str = DEFAULT_WEIGHT_TRANSFORM,
    workers: int = 1,
) -> Dendrogram:
    """
    Detect communities with kappa-path centrality weighted Louvain.

    The pipeline estimates the centrality of every edge with ``werw_kpath``,
    weights every edge by the proximity of its endpoints
    (``build_weighted_graph``) and runs the multi-level Louvain procedure on
    the weighted graph until a level improves modularity by less than
    ``epsilon``.

    Parameters
    ----------
    g : Graph
        The graph.
    kappa : int
        The maximum number of hops per walk.
    epsilon : float
        The minimum modularity improvement per level.
    seed : int, optional
        The seed for the walks and the sweep orders.
    weight_transform : str
        "direct" or "inverse", see ``build_weighted_graph``.
    workers : int
        The number of processes for the walks.

    Returns
    -------
    Dendrogram
        The levels, with the centralities attached. Level modularities are
        measured on the weighted graph, ``Dendrogram.modularity`` on the
        unit-weight input graph.
    """
    detector = FKCD(kappa, epsilon, seed, weight_transform, workers)
    return detector.detect(g)


def louvain_baseline(
    g: Graph,
    epsilon: float = DEFAULT_EPSILON,
    seed: Optional[int] = None,
) -> Dendrogram:
    """
    Detect communities with the Louvain procedure on unit edge weights.

    Parameters
    ----------
    g : Graph
        The graph.
    epsilon : float
        The minimum modularity improvement per level.
    seed : int, optional
        The seed for the sweep orders.

    Returns
    -------
    Dendrogram
        The levels.
    """
    detector = Louvain(epsilon, seed)
    return detector.detect(g)


class FKCD(BaseDetector):
    """
    Louvain on edges weighted by the proximity derived from kappa-path centrality.
    """

    name = "fkcd"

    def __init__(
        self,
        kappa: int = DEFAULT_KAPPA,
        epsilon: float = DEFAULT_EPSILON,
        seed: Optional[int] = None,
        weight_transform: str = DEFAULT_WEIGHT_TRANSFORM,
        workers: int = 1,
    ):
        self.kappa = kappa
        self.epsilon = epsilon
        self.seed = seed
        self.weight_transform = weight_transform
        self.workers = workers

    def detect(self, graph: Graph) -> Dendrogram:
        self._precheck_graph(graph)
        logger.info(
            f"[fkcd] {graph} kappa={self.kappa} epsilon={self.epsilon} seed={self.seed}"
        )
        walk_seed, move_seed = _streams(self.seed)
        centrality = werw_kpath(
            graph, kappa=self.kappa, seed=walk_seed, workers=self.workers
        )
        wg = build_weighted_graph(graph, centrality, self.weight_transform)
        dendrogram = louvain(
            wg, self.epsilon, move_seed, reference=WeightedGraph.from_graph(graph)
        )
        dendrogram.centrality = centrality
        logger.info(
            f"[fkcd] {dendrogram.community_count} communities, Q={dendrogram.modularity:.6f}"
        )
        return dendrogram

    __call__ = detect


class Louvain(BaseDetector):
    """
    Louvain on unit edge weights.
    """

    name = "louvain"

    def __init__(self, epsilon: float = DEFAULT_EPSILON, seed: Optional[int] = None):
        self.epsilon = epsilon
        self.seed = seed

    def detect(self, graph: Graph) -> Dendrogram:
        self._precheck_graph(graph)
        _, move_seed = _streams(self.seed)
        dendrogram = louvain(WeightedGraph.from_graph(graph), self.epsilon, move_seed)
        logger.info(
            f"[louvain_baseline] {dendrogram.community_count} communities, Q={dendrogram.modularity:.6f}"
        )
        return dendrogram

    __call__ = detect


DETECTORS = {cls.name: cls for cls in (FKCD, Louvain)}
"""
The detector classes by algorithm name.
"""

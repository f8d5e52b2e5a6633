"""
Community detectors with a common interface.
"""

from ..graph.base import EmptyGraphError, Graph
from .louvain import Dendrogram

__all__ = ["BaseDetector"]


class BaseDetector:
    """
    Base class for community detection algorithms.
    """

    name = None

    def detect(self, graph: Graph) -> Dendrogram:
        """
        Detect the communities of a graph.

        Parameters
        ----------
        graph : Graph
            The graph.

        Returns
        -------
        Dendrogram
            The levels found.
        """
        raise NotImplementedError()

    __call__ = detect

    def __repr__(self):
        attrs = ", ".join(f"{k}={v}" for k, v in self.__dict__.items())
        return f"{self.__class__.__name__}({attrs})"

    @staticmethod
    def _precheck_graph(graph):
        if not isinstance(graph, Graph):
            raise TypeError(f"graph must be of type Graph, got ({type(graph)})")
        if graph.edge_count == 0:
            raise EmptyGraphError("Cannot detect communities in a graph without edges.")

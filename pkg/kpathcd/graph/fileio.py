"""
Read and write SNAP-style edge-list files.
"""

from dataclasses import dataclass
from typing import Tuple

from loguru import logger

from ..utils.fileio import ParseError, PathOrStream, iter_records, open_text
from .base import EmptyGraphError, Graph, NodeIdMap

__all__ = [
    "EdgeListParseError",
    "EdgeListStats",
    "load_edge_list",
    "write_edge_list",
]


class EdgeListParseError(ParseError):
    pass


@dataclass
class EdgeListStats:
    """
    Bookkeeping of an edge-list load.

    Attributes
    ----------
    records : int
        The number of data lines read.
    self_loops : int
        The number of records dropped because both labels were equal.
    duplicates : int
        The number of records dropped because the pair was already seen
        (in either orientation).
    """

    records: int = 0
    self_loops: int = 0
    duplicates: int = 0

    @property
    def dropped(self) -> int:
        return self.self_loops + self.duplicates


def load_edge_list(source: PathOrStream, return_stats: bool = False):
    """
    Load an undirected, unweighted graph from an edge-list file.

    Each data line holds two whitespace-separated node labels; lines starting
    with '#' are comments and blank lines are ignored. Self-loops and repeated
    pairs (in either orientation) are dropped with a warning. Labels are kept
    as strings and mapped to dense ids in first-seen order; a label that only
    occurs in dropped self-loops does not become a node.

    Parameters
    ----------
    source : str or Path or IO
        The path of the file, or an open text stream.
    return_stats : bool
        If True, also return the EdgeListStats of the load.

    Returns
    -------
    Graph
        The graph.
    NodeIdMap
        The mapping between the file's labels and the graph's node ids.
    EdgeListStats
        Only if ``return_stats`` is True.
    """
    ids = NodeIdMap()
    stats = EdgeListStats()
    seen = {}
    for line_number, tokens in iter_records(source):
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected two node labels, got {len(tokens)} tokens", line_number
            )
        stats.records += 1
        a, b = tokens
        if a == b:
            stats.self_loops += 1
            continue
        u = ids.add(a)
        v = ids.add(b)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            stats.duplicates += 1
            continue
        seen[key] = len(seen)

    if not seen:
        raise EmptyGraphError("The edge list contains no edges.")
    if stats.dropped:
        logger.warning(
            f"[load_edge_list] dropped {stats.dropped} records ({stats.self_loops} self-loops, {stats.duplicates} duplicates)"
        )
    graph = Graph(len(ids), list(seen.keys()))
    logger.info(
        f"[load_edge_list] loaded {graph.node_count} nodes and {graph.edge_count} edges from {stats.records} records"
    )
    if return_stats:
        return graph, ids, stats
    return graph, ids


def write_edge_list(g: Graph, ids: NodeIdMap, target: PathOrStream) -> None:
    """
    Write a graph as an edge list, one "u v" line per edge in edge id order.

    Loading the written file reproduces the same graph and the same id map.

    Parameters
    ----------
    g : Graph
        The graph.
    ids : NodeIdMap
        The labels to write for the nodes.
    target : str or Path or IO
        Where to write.
    """
    if len(ids) != g.node_count:
        raise ValueError(
            f"The id map has {len(ids)} labels but the graph has {g.node_count} nodes."
        )
    labels = ids.labels
    with open_text(target, "w") as f:
        for u, v in g.endpoints.tolist():
            f.write(f"{labels[u]} {labels[v]}\n")

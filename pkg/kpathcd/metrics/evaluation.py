"""
Measures for evaluating detected communities.
"""

from typing import Mapping, Sequence, Union

import numpy as np
import pandas as pd
from sklearn.metrics import normalized_mutual_info_score

from ..community.partition import Partition, PartitionMismatchError
from ..proximity.base import WeightedGraph
from ..utils.fileio import COMMUNITY_COL, NODE_COL, PathOrStream, read_partition

__all__ = [
    "LabeledPartition",
    "labeled_partition",
    "read_ground_truth",
    "nmi",
    "coverage",
]

LabeledPartition = pd.Series
"""
A partition keyed by node label: a Series of community labels indexed by node label.
"""


def labeled_partition(assignment: Sequence[int], labels: Sequence) -> LabeledPartition:
    """
    Attach node labels to a community assignment.

    Parameters
    ----------
    assignment : Sequence[int]
        The community id of every internal node.
    labels : Sequence
        The label of every internal node.

    Returns
    -------
    LabeledPartition
        Community ids indexed by node label.
    """
    if len(assignment) != len(labels):
        raise ValueError(
            f"Got {len(assignment)} community ids for {len(labels)} node labels."
        )
    return pd.Series(
        np.asarray(assignment),
        index=pd.Index(list(labels), name=NODE_COL),
        name=COMMUNITY_COL,
    )


def read_ground_truth(source: PathOrStream) -> LabeledPartition:
    """
    Read reference communities from "node_label community_label" lines.

    Parameters
    ----------
    source : str or Path or IO
        The file, for example the community file of an LFR benchmark.

    Returns
    -------
    LabeledPartition
        Community labels indexed by node label.
    """
    return read_partition(source)


def _as_labeled(p: Union[LabeledPartition, Mapping]) -> pd.Series:
    if isinstance(p, pd.DataFrame):
        if not {NODE_COL, COMMUNITY_COL} <= set(p.columns):
            raise ValueError(
                f"A DataFrame partition must contain the columns '{NODE_COL}' and '{COMMUNITY_COL}'."
            )
        return p.set_index(NODE_COL)[COMMUNITY_COL]
    if isinstance(p, pd.Series):
        return p
    if isinstance(p, Mapping):
        return pd.Series(p)
    raise TypeError(
        f"A labeled partition must be a Series, DataFrame or mapping, got ({type(p)})"
    )


def nmi(a: Union[LabeledPartition, Mapping], b: Union[LabeledPartition, Mapping]) -> float:
    """
    The normalized mutual information of two partitions of the same nodes.

    ``NMI = 2 I(A;B) / (H(A) + H(B))``. Identical partitions (up to
    relabeling) score 1, independent ones 0. If both partitions have a
    single community the score is 1; if only one of them does, it is 0.

    Parameters
    ----------
    a, b : LabeledPartition or Mapping
        Community labels keyed by node label.

    Returns
    -------
    float
        The score in ``[0, 1]``.
    """
    a = _as_labeled(a)
    b = _as_labeled(b)
    if len(a) != len(b) or set(a.index) != set(b.index):
        raise PartitionMismatchError(
            f"The partitions cover different nodes ({len(a)} and {len(b)} nodes)."
        )
    b = b.reindex(a.index)
    return float(
        normalized_mutual_info_score(
            a.astype(str).to_numpy(),
            b.astype(str).to_numpy(),
            average_method="arithmetic",
        )
    )


def coverage(wg: WeightedGraph, p: Union[Partition, Sequence[int]]) -> float:
    """
    The fraction of the total edge weight that lies inside communities.

    Parameters
    ----------
    wg : WeightedGraph
        The graph.
    p : Partition or Sequence[int]
        The partition, or the community id of every node.

    Returns
    -------
    float
        The coverage in ``[0, 1]``.
    """
    assignment = p.assignment if isinstance(p, Partition) else np.asarray(p)
    if len(assignment) != wg.node_count:
        raise PartitionMismatchError(
            f"The partition covers {len(assignment)} nodes but the graph has {wg.node_count}."
        )
    inside = assignment[wg.endpoints[:, 0]] == assignment[wg.endpoints[:, 1]]
    return float(wg.weights[inside].sum() / wg.total_weight)

"""
Functions to read and write files.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import IO, Iterator, Optional, Sequence, Union

import numpy as np
import pandas as pd

__all__ = [
    "ParseError",
    "open_text",
    "iter_records",
    "read_partition",
    "write_partition",
    "write_table",
    "append_csv_row",
    "labels_or_ids",
]

PathOrStream = Union[str, Path, IO[str]]
"""
Anything the readers and writers accept: a path or an open text stream.
"""

NODE_COL = "node"
"""
The name of the column holding node labels.
"""

COMMUNITY_COL = "community"
"""
The name of the column holding community labels.
"""


class ParseError(ValueError):
    """
    A malformed line in an input file.

    Attributes
    ----------
    line_number : int
        The 1-based number of the offending line.
    """

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@contextmanager
def open_text(source: PathOrStream, mode: str = "r") -> Iterator[IO[str]]:
    """
    Open a path as UTF-8 text, or pass an already open stream through untouched.

    Parameters
    ----------
    source : str or Path or IO
        The path or stream.
    mode : str
        The mode to open a path with.

    Yields
    ------
    IO
        The text stream.
    """
    if hasattr(source, "read") or hasattr(source, "write"):
        yield source
        return
    with open(source, mode, encoding="utf-8") as f:
        yield f


def iter_records(source: PathOrStream) -> Iterator[tuple]:
    """
    Iterate over the data lines of a whitespace-separated text file.

    Blank lines and lines starting with '#' are skipped.

    Parameters
    ----------
    source : str or Path or IO
        The file to read.

    Yields
    ------
    tuple
        The 1-based line number and the list of tokens on that line.
    """
    with open_text(source) as f:
        for line_number, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            yield line_number, line.split()


def read_partition(source: PathOrStream) -> pd.Series:
    """
    Read a "node_label community_label" file.

    Parameters
    ----------
    source : str or Path or IO
        The file to read.

    Returns
    -------
    pd.Series
        Community labels indexed by node label.
    """
    nodes = []
    communities = []
    seen = set()
    for line_number, tokens in iter_records(source):
        if len(tokens) != 2:
            raise ParseError(
                f"expected 'node community', got {len(tokens)} tokens", line_number
            )
        node, community = tokens
        if node in seen:
            raise ParseError(f"node {node!r} is listed twice", line_number)
        seen.add(node)
        nodes.append(node)
        communities.append(community)
    return pd.Series(
        communities, index=pd.Index(nodes, name=NODE_COL), name=COMMUNITY_COL
    )


def write_partition(
    assignment: Sequence[int], labels: Sequence, target: PathOrStream
) -> None:
    """
    Write a partition as "node_label community_id" lines, in internal node order.

    Parameters
    ----------
    assignment : Sequence[int]
        The community id of every internal node.
    labels : Sequence
        The original label of every internal node.
    target : str or Path or IO
        Where to write.
    """
    assignment = np.asarray(assignment)
    if len(assignment) != len(labels):
        raise ValueError(
            f"Got {len(assignment)} community ids for {len(labels)} node labels."
        )
    df = pd.DataFrame({NODE_COL: list(labels), COMMUNITY_COL: assignment})
    with open_text(target, "w") as f:
        df.to_csv(f, sep=" ", header=False, index=False)


def write_table(df: pd.DataFrame, target: PathOrStream) -> None:
    """
    Write a DataFrame as space-separated lines without header or index.

    Parameters
    ----------
    df : pd.DataFrame
        The data.
    target : str or Path or IO
        Where to write.
    """
    with open_text(target, "w") as f:
        df.to_csv(f, sep=" ", header=False, index=False)


def append_csv_row(row: dict, path: Union[str, Path]) -> None:
    """
    Append one row to a CSV file, writing the header if the file is new.

    Parameters
    ----------
    row : dict
        Column name to value.
    path : str or Path
        The CSV file.
    """
    path = Path(path)
    exists = path.exists() and path.stat().st_size > 0
    pd.DataFrame([row]).to_csv(path, mode="a", header=not exists, index=False)


def labels_or_ids(labels: Optional[Sequence], count: int) -> list:
    """
    The given labels, or the internal ids ``0..count-1`` if there are none.
    """
    if labels is None:
        return list(range(count))
    if len(labels) != count:
        raise ValueError(f"Expected {count} labels, got {len(labels)}.")
    return list(labels)


import io

import numpy as np
import pytest
from pathlib import Path

PARENT = Path(__file__).parent
FILES = PARENT.parents[1] / "files"

BRIDGE = FILES / "two_triangles_bridge.txt"
DUPLICATES = FILES / "duplicates.txt"
MALFORMED = FILES / "malformed.txt"
CA_GRQC = FILES / "CA-GrQc.txt"


def test_load_minimal():
    from kpathcd.graph import load_edge_list

    g, ids = load_edge_list(io.StringIO("1 2\n"))
    assert g.node_count == 2
    assert g.edge_count == 1
    assert ids.labels == ("1", "2")


def test_load_drops_duplicates_and_self_loops():
    from kpathcd.graph import load_edge_list

    g, ids, stats = load_edge_list(DUPLICATES, return_stats=True)
    assert g.node_count == 2
    assert g.edge_count == 1
    assert stats.records == 3
    assert stats.self_loops == 1
    assert stats.duplicates == 1
    assert stats.dropped == 2


def test_load_string_labels():
    from kpathcd.graph import load_edge_list

    g, ids = load_edge_list(io.StringIO("alice bob\nbob carol\n# done\n"))
    assert ids.labels == ("alice", "bob", "carol")
    assert g.degree(ids.to_internal("bob")) == 2


def test_load_malformed_line():
    from kpathcd.graph import load_edge_list, EdgeListParseError

    with pytest.raises(EdgeListParseError) as info:
        load_edge_list(MALFORMED)
    assert info.value.line_number == 2
    assert "line 2" in str(info.value)


def test_load_empty_graph():
    from kpathcd.graph import load_edge_list, EmptyGraphError

    with pytest.raises(EmptyGraphError):
        load_edge_list(io.StringIO("# nothing here\n\n"))
    with pytest.raises(EmptyGraphError):
        load_edge_list(io.StringIO("7 7\n"))


def test_load_is_idempotent(tmp_path):
    from kpathcd.graph import load_edge_list, write_edge_list

    g, ids = load_edge_list(io.StringIO("5 3\n3 5\n3 9\n9 9\n2 5\n9 2\n"))
    first = tmp_path / "first.txt"
    write_edge_list(g, ids, first)
    g2, ids2 = load_edge_list(first)
    assert g2 == g
    assert ids2 == ids

    second = tmp_path / "second.txt"
    write_edge_list(g2, ids2, second)
    assert first.read_text() == second.read_text()


def test_degree_sum_of_loaded_graph():
    from kpathcd.graph import load_edge_list

    g, _ = load_edge_list(BRIDGE)
    assert g.node_count == 6
    assert g.edge_count == 7
    assert g.degrees.sum() == 2 * g.edge_count


@pytest.mark.skipif(not CA_GRQC.exists(), reason="CA-GrQc.txt is not available")
def test_load_ca_grqc():
    from kpathcd.graph import load_edge_list

    g, ids, stats = load_edge_list(CA_GRQC, return_stats=True)
    assert g.node_count == 5242
    assert stats.records == 28980
    assert g.degrees.sum() == 2 * g.edge_count
    assert len(ids) == g.node_count

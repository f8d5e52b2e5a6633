from .graph import Graph, NodeIdMap, load_edge_list, write_edge_list, degree
from .centrality import CentralityMap, werw_kpath, rank_edges
from .proximity import WeightedGraph, proximity, build_weighted_graph
from .community import (
    Partition,
    Dendrogram,
    modularity,
    louvain,
    fkcd,
    louvain_baseline,
    FKCD,
    Louvain,
)
from .metrics import nmi, coverage, read_ground_truth

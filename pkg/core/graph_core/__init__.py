"""
Canonical simple graphs and the edge-list file format.
"""

from .graph_core import (
    Graph, GraphClassification, build_graph, classify, components, describe,
    complete_graph, cycle_graph, path_graph, star_graph
)
from .edge_list import read_edge_list, write_edge_list, load_edge_list, save_edge_list

__all__ = [
    'Graph', 'GraphClassification', 'build_graph', 'classify', 'components', 'describe',
    'complete_graph', 'cycle_graph', 'path_graph', 'star_graph',
    'read_edge_list', 'write_edge_list', 'load_edge_list', 'save_edge_list'
]

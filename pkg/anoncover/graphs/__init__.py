from anoncover.graphs.base import Arc, GraphMetrics, PortNumbering, SymDigraph, UGraph, dir_graph, graph_metrics, \
    relabel, undirected_of
from anoncover.graphs.builtin import builtin, builtin_names, vertex_labels
from anoncover.graphs.generators import random_connected_graph, random_tree
from anoncover.graphs.io import dump_covering, dump_graph, load_covering, load_graph, load_ported_graph, load_ports
from anoncover.graphs.ports import assign_arc_ports, assign_ports, lift_ports

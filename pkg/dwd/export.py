"""
Graph export and re-import.

edgelist: `edges.txt` with one `u v` line per edge (u < v) and `vertices.tsv` with
          `id<TAB>label,label,...` per vertex.
dot:      `phi_<n>.dot`, only for n <= 3.
json:     `stats.json`.
"""

import json
import os
from enum import Enum
from typing import List

import networkx as nx

from .errors import FormatTooLarge
from .labels import ChamberLabel, class_key, decode_key, format_labels, key_n
from .phi_graph import GraphStats, PhiGraph

DOT_MAX_N = 3


class ExportFormat(str, Enum):
    EDGELIST = "edgelist"
    DOT = "dot"
    JSON = "json"


def write_edge_list(g: PhiGraph, out_dir: str) -> List[str]:
    os.makedirs(out_dir, exist_ok=True)
    edges_path = os.path.join(out_dir, "edges.txt")
    vertices_path = os.path.join(out_dir, "vertices.tsv")
    with open(edges_path, "w") as f:
        for u, v in g.edges():
            f.write(f"{u} {v}\n")
    with open(vertices_path, "w") as f:
        for i, key in enumerate(g.keys):
            f.write(f"{i}\t{format_labels(decode_key(key))}\n")
    return [edges_path, vertices_path]


def graph_to_dot(g: PhiGraph) -> str:
    if g.n > DOT_MAX_N:
        raise FormatTooLarge(f"dot output is only produced for n <= {DOT_MAX_N}; use edgelist for n={g.n}")
    lines = [f"graph phi_{g.n} {{"]
    for i, key in enumerate(g.keys):
        lines.append(f'  {i} [tooltip="{format_labels(decode_key(key))}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(g: PhiGraph, out_dir: str) -> List[str]:
    text = graph_to_dot(g)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"phi_{g.n}.dot")
    with open(path, "w") as f:
        f.write(text)
    return [path]


def write_stats_json(stats: GraphStats, out_dir: str) -> List[str]:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "stats.json")
    with open(path, "w") as f:
        json.dump(stats.to_json(), f, indent=2)
        f.write("\n")
    return [path]


def export_graph(g: PhiGraph, fmt: ExportFormat, out_dir: str) -> List[str]:
    fmt = ExportFormat(fmt)
    if fmt is ExportFormat.EDGELIST:
        return write_edge_list(g, out_dir)
    if fmt is ExportFormat.DOT:
        return write_dot(g, out_dir)
    return write_stats_json(g.stats(), out_dir)


def import_edge_list(in_dir: str) -> GraphStats:
    """Rebuild statistics from an exported edge list."""
    keys = []
    with open(os.path.join(in_dir, "vertices.tsv"), "r") as f:
        for line in f:
            if not line.strip():
                continue
            _, labels = line.rstrip("\n").split("\t")
            keys.append(class_key(ChamberLabel.parse(text) for text in labels.split(",")))
    graph = nx.read_edgelist(os.path.join(in_dir, "edges.txt"), nodetype=int)
    graph.add_nodes_from(range(len(keys)))
    n = key_n(keys[0]) if keys else 0
    histogram = {}
    for _, degree in graph.degree():
        histogram[degree] = histogram.get(degree, 0) + 1
    return GraphStats.from_histogram(n, histogram)

"""
Enumeration of the move graph Φ_n.

Classes are identified by their sorted packed label codes. Enumeration is a
layer-synchronous BFS from the standard class: each layer's frontier is expanded (locally,
in a process pool, or on remote workers), neighbors are merged into the visited set in
frontier order, and a checkpoint is written after every layer.
"""

import hashlib
import logging
import os
import struct
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from . import checkpoint
from .errors import ConfigError, FingerprintModeRequired, InvariantViolation
from .labels import ClassKey, class_key, decode_key
from .quiver import detect_moves, replace_label
from .wiring import chamber_labels, standard_word

logger = logging.getLogger("enumerate")

Neighbors = Tuple[ClassKey, ...]
Expander = Callable[[Sequence[ClassKey]], List[Neighbors]]

# Rough CPython footprint of one visited entry, used by the memory guard.
_SET_SLOT_BYTES = 60
_TUPLE_BYTES = 56
_INT_BYTES = 36
_DIGEST_BYTES = 49

PUBLISHED = {
    2: {"vertices": 2, "edges": 1, "histogram": {1: 2}},
    3: {"vertices": 34, "edges": 120, "histogram": {3: 16, 4: 18}},
    4: {"vertices": 4894, "edges": 33300,
        "histogram": {4: 2, 5: 522, 6: 1362, 7: 1754, 8: 1054, 9: 200}},
    5: {"vertices": 5520372, "edges": 60930112,
        "histogram": {6: 84, 7: 28584, 8: 198596, 9: 632028, 10: 1165732, 11: 1402756,
                      12: 1165888, 13: 651188, 14: 227520, 15: 44452, 16: 3544}},
}


@dataclass
class GraphStats:
    n: int
    vertices: int
    degree_sum: int
    degree_histogram: Dict[int, int]

    @property
    def undirected_edges(self) -> int:
        return self.degree_sum // 2

    @classmethod
    def from_histogram(cls, n: int, histogram: Dict[int, int]) -> "GraphStats":
        histogram = {int(d): int(c) for d, c in sorted(histogram.items())}
        stats = cls(n, sum(histogram.values()), sum(d * c for d, c in histogram.items()), histogram)
        stats.check()
        return stats

    def check(self) -> None:
        if self.degree_sum % 2:
            raise InvariantViolation(f"odd degree sum {self.degree_sum}")
        if sum(self.degree_histogram.values()) != self.vertices:
            raise InvariantViolation("degree histogram does not add up to the vertex count")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": self.vertices,
            "degree_sum": self.degree_sum,
            "undirected_edges": self.undirected_edges,
            "degree_histogram": {str(d): c for d, c in sorted(self.degree_histogram.items())},
        }


@dataclass
class PhiGraph:
    n: int
    keys: List[ClassKey]
    adjacency: List[List[int]]
    _ids: Dict[ClassKey, int] = field(default_factory=dict, repr=False)

    @classmethod
    def from_neighbors(cls, n: int, neighbors: Dict[ClassKey, Neighbors]) -> "PhiGraph":
        keys = sorted(neighbors)
        ids = {key: i for i, key in enumerate(keys)}
        adjacency = [sorted(ids[nb] for nb in neighbors[key]) for key in keys]
        graph = cls(n, keys, adjacency, ids)
        for v, nbrs in enumerate(adjacency):
            for u in nbrs:
                if v not in adjacency[u]:
                    raise InvariantViolation(f"edge {v}->{u} has no reverse edge")
        return graph

    @property
    def vertex_count(self) -> int:
        return len(self.keys)

    def id_of(self, key: ClassKey) -> int:
        return self._ids[key]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges())
        return g

    def stats(self) -> GraphStats:
        return GraphStats.from_histogram(self.n, degree_histogram(self))


@dataclass
class EnumerateOptions:
    threads: int = 1
    fingerprint_mode: bool = False
    checkpoint_path: Optional[str] = None
    memory_budget_bytes: Optional[int] = None
    keep_graph: bool = True
    expander: Optional[Expander] = None  # remote workers; overrides threads
    start: Optional[ClassKey] = None  # defaults to the standard class


def expand_class(key: ClassKey) -> Neighbors:
    """Neighbor keys of a class, in move order."""
    labels = decode_key(key)
    neighbors = tuple(class_key(replace_label(labels, move)) for move in detect_moves(labels))
    if len(set(neighbors)) != len(neighbors):
        raise InvariantViolation("two moves of one class lead to the same neighbor")
    return neighbors


def expand_batch(keys: Sequence[ClassKey]) -> List[Neighbors]:
    return [expand_class(key) for key in keys]


def fingerprint(key: ClassKey) -> bytes:
    """Stable 128-bit digest of a packed key (checkpoint algorithm id 1)."""
    return hashlib.blake2b(struct.pack(f"<{len(key)}I", *key), digest_size=16).digest()


def start_key(n: int) -> ClassKey:
    return class_key(chamber_labels(standard_word(n)))


def bytes_per_state(n: int, fingerprint_mode: bool) -> int:
    if fingerprint_mode:
        return _SET_SLOT_BYTES + _DIGEST_BYTES
    width = n * n + 1
    return _SET_SLOT_BYTES + _TUPLE_BYTES + width * (8 + _INT_BYTES)


def check_memory(n: int, fingerprint_mode: bool, budget: Optional[int], states: Optional[int] = None) -> None:
    """Raise when the visited set is expected to outgrow the budget."""
    if budget is None:
        return
    if states is None:
        states = PUBLISHED.get(n, {}).get("vertices")
        if states is None:
            return
    needed = states * bytes_per_state(n, fingerprint_mode)
    if needed > budget:
        if fingerprint_mode:
            raise FingerprintModeRequired(
                f"n={n} needs about {needed >> 20} MiB even with fingerprints; budget is {budget >> 20} MiB")
        raise FingerprintModeRequired(
            f"n={n} needs about {needed >> 20} MiB in exact mode, budget is {budget >> 20} MiB; use --fingerprint")


def _pool_expander(pool: ProcessPoolExecutor, threads: int) -> Expander:
    def expand(frontier: Sequence[ClassKey]) -> List[Neighbors]:
        size = max(1, len(frontier) // (threads * 4))
        batches = [frontier[i:i + size] for i in range(0, len(frontier), size)]
        out: List[Neighbors] = []
        for result in pool.map(expand_batch, batches):
            out.extend(result)
        return out
    return expand


def enumerate_phi(n: int, opts: Optional[EnumerateOptions] = None) -> Tuple[Optional[PhiGraph], GraphStats]:
    """BFS over Φ_n. Returns the graph (when kept) and its statistics."""
    opts = opts or EnumerateOptions()
    if n < 2:
        raise ConfigError(f"n must be at least 2, got {n}")
    if opts.threads < 1:
        raise ConfigError(f"threads must be at least 1, got {opts.threads}")
    if opts.fingerprint_mode and n != 5:
        raise ConfigError("fingerprint mode is only used for n = 5; smaller graphs are enumerated exactly")
    if opts.fingerprint_mode and opts.keep_graph:
        raise ConfigError("fingerprint mode keeps no class keys, so it cannot build the graph")
    check_memory(n, opts.fingerprint_mode, opts.memory_budget_bytes)

    algorithm = checkpoint.ALGO_BLAKE2B_128 if opts.fingerprint_mode else checkpoint.ALGO_EXACT
    token = fingerprint if opts.fingerprint_mode else (lambda key: key)

    state = None
    if opts.checkpoint_path and os.path.exists(opts.checkpoint_path):
        state = checkpoint.load_checkpoint(opts.checkpoint_path)
        if state.n != n or state.algorithm != algorithm:
            raise ConfigError(f"checkpoint is for n={state.n} algorithm {state.algorithm}, "
                              f"not n={n} algorithm {algorithm}")
        if opts.keep_graph:
            logger.warning("resumed run: earlier layers were not kept, returning statistics only")
    if state is None:
        start = opts.start or start_key(n)
        state = checkpoint.BfsState(n=n, algorithm=algorithm, visited={token(start)}, frontier=[start])
    resumed = state.layer > 0
    histogram = Counter(state.degree_histogram)
    neighbors: Dict[ClassKey, Neighbors] = {}

    pool = None
    expander = opts.expander
    if expander is None and opts.threads > 1:
        pool = ProcessPoolExecutor(max_workers=opts.threads)
        expander = _pool_expander(pool, opts.threads)
    if expander is None:
        expander = expand_batch

    started = time.time()
    try:
        while state.frontier:
            frontier = state.frontier
            expansions = expander(frontier)
            # state is committed only after the whole layer is merged
            next_frontier: List[ClassKey] = []
            layer_visited = set()
            layer_histogram: Counter = Counter()
            for key, nbrs in zip(frontier, expansions):
                layer_histogram[len(nbrs)] += 1
                if opts.keep_graph:
                    neighbors[key] = nbrs
                for nb in nbrs:
                    t = token(nb)
                    if t not in state.visited and t not in layer_visited:
                        layer_visited.add(t)
                        next_frontier.append(nb)
            state.visited |= layer_visited
            state.frontier = next_frontier
            state.layer += 1
            histogram.update(layer_histogram)
            state.degree_histogram = dict(histogram)
            logger.info(f"layer {state.layer}: expanded {len(frontier)}, next frontier {len(next_frontier)}, "
                        f"visited {len(state.visited)}, {time.time() - started:.1f}s")
            check_memory(n, opts.fingerprint_mode, opts.memory_budget_bytes, len(state.visited))
            if opts.checkpoint_path:
                checkpoint.save_checkpoint(opts.checkpoint_path, state)
    except KeyboardInterrupt:
        if opts.checkpoint_path:
            logger.warning(f"interrupted; flushing layer {state.layer} to {opts.checkpoint_path}")
            checkpoint.save_checkpoint(opts.checkpoint_path, state)
        raise
    finally:
        if pool is not None:
            pool.shutdown()

    stats = GraphStats.from_histogram(n, dict(histogram))
    if stats.vertices != len(state.visited):
        raise InvariantViolation(f"expanded {stats.vertices} classes but discovered {len(state.visited)}")
    graph = None
    if opts.keep_graph and not resumed:
        graph = PhiGraph.from_neighbors(n, neighbors)
    logger.info(f"n={n}: {stats.vertices} classes, degree sum {stats.degree_sum}, "
                f"{stats.undirected_edges} edges in {time.time() - started:.1f}s")
    return graph, stats


def degree_histogram(g: PhiGraph) -> Dict[int, int]:
    return dict(sorted(Counter(len(nbrs) for nbrs in g.adjacency).items()))


def graph_diameter(g: PhiGraph) -> int:
    return nx.diameter(g.to_networkx())


def published_stats(n: int) -> Optional[GraphStats]:
    """Statistics published for Φ_2..Φ_5, derived from the degree tables."""
    if n not in PUBLISHED:
        return None
    return GraphStats.from_histogram(n, PUBLISHED[n]["histogram"])


def compare_with_published(stats: GraphStats) -> dict:
    """Compare computed statistics with the published tables.

    The published edge column equals the degree sum for n >= 3 but the undirected edge
    count for n = 2, so both readings are reported.
    """
    entry = PUBLISHED.get(stats.n)
    if entry is None:
        return {"n": stats.n, "published": False}
    edges = entry["edges"]
    return {
        "n": stats.n,
        "published": True,
        "vertices_match": stats.vertices == entry["vertices"],
        "histogram_match": stats.degree_histogram == entry["histogram"],
        "published_edges": edges,
        "published_edges_is_degree_sum": edges == stats.degree_sum,
        "published_edges_is_undirected": edges == stats.undirected_edges,
        "note": ("published edge figures equal the degree sum for n >= 3 and the undirected "
                 "edge count for n = 2; both are reported"),
    }

"""
Hamiltonian cycle search on small move graphs.
"""

from typing import List, Optional, Sequence

from .errors import SearchBudgetExceeded
from .phi_graph import PhiGraph

DEFAULT_NODE_BUDGET = 2_000_000


def is_hamiltonian_cycle(g: PhiGraph, cycle: Sequence[int]) -> bool:
    if len(cycle) != g.vertex_count or len(set(cycle)) != g.vertex_count or len(cycle) < 3:
        return False
    adjacency = [set(nbrs) for nbrs in g.adjacency]
    return all(cycle[i + 1 - len(cycle)] in adjacency[cycle[i]] for i in range(len(cycle)))


def hamiltonian_cycle(g: PhiGraph, node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[List[int]]:
    """Backtracking search with fewest-onward-moves ordering.

    Returns a cycle as a vertex list starting at vertex 0, or None when the search space
    is exhausted. Raises SearchBudgetExceeded when more than node_budget extensions are
    tried.
    """
    count = g.vertex_count
    adj = g.adjacency
    if count < 3 or any(len(nbrs) < 2 for nbrs in adj):
        return None

    start = 0
    on_path = [False] * count
    on_path[start] = True
    path = [start]

    def onward(v: int) -> List[int]:
        free = [w for w in adj[v] if not on_path[w]]
        free.sort(key=lambda w: (sum(1 for x in adj[w] if not on_path[x]), w))
        return free

    def still_closable(end: int, nxt: int) -> bool:
        # end becomes interior; its other free neighbors must keep two usable neighbors
        for w in adj[end]:
            if w == nxt or on_path[w]:
                continue
            usable = sum(1 for x in adj[w] if not on_path[x] or x == nxt or x == start)
            if usable < 2:
                return False
        return True

    stack = [iter(onward(start))]
    nodes = 0
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            on_path[path.pop()] = False
            continue
        if on_path[nxt]:
            continue
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetExceeded(f"no decision after {node_budget} extensions")
        if not still_closable(path[-1], nxt):
            continue
        path.append(nxt)
        on_path[nxt] = True
        if len(path) == count:
            if start in adj[nxt]:
                return list(path)
            on_path[path.pop()] = False
            continue
        stack.append(iter(onward(nxt)))
    return None

"""
Shortest move paths from a class to classes containing given minors.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import TargetUnreachable
from .labels import ChamberLabel, ClassKey, class_key, decode_key
from .quiver import Move, detect_moves, replace_label

logger = logging.getLogger("paths")


@dataclass(frozen=True)
class MovePath:
    start: ClassKey
    steps: Tuple[Move, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def classes(self) -> List[ClassKey]:
        """Keys of every class visited, start included."""
        out = [self.start]
        labels = decode_key(self.start)
        for move in self.steps:
            labels = replace_label(labels, move)
            out.append(class_key(labels))
        return out


@lru_cache(maxsize=65536)
def class_moves(key: ClassKey) -> Tuple[Tuple[Move, ClassKey], ...]:
    """Moves of a class paired with the neighbor they lead to, in move order."""
    labels = decode_key(key)
    return tuple((move, class_key(replace_label(labels, move))) for move in detect_moves(labels))


def _trace(parents: Dict[ClassKey, Optional[Tuple[ClassKey, Move]]], key: ClassKey) -> Tuple[Move, ...]:
    steps = []
    while parents[key] is not None:
        key, move = parents[key]
        steps.append(move)
    return tuple(reversed(steps))


def find_paths_to_minors(start: ClassKey, targets: Iterable[ChamberLabel]) -> Dict[ChamberLabel, MovePath]:
    """One BFS from start; every target gets the first shortest path that creates it."""
    remaining = set(targets)
    for target in remaining:
        if target.is_unit or target.red.bit_count() != target.blue.bit_count():
            raise ValueError(f"{target} is not a minor")
    labels = decode_key(start)
    found = {target: MovePath(start, ()) for target in remaining if target in labels}
    remaining.difference_update(found)

    parents: Dict[ClassKey, Optional[Tuple[ClassKey, Move]]] = {start: None}
    queue = deque([start])
    while queue and remaining:
        key = queue.popleft()
        for move, neighbor in class_moves(key):
            if neighbor in parents:
                continue
            parents[neighbor] = (key, move)
            if move.replacement in remaining:
                found[move.replacement] = MovePath(start, _trace(parents, neighbor))
                remaining.discard(move.replacement)
            queue.append(neighbor)

    if remaining:
        missing = ", ".join(str(t) for t in sorted(remaining, key=lambda l: l.code))
        raise TargetUnreachable(f"no class reachable from the start contains {missing}")
    logger.debug(f"paths to {len(found)} minors after visiting {len(parents)} classes")
    return found

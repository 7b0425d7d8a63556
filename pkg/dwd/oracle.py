"""
Cross-check of quiver move detection against moves found on concrete words.

For a class with a witness word, every braid-move site of the word's heap gives a
neighbor class and the one label that changed; that multiset must equal what
detect_moves reports for the label set.
"""

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .labels import ClassKey, class_key, decode_key, format_labels
from .quiver import detect_moves, replace_label
from .wiring import Word, apply_word_move, chamber_labels, random_word, standard_word, word_move_sites

logger = logging.getLogger("oracle")

EXHAUSTIVE_MAX_N = 3
Neighbor = Tuple[int, ClassKey]  # (center code, neighbor key)


def quiver_neighbors(key: ClassKey) -> List[Neighbor]:
    labels = decode_key(key)
    return sorted((move.center.code, class_key(replace_label(labels, move))) for move in detect_moves(labels))


def word_neighbors(word: Word) -> List[Tuple[Neighbor, Word]]:
    labels = chamber_labels(word)
    out = []
    for site in word_move_sites(word):
        moved = apply_word_move(word, site)
        moved_labels = chamber_labels(moved)
        (center,) = labels - moved_labels
        out.append(((center.code, class_key(moved_labels)), moved))
    out.sort(key=lambda item: item[0])
    return out


def witness_words(n: int) -> Dict[ClassKey, Word]:
    """One witness word per class, found by BFS over word moves from the standard word."""
    start = standard_word(n)
    witnesses = {class_key(chamber_labels(start)): start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for (_, key), moved in word_neighbors(word):
            if key not in witnesses:
                witnesses[key] = moved
                queue.append(moved)
    return witnesses


def sampled_witnesses(n: int, sample: int, seed: int) -> Dict[ClassKey, Word]:
    rng = random.Random(seed)
    witnesses: Dict[ClassKey, Word] = {}
    for _ in range(sample * 20):
        if len(witnesses) >= sample:
            break
        word = random_word(n, rng)
        witnesses.setdefault(class_key(chamber_labels(word)), word)
    return witnesses


@dataclass
class OracleReport:
    n: int
    classes: int = 0
    mismatches: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"n": self.n, "classes": self.classes, "mismatches": self.mismatches}


def oracle_check(n: int, sample: Optional[int] = None, seed: int = 0) -> OracleReport:
    """Compare both neighbor generators on every class (n <= 3) or a random sample."""
    if sample is None and n <= EXHAUSTIVE_MAX_N:
        witnesses = witness_words(n)
    else:
        witnesses = sampled_witnesses(n, sample or 1000, seed)

    report = OracleReport(n)
    for key in sorted(witnesses):
        word = witnesses[key]
        by_quiver = quiver_neighbors(key)
        by_word = [neighbor for neighbor, _ in word_neighbors(word)]
        report.classes += 1
        if by_quiver != by_word:
            report.mismatches.append({
                "labels": format_labels(decode_key(key)),
                "word": str(word),
                "quiver_only": len(set(by_quiver) - set(by_word)),
                "word_only": len(set(by_word) - set(by_quiver)),
            })
            logger.warning(f"mismatch on {word}: {len(by_quiver)} quiver moves, {len(by_word)} word moves")
    logger.info(f"n={n}: {report.classes} classes checked, {len(report.mismatches)} mismatches")
    return report

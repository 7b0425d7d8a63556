"""
Quiver of a commutation class and braid-move detection on it.

Arrows join labels of consecutive sizes where both colors grow by one string. A braid
move shows up as a small pattern between a bottom label Bo and a top label T of the
class:

  2-move: |T| = |Bo| + 2 in both colors and exactly three of the four labels
          sandwiched between them are present. The absent one is the replacement
          and its opposite in the square is the center.
  3-move: |T| = |Bo| + 3, one color (the fixed one) adds a single string per level
          and the other (the varying one) shows a hexagon: three lower labels and two
          upper labels present, or the mirror image with two lower and three upper.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Tuple

from .errors import MoveNotDetected
from .labels import ChamberLabel, LabelSet, single_bits, swap_label
from .wiring import MoveKind

Factor = Tuple[ChamberLabel, ChamberLabel]


@dataclass(frozen=True)
class Quiver:
    vertices: LabelSet
    arrows: Dict[Tuple[ChamberLabel, ChamberLabel], Tuple[int, int]]  # (u, v) -> (red added, blue added)


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    center: ChamberLabel
    replacement: ChamberLabel
    factors: Tuple[Factor, Factor]

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (int(self.kind), self.center.code, self.replacement.code)


def _contains(small: ChamberLabel, big: ChamberLabel) -> bool:
    return not (small.red & ~big.red) and not (small.blue & ~big.blue)


def _by_size(s: Iterable[ChamberLabel]) -> Dict[int, List[ChamberLabel]]:
    levels: Dict[int, List[ChamberLabel]] = {}
    for label in s:
        levels.setdefault(label.size, []).append(label)
    for bucket in levels.values():
        bucket.sort(key=lambda l: l.code)
    return levels


def build_quiver(s: LabelSet) -> Quiver:
    levels = _by_size(s)
    arrows = {}
    for size, lower in levels.items():
        for u in lower:
            for v in levels.get(size + 1, ()):
                if _contains(u, v):
                    added = ((v.red ^ u.red).bit_length(), (v.blue ^ u.blue).bit_length())
                    arrows[(u, v)] = added
    return Quiver(frozenset(s), arrows)


def _pair(a: ChamberLabel, b: ChamberLabel) -> Factor:
    return (a, b) if a.code <= b.code else (b, a)


def _bracket_pairs(s: LabelSet, gap: int):
    """(Bo, T) pairs of the class with T containing Bo and `gap` more strings per color."""
    levels = _by_size(s)
    for size, lower in sorted(levels.items()):
        for top in levels.get(size + gap, ()):
            for bottom in lower:
                if _contains(bottom, top):
                    yield bottom, top


def detect_2moves(q: Quiver) -> List[Move]:
    s = q.vertices
    moves = {}
    for bottom, top in _bracket_pairs(s, 2):
        reds = single_bits(top.red & ~bottom.red)
        blues = single_bits(top.blue & ~bottom.blue)
        middles = [ChamberLabel(bottom.red | r, bottom.blue | b) for r in reds for b in blues]
        missing = [label for label in middles if label not in s]
        if len(missing) != 1:
            continue
        replacement = missing[0]
        center = ChamberLabel(bottom.red | (top.red & ~replacement.red),
                              bottom.blue | (top.blue & ~replacement.blue))
        others = [label for label in middles if label not in (center, replacement)]
        move = Move(MoveKind.TWO, center, replacement, (_pair(*others), _pair(bottom, top)))
        moves.setdefault((center, replacement), move)
    return sorted(moves.values(), key=lambda m: m.sort_key)


def _hexagon_moves(s: LabelSet, bottom: ChamberLabel, top: ChamberLabel, vary_red: bool):
    def make(varying: int, fixed: int) -> ChamberLabel:
        if vary_red:
            return ChamberLabel(bottom.red | varying, bottom.blue | fixed)
        return ChamberLabel(bottom.red | fixed, bottom.blue | varying)

    if vary_red:
        varying_bits = single_bits(top.red & ~bottom.red)
        fixed_bits = single_bits(top.blue & ~bottom.blue)
    else:
        varying_bits = single_bits(top.blue & ~bottom.blue)
        fixed_bits = single_bits(top.red & ~bottom.red)

    for fj, fk in permutations(fixed_bits, 2):
        lowers = {v: make(v, fj) for v in varying_bits}
        uppers = {(a, b): make(a | b, fj | fk) for a, b in combinations(varying_bits, 2)}
        lower_present = [v for v, label in lowers.items() if label in s]
        upper_missing = [pair for pair, label in uppers.items() if label not in s]

        if len(lower_present) == 3 and len(upper_missing) == 1:
            va, vb = upper_missing[0]
            vc = next(v for v in varying_bits if v not in (va, vb))
            factors = (_pair(lowers[va], make(vb | vc, fj | fk)),
                       _pair(lowers[vb], make(va | vc, fj | fk)))
            yield Move(MoveKind.THREE, lowers[vc], uppers[(va, vb)], factors)
        elif len(lower_present) == 2 and not upper_missing:
            vc = next(v for v in varying_bits if v not in lower_present)
            va, vb = lower_present
            factors = (_pair(make(va | vc, fj | fk), lowers[vb]),
                       _pair(make(vb | vc, fj | fk), lowers[va]))
            yield Move(MoveKind.THREE, make(va | vb, fj | fk), lowers[vc], factors)


def detect_3moves(q: Quiver) -> List[Move]:
    s = q.vertices
    moves = {}
    for bottom, top in _bracket_pairs(s, 3):
        for vary_red in (True, False):
            for move in _hexagon_moves(s, bottom, top, vary_red):
                moves.setdefault((move.center, move.replacement), move)
    return sorted(moves.values(), key=lambda m: m.sort_key)


def detect_moves(s: LabelSet) -> List[Move]:
    q = build_quiver(s)
    moves = detect_2moves(q) + detect_3moves(q)
    moves.sort(key=lambda m: m.sort_key)
    return moves


def replace_label(s: LabelSet, move: Move) -> LabelSet:
    return (s - {move.center}) | {move.replacement}


def apply_move(s: LabelSet, move: Move) -> LabelSet:
    if not any(m.center == move.center and m.replacement == move.replacement for m in detect_moves(s)):
        raise MoveNotDetected(f"no move {move.center} -> {move.replacement} in this class")
    return replace_label(s, move)


def swap_move(move: Move, n: int) -> Move:
    """The same move seen in the color-swapped class."""
    factors = tuple(_pair(swap_label(a, n), swap_label(b, n)) for a, b in move.factors)
    return Move(move.kind, swap_label(move.center, n), swap_label(move.replacement, n), factors)


def quiver_to_dot(q: Quiver) -> str:
    lines = ["digraph Q {"]
    for label in sorted(q.vertices, key=lambda l: l.code):
        lines.append(f'  "{label}";')
    for (u, v), (red, blue) in sorted(q.arrows.items(), key=lambda item: (item[0][0].code, item[0][1].code)):
        lines.append(f'  "{u}" -> "{v}" [label="{red},{blue}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def move_to_text(move: Move) -> str:
    (p1, p2), (p3, p4) = move.factors
    return (f"{int(move.kind)}-move {move.center} -> {move.replacement}"
            f"  [{p1}*{p2} + {p3}*{p4}]")

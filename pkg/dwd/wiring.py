"""
Concrete double wiring diagrams as crossing words.

Heights run 1..n bottom to top. Red string k enters at height n+1-k and blue string k
at height k. A letter (color, i) crosses the two strings of that color at heights i and
i+1, so it only changes the chamber label at level i.

The commutation class of a word is the set of linear extensions of its heap; braid
moves are found on the heap so that they apply to the whole class, not only to the
given letter order.
"""

import os
import random
import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import (IncompleteReversal, InvalidLetter, InvariantViolation,
                     RepeatedCrossing, SiteNotApplicable, WordError, WrongLength)
from .labels import ChamberLabel, LabelSet

_TOKEN = re.compile(r"^([RrBb])(\d+)$")


class Color(str, Enum):
    RED = "R"
    BLUE = "B"


class MoveKind(IntEnum):
    TWO = 2
    THREE = 3


@dataclass(frozen=True)
class Letter:
    color: Color
    level: int

    def __str__(self) -> str:
        return f"{self.color.value}{self.level}"


@dataclass(frozen=True)
class Word:
    n: int
    letters: Tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class MoveSite:
    kind: MoveKind
    letters: Tuple[int, ...]  # word positions, ascending


TokenLike = Union[Letter, Tuple[Union[Color, str], int]]


def _to_letter(token: TokenLike, n: int) -> Letter:
    if isinstance(token, Letter):
        letter = token
    else:
        color, level = token
        try:
            parsed_color = Color(color.upper() if isinstance(color, str) else color)
        except ValueError:
            raise InvalidLetter(f"unknown color {color!r}") from None
        try:
            parsed_level = int(level)
        except (TypeError, ValueError):
            raise InvalidLetter(f"level {level!r} is not an integer") from None
        letter = Letter(parsed_color, parsed_level)
    if not 1 <= letter.level <= n - 1:
        raise InvalidLetter(f"letter {letter} has level outside 1..{n - 1}")
    return letter


def initial_heights(n: int, color: Color) -> List[int]:
    """String occupying each height (index 0 is height 1) at the left end."""
    if color is Color.RED:
        return [n - h for h in range(n)]
    return [h + 1 for h in range(n)]


def _simulate(letters: Sequence[Letter], n: int, color: Color) -> None:
    heights = initial_heights(n, color)
    crossed = set()
    for letter in letters:
        i = letter.level - 1
        a, b = heights[i], heights[i + 1]
        pair = (min(a, b), max(a, b))
        if pair in crossed:
            raise RepeatedCrossing(f"{color.name.lower()} strings {pair[0]} and {pair[1]} cross twice")
        crossed.add(pair)
        heights[i], heights[i + 1] = b, a
    if heights != initial_heights(n, color)[::-1]:
        raise IncompleteReversal(f"{color.name.lower()} strings do not end reversed: {heights}")


def validate_word(tokens: Iterable[TokenLike], n: int) -> Word:
    """Build a Word, checking that both colors are reduced words for the reversal."""
    if n < 2:
        raise WordError(f"a double wiring diagram needs at least 2 strings, got n={n}")
    letters = tuple(_to_letter(token, n) for token in tokens)
    expected = n * (n - 1) // 2
    for color in Color:
        sub = [letter for letter in letters if letter.color is color]
        if len(sub) != expected:
            raise WrongLength(f"{color.name.lower()} subword has {len(sub)} letters, expected {expected}")
        _simulate(sub, n, color)
    return Word(n, letters)


def parse_word(text: str, n: int) -> Word:
    """Parse the `R1 R2 R1 B1 B2 B1` text format."""
    tokens = []
    for raw in text.split():
        match = _TOKEN.match(raw)
        if not match:
            raise InvalidLetter(f"bad token {raw!r}; expected R<level> or B<level>")
        tokens.append((match.group(1).upper(), int(match.group(2))))
    return validate_word(tokens, n)


def format_word(word: Word) -> str:
    return " ".join(str(letter) for letter in word.letters)


def read_word_arg(arg: str, n: int) -> Word:
    """Accept either inline tokens or a path to a file holding them."""
    if os.path.isfile(arg):
        with open(arg, "r") as f:
            return parse_word(f.read(), n)
    return parse_word(arg, n)


def chamber_labels(word: Word) -> LabelSet:
    """Sweep left to right and collect the label of every chamber."""
    n = word.n
    red = initial_heights(n, Color.RED)
    blue = initial_heights(n, Color.BLUE)
    current = []
    red_mask = blue_mask = 0
    for m in range(n + 1):
        if m:
            red_mask |= 1 << (red[m - 1] - 1)
            blue_mask |= 1 << (blue[m - 1] - 1)
        current.append(ChamberLabel(red_mask, blue_mask))
    seen = [{label} for label in current]
    labels = set(current)

    for letter in word.letters:
        i = letter.level
        heights = red if letter.color is Color.RED else blue
        lower, upper = heights[i - 1], heights[i]
        heights[i - 1], heights[i] = upper, lower
        flip = (1 << (lower - 1)) | (1 << (upper - 1))
        old = current[i]
        if letter.color is Color.RED:
            new = ChamberLabel(old.red ^ flip, old.blue)
        else:
            new = ChamberLabel(old.red, old.blue ^ flip)
        if new in seen[i]:
            raise InvariantViolation(f"label {new} recurs at level {i}")
        seen[i].add(new)
        current[i] = new
        labels.add(new)

    if len(labels) != n * n + 1:
        raise InvariantViolation(f"{len(labels)} chamber labels, expected {n * n + 1}")
    return frozenset(labels)


def depends(a: Letter, b: Letter) -> bool:
    if a.color is b.color:
        return abs(a.level - b.level) <= 1
    return a.level == b.level


class Heap:
    """Commutation poset of a word, as strict down/up bitmasks per position."""

    def __init__(self, word: Word):
        letters = word.letters
        size = len(letters)
        self.size = size
        self.below = [0] * size
        self.above = [0] * size
        for j in range(size):
            acc = 0
            for i in range(j):
                if depends(letters[i], letters[j]):
                    acc |= self.below[i] | (1 << i)
            self.below[j] = acc
        for j in range(size):
            mask = self.below[j]
            while mask:
                low = mask & -mask
                self.above[low.bit_length() - 1] |= 1 << j
                mask ^= low

    def less(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def between(self, i: int, j: int) -> int:
        return self.above[i] & self.below[j]

    def covers(self, i: int, j: int) -> bool:
        """True when j covers i (i < j with nothing strictly between)."""
        return self.less(i, j) and not self.between(i, j)


def word_move_sites(word: Word) -> List[MoveSite]:
    """Every braid move applicable somewhere in the commutation class of word."""
    heap = Heap(word)
    letters = word.letters
    sites = []
    for i in range(len(letters)):
        a = letters[i]
        for j in range(i + 1, len(letters)):
            b = letters[j]
            if a.level != b.level:
                continue
            if a.color is not b.color:
                if heap.covers(i, j):
                    sites.append(MoveSite(MoveKind.TWO, (i, j)))
                continue
            middle = heap.between(i, j)
            if not middle or middle & (middle - 1):
                continue
            k = middle.bit_length() - 1
            c = letters[k]
            if c.color is a.color and abs(c.level - a.level) == 1:
                sites.append(MoveSite(MoveKind.THREE, (i, k, j)))
    sites.sort(key=lambda site: (site.kind, site.letters))
    return sites


def apply_word_move(word: Word, site: MoveSite) -> Word:
    """Bring the site's letters together in a linear extension, then rewrite them."""
    if site not in word_move_sites(word):
        raise SiteNotApplicable(f"{site} is not a braid move site of {word}")
    heap = Heap(word)
    members = set(site.letters)
    last = site.letters[-1]
    prefix = [x for x in range(len(word)) if x not in members and heap.less(x, last)]
    rest = [x for x in range(len(word)) if x not in members and not heap.less(x, last)]

    letters = [word.letters[x] for x in prefix]
    block = [word.letters[x] for x in site.letters]
    if site.kind is MoveKind.TWO:
        block = [block[1], block[0]]
    else:
        outer, inner = block[0].level, block[1].level
        color = block[0].color
        block = [Letter(color, inner), Letter(color, outer), Letter(color, inner)]
    letters.extend(block)
    letters.extend(word.letters[x] for x in rest)

    if __debug__:
        return validate_word(letters, word.n)
    return Word(word.n, tuple(letters))


def standard_word(n: int) -> Word:
    """Red letters 1, 2 1, 3 2 1, ... followed by the same levels in blue."""
    if n < 2:
        raise WordError(f"a double wiring diagram needs at least 2 strings, got n={n}")
    levels = [level for top in range(1, n) for level in range(top, 0, -1)]
    letters = [Letter(Color.RED, level) for level in levels]
    letters += [Letter(Color.BLUE, level) for level in levels]
    return Word(n, tuple(letters))


def _random_reduced(n: int, color: Color, rng: random.Random) -> List[Letter]:
    heights = initial_heights(n, color)
    out = []
    while True:
        if color is Color.RED:
            open_levels = [i + 1 for i in range(n - 1) if heights[i] > heights[i + 1]]
        else:
            open_levels = [i + 1 for i in range(n - 1) if heights[i] < heights[i + 1]]
        if not open_levels:
            return out
        level = rng.choice(open_levels)
        heights[level - 1], heights[level] = heights[level], heights[level - 1]
        out.append(Letter(color, level))


def random_word(n: int, rng: random.Random) -> Word:
    """A random valid word: random reduced words for both colors, randomly shuffled together."""
    red = _random_reduced(n, Color.RED, rng)
    blue = _random_reduced(n, Color.BLUE, rng)
    total = len(red) + len(blue)
    red_slots = set(rng.sample(range(total), len(red)))
    red_iter, blue_iter = iter(red), iter(blue)
    letters = [next(red_iter) if slot in red_slots else next(blue_iter) for slot in range(total)]
    return Word(n, tuple(letters))

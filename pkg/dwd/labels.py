"""
Chamber labels and the packed class identity.

A chamber label (r, b) is stored as two bitmasks over the strings 1..n (bit k-1 for
string k). Its packed code keeps the red mask in the low 16 bits and the blue mask in
the next 16, so a label set is identified by the sorted tuple of its codes.
"""

import math
from itertools import combinations
from typing import FrozenSet, Iterable, List, NamedTuple, Tuple

BLUE_SHIFT = 16
RED_MASK = (1 << BLUE_SHIFT) - 1


class ChamberLabel(NamedTuple):
    """Pair (r, b) of equal-size string subsets, as bitmasks."""
    red: int
    blue: int

    @property
    def code(self) -> int:
        return self.red | (self.blue << BLUE_SHIFT)

    @property
    def size(self) -> int:
        return self.red.bit_count()

    @property
    def is_unit(self) -> bool:
        return self.red == 0 and self.blue == 0

    @classmethod
    def from_code(cls, code: int) -> "ChamberLabel":
        return cls(code & RED_MASK, code >> BLUE_SHIFT)

    @classmethod
    def from_sets(cls, red: Iterable[int], blue: Iterable[int]) -> "ChamberLabel":
        return cls(mask_of(red), mask_of(blue))

    @classmethod
    def parse(cls, text: str) -> "ChamberLabel":
        """Parse the `<red>|<blue>` text format, e.g. `134|123` or `-|-`."""
        try:
            red_text, blue_text = text.strip().split("|")
        except ValueError:
            raise ValueError(f"label must look like '13|12', got {text!r}") from None
        label = cls(_parse_subset(red_text), _parse_subset(blue_text))
        if label.red.bit_count() != label.blue.bit_count():
            raise ValueError(f"label {text!r} has subsets of different sizes")
        return label

    def minor_name(self) -> str:
        """Chamber-minor name used when rendering Laurent polynomials."""
        return f"D[{_subset_digits(self.red, '')},{_subset_digits(self.blue, '')}]"

    def __str__(self) -> str:
        return f"{_subset_digits(self.red, '-')}|{_subset_digits(self.blue, '-')}"


UNIT = ChamberLabel(0, 0)

LabelSet = FrozenSet[ChamberLabel]
ClassKey = Tuple[int, ...]


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for k in elements:
        mask |= 1 << (k - 1)
    return mask


def elements_of(mask: int) -> List[int]:
    """String numbers in a bitmask, ascending."""
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def single_bits(mask: int) -> List[int]:
    """Split a mask into its one-bit masks, lowest first."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def _subset_digits(mask: int, empty: str) -> str:
    if not mask:
        return empty
    return "".join(str(k) for k in elements_of(mask))


def _parse_subset(text: str) -> int:
    text = text.strip()
    if text in ("-", ""):
        return 0
    if not text.isdigit():
        raise ValueError(f"subset must be ascending digits, got {text!r}")
    return mask_of(int(ch) for ch in text)


def class_key(labels: Iterable[ChamberLabel]) -> ClassKey:
    return tuple(sorted(label.code for label in labels))


def decode_key(key: ClassKey) -> LabelSet:
    return frozenset(ChamberLabel.from_code(code) for code in key)


def key_n(key: ClassKey) -> int:
    """Number of strings of the class a key belongs to (keys hold n^2 + 1 codes)."""
    return math.isqrt(len(key) - 1)


def format_labels(labels: Iterable[ChamberLabel]) -> str:
    return ",".join(str(label) for label in sorted(labels, key=lambda l: l.code))


def fixed_labels(n: int) -> LabelSet:
    """The 2n labels every class of Φ_n contains."""
    out = {UNIT}
    for m in range(1, n + 1):
        top = range(n - m + 1, n + 1)
        bottom = range(1, m + 1)
        out.add(ChamberLabel.from_sets(top, bottom))
        out.add(ChamberLabel.from_sets(bottom, top))
    return frozenset(out)


def all_minors(n: int) -> List[ChamberLabel]:
    """Every pair of equal-size nonempty subsets of 1..n, in code order."""
    out = []
    for size in range(1, n + 1):
        for rows in combinations(range(1, n + 1), size):
            for cols in combinations(range(1, n + 1), size):
                out.append(ChamberLabel.from_sets(rows, cols))
    out.sort(key=lambda label: label.code)
    return out


def non_fixed_minors(n: int) -> List[ChamberLabel]:
    fixed = fixed_labels(n)
    return [label for label in all_minors(n) if label not in fixed]


def _reflect(mask: int, n: int) -> int:
    return mask_of(n + 1 - k for k in elements_of(mask))


def color_swap(labels: Iterable[ChamberLabel], n: int) -> LabelSet:
    """Image of a label set under exchanging the red and blue families.

    Blue string k enters at height k, which is where red string n+1-k enters, so the
    swap relabels i -> n+1-i on both sides.
    """
    return frozenset(ChamberLabel(_reflect(l.blue, n), _reflect(l.red, n)) for l in labels)


def swap_label(label: ChamberLabel, n: int) -> ChamberLabel:
    return ChamberLabel(_reflect(label.blue, n), _reflect(label.red, n))

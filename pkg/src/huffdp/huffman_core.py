"""Huffman code construction over value frequency tables.

Codes are only used to read off node depths; nothing here encodes or
decodes payloads.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class FrequencyTable:
    """Distinct values with their occurrence counts, ascending by value."""

    entries: tuple[tuple[float, int], ...]

    def __post_init__(self):
        values = [v for v, _ in self.entries]
        if len(set(values)) != len(values):
            raise ValueError("duplicate values in frequency table")
        if any(c < 1 for _, c in self.entries):
            raise ValueError("counts must be >= 1")
        ordered = tuple(sorted(self.entries, key=lambda e: e[0]))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def from_counts(cls, counts: Mapping[float, int]) -> "FrequencyTable":
        return cls(tuple((v, int(c)) for v, c in counts.items()))

    @classmethod
    def from_stream(cls, stream: Iterable[float]) -> "FrequencyTable":
        return cls.from_counts(Counter(stream))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.entries)

    @property
    def values(self) -> list[float]:
        return [v for v, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def as_dict(self) -> dict[float, int]:
        return dict(self.entries)


@dataclass(frozen=True)
class HuffmanCodebook:
    """Per-value prefix codes plus the tree facts the leveling stage needs."""

    codes: dict[float, str]
    tree_size: int

    @property
    def lengths(self) -> dict[float, int]:
        return {v: len(c) for v, c in self.codes.items()}

    @property
    def min_length(self) -> int:
        return min(len(c) for c in self.codes.values())

    def length(self, value: float) -> int:
        return len(self.codes[value])

    def __len__(self):
        return len(self.codes)


class _Node:
    __slots__ = ("weight", "value", "left", "right")

    def __init__(self, weight, value=None, left=None, right=None):
        self.weight = weight
        self.value = value
        self.left = left
        self.right = right


def build_tree(freq: FrequencyTable) -> HuffmanCodebook:
    """Build a Huffman codebook for ``freq``.

    Equal weights are broken by creation order (older node pops first), and
    leaves are created in ascending value order, so the output is fully
    determined by the table. The first node extracted at each merge becomes
    the left child (bit ``0``).

    A single-symbol table gets the code ``"0"``.
    """
    if len(freq) == 0:
        raise ValueError("empty input")

    if len(freq) == 1:
        (value, _), = freq.entries
        return HuffmanCodebook(codes={value: "0"}, tree_size=1)

    order = itertools.count()
    heap = []
    for value, count in freq:
        heapq.heappush(heap, (count, next(order), _Node(count, value)))

    tree_size = len(heap)
    while len(heap) > 1:
        w0, _, left = heapq.heappop(heap)
        w1, _, right = heapq.heappop(heap)
        parent = _Node(w0 + w1, left=left, right=right)
        heapq.heappush(heap, (parent.weight, next(order), parent))
        tree_size += 1

    root = heap[0][2]
    codes = {}
    # iterative walk; depth can reach n - 1 for skewed tables
    stack = [(root, "")]
    while stack:
        node, prefix = stack.pop()
        if node.left is None:
            codes[node.value] = prefix
            continue
        stack.append((node.right, prefix + "1"))
        stack.append((node.left, prefix + "0"))
    return HuffmanCodebook(codes=codes, tree_size=tree_size)


def weighted_code_length(freq: FrequencyTable, book: HuffmanCodebook) -> float:
    """Sum of count times code length over every value in ``freq``."""
    total = 0
    for value, count in freq:
        code = book.codes.get(value)
        if code is None:
            raise ValueError("codebook mismatch")
        total += count * len(code)
    return total


def is_prefix_free(codes: Iterable[str]) -> bool:
    ordered = sorted(codes)
    return all(not b.startswith(a) for a, b in zip(ordered, ordered[1:]))


def kraft_sum(lengths: Iterable[int]) -> float:
    return sum(2.0 ** -n for n in lengths)

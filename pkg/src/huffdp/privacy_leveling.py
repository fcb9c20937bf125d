"""Map Huffman code lengths to effective node depths and privacy levels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .huffman_core import HuffmanCodebook

DEFAULT_MAX_LEVEL = 5


@dataclass(frozen=True)
class ValueLevel:
    raw_depth: int
    effective_depth: int
    level: int


@dataclass(frozen=True)
class LevelAssignment:
    per_value: dict[float, ValueLevel]
    l_max: int = DEFAULT_MAX_LEVEL

    def level(self, value: float) -> int:
        return self.per_value[value].level

    @property
    def levels(self) -> dict[float, int]:
        return {v: lv.level for v, lv in self.per_value.items()}

    @property
    def effective_depths(self) -> dict[float, int]:
        return {v: lv.effective_depth for v, lv in self.per_value.items()}


def levels_from_lengths(lengths: Mapping[float, int], l_max: int = DEFAULT_MAX_LEVEL) -> LevelAssignment:
    """Shift depths so the shallowest value sits at 1, then clamp to ``l_max``."""
    if not lengths:
        raise ValueError("empty input")
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    first_depth = min(lengths.values())
    per_value = {}
    for value, depth in lengths.items():
        effective = depth - (first_depth - 1)
        per_value[value] = ValueLevel(depth, effective, min(effective, l_max))
    return LevelAssignment(per_value, l_max)


def assign_levels(book: HuffmanCodebook, l_max: int = DEFAULT_MAX_LEVEL) -> LevelAssignment:
    return levels_from_lengths(book.lengths, l_max)


def required_privacy_label(level: int) -> str:
    """Informational label only; budgets are driven by the numeric level."""
    if level < 1:
        raise ValueError("invalid level")
    if level == 1:
        return "Low"
    if level <= 3:
        return "Medium"
    return "High"

"""Privacy budget decision functions: static range, sine, and fuzzy.

Every selector takes an explicit ``numpy.random.Generator``; nothing here
touches global random state. Uniform draws are half-open ``[a, b)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

EPSILON_MIN = 0.01
STATIC_WIDTH = 0.2
FUZZY_HALF_WIDTH = 0.03


class Selector(str, enum.Enum):
    STATIC = "static"
    SINE = "sine"
    FUZZY = "fuzzy"


@dataclass(frozen=True)
class FuzzyRange:
    """Start boundary, end boundary and core intervals for one level."""

    start_lo: float
    start_hi: float
    end_lo: float
    end_hi: float
    core_lo: float
    core_hi: float

    def validate(self):
        ok = (self.start_lo < self.start_hi <= self.core_lo < self.core_hi
              <= self.end_lo < self.end_hi)
        if not ok:
            raise ValueError(f"fuzzy intervals out of order: {self}")


def default_level_table(epsilon_min: float = EPSILON_MIN, levels: int = 5) -> dict[int, tuple[float, float]]:
    """Contiguous 0.2-wide ranges stepping down from 1.0; level 2 is (0.6, 0.8).

    The deepest level's lower edge is ``epsilon_min`` rather than 0.
    """
    table = {}
    for level in range(1, levels + 1):
        lo = round(1.0 - STATIC_WIDTH * level, 10)
        hi = round(lo + STATIC_WIDTH, 10)
        table[level] = (max(lo, epsilon_min), hi)
    return table


def default_fuzzy_table(level_table: Mapping[int, tuple[float, float]] | None = None,
                        epsilon_min: float = EPSILON_MIN,
                        half_width: float = FUZZY_HALF_WIDTH) -> dict[int, FuzzyRange]:
    if level_table is None:
        level_table = default_level_table(epsilon_min)

    def clamp(x):
        return round(min(max(x, epsilon_min), 1.0), 10)

    table = {}
    for level, (lo, hi) in level_table.items():
        table[level] = FuzzyRange(
            start_lo=clamp(lo - half_width), start_hi=clamp(lo + half_width),
            end_lo=clamp(hi - half_width), end_hi=clamp(hi + half_width),
            core_lo=clamp(lo + half_width), core_hi=clamp(hi - half_width),
        )
    return table


@dataclass(frozen=True)
class BudgetConfig:
    selector: Selector = Selector.STATIC
    beta: float = 1.0
    level_table: dict[int, tuple[float, float]] = field(default_factory=default_level_table)
    fuzzy_table: dict[int, FuzzyRange] = field(default_factory=default_fuzzy_table)
    boundary_weight: float = 20.0
    core_weight: float = 60.0
    epsilon_min: float = EPSILON_MIN
    sine_max_level: int = 5

    def __post_init__(self):
        object.__setattr__(self, "selector", Selector(self.selector))
        if not self.beta > 0:
            raise ValueError("beta must be > 0")
        if not self.epsilon_min > 0:
            raise ValueError("epsilon_min must be > 0")
        if not math.isclose(2 * self.boundary_weight + self.core_weight, 100.0):
            raise ValueError("2 * boundary_weight + core_weight must equal 100")
        for level, (lo, hi) in self.level_table.items():
            if not 0 < lo < hi:
                raise ValueError(f"bad static range for level {level}: {(lo, hi)}")
        for rng in self.fuzzy_table.values():
            rng.validate()


def _range_for(table, level):
    try:
        return table[level]
    except KeyError:
        raise ValueError("invalid level") from None


def static_epsilon(level: int, cfg: BudgetConfig, rng: np.random.Generator) -> float:
    lo, hi = _range_for(cfg.level_table, level)
    return cfg.beta * rng.uniform(lo, hi)


def _open_angle(rng):
    angle = rng.uniform(0.0, math.pi)
    while angle == 0.0:
        angle = rng.uniform(0.0, math.pi)
    return angle


def sine_epsilon(level: int, cfg: BudgetConfig, rng: np.random.Generator) -> float:
    if level < 1:
        raise ValueError("invalid level")
    level = min(level, cfg.sine_max_level)
    eps = cfg.beta * (math.sin(_open_angle(rng)) / level)
    return max(cfg.epsilon_min, eps)


def fuzzy_epsilon(level: int, cfg: BudgetConfig, rng: np.random.Generator) -> float:
    r = _range_for(cfg.fuzzy_table, level)
    start = rng.uniform(r.start_lo, r.start_hi)
    end = rng.uniform(r.end_lo, r.end_hi)
    core = rng.uniform(r.core_lo, r.core_hi)
    weighted = cfg.boundary_weight * (start + end) + cfg.core_weight * core
    return cfg.beta * (weighted / 100.0)


_SELECTORS = {
    Selector.STATIC: static_epsilon,
    Selector.SINE: sine_epsilon,
    Selector.FUZZY: fuzzy_epsilon,
}


def select_budget(level: int, cfg: BudgetConfig, rng: np.random.Generator) -> float:
    return _SELECTORS[cfg.selector](level, cfg, rng)


def epsilon_bounds(level: int, cfg: BudgetConfig) -> tuple[float, float]:
    """Closed analytic bounds on the epsilon a selector can return at ``level``."""
    if cfg.selector is Selector.STATIC:
        lo, hi = _range_for(cfg.level_table, level)
        return cfg.beta * lo, cfg.beta * hi
    if cfg.selector is Selector.SINE:
        return cfg.epsilon_min, max(cfg.epsilon_min, cfg.beta / min(level, cfg.sine_max_level))
    r = _range_for(cfg.fuzzy_table, level)
    b, c = cfg.boundary_weight, cfg.core_weight
    lo = (b * (r.start_lo + r.end_lo) + c * r.core_lo) / 100.0
    hi = (b * (r.start_hi + r.end_hi) + c * r.core_hi) / 100.0
    return cfg.beta * lo, cfg.beta * hi

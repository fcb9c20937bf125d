"""End-to-end Huff-DP run and the per-instance baseline runs it is compared to."""

from __future__ import annotations

import enum
import math
import struct
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .budget_selection import BudgetConfig, Selector, select_budget
from .huffman_core import FrequencyTable, HuffmanCodebook, build_tree
from .perturbation import (NoiseCache, NoiseParams, gaussian_noise, perturb_value,
                           staircase_noise)
from .privacy_leveling import DEFAULT_MAX_LEVEL, LevelAssignment, assign_levels

_MASK64 = (1 << 64) - 1


class Mechanism(str, enum.Enum):
    HUFFDP = "huffdp"
    LAPLACE = "laplace"
    GAUSSIAN = "gaussian"
    STAIRCASE = "staircase"


@dataclass(frozen=True)
class RunConfig:
    budget: BudgetConfig = field(default_factory=BudgetConfig)
    sensitivity: float = 1.0
    mean: float = 0.0
    l_max: int = DEFAULT_MAX_LEVEL
    seed: int = 0
    abs_fold: bool = True
    delta: float = 1e-5
    gamma: float | None = None

    def __post_init__(self):
        if not self.sensitivity > 0:
            raise ValueError("sensitivity must be > 0")
        if self.l_max < 1:
            raise ValueError("l_max must be >= 1")
        table = {Selector.STATIC: self.budget.level_table,
                 Selector.FUZZY: self.budget.fuzzy_table}.get(self.budget.selector)
        missing = [lv for lv in range(1, self.l_max + 1) if table is not None and lv not in table]
        if missing:
            raise ValueError(f"budget tables have no entry for levels {missing}")


@dataclass(frozen=True)
class ValueRecord:
    level: int | None
    epsilon: float
    noise: float


@dataclass
class PerturbationResult:
    mechanism: Mechanism
    perturbed: list[float]
    per_value: dict[float, ValueRecord]
    noise_computation_count: int
    # per-instance epsilon and noise, aligned with the input stream
    epsilons: list[float]
    noise: list[float]
    budget_selections: int = 0


def value_rng(seed: int, value: float) -> np.random.Generator:
    """Random stream owned by one distinct value, independent of its neighbours."""
    (bits,) = struct.unpack("<Q", struct.pack("<d", float(value) + 0.0))
    return np.random.default_rng(np.random.SeedSequence(seed & _MASK64, spawn_key=(bits,)))


def _check_stream(stream):
    if len(stream) == 0:
        raise ValueError("empty input")
    if not all(math.isfinite(v) for v in stream):
        raise ValueError("stream contains non-finite values")


def extract_frequencies(stream: Sequence[float]) -> FrequencyTable:
    _check_stream(stream)
    return FrequencyTable.from_stream(stream)


def select_value_budgets(levels: LevelAssignment, cfg: RunConfig):
    """One epsilon per distinct value, each from that value's own stream.

    Returns ``{value: (epsilon, rng)}``; the rng is left positioned for the
    value's noise draw.
    """
    budgets = {}
    for value in sorted(levels.per_value):
        rng = value_rng(cfg.seed, value)
        budgets[value] = (select_budget(levels.level(value), cfg.budget, rng), rng)
    return budgets


def perturb_stream(stream: Sequence[float], budgets, cfg: RunConfig) -> tuple[list[float], NoiseCache]:
    cache = NoiseCache()
    params = {v: NoiseParams(eps, cfg.sensitivity, cfg.mean) for v, (eps, _) in budgets.items()}
    out = [perturb_value(v, params[v], cache, budgets[v][1], cfg.abs_fold) for v in stream]
    return out, cache


def run_huffdp(stream: Sequence[float], cfg: RunConfig | None = None) -> PerturbationResult:
    cfg = cfg or RunConfig()
    freq = extract_frequencies(stream)
    book: HuffmanCodebook = build_tree(freq)
    levels = assign_levels(book, cfg.l_max)
    budgets = select_value_budgets(levels, cfg)
    perturbed, cache = perturb_stream(stream, budgets, cfg)

    records = {v: ValueRecord(levels.level(v), budgets[v][0], cache.samples[v])
               for v in sorted(budgets)}
    return PerturbationResult(
        mechanism=Mechanism.HUFFDP,
        perturbed=perturbed,
        per_value=records,
        noise_computation_count=cache.computation_count,
        epsilons=[records[v].epsilon for v in stream],
        noise=[records[v].noise for v in stream],
        budget_selections=len(records),
    )


def run_baseline(stream: Sequence[float], mechanism: Mechanism | str, epsilon: float,
                 cfg: RunConfig | None = None, abs_fold: bool = False) -> PerturbationResult:
    """Fixed-epsilon mechanism drawing fresh noise for every instance."""
    cfg = cfg or RunConfig()
    mechanism = Mechanism(mechanism)
    if mechanism is Mechanism.HUFFDP:
        raise ValueError("huffdp is not a baseline; use run_huffdp")
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    _check_stream(stream)

    n = len(stream)
    tag = list(Mechanism).index(mechanism)
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed & _MASK64, spawn_key=(tag, n)))
    if mechanism is Mechanism.LAPLACE:
        params = NoiseParams(epsilon, cfg.sensitivity, cfg.mean)
        noise = rng.laplace(params.mean, params.scale, size=n)
    elif mechanism is Mechanism.GAUSSIAN:
        noise = gaussian_noise(epsilon, cfg.delta, cfg.sensitivity, rng, size=n)
    else:
        noise = staircase_noise(epsilon, cfg.sensitivity, cfg.gamma, rng, size=n)

    out = np.asarray(stream, dtype=float) + noise
    if abs_fold:
        out = np.abs(out)
    return PerturbationResult(
        mechanism=mechanism,
        perturbed=out.tolist(),
        per_value={},
        noise_computation_count=n,
        epsilons=[float(epsilon)] * n,
        noise=noise.tolist(),
    )

"""JSON budget configuration files.

Schema (every key optional)::

    {
      "selector": "static" | "sine" | "fuzzy",
      "beta": 1.0,
      "seed": 0,
      "epsilon_min": 0.01,
      "boundary_weight": 20,
      "core_weight": 60,
      "level_table": {"1": [0.8, 1.0], "2": [0.6, 0.8], ...},
      "fuzzy_table": {"2": {"start": [0.57, 0.63], "end": [0.77, 0.83],
                            "core": [0.63, 0.77]}, ...}
    }

Levels missing from ``level_table`` fall back to the defaults. A missing
``fuzzy_table`` is derived from the (possibly overridden) level table.
"""

from __future__ import annotations

import json
from pathlib import Path

from .budget_selection import (BudgetConfig, FuzzyRange, default_fuzzy_table,
                               default_level_table)


def budget_config_from_dict(d: dict) -> tuple[BudgetConfig, int | None]:
    """Build a ``BudgetConfig``; also returns the ``seed`` entry if present."""
    eps_min = float(d.get("epsilon_min", 0.01))
    levels = default_level_table(eps_min)
    for k, (lo, hi) in d.get("level_table", {}).items():
        levels[int(k)] = (float(lo), float(hi))

    fuzzy = default_fuzzy_table(levels, eps_min)
    for k, row in d.get("fuzzy_table", {}).items():
        fuzzy[int(k)] = FuzzyRange(*row["start"], *row["end"], *row["core"])

    cfg = BudgetConfig(
        selector=d.get("selector", "static"),
        beta=float(d.get("beta", 1.0)),
        level_table=levels,
        fuzzy_table=fuzzy,
        boundary_weight=float(d.get("boundary_weight", 20.0)),
        core_weight=float(d.get("core_weight", 60.0)),
        epsilon_min=eps_min,
    )
    seed = d.get("seed")
    return cfg, None if seed is None else int(seed)


def load_budget_config(path) -> tuple[BudgetConfig, int | None]:
    return budget_config_from_dict(json.loads(Path(path).read_text()))

"""Offline stand-ins for the evaluation datasets.

The real datasets (flight distance, clickstreams, taxi fares, smart-home
energy) are not redistributed; these generators reproduce the shape that
matters here, a dominant mode plus a thinning tail of rarer values.
"""

from __future__ import annotations

import numpy as np

TABLE1_COUNTS = {180: 8, 124: 3, 167: 3, 204: 3, 332: 2, 650: 1}


def table1_stream(shuffle_seed: int | None = None) -> list[float]:
    """The 20-reading example stream (value 180 eight times, 650 once)."""
    stream = [float(v) for v, c in TABLE1_COUNTS.items() for _ in range(c)]
    if shuffle_seed is not None:
        np.random.default_rng(shuffle_seed).shuffle(stream)
    return stream


def heavy_mode_stream(n: int = 2500, seed: int = 0, mode: float = 180.0,
                      step: float = 1.0, tail_p: float = 0.35) -> list[float]:
    """Mode value plus a two-sided geometric tail of offsets ``k * step``.

    ``tail_p`` is the geometric success probability, so the mode holds about
    that share of the mass and each further offset is rarer.
    """
    rng = np.random.default_rng(seed)
    k = rng.geometric(tail_p, size=n) - 1
    sign = rng.choice(np.array([-1, 1]), size=n)
    return (mode + sign * k * step).astype(float).tolist()


def distinct_count_stream(n: int, distinct: int, seed: int = 0, base: float = 100.0) -> list[float]:
    """A stream of ``n`` readings with exactly ``distinct`` different values.

    Every value appears at least once; the remaining ``n - distinct`` slots
    are spread with a skew towards low-index values so frequencies vary.
    """
    if not 1 <= distinct <= n:
        raise ValueError("need 1 <= distinct <= n")
    rng = np.random.default_rng(seed)
    values = base + np.arange(distinct, dtype=float)
    extra = rng.zipf(1.5, size=n - distinct) - 1
    extra = np.minimum(extra, distinct - 1)
    stream = np.concatenate([values, values[extra]])
    rng.shuffle(stream)
    return stream.tolist()

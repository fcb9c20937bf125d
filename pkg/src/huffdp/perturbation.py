"""Laplace noise with a per-value cache, plus baseline noise mechanisms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class NoiseParams:
    epsilon: float
    sensitivity: float = 1.0
    mean: float = 0.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if not self.sensitivity > 0:
            raise ValueError("sensitivity must be > 0")

    @property
    def scale(self) -> float:
        return self.sensitivity / self.epsilon


@dataclass
class NoiseCache:
    """One noise sample per distinct value, drawn on first sight."""

    samples: dict[float, float] = field(default_factory=dict)

    @property
    def computation_count(self) -> int:
        return len(self.samples)

    def __contains__(self, value):
        return value in self.samples


def laplace_pdf(x, mean: float, scale: float):
    return np.exp(-np.abs(np.asarray(x) - mean) / scale) / (2.0 * scale)


def laplace_log_pdf(x, mean: float, scale: float):
    return -np.abs(np.asarray(x) - mean) / scale - math.log(2.0 * scale)


def laplace_sample(params: NoiseParams, rng: np.random.Generator, size=None):
    """One Laplace(mean, sensitivity / epsilon) draw, or an array when ``size`` is given."""
    if size is not None:
        return rng.laplace(params.mean, params.scale, size=size)
    return float(rng.laplace(params.mean, params.scale))


def perturb_value(v: float, params: NoiseParams, cache: NoiseCache,
                  rng: np.random.Generator, abs_fold: bool = True) -> float:
    noise = cache.samples.get(v)
    if noise is None:
        noise = laplace_sample(params, rng)
        cache.samples[v] = noise
    out = v + noise
    return abs(out) if abs_fold else out


def gaussian_sigma(epsilon: float, delta: float, sensitivity: float = 1.0) -> float:
    """Classic analytic Gaussian-mechanism scale, sqrt(2 ln(1.25/delta)) * sens / eps."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if not epsilon > 0 or not sensitivity > 0:
        raise ValueError("epsilon and sensitivity must be > 0")
    return sensitivity * math.sqrt(2.0 * math.log(1.25 / delta)) / epsilon


def gaussian_noise(epsilon: float, delta: float, sensitivity: float,
                   rng: np.random.Generator, size=None):
    return rng.normal(0.0, gaussian_sigma(epsilon, delta, sensitivity), size=size)


def gaussian_baseline(v: float, epsilon: float, delta: float = 1e-5,
                      sensitivity: float = 1.0, rng: np.random.Generator | None = None) -> float:
    rng = rng if rng is not None else np.random.default_rng()
    return v + float(gaussian_noise(epsilon, delta, sensitivity, rng))


def optimal_staircase_gamma(epsilon: float) -> float:
    """Stair split that minimises expected absolute noise."""
    return 1.0 / (1.0 + math.exp(epsilon / 2.0))


def staircase_noise(epsilon: float, sensitivity: float, gamma: float | None,
                    rng: np.random.Generator, size=None):
    """Draw from the staircase distribution.

    Stair ``k`` covers ``[k, k+1) * sensitivity`` with density proportional
    to ``exp(-k * eps)`` on its first ``gamma`` fraction and
    ``exp(-(k+1) * eps)`` on the rest.
    """
    if not epsilon > 0 or not sensitivity > 0:
        raise ValueError("epsilon and sensitivity must be > 0")
    if gamma is None:
        gamma = optimal_staircase_gamma(epsilon)
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    b = math.exp(-epsilon)
    shape = () if size is None else size
    sign = rng.choice(np.array([-1.0, 1.0]), size=shape)
    # numpy's geometric counts trials (>= 1); shift to failures before success
    stair = rng.geometric(1.0 - b, size=shape) - 1.0
    p_inner = gamma / (gamma + (1.0 - gamma) * b)
    outer = rng.random(size=shape) >= p_inner
    u = rng.random(size=shape)
    offset = np.where(outer, gamma + (1.0 - gamma) * u, gamma * u)
    noise = sign * (stair + offset) * sensitivity
    return float(noise) if size is None else noise


def staircase_baseline(v: float, epsilon: float, sensitivity: float = 1.0,
                       gamma: float | None = None, rng: np.random.Generator | None = None) -> float:
    rng = rng if rng is not None else np.random.default_rng()
    return v + staircase_noise(epsilon, sensitivity, gamma, rng)

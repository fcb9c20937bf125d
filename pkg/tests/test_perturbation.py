import math

import numpy as np
import pytest
from scipy import stats

from huffdp.perturbation import (NoiseCache, NoiseParams, gaussian_baseline, gaussian_noise,
                                 gaussian_sigma, laplace_log_pdf, laplace_pdf, laplace_sample,
                                 optimal_staircase_gamma, perturb_value, staircase_baseline,
                                 staircase_noise)
from oracles import staircase_abs_mean


class Fixed:
    """Stand-in random stream returning a chosen Laplace sample."""

    def __init__(self, value):
        self.value = value
        self.calls = 0

    def laplace(self, loc, scale):
        self.calls += 1
        return self.value


def test_noise_params():
    p = NoiseParams(epsilon=0.5, sensitivity=2.0)
    assert p.scale == 4.0
    with pytest.raises(ValueError):
        NoiseParams(epsilon=0)
    with pytest.raises(ValueError):
        NoiseParams(epsilon=1, sensitivity=-1)


def test_laplace_sample_moments():
    r = np.random.default_rng(1)
    p = NoiseParams(epsilon=1.0, sensitivity=1.0)
    x = np.array([laplace_sample(p, r) for _ in range(200_000)])
    assert 1.9 <= x.var() <= 2.1
    assert abs(np.median(x)) <= 0.01 * p.scale * 3


def test_doubling_epsilon_halves_magnitude():
    r = np.random.default_rng(2)
    n = 100_000
    a = np.abs(r.laplace(0, NoiseParams(2.0).scale, size=n))
    b = np.abs(r.laplace(0, NoiseParams(1.0).scale, size=n)) / 2
    assert stats.mannwhitneyu(a, b).pvalue > 0.05


def test_perturb_value_caches():
    cache = NoiseCache()
    r = Fixed(3.5)
    p = NoiseParams(1.0)
    out = [perturb_value(180.0, p, cache, r) for _ in range(8)]
    assert out == [183.5] * 8
    assert r.calls == 1
    assert cache.computation_count == 1


def test_perturb_value_zero_noise():
    assert perturb_value(180.0, NoiseParams(1.0), NoiseCache(), Fixed(0.0)) == 180.0


def test_perturb_value_abs_fold():
    assert perturb_value(5.0, NoiseParams(1.0), NoiseCache(), Fixed(-12.0)) == 7.0
    assert perturb_value(5.0, NoiseParams(1.0), NoiseCache(), Fixed(-12.0), abs_fold=False) == -7.0


def test_cache_count_matches_distinct_values():
    cache = NoiseCache()
    r = np.random.default_rng(0)
    stream = [1.0, 2.0, 1.0, 3.0, 2.0, 1.0]
    out = [perturb_value(v, NoiseParams(1.0), cache, r) for v in stream]
    assert cache.computation_count == 3
    assert out[0] == out[2] == out[5]
    assert all(o >= 0 for o in out)


def test_laplace_density_integrates_to_one():
    from scipy.integrate import quad
    total, _ = quad(lambda x: float(laplace_pdf(x, 0.3, 1.7)), -np.inf, np.inf)
    assert total == pytest.approx(1.0, abs=1e-9)
    assert float(laplace_log_pdf(0.3, 0.3, 1.7)) == pytest.approx(math.log(laplace_pdf(0.3, 0.3, 1.7)))


def test_dp_ratio_bound():
    r = np.random.default_rng(5)
    grid = np.linspace(-50, 50, 10_000)
    for _ in range(100):
        eps = r.uniform(0.01, 5.0)
        sens = r.uniform(0.1, 10.0)
        f_d = r.uniform(-10, 10)
        f_d2 = f_d + r.uniform(-sens, sens)
        b = sens / eps
        log_ratio = laplace_log_pdf(grid, f_d, b) - laplace_log_pdf(grid, f_d2, b)
        assert np.all(np.exp(log_ratio) <= math.exp(eps) * (1 + 1e-12))


def test_gaussian_sigma():
    # independent evaluation of sqrt(2 ln(1.25 / delta)) / eps
    expected = math.sqrt(2 * (math.log(1.25) + 5 * math.log(10)))
    assert gaussian_sigma(1.0, 1e-5) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(4.8448, abs=1e-4)
    x = gaussian_noise(1.0, 1e-5, 1.0, np.random.default_rng(3), size=1_000_000)
    assert x.std() == pytest.approx(expected, rel=0.01)


def test_gaussian_baseline_unbiased():
    r = np.random.default_rng(4)
    out = np.array([gaussian_baseline(10.0, 1.0, 1e-5, 1.0, r) for _ in range(20_000)])
    assert abs(out.mean() - 10.0) < 4 * 4.85 / math.sqrt(20_000)


@pytest.mark.parametrize("delta", [0.0, 1.0, 1.25])
def test_gaussian_rejects_delta(delta):
    with pytest.raises(ValueError):
        gaussian_baseline(0.0, 1.0, delta, 1.0, np.random.default_rng())


def test_staircase_large_epsilon_concentrates():
    x = staircase_noise(10.0, 1.0, None, np.random.default_rng(6), size=100_000)
    assert np.mean(np.abs(x) < 1.0) >= 0.99


def test_staircase_symmetric():
    x = staircase_noise(1.0, 1.0, None, np.random.default_rng(7), size=1_000_000)
    assert abs(x.mean()) <= 0.01


def test_staircase_beats_laplace_in_l1():
    eps = 1.0
    gamma = optimal_staircase_gamma(eps)
    assert gamma == pytest.approx(1 / (1 + math.exp(0.5)))
    analytic = staircase_abs_mean(eps, gamma)
    assert analytic < 1.0
    r = np.random.default_rng(8)
    stair = np.abs(staircase_noise(eps, 1.0, gamma, r, size=1_000_000)).mean()
    lap = np.abs(r.laplace(0, 1.0, size=1_000_000)).mean()
    assert stair == pytest.approx(analytic, rel=0.01)
    assert stair < lap


def test_staircase_matches_density_by_stair():
    # stair masses P(k <= |X| < k+1) = (1 - b) b^k
    eps = 0.7
    b = math.exp(-eps)
    x = np.abs(staircase_noise(eps, 1.0, 0.3, np.random.default_rng(9), size=400_000))
    for k in range(4):
        mass = np.mean((x >= k) & (x < k + 1))
        assert mass == pytest.approx((1 - b) * b ** k, abs=0.005)


@pytest.mark.parametrize("gamma", [0.0, 1.0, -0.2, 1.5])
def test_staircase_rejects_gamma(gamma):
    with pytest.raises(ValueError):
        staircase_baseline(0.0, 1.0, 1.0, gamma, np.random.default_rng())


def test_staircase_scalar():
    assert isinstance(staircase_baseline(3.0, 1.0, rng=np.random.default_rng(1)), float)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_dataset
from labelpcor import (DataError, build_dataset, empirical_cdf_values, gini_mean_diff_sorted,
                       pcor_univariate, pcor_univariate_bruteforce, pcor_univariate_continuous)
from labelpcor.fast1d import UnivariateScorer, class_gap_sums


@pytest.mark.parametrize("x,q,qb", [
    ([3, 1, 2], [1, 1 / 3, 2 / 3], [1 / 3, 1, 2 / 3]),
    ([5, 5], [1, 1], [1, 1]),
    ([7], [1], [1]),
])
def test_empirical_cdf_values(x, q, qb):
    got_q, got_qb = empirical_cdf_values(x)
    assert got_q.tolist() == pytest.approx(q, abs=1e-15)
    assert got_qb.tolist() == pytest.approx(qb, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=40))
def test_cdf_counts_and_tie_identity(values):
    x = np.asarray(values, dtype=float)
    n = len(x)
    q, qb = empirical_cdf_values(x)
    assert np.allclose(q * n, (x[None, :] <= x[:, None]).sum(axis=1), rtol=0, atol=1e-12)
    assert np.allclose(qb * n, (x[None, :] >= x[:, None]).sum(axis=1), rtol=0, atol=1e-12)
    ties = (x[None, :] == x[:, None]).sum(axis=1)
    assert np.allclose(q + qb, 1 + ties / n, atol=1e-15)


def _double_loop(v, scale):
    # scale * sum_{i<j} |v_i - v_j|  ==  scale * sum_i (2i - m - 1) v_(i)
    v = np.asarray(v, dtype=float)
    return scale * np.abs(v[:, None] - v[None, :]).sum() / 2


@pytest.mark.parametrize("v,scale,expected", [
    ([1 / 3, 2 / 3, 1.0], 2 / 9, 8 / 27),
    ([0.25] * 6, 1.0, 0.0),
    ([0.0, 1.0], 0.5, 0.5),
])
def test_gini_mean_diff_examples(v, scale, expected):
    assert gini_mean_diff_sorted(v, scale) == pytest.approx(expected, abs=1e-15)
    assert _double_loop(v, scale) == pytest.approx(expected, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=50))
def test_gini_mean_diff_matches_coefficient_form(values):
    v = np.sort(np.asarray(values))
    m = len(v)
    coeff = 2 * np.arange(1, m + 1) - m - 1
    direct = float(np.sum(coeff * v))
    assert gini_mean_diff_sorted(v, 1.0) == pytest.approx(direct, rel=1e-9, abs=1e-7)
    assert gini_mean_diff_sorted(v, 1.0) == pytest.approx(_double_loop(v, 1.0), rel=1e-9, abs=1e-7)


def test_gini_mean_diff_rejects_unsorted():
    with pytest.raises(AssertionError):
        gini_mean_diff_sorted([1.0, 0.0], 1.0)


def test_one_class_zero(rng):
    d = build_dataset(rng.normal(size=30), np.zeros(30))
    c = pcor_univariate(d)
    assert c.pcor_hat == 0.0 and c.t2_hat == c.t1_hat
    assert pcor_univariate_bruteforce(d) == 0.0


def test_class_constant_one():
    d = build_dataset([0, 1, 0, 0, 1, 1, 1], list("abaabbb"))
    c = pcor_univariate(d)
    assert c.pcor_hat == 1.0 and c.t2_hat == 0.0 and c.t2bar_hat == 0.0


def test_bruteforce_two_points():
    assert pcor_univariate_bruteforce(build_dataset([0.0, 1.0], ["a", "b"])) == 1.0


def test_constant_x_is_degenerate():
    d = build_dataset(np.full(8, 2.5), [0, 1] * 4)
    assert pcor_univariate(d).pcor_hat == 0.0
    assert pcor_univariate_bruteforce(d) == 0.0


@pytest.mark.parametrize("seed", range(40))
def test_fast_equals_bruteforce(seed):
    rng = np.random.default_rng(seed)
    d = random_dataset(rng, int(rng.integers(4, 61)), 1, int(rng.integers(2, 5)), ties=seed % 2 == 1)
    assert pcor_univariate(d).pcor_hat == pytest.approx(pcor_univariate_bruteforce(d), abs=1e-10)


@pytest.mark.parametrize("n", [3, 10, 57, 200])
def test_tie_free_denominator(n, rng):
    c = pcor_univariate(build_dataset(rng.normal(size=n), rng.integers(0, 3, n)))
    expected = (n * n - 1) / (3 * n * n)
    assert c.t1_hat == pytest.approx(expected, abs=1e-15)
    assert c.t1bar_hat == pytest.approx(expected, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=40), st.integers(0, 2**32 - 1))
def test_strictly_increasing_transform_is_exact(values, seed):
    x = np.asarray(values, dtype=float)
    y = np.random.default_rng(seed).integers(0, 3, len(x))
    a = pcor_univariate(build_dataset(x, y)).pcor_hat
    for f in (np.exp, lambda t: t ** 3 + 7, lambda t: 2 * t - 100):
        assert pcor_univariate(build_dataset(f(x), y)).pcor_hat == a


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=30), st.integers(0, 2**32 - 1))
def test_range(values, seed):
    y = np.random.default_rng(seed).integers(0, 3, len(values))
    c = pcor_univariate(build_dataset(values, y))
    if c.t1_hat + c.t1bar_hat > 1e-12:
        assert -1e-9 <= c.pcor_hat <= 1 + 1e-9


def test_relabelling_average_shrinks_with_n():
    rng = np.random.default_rng(5)
    means = []
    for n in (20, 80, 320):
        x = rng.normal(size=n)
        y = rng.integers(0, 2, n)
        means.append(np.mean([pcor_univariate(build_dataset(x, rng.permutation(y))).pcor_hat
                              for _ in range(200)]))
    assert means[0] > means[1] > means[2] and means[2] < 0.01


def test_continuous_refuses_ties():
    d = build_dataset([1.0, 2.0, 2.0, 3.0], [0, 1, 0, 1])
    with pytest.raises(DataError, match="ties"):
        pcor_univariate_continuous(d)
    assert np.isfinite(pcor_univariate_continuous(d, allow_ties=True))


@pytest.mark.parametrize("n", [5, 40, 333])
def test_continuous_one_class_closed_form(n, rng):
    d = build_dataset(rng.normal(size=n), np.zeros(n))
    expected = 4 * (1 - (n + 1) * (2 * n + 1) / (2 * n * n))
    assert pcor_univariate_continuous(d) == pytest.approx(expected, abs=1e-12)


def _shortcut_gap(d):
    # exact fast-minus-shortcut difference for tie-free data, from rank algebra
    n = d.n
    ranks = np.empty(n)
    ranks[np.argsort(d.x[:, 0])] = np.arange(1, n + 1)
    a = 0.0
    mean_ranks = 0.0
    for k in range(d.k):
        rk = ranks[d.codes == k]
        within = np.empty(len(rk))
        within[np.argsort(rk)] = np.arange(1, len(rk) + 1)
        a += np.sum(rk * within) / len(rk)
        mean_ranks += rk.mean()
    return 3 / (n - 1) - 12 * a / (n * n * (n * n - 1)) + 6 * mean_ranks / (n * n - 1)


@pytest.mark.parametrize("n", [50, 100, 200])
def test_continuous_shortcut_tracks_fast_path(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        k = int(rng.integers(2, 5))
        y = rng.integers(0, k, n)
        y[:k] = np.arange(k)
        x = rng.normal(size=n) + 0.7 * y
        d = build_dataset(x, y)
        diff = pcor_univariate(d).pcor_hat - pcor_univariate_continuous(d)
        assert diff == pytest.approx(_shortcut_gap(d), abs=1e-12)


@pytest.mark.parametrize("n", [50, 100, 200])
def test_continuous_shortcut_within_10_over_n_for_two_balanced_classes(n):
    rng = np.random.default_rng(n + 1)
    for _ in range(100):
        y = rng.permutation(np.arange(n) % 2)
        d = build_dataset(rng.normal(size=n) + y, y)
        assert abs(pcor_univariate(d).pcor_hat - pcor_univariate_continuous(d)) <= 10 / n


@pytest.mark.parametrize("k", [2, 3, 5])
def test_contiguous_blocks(k):
    # K balanced classes filling consecutive rank blocks: within-class Q is
    # uniform on width 1/K, so the within mean difference is 1/K of the total
    n = 3000
    x = np.random.default_rng(k).normal(size=n)
    y = np.empty(n, dtype=int)
    y[np.argsort(x)] = np.arange(n) * k // n
    d = build_dataset(x, y)
    assert pcor_univariate(d).pcor_hat == pytest.approx(1 - 1 / k, abs=1e-3)
    assert pcor_univariate_continuous(d) == pytest.approx(1 - 1 / k, abs=10 * k / n)


@pytest.mark.parametrize("ties", [False, True])
def test_batch_scorer_matches_single(ties, backend, rng):
    n = 45
    x = rng.integers(0, 6, n).astype(float) if ties else rng.normal(size=n)
    codes = rng.integers(0, 4, size=(30, n))
    codes[0] = 0
    codes[1] = 2  # single class, classes 0, 1 and 3 empty
    sc = UnivariateScorer(x, backend=backend)
    got = sc.score_many(codes)
    for row, g in zip(codes, got):
        assert g == pytest.approx(pcor_univariate(build_dataset(x, row)).pcor_hat, abs=1e-12)
    assert got[0] == 0.0 and got[1] == 0.0


def test_batch_scorer_exact_endpoints(backend):
    x = np.array([0.0, 0.0, 1.0, 1.0, 1.0, 3.0])
    sc = UnivariateScorer(x, backend=backend)
    assert sc.score([0, 0, 1, 1, 1, 2]) == 1.0
    assert sc.score([4] * 6) == 0.0


def test_gap_sum_backends_agree(rng):
    v = np.sort(rng.random(80))
    codes = rng.integers(0, 3, size=(50, 80))
    a, ca = class_gap_sums(v, codes, 3, backend="numba")
    b, cb = class_gap_sums(v, codes, 3, backend="numpy")
    assert np.array_equal(ca, cb)
    assert np.allclose(a, b, rtol=0, atol=1e-10)

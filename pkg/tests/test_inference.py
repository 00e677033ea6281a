import numpy as np
import pytest

from labelpcor import build_dataset, mc_normality_check, permutation_test
from labelpcor.inference import shifted_normal_classes


def test_single_class_pvalue_one(rng):
    d = build_dataset(rng.normal(size=30), [0] * 30)
    r = permutation_test(d, b=99, seed=3)
    assert r.statistic == 0.0 and r.pvalue == 1.0


def test_class_constant_rejects():
    x = np.repeat([0.0, 1.0], 20)
    r = permutation_test(build_dataset(x, np.repeat([0, 1], 20)), b=199, seed=5)
    assert r.statistic == 1.0
    assert r.pvalue <= 0.01


def test_multivariate_dependence_detected(rng):
    y = rng.integers(0, 2, 40)
    x = rng.normal(size=(40, 2)) + 1.5 * y[:, None]
    assert permutation_test(build_dataset(x, y), b=199, seed=1).pvalue <= 0.01


def test_too_few_permutations(rng):
    with pytest.raises(ValueError):
        permutation_test(build_dataset(rng.normal(size=10), [0, 1] * 5), b=50)


@pytest.mark.parametrize("method", ["pcor", "gcor", "pearson"])
def test_reproducible(method, rng):
    d = build_dataset(rng.normal(size=25), rng.integers(0, 3, 25))
    a = permutation_test(d, method, b=99, seed=11)
    b = permutation_test(d, method, b=99, seed=11)
    assert a == b


def test_pvalue_lattice(rng):
    d = build_dataset(rng.normal(size=20), rng.integers(0, 2, 20))
    r = permutation_test(d, b=99, seed=2, chunk=7)
    assert r.pvalue * 100 == pytest.approx(round(r.pvalue * 100))
    assert r == permutation_test(d, b=99, seed=2, chunk=512)


def test_mc_refuses_class_constant():
    def gen(n, rng):
        y = rng.integers(0, 2, n)
        return build_dataset(y.astype(float), y)
    with pytest.raises(ValueError, match="class-constant"):
        mc_normality_check(gen, 30, 200, 0)


def test_mc_replicate_floor():
    with pytest.raises(ValueError):
        mc_normality_check(shifted_normal_classes(), 30, 100, 0)


def test_mc_reference_size_floor():
    with pytest.raises(ValueError):
        mc_normality_check(shifted_normal_classes(), 30, 200, 0, n_ref=100)


def test_mc_small_runs():
    dep = mc_normality_check(shifted_normal_classes(), 40, 200, 0)
    assert dep.standardized_samples.shape == (200,)
    assert 0 < dep.reference < 1
    assert abs(dep.standardized_samples.mean()) < 1.0
    ind = mc_normality_check(shifted_normal_classes(0.0), 40, 200, 0, scenario="independent_null")
    assert ind.reference == 0.0
    assert (ind.standardized_samples >= 0).all()
    assert ind.skewness() > dep.skewness()

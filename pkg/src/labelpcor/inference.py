"""Permutation independence test and Monte Carlo checks of the limit laws."""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .core import build_dataset
from .measures import check_method, correlation, scorer
from .rng import make_rng, spawn

SCENARIOS = ("dependent_normal", "independent_null")
MIN_REPLICATES = 200


@dataclass(frozen=True)
class PermTestResult:
    statistic: float
    pvalue: float
    b: int
    seed: int
    method: str = "pcor"


@dataclass(frozen=True)
class AsymptoticsCheck:
    scenario: str
    replicates: int
    standardized_samples: np.ndarray
    reference: float

    def qq_correlation(self):
        """Correlation of the normal probability plot."""
        _, (_, _, r) = stats.probplot(self.standardized_samples, dist="norm")
        return float(r)

    def skewness(self):
        return float(stats.skew(self.standardized_samples))


def permutation_test(d, method="pcor", b=999, seed=0, *, chunk=512, **scorer_kw):
    """Label-permutation p-value ``(1 + #{T_perm >= T_obs}) / (B + 1)``.

    Labels are shuffled without replacement, so class counts are preserved.
    """
    check_method(method)
    if b < 99:
        raise ValueError(f"need at least 99 permutations, got {b}")
    sc = scorer(method, d.x, **scorer_kw)
    observed = sc.score(d.codes)
    exceed = 0
    gens = spawn(seed, b)
    for start in range(0, b, chunk):
        perms = np.stack([g.permutation(d.codes) for g in gens[start:start + chunk]])
        exceed += int(np.count_nonzero(sc.score_many(perms) >= observed))
    return PermTestResult(float(observed), (1 + exceed) / (b + 1), b, seed, method)


def _is_class_constant(d):
    for k in range(d.k):
        rows = d.x[d.codes == k]
        if not (rows == rows[0]).all():
            return False
    return d.k > 1


def mc_normality_check(generator, n, replicates, seed, *, scenario="dependent_normal",
                       method="pcor", reference=None, n_ref=None, ref_replicates=5):
    """Replicated centred-and-scaled estimates for a limit-law diagnostic.

    ``generator(n, rng)`` returns a Dataset.  Under ``dependent_normal`` the
    samples are ``sqrt(n) (est - ref)`` with ``ref`` averaged from runs at
    ``n_ref >= 20 n`` unless given; under ``independent_null`` they are
    ``n * est`` (the population value is 0).
    """
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}")
    if replicates < MIN_REPLICATES:
        raise ValueError(f"need at least {MIN_REPLICATES} replicates, got {replicates}")
    check_method(method)
    probe = generator(n, make_rng(np.random.SeedSequence([seed, 1])))
    if _is_class_constant(probe):
        raise ValueError("class-constant generator: the estimate is identically 1, "
                         "no limit law to check")
    if scenario == "independent_null":
        reference, scale = 0.0, float(n)
    else:
        scale = np.sqrt(n)
        if reference is None:
            n_ref = 20 * n if n_ref is None else n_ref
            if n_ref < 20 * n:
                raise ValueError("reference sample size must be at least 20 n")
            refs = [correlation(generator(n_ref, g), method)
                    for g in spawn(np.random.SeedSequence([seed, 2]), ref_replicates)]
            reference = float(np.mean(refs))
    gens = spawn(np.random.SeedSequence([seed, 3]), replicates)
    est = np.array([correlation(generator(n, g), method) for g in gens])
    return AsymptoticsCheck(scenario, replicates, scale * (est - reference), float(reference))


def shifted_normal_classes(shift=1.0):
    """Generator: fair-coin labels, ``X ~ N(shift * label, 1)`` in 1-d."""
    def gen(n, rng):
        y = rng.integers(0, 2, n)
        x = rng.standard_normal(n) + shift * y
        return build_dataset(x, y)
    return gen

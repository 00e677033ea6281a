"""Method registry: one name per correlation, routed to the right estimator."""

import numpy as np

from .baselines import (GiniKernelScorer, GiniScorer, PearsonScorer,
                        gini_cor, gini_kernel_cor, pearson_cat_cor)
from .core import Dataset
from .fast1d import UnivariateScorer, pcor_univariate, pcor_univariate_bruteforce
from .pcor import PairTable, pcor_multivariate

METHODS = ("pcor", "gcor", "gkcor", "pearson")


def check_method(method):
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    return method


def expand_methods(names):
    """``"all"`` or a comma list -> tuple of validated names."""
    if isinstance(names, str):
        names = [m.strip() for m in names.split(",") if m.strip()]
    out = []
    for m in names:
        out.extend(METHODS if m == "all" else [check_method(m)])
    return tuple(dict.fromkeys(out))


class _RowLoop:
    """Adapts a single-labelling scorer to the ``score_many`` interface."""

    def __init__(self, score_one):
        self._score_one = score_one

    def score(self, codes):
        return float(self._score_one(np.asarray(codes)))

    def score_many(self, codes):
        codes = np.atleast_2d(codes)
        return np.array([self._score_one(row) for row in codes])


def scorer(method, x, *, force_bruteforce=False, backend=None, sigma2=1.0):
    """Label-free preparation of ``method`` on numeric data ``x``.

    The result scores dense label codes via ``score(codes)`` or a stack of
    labellings via ``score_many(codes_2d)``.
    """
    check_method(method)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if method == "gcor":
        return GiniScorer(x)
    if method == "gkcor":
        return GiniKernelScorer(x, sigma2)
    if method == "pearson":
        return PearsonScorer(x)
    if x.shape[1] == 1 and not force_bruteforce:
        return UnivariateScorer(x[:, 0], backend=backend)
    if x.shape[1] == 1:
        def brute(codes):
            codes = np.asarray(codes, dtype=np.intp)
            k = int(codes.max()) + 1
            return pcor_univariate_bruteforce(Dataset(x, codes, tuple(range(k))))
        return _RowLoop(brute)
    table = PairTable(x, backend=backend)
    return _RowLoop(table.score)


def correlation(d, method, *, force_bruteforce=False, backend=None, sigma2=1.0):
    """Single correlation value of ``method`` on dataset ``d``."""
    check_method(method)
    if method == "gcor":
        return gini_cor(d)
    if method == "gkcor":
        return gini_kernel_cor(d, sigma2)
    if method == "pearson":
        return pearson_cat_cor(d)
    if d.p == 1:
        if force_bruteforce:
            return pcor_univariate_bruteforce(d)
        return pcor_univariate(d).pcor_hat
    return pcor_multivariate(d, backend=backend).pcor_hat

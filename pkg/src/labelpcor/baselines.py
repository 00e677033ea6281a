"""Comparison correlations: Gini distance, RKHS Gini distance, Pearson.

All three are plug-in V-statistics (ordered pairs, diagonal included).
Each has a scorer class that does the label-free work once so that many
labellings of the same ``x`` can be scored cheaply.
"""

import numpy as np
from scipy.spatial.distance import pdist, squareform

DEGENERATE_TOL = 1e-12


def _indicator(codes, k):
    return (codes == k).astype(np.float64)


class PairDistanceScorer:
    """Ratio ``(E d - sum_k p_k E_k d) / E d`` for a fixed distance matrix."""

    def __init__(self, dist):
        self.dist = np.ascontiguousarray(dist, dtype=np.float64)
        self.n = self.dist.shape[0]
        self.full = float(self.dist.sum())

    def score_many(self, codes):
        codes = np.atleast_2d(np.asarray(codes))
        n = self.n
        n_classes = int(codes.max()) + 1
        within = np.zeros(len(codes))
        present = np.zeros(len(codes), dtype=np.int64)
        for k in range(n_classes):
            m = _indicator(codes, k)
            nk = m.sum(axis=1)
            s = np.einsum("rn,rn->r", m @ self.dist, m)
            with np.errstate(divide="ignore", invalid="ignore"):
                within += np.where(nk > 0, s / (n * nk), 0.0)
            present += nk > 0
        den = self.full / (n * n)
        if den <= DEGENERATE_TOL:
            return np.zeros(len(codes))
        out = (den - within) / den
        out[present == 1] = 0.0
        return out

    def score(self, codes):
        return float(self.score_many(codes)[0])


def euclidean_distances(x):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    return squareform(pdist(x))


def kernel_distances(x, sigma2=1.0):
    """``sqrt(k(x,x) + k(y,y) - 2 k(x,y))`` for ``k = exp(-|x-y|^2/sigma2)/2``."""
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    sq = squareform(pdist(x, "sqeuclidean"))
    return np.sqrt(-np.expm1(-sq / sigma2))


class GiniScorer(PairDistanceScorer):
    def __init__(self, x):
        super().__init__(euclidean_distances(x))


class GiniKernelScorer(PairDistanceScorer):
    def __init__(self, x, sigma2=1.0):
        super().__init__(kernel_distances(x, sigma2))


class PearsonScorer:
    """Between-class share of the total (divisor-n) variance, summed over dims."""

    def __init__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 1:
            x = x[:, None]
        # centring first keeps the mean-square difference free of cancellation
        self.x = x - x.mean(axis=0)
        self.n = x.shape[0]
        self.mean = self.x.mean(axis=0)
        self.total_var = float(self.x.var(axis=0).sum())

    def score_many(self, codes):
        codes = np.atleast_2d(np.asarray(codes))
        n = self.n
        n_classes = int(codes.max()) + 1
        between = np.zeros(len(codes))
        present = np.zeros(len(codes), dtype=np.int64)
        for k in range(n_classes):
            m = _indicator(codes, k)
            nk = m.sum(axis=1)
            sums = m @ self.x
            with np.errstate(divide="ignore", invalid="ignore"):
                mu = np.where(nk[:, None] > 0, sums / nk[:, None], 0.0)
            between += (nk / n) * (mu * mu).sum(axis=1)
            present += nk > 0
        if self.total_var <= DEGENERATE_TOL:
            return np.zeros(len(codes))
        out = (between - float((self.mean ** 2).sum())) / self.total_var
        out[present == 1] = 0.0
        return out

    def score(self, codes):
        return float(self.score_many(codes)[0])


def gini_cor(d):
    return GiniScorer(d.x).score(d.codes)


def gini_kernel_cor(d, sigma2=1.0):
    return GiniKernelScorer(d.x, sigma2).score(d.codes)


def pearson_cat_cor(d):
    return PearsonScorer(d.x).score(d.codes)

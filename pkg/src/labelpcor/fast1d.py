"""Univariate label projection correlation in O(n log n).

In one dimension the projection directions reduce to +1 and -1, and the
statistic becomes a ratio of Gini mean differences of the empirical CDF
values ``Q`` (direction +1) and their reflection ``Q_bar`` (direction -1),
taken over the whole sample and within each class.
"""

from dataclasses import dataclass

import numpy as np

from ._accel import njit, prange, resolve_backend
from .core import DataError

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class Fast1dComponents:
    q: np.ndarray
    q_bar: np.ndarray
    t1_hat: float
    t2_hat: float
    t1bar_hat: float
    t2bar_hat: float
    pcor_hat: float


def _as_vector(d):
    if d.p != 1:
        raise DataError(f"univariate estimator needs p = 1, got p = {d.p}")
    return d.x[:, 0]


def empirical_cdf_values(x):
    """``q[i] = #{x_j <= x_i}/n`` and ``q_bar[i] = #{x_j >= x_i}/n``."""
    x = np.asarray(x, dtype=float).ravel()
    n = len(x)
    s = np.sort(x, kind="stable")
    q = np.searchsorted(s, x, side="right") / n
    q_bar = (n - np.searchsorted(s, x, side="left")) / n
    return q, q_bar


def _gap_weighted_sum(v):
    # sum_{i<j} (v_j - v_i) for ascending v, via consecutive gaps; exact 0 on constants
    m = len(v)
    if m < 2:
        return 0.0
    g = np.arange(1, m, dtype=np.float64)
    return float(np.sum(np.diff(v) * (g * (m - g))))


def gini_mean_diff_sorted(v, scale):
    """``scale * sum_i (2i - m - 1) v_(i)`` for ascending ``v``.

    With ``scale = 2/m**2`` this is the plug-in mean absolute difference.
    The sum is evaluated through consecutive gaps, which is the same number
    but exactly zero for constant input.
    """
    v = np.asarray(v, dtype=float)
    assert v.ndim == 1 and np.all(v[1:] >= v[:-1]), "input must be sorted ascending"
    return scale * _gap_weighted_sum(v)


def _t_terms(q, codes, n_classes):
    n = len(q)
    t1 = gini_mean_diff_sorted(np.sort(q), 2.0 / (n * n))
    t2 = 0.0
    for k in range(n_classes):
        qk = q[codes == k]
        if len(qk):
            t2 += gini_mean_diff_sorted(np.sort(qk), 2.0 / (n * len(qk)))
    return t1, t2


def _ratio(t1, t2, t1b, t2b):
    den = t1 + t1b
    if den <= DEGENERATE_TOL:
        return 0.0
    return float((den - (t2 + t2b)) / den)


def pcor_univariate(d):
    x = _as_vector(d)
    q, q_bar = empirical_cdf_values(x)
    t1, t2 = _t_terms(q, d.codes, d.k)
    t1b, t2b = _t_terms(q_bar, d.codes, d.k)
    return Fast1dComponents(q, q_bar, t1, t2, t1b, t2b, _ratio(t1, t2, t1b, t2b))


def pcor_univariate_bruteforce(d):
    """Direct O(n^3) triple sum; reference for :func:`pcor_univariate`."""
    x = _as_vector(d)
    n = d.n
    le = (x[None, :] <= x[:, None]).astype(np.int8)  # le[i, l] = I(x_l <= x_i)
    ge = (x[None, :] >= x[:, None]).astype(np.int8)
    c = np.abs(le[:, None, :] - le[None, :, :]).sum(axis=2)
    dd = np.abs(ge[:, None, :] - ge[None, :, :]).sum(axis=2)
    p_hat = np.bincount(d.codes, minlength=d.k) / n
    same = d.codes[:, None] == d.codes[None, :]
    w = 1.0 - np.where(same, 1.0 / p_hat[d.codes][:, None], 0.0)
    total = float((c + dd).sum())
    if total <= 0:
        return 0.0
    return float(((c + dd) * w).sum() / total)


def pcor_univariate_continuous(d, allow_ties=False):
    """Rank shortcut ``4 (1 - 3 sum_k p_k E[Q F_k(X)])`` for tie-free data.

    ``F_k`` is the within-class empirical CDF.  Ties are refused unless
    ``allow_ties``, in which case they are broken by sample order.
    """
    x = _as_vector(d)
    n = d.n
    if not allow_ties and len(np.unique(x)) < n:
        raise DataError("ties present; the rank shortcut assumes continuous data")
    order = np.argsort(x, kind="stable")
    q = np.empty(n)
    q[order] = np.arange(1, n + 1) / n
    acc = 0.0
    for k in range(d.k):
        idx = np.flatnonzero(d.codes == k)
        nk = len(idx)
        fk = np.empty(nk)
        fk[np.argsort(x[idx], kind="stable")] = np.arange(1, nk + 1) / nk
        acc += np.sum(q[idx] * fk) / n
    return float(4.0 * (1.0 - 3.0 * acc))


# batched within-class gap sums: one numeric target, many labellings


@njit(parallel=True, cache=True)
def _class_gap_sums_numba(v, codes, n_classes):
    m, n = codes.shape
    out = np.zeros((m, n_classes))
    counts = np.zeros((m, n_classes), dtype=np.int64)
    for r in prange(m):
        seen = np.zeros(n_classes, dtype=np.int64)
        last = np.zeros(n_classes)
        for t in range(n):
            counts[r, codes[r, t]] += 1
        for t in range(n):
            k = codes[r, t]
            g = seen[k]
            if g > 0:
                out[r, k] += (v[t] - last[k]) * float(g * (counts[r, k] - g))
            last[k] = v[t]
            seen[k] = g + 1
    return out, counts


def _class_gap_sums_numpy(v, codes, n_classes):
    m, n = codes.shape
    out = np.zeros((m, n_classes))
    counts = np.zeros((m, n_classes), dtype=np.int64)
    pos = np.arange(n)
    for k in range(n_classes):
        member = codes == k
        nk = member.sum(axis=1)
        counts[:, k] = nk
        before = np.cumsum(member, axis=1) - member  # earlier members of class k
        last = np.maximum.accumulate(np.where(member, pos, -1), axis=1)
        prev = np.concatenate((np.full((m, 1), -1), last[:, :-1]), axis=1)
        live = member & (before > 0)
        gap = np.where(live, v[pos] - v[np.maximum(prev, 0)], 0.0)
        weight = (before * (nk[:, None] - before)).astype(np.float64)
        out[:, k] = (gap * weight).sum(axis=1)
    return out, counts


def class_gap_sums(v, codes, n_classes, backend=None):
    """Per labelling ``r`` and class ``k``: ``sum_{i<j in k} (v_j - v_i)``.

    ``v`` is ascending and ``codes[r]`` gives each position's class under
    labelling ``r``.  Also returns the class counts.
    """
    v = np.ascontiguousarray(v, dtype=np.float64)
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    if resolve_backend(backend) == "numba":
        return _class_gap_sums_numba(v, codes, n_classes)
    return _class_gap_sums_numpy(v, codes, n_classes)


class UnivariateScorer:
    """Score many labellings against one numeric vector.

    The CDF values and sort order are shared, so each extra labelling costs
    O(n) instead of a fresh sort.
    """

    def __init__(self, x, backend=None):
        x = np.asarray(x, dtype=float).ravel()
        self.n = len(x)
        self.backend = backend
        q, q_bar = empirical_cdf_values(x)
        self.order = np.argsort(x, kind="stable")
        self.q_sorted = q[self.order]
        self.qbar_sorted = q_bar[self.order[::-1]]
        n = self.n
        t1 = self._raw(np.zeros((1, n), dtype=np.int64), 1)
        self.t1 = 2.0 / (n * n) * t1[0][0, 0]
        self.t1b = 2.0 / (n * n) * t1[1][0, 0]

    def _raw(self, codes_sorted, n_classes):
        gq, counts = class_gap_sums(self.q_sorted, codes_sorted, n_classes, self.backend)
        gb, _ = class_gap_sums(self.qbar_sorted, codes_sorted[:, ::-1], n_classes, self.backend)
        return gq, gb, counts

    def score_many(self, codes):
        """``codes`` is (m, n): one dense labelling per row."""
        codes = np.atleast_2d(np.asarray(codes, dtype=np.int64))
        n_classes = int(codes.max()) + 1
        gq, gb, counts = self._raw(codes[:, self.order], n_classes)
        n = self.n
        with np.errstate(divide="ignore", invalid="ignore"):
            scale = np.where(counts > 0, 2.0 / (n * counts), 0.0)
        t2 = np.zeros(len(codes))
        t2b = np.zeros(len(codes))
        for k in range(n_classes):
            t2 += scale[:, k] * gq[:, k]
            t2b += scale[:, k] * gb[:, k]
        return np.array([_ratio(self.t1, a, self.t1b, b) for a, b in zip(t2, t2b)])

    def score(self, codes):
        return float(self.score_many(codes)[0])

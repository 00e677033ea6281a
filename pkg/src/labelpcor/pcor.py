"""Multivariate label projection correlation.

The estimator averages the angle at ``X_l`` subtended by ``X_i`` and ``X_j``
over all ordered triples, globally and within each class.  All of the
label dependence enters through sums over (i, j) blocks, so the cubic work
is done once into an n x n table of angle sums over ``l``.  Any labelling
(including permutations) is then scored in O(n^2).
"""

import math
from dataclasses import dataclass

import numpy as np

from ._accel import njit, prange, resolve_backend
from .core import class_partition

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class PcorComponents:
    s1_hat: float
    s2_hat: float
    s3_hat: float
    pcor_hat: float


def angle_kernel(xi, xj, xl):
    """Angle at ``xl`` between ``xi - xl`` and ``xj - xl``.

    Returns 0 when exactly one difference vanishes and ``-pi`` when both do.
    """
    u = np.atleast_1d(np.asarray(xi, dtype=float) - np.asarray(xl, dtype=float))
    v = np.atleast_1d(np.asarray(xj, dtype=float) - np.asarray(xl, dtype=float))
    zu = not u.any()
    zv = not v.any()
    if zu and zv:
        return -math.pi
    if zu or zv:
        return 0.0
    if np.array_equal(u, v):
        return 0.0
    u = u / np.abs(u).max()
    v = v / np.abs(v).max()
    cos = float(u @ v) / (float(np.sqrt(u @ u)) * float(np.sqrt(v @ v)))
    return math.acos(min(1.0, max(-1.0, cos)))


def equal_rows(x, atol=0.0):
    """Boolean n x n matrix of row equality (max-abs difference <= atol)."""
    n = x.shape[0]
    same = np.ones((n, n), dtype=bool)
    for c in range(x.shape[1]):
        col = x[:, c]
        if atol == 0.0:
            same &= col[:, None] == col[None, :]
        else:
            same &= np.abs(col[:, None] - col[None, :]) <= atol
    return same


@njit(parallel=True, cache=True)
def _angle_pairs_numba(x, same):
    n, p = x.shape
    out = np.zeros((n, n))
    u = np.zeros((n, p))
    for l in range(n):
        for i in range(n):
            if same[i, l]:
                continue
            m = 0.0
            for c in range(p):
                u[i, c] = x[i, c] - x[l, c]
                a = abs(u[i, c])
                if a > m:
                    m = a
            s = 0.0
            for c in range(p):
                u[i, c] /= m
                s += u[i, c] * u[i, c]
            r = math.sqrt(s)
            for c in range(p):
                u[i, c] /= r
        for i in prange(n):
            if same[i, l]:
                continue
            for j in range(i + 1, n):
                if same[j, l] or same[i, j]:
                    continue
                dot = 0.0
                for c in range(p):
                    dot += u[i, c] * u[j, c]
                if dot > 1.0:
                    dot = 1.0
                elif dot < -1.0:
                    dot = -1.0
                out[i, j] += math.acos(dot)
    for i in range(n):
        for j in range(i + 1, n):
            out[j, i] = out[i, j]
    return out


def _angle_pairs_numpy(x, same):
    n = x.shape[0]
    out = np.zeros((n, n))
    for l in range(n):
        idx = np.flatnonzero(~same[:, l])
        if len(idx) < 2:
            continue
        u = x[idx] - x[l]
        u /= np.abs(u).max(axis=1, keepdims=True)
        u /= np.sqrt(np.einsum("ij,ij->i", u, u))[:, None]
        a = np.arccos(np.clip(u @ u.T, -1.0, 1.0))
        block = np.ix_(idx, idx)
        a[same[block]] = 0.0
        out[block] += a
    return out


def angle_pair_sums(x, same=None, backend=None):
    """``out[i, j] = sum_l a_ijl`` over the regular triples.

    Triples hitting a zero difference contribute nothing here; the ``-pi``
    convention is counted separately from row multiplicities.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    if same is None:
        same = equal_rows(x)
    if resolve_backend(backend) == "numba":
        return _angle_pairs_numba(x, same)
    return _angle_pairs_numpy(x, same)


class PairTable:
    """Label-free O(n^3) precomputation for scoring any labelling of ``x``."""

    def __init__(self, x, atol=0.0, backend=None):
        x = np.ascontiguousarray(x, dtype=np.float64)
        self.n = x.shape[0]
        self.same = equal_rows(x)
        self.angles = angle_pair_sums(x, self.same, backend)
        # both-zero triples (i, j, l) need X_i = X_j = X_l
        mult = self.same.sum(axis=1)
        self.zeros = self.same * mult[:, None]
        same_s3 = self.same if atol == 0.0 else equal_rows(x, atol)
        self.equal_pairs = int(same_s3.sum())
        self._all = np.arange(self.n)

    def _block(self, idx):
        blk = np.ix_(idx, idx)
        return self.angles[blk].sum(), int(self.zeros[blk].sum())

    def s1(self):
        a, z = self._block(self._all)
        return float((a / self.n - math.pi * (z / self.n)) / float(self.n * self.n))

    def s2(self, codes, n_classes=None):
        if n_classes is None:
            n_classes = int(codes.max()) + 1
        a2 = 0.0
        z2 = 0.0
        for k in range(n_classes):
            idx = np.flatnonzero(codes == k)
            if len(idx) == 0:
                continue
            a, z = self._block(idx)
            a2 += a / len(idx)
            z2 += z / len(idx)
        return float((a2 - math.pi * z2) / float(self.n * self.n))

    def s3(self):
        return self.equal_pairs / float(self.n * self.n)

    def components(self, codes, n_classes=None):
        s1 = self.s1()
        s2 = self.s2(codes, n_classes)
        pi_s3 = (math.pi * self.equal_pairs) / float(self.n * self.n)
        den = s1 + pi_s3
        pcor = 0.0 if abs(den) <= DEGENERATE_TOL else (s1 - s2) / den
        return PcorComponents(s1, s2, self.s3(), float(pcor))

    def score(self, codes, n_classes=None):
        return self.components(codes, n_classes).pcor_hat


def s1_hat(d, backend=None):
    return PairTable(d.x, backend=backend).s1()


def s2_hat(d, part=None, backend=None):
    if part is None:
        part = class_partition(d)
    codes = np.empty(d.n, dtype=np.intp)
    for k, c in enumerate(part):
        codes[c.indices] = k
    return PairTable(d.x, backend=backend).s2(codes, len(part))


def s3_hat(d, atol=0.0):
    return int(equal_rows(d.x, atol).sum()) / float(d.n * d.n)


def pcor_multivariate(d, atol=0.0, backend=None):
    """Cubic-cost estimate for any ``p``; p = 1 has a faster exact route.

    ``atol`` only loosens the row-equality indicator of the coincidence term.
    """
    return PairTable(d.x, atol=atol, backend=backend).components(d.codes, d.k)

"""Seeded generators for the SNP association screening design.

Latent rows are N(0, Sigma) with ``Sigma_ij = rho^|i-j|``; every column is
cut at its sample quartiles into three genotype codes and the response is a
sparse function of five of them plus noise.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .rng import make_rng

# 0-based positions of SNPs 1, 2, 10, 20, 100
ACTIVE = (0, 1, 9, 19, 99)
ERRORS = ("normal", "t1", "t2", "none")


def ar1_gaussian(n, p, rho, seed):
    """Rows i.i.d. N(0, Sigma) with ``Sigma_ij = rho^|i-j|`` via the AR(1) recursion."""
    if not -1 < rho < 1:
        raise ValueError(f"rho must lie in (-1, 1), got {rho}")
    rng = make_rng(seed)
    eps = rng.standard_normal((n, p))
    out = np.empty((n, p))
    out[:, 0] = eps[:, 0]
    innov = math.sqrt(1.0 - rho * rho)
    for j in range(1, p):
        out[:, j] = rho * out[:, j - 1] + innov * eps[:, j]
    return out


def quartiles(column):
    """Order statistics at ranks ceil(n/4) and ceil(3n/4) (1-based)."""
    s = np.sort(np.asarray(column, dtype=float))
    n = len(s)
    return s[math.ceil(n / 4) - 1], s[math.ceil(3 * n / 4) - 1]


def quartile_discretize(column):
    """1 below the first quartile, -1 at or above the third, 0 in between."""
    column = np.asarray(column, dtype=float)
    if len(column) < 4:
        raise ValueError("need at least 4 values to take quartiles")
    q1, q3 = quartiles(column)
    z = np.zeros(len(column), dtype=np.int8)
    z[column < q1] = 1
    z[column >= q3] = -1
    return z


def discretize_columns(x):
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if n < 4:
        raise ValueError("need at least 4 rows to take quartiles")
    s = np.sort(x, axis=0)
    q1 = s[math.ceil(n / 4) - 1]
    q3 = s[math.ceil(3 * n / 4) - 1]
    z = np.zeros(x.shape, dtype=np.int8)
    z[x < q1] = 1
    z[x >= q3] = -1
    return z


def _student_t(df, n, rng):
    if df not in (1, 2):
        raise ValueError(f"only t(1) and t(2) are supported, got df={df}")
    z = rng.standard_normal(n)
    return z / np.sqrt(rng.chisquare(df, n) / df)


def sample_t(df, n, seed):
    """Student-t draws as ``normal / sqrt(chi2(df) / df)``."""
    return _student_t(df, n, make_rng(seed))


def draw_errors(kind, n, rng):
    if kind == "normal":
        return rng.standard_normal(n)
    if kind == "t1":
        return _student_t(1, n, rng)
    if kind == "t2":
        return _student_t(2, n, rng)
    if kind == "none":
        return np.zeros(n)
    raise ValueError(f"unknown error distribution {kind!r}; choose from {', '.join(ERRORS)}")


def draw_betas(n, rng, size=5):
    """``(-1)^U (2 log n / sqrt n + |Z|)`` with ``U ~ Bernoulli(0.4)``, ``Z ~ N(0, 1)``."""
    u = rng.random(size) < 0.4
    mag = 2.0 * math.log(n) / math.sqrt(n) + np.abs(rng.standard_normal(size))
    return np.where(u, -mag, mag)


@dataclass(frozen=True)
class GwasConfig:
    n: int = 200
    p: int = 2000
    rho: float = 0.5
    error: str = "normal"
    seed: object = 0
    betas: tuple = None  # fixed coefficients; drawn per call when None

    def __post_init__(self):
        if self.n < 10:
            raise ValueError(f"n must be at least 10, got {self.n}")
        if self.p < 100:
            raise ValueError(f"p must be at least 100 to hold the active SNPs, got {self.p}")
        if not -1 < self.rho < 1:
            raise ValueError(f"rho must lie in (-1, 1), got {self.rho}")
        if self.error not in ERRORS:
            raise ValueError(f"unknown error distribution {self.error!r}")


@dataclass(frozen=True)
class GwasSample:
    features: np.ndarray
    response: np.ndarray
    betas: np.ndarray
    active: tuple = field(default=ACTIVE)


def gen_gwas(cfg):
    rng = make_rng(cfg.seed)
    latent = ar1_gaussian(cfg.n, cfg.p, cfg.rho, rng)
    z = discretize_columns(latent)
    if cfg.betas is None:
        b = draw_betas(cfg.n, rng)
    else:
        b = np.asarray(cfg.betas, dtype=float)
    za = z[:, ACTIVE].astype(float)
    y = (b[0] * za[:, 0] + b[1] * za[:, 1] + 2 * b[2] * za[:, 2]
         + 2 * b[3] * za[:, 3] - 2 * b[4] * np.abs(za[:, 4]))
    y = y + draw_errors(cfg.error, cfg.n, rng)
    return GwasSample(z, y, b)

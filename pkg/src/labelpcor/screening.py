"""Per-feature ranking and replication metrics for marginal screening."""

import math
from dataclasses import dataclass

import numpy as np

from .core import build_dataset
from .measures import check_method, correlation, scorer
from .rng import spawn
from .simgen import ACTIVE, GwasConfig, gen_gwas

RSD_SCALE = 1.34898  # IQR of the standard normal


@dataclass(frozen=True)
class FeatureRanking:
    method: str
    scores: np.ndarray
    order: np.ndarray
    tie_rule: str = "ascending feature index"

    def ranks(self):
        """1-based rank of every feature."""
        r = np.empty(len(self.order), dtype=np.intp)
        r[self.order] = np.arange(1, len(self.order) + 1)
        return r


@dataclass(frozen=True)
class ScreeningReport:
    active: tuple
    d: int
    p_each: dict
    p_all: float
    mms: float
    rsd: float
    min_model_sizes: np.ndarray

    def as_dict(self, one_based=True):
        off = 1 if one_based else 0
        out = {f"P{i + off}": self.p_each[i] for i in self.active}
        out.update(P_all=self.p_all, MMS=self.mms, RSD=self.rsd)
        return out


def ranking_from_scores(scores, method):
    scores = np.asarray(scores, dtype=float)
    if not np.all(np.isfinite(scores)):
        raise ValueError("scores must be finite")
    order = np.lexsort((np.arange(len(scores)), -scores))
    return FeatureRanking(method, scores, order)


def _encode_columns(features):
    # one global code table; classes absent from a column are simply empty
    _, inv = np.unique(features, return_inverse=True)
    return inv.reshape(features.shape).T.astype(np.int64)


def rank_features(features, target, method="pcor", *, features_are_labels=True,
                  chunk=1024, **scorer_kw):
    """Score each column of ``features`` against ``target`` and rank them.

    With ``features_are_labels`` each column is the categorical variable and
    ``target`` the numeric one (the SNP design).  Otherwise each column is a
    numeric feature and ``target`` holds the class labels.
    """
    check_method(method)
    features = np.asarray(features)
    if features.ndim == 1:
        features = features[:, None]
    if features_are_labels:
        codes = _encode_columns(features)
        sc = scorer(method, np.asarray(target, dtype=float), **scorer_kw)
        scores = np.concatenate([sc.score_many(codes[s:s + chunk])
                                 for s in range(0, len(codes), chunk)])
    else:
        scores = np.array([correlation(build_dataset(features[:, j], target), method, **scorer_kw)
                           for j in range(features.shape[1])])
    return ranking_from_scores(scores, method)


def top_d_select(r, d):
    p = len(r.order)
    if not 1 <= d <= p:
        raise ValueError(f"d must lie in [1, {p}], got {d}")
    return r.order[:d].copy()


def default_cutoff(n):
    return int(math.floor(n / math.log(n)))


def screening_metrics(rankings, active, d, rsd_scale=RSD_SCALE):
    """Selection proportions within the top ``d`` plus minimum model size stats.

    The minimum model size of a replication is the worst rank among the
    active features; MMS is its median and RSD its IQR / ``rsd_scale``.
    """
    if not rankings:
        raise ValueError("need at least one ranking")
    active = tuple(int(a) for a in active)
    if not active:
        raise ValueError("active set is empty")
    p = len(rankings[0].order)
    if not 1 <= d <= p:
        raise ValueError(f"d must lie in [1, {p}], got {d}")
    ranks = np.array([r.ranks()[list(active)] for r in rankings])
    hit = ranks <= d
    mins = ranks.max(axis=1)
    q75, q25 = np.percentile(mins, [75, 25])
    return ScreeningReport(
        active=active,
        d=d,
        p_each={a: float(hit[:, i].mean()) for i, a in enumerate(active)},
        p_all=float(hit.all(axis=1).mean()),
        mms=float(np.median(mins)),
        rsd=float((q75 - q25) / rsd_scale),
        min_model_sizes=mins,
    )


def simulate_gwas_screening(methods=("pcor",), error="normal", reps=100, seed=1, *,
                            n=200, p=2000, rho=0.5, d=None, fixed_betas=None, progress=None):
    """Replicate the SNP design and summarise each method's screening."""
    methods = tuple(check_method(m) for m in methods)
    d = default_cutoff(n) if d is None else d
    rankings = {m: [] for m in methods}
    for r, g in enumerate(spawn(seed, reps)):
        sample = gen_gwas(GwasConfig(n=n, p=p, rho=rho, error=error, seed=g, betas=fixed_betas))
        for m in methods:
            rankings[m].append(rank_features(sample.features, sample.response, m))
        if progress is not None:
            progress(r + 1, reps)
    return {m: screening_metrics(rankings[m], ACTIVE, d) for m in methods}

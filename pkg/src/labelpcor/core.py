"""Validated sample/label containers shared by every estimator."""

from dataclasses import dataclass

import numpy as np


class DataError(ValueError):
    """Input data violates a container contract."""


@dataclass(frozen=True)
class Dataset:
    """``n`` samples of a ``p``-dimensional numeric variable with labels.

    ``codes`` holds the labels densely re-encoded to ``0..K-1`` in order of
    first occurrence; ``labels[k]`` is the original label of code ``k``.
    """

    x: np.ndarray
    codes: np.ndarray
    labels: tuple

    @property
    def n(self):
        return self.x.shape[0]

    @property
    def p(self):
        return self.x.shape[1]

    @property
    def k(self):
        return len(self.labels)

    def with_codes(self, codes):
        """Same ``x`` with a different (already dense) coding of the labels."""
        codes = np.asarray(codes, dtype=np.intp)
        return Dataset(self.x, codes, tuple(range(int(codes.max()) + 1)))


@dataclass(frozen=True)
class ClassInfo:
    label: object
    indices: np.ndarray
    count: int
    freq: float


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple

    @property
    def counts(self):
        return np.array([c.count for c in self.classes], dtype=np.intp)

    @property
    def freqs(self):
        return np.array([c.freq for c in self.classes])

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def encode_labels(y):
    """Dense codes in first-occurrence order, plus the label of each code."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise DataError("labels must be a 1-d sequence")
    uniq, first, inverse = np.unique(y, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    remap = np.empty(len(uniq), dtype=np.intp)
    remap[order] = np.arange(len(uniq))
    labels = tuple(uniq[order].tolist())
    return remap[inverse.ravel()], labels


def build_dataset(x, y):
    """Validate ``x`` (n x p, or length-n for p = 1) and labels ``y``."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise DataError(f"x must be 1-d or 2-d, got {x.ndim}-d")
    y = np.asarray(y)
    if x.shape[0] != y.shape[0]:
        raise DataError(f"dimension mismatch: x has {x.shape[0]} rows, y has {y.shape[0]} labels")
    if x.shape[0] < 2:
        raise DataError(f"need at least 2 samples, got {x.shape[0]}")
    if x.shape[1] < 1:
        raise DataError("x must have at least one column")
    bad = np.argwhere(~np.isfinite(x))
    if len(bad):
        r, c = bad[0]
        raise DataError(f"non-finite value at ({r}, {c})")
    codes, labels = encode_labels(y)
    x = np.ascontiguousarray(x)
    x.setflags(write=False)
    codes.setflags(write=False)
    return Dataset(x, codes, labels)


def class_partition(d):
    n = d.n
    classes = []
    order = np.argsort(d.codes, kind="stable")
    counts = np.bincount(d.codes, minlength=d.k)
    bounds = np.concatenate(([0], np.cumsum(counts)))
    for k, label in enumerate(d.labels):
        idx = order[bounds[k]:bounds[k + 1]]
        classes.append(ClassInfo(label, idx, int(counts[k]), counts[k] / n))
    return ClassPartition(tuple(classes))

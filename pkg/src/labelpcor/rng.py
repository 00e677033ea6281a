"""Seeded random streams.

Every random draw in the package goes through Philox, a counter-based
generator with a fixed, widely implemented algorithm, so a seed yields the
same numbers on every platform.  Replicate ``r`` of a run seeded with ``s``
uses the ``r``-th child of ``SeedSequence(s)``, independent of how the
replicates are scheduled.
"""

import numpy as np


def make_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def spawn(seed, count):
    """``count`` independent generators derived from ``seed``."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.Generator(np.random.Philox(child)) for child in ss.spawn(count)]

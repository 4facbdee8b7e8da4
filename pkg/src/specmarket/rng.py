"""Seed handling: named substreams per stochastic source and per-path seeds.

Every simulation draws from one generator per source (dividend shocks, news
arrivals, the two trading-type weights, the two news-impact shocks, trader
draws), each spawned from the master seed. Turning one source on or off
therefore never perturbs the draws of the others, and a path is a pure
function of (params, seed).
"""

from __future__ import annotations

import numpy as np

# Fixed spawn order; the index of a name is its child position under the
# master SeedSequence, so the mapping is part of the reproducibility contract.
SOURCES = ("dividend", "news", "n_I", "n_II", "eps_I", "eps_II", "trader")


def substreams(seed: int) -> dict[str, np.random.Generator]:
    """Return one independent Generator per named stochastic source."""
    children = np.random.SeedSequence(seed).spawn(len(SOURCES))
    return {name: np.random.default_rng(child) for name, child in zip(SOURCES, children)}


def path_seeds(master_seed: int, n_paths: int) -> list[int]:
    """Derive per-path integer seeds from a master seed.

    The rule is ``SeedSequence(master_seed).generate_state(n_paths)`` read as
    unsigned 64-bit words, so path k's seed depends only on (master_seed, k):
    permuting or truncating the path list never changes an individual seed.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    state = np.random.SeedSequence(master_seed).generate_state(n_paths, dtype=np.uint64)
    return [int(s) for s in state]

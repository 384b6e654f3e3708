"""Deterministic substreams on top of numpy's counter-based Philox generator.

Every random draw in the package comes from a substream addressed by
``(seed, stream tag, index)``.  Substreams are mutually independent and
cheap to construct, so a value drawn for step k never depends on how the
surrounding computation was chunked or scheduled.  Reruns with the same
seed are bit-identical, and work split across realizations reproduces the
sequential result exactly.
"""

from __future__ import annotations

import numpy as np

# Stream tags.  Ensemble evolution and bounded walks share ENSEMBLE_STEPS
# so that a bounded run whose bounds are never hit is bit-identical to the
# unbounded ensemble advanced under the same seed.
ENSEMBLE_STEPS = 0
BOUNDARY_REDRAWS = 1
WALK_STEPS = 2


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return an independent generator for the substream named by ``path``.

    The same ``(seed, *path)`` always yields the same stream; distinct
    paths yield statistically independent streams.
    """
    key = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(key))


def step_stream(seed: int, tag: int, step_index: int) -> np.random.Generator:
    """Generator driving one absolute step of an evolving population."""
    if step_index < 0:
        raise ValueError(f"step_index must be nonnegative, got {step_index}")
    return substream(seed, tag, step_index)

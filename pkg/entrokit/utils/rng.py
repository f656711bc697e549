"""
Seeded random streams.

Every realization draws from numpy's counter-based Philox generator keyed by
``SeedSequence(seed, spawn_key=(stream_id,))``; equal (seed, stream) pairs give
bit-identical streams and distinct stream ids give independent ones.
"""

import numpy as np

from ..models.processes import RngSeed


def make_generator(seed: RngSeed) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed.seed, spawn_key=(seed.stream_id,))
    return np.random.Generator(np.random.Philox(sequence))


def child_generators(seed: RngSeed, count: int) -> list[np.random.Generator]:
    """Independent generators for ``count`` sub-tasks of one stream (bootstrap chunks)."""
    sequence = np.random.SeedSequence(entropy=seed.seed, spawn_key=(seed.stream_id,))
    return [np.random.Generator(np.random.Philox(child)) for child in sequence.spawn(count)]

"""
Named, seeded, splittable random streams.

A stream is PCG64 seeded from SeedSequence(seed, spawn_key=(stream id,)); the seed and the
stream name fully determine every randomized corpus.
"""

import numpy as np

from shared.constants import STREAM_IDS


def stream(seed, name):
    """
    Return the generator for a named stream.

    Args:
        seed: 64-bit run seed
        name: Stream name from STREAM_IDS

    Returns:
        numpy.random.Generator
    """
    if name not in STREAM_IDS:
        raise KeyError(f"Unknown random stream '{name}'")
    sequence = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=(STREAM_IDS[name],))
    return np.random.Generator(np.random.PCG64(sequence))

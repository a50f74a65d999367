"""Deterministic random-stream derivation.

All randomness flows from numpy's PCG64 generator. Child streams are derived
with ``SeedSequence([master_seed, stream_id, *indices])`` so that instance
generation, each walk of a campaign, and each EA run own independent,
reproducible streams. Results are therefore independent of execution order
and of the degree of parallelism.
"""

from __future__ import annotations

import numpy as np

# Stream identifiers, one per consumer of randomness.
STREAM_NK_INSTANCE = 1
STREAM_RANDOM_WALK = 2
STREAM_ADAPTIVE_WALK = 3
STREAM_NEUTRALITY = 4
STREAM_EA_RUN = 5
STREAM_LANDSCAPE_SEED = 6


def seed_sequence(master_seed: int, *path: int) -> np.random.SeedSequence:
    entropy = [int(master_seed)] + [int(p) for p in path]
    if any(e < 0 for e in entropy):
        raise ValueError(f"seed path entries must be non-negative, got {entropy}")
    return np.random.SeedSequence(entropy)


def make_rng(master_seed: int, *path: int) -> np.random.Generator:
    """PCG64 generator owned by the child stream (master_seed, *path)."""
    return np.random.Generator(np.random.PCG64(seed_sequence(master_seed, *path)))


def derive_seed(master_seed: int, *path: int) -> int:
    """A 63-bit child seed, usable wherever an integer seed is stored."""
    state = seed_sequence(master_seed, *path).generate_state(2, np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))

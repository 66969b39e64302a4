"""Counter-based random streams for reproducible, splittable sampling.

A 64-bit master seed keys a Philox generator; replicate r runs on the
stream jumped r counter-blocks ahead. Streams are disjoint, deterministic,
and independent of evaluation order, so replicates can run in parallel and
still merge into bit-identical results.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream"]


def stream(seed: int, rep: int = 0) -> np.random.Generator:
    """Generator for replicate ``rep`` of master ``seed``."""
    if not 0 <= int(seed) < 2**64:
        raise ValueError("seed must fit in 64 bits")
    bg = np.random.Philox(key=int(seed))
    if rep:
        bg = bg.jumped(int(rep))
    return np.random.Generator(bg)

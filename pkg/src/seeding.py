"""
Seed derivation.

All randomness flows from one master seed. Sub-seeds are derived from a key
path, so a task's random stream does not depend on scheduling order.
"""

import hashlib

import numpy as np


def _key_to_int(key: int | str) -> int:
    if isinstance(key, int):
        return key & 0xFFFFFFFF
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "little")


def derive_seed(master: int, *keys: int | str) -> int:
    """
    Derive a stable 32-bit sub-seed.

    Args:
        master: Master seed
        keys: Key path, e.g. ("train", 3, "division", 1)

    Returns:
        Sub-seed in [0, 2**32)
    """
    entropy = [_key_to_int(master)] + [_key_to_int(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


"""Seed derivation: one root seed, sub-streams named by stage."""
from __future__ import annotations

import hashlib
import random


def derive_seed(root: int, *names: object) -> int:
    key = ":".join([str(root), *map(str, names)]).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def stage_rng(root: int, *names: object) -> random.Random:
    return random.Random(derive_seed(root, *names))


def as_rng(rng: random.Random | int | None) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)

"""Deterministic seed derivation for fan-out into independent components."""

from __future__ import annotations

import hashlib

_MASK = (1 << 63) - 1


def derive_seed(base_seed: int, *labels: object) -> int:
    """Derive a child seed from a base seed and a label path.

    Uses a cryptographic hash of the textual labels, so the mapping is
    stable across processes and platforms (unlike the salted builtin
    ``hash``). Distinct label paths give independent child seeds.
    """
    text = str(int(base_seed)) + "".join(f"|{label}" for label in labels)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") & _MASK

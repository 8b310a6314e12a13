"""Feature-subset encoding shared by all optimizers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FeatureSubset:
    """A fixed-cardinality set of distinct feature column indices.

    The stored order is the encoding order (one slot per "musician" in the
    harmony-search reading); set identity ignores it. Bounds against a
    concrete feature count are checked where the subset is applied.
    """

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if len(self.indices) == 0:
            raise ValueError("feature subset must not be empty")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"feature subset has duplicate indices: {self.indices}")
        if any(i < 0 for i in self.indices):
            raise ValueError(f"feature subset has negative indices: {self.indices}")

    @property
    def k(self) -> int:
        return len(self.indices)

    @property
    def key(self) -> tuple[int, ...]:
        """Canonical (sorted) form; subset identity for caching."""
        return tuple(sorted(self.indices))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

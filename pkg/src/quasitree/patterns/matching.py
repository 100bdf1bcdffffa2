"""Bipartite matching by augmenting paths (Kuhn's algorithm)."""

from __future__ import annotations

from collections.abc import Hashable, Sequence


class Matcher:
    """Incremental matching of left items into right items.

    ``options[i]`` lists the right items left item ``i`` may take. Matched
    right items stay matched across later augmentations, which is what lets
    callers prefer one class of right items by offering it first.
    """

    def __init__(self, options: Sequence[Sequence[Hashable]]) -> None:
        self.options = options
        self.left: list[Hashable | None] = [None] * len(options)
        self.right: dict[Hashable, int] = {}

    def _augment(self, i: int, allowed, seen: set) -> bool:
        for r in self.options[i]:
            if r in seen or not allowed(r):
                continue
            seen.add(r)
            j = self.right.get(r)
            if j is None or self._augment(j, allowed, seen):
                self.left[i] = r
                self.right[r] = i
                return True
        return False

    def grow(self, allowed=lambda r: True) -> int:
        """Augment every unmatched left item using right items passing
        ``allowed``; return the matching size."""
        for i in range(len(self.options)):
            if self.left[i] is None:
                self._augment(i, allowed, set())
        return len(self.right)

    @property
    def perfect(self) -> bool:
        return all(r is not None for r in self.left)

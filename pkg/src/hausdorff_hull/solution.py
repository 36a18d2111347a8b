from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Solution:
    """A chosen subset and the Hausdorff cost it achieves.

    ``indices`` refer to whatever indexing the solver was given: chain
    positions for the convex solvers, input positions for the general ones.
    """

    indices: tuple[int, ...]
    eps: float
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.indices)

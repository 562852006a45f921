"""Configuration records for searches and randomized suites."""
from __future__ import annotations

from dataclasses import dataclass

from .cohomology import COCYCLE_CAP
from .errors import DEFAULT_CAP


@dataclass(frozen=True)
class SearchConfig:
    """Caps for exhaustive searches; ``None`` disables a cap."""

    cap: int | None = DEFAULT_CAP
    cocycle_cap: int | None = COCYCLE_CAP
    isometry_group_max: int = 2000


@dataclass(frozen=True)
class RandomSuiteConfig:
    """Sizes for randomized scenario suites."""

    seed: int = 20240601
    scenarios: int = 200
    shifts: int = 50
    max_group_order: int = 6
    max_metric_order: int = 36

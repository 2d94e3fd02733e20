"""Enumeration guards shared by every brute-force path.

The default guard is ``2**24`` elementary steps. ``KLOOMO_BUDGET`` (or
:func:`set_budget`) may raise it, but never above :data:`HARD_CAP`.
"""

from __future__ import annotations

import os

from .errors import BudgetExceeded, RangeError

DEFAULT_BUDGET = 1 << 24
HARD_CAP = 1 << 34

_override: int | None = None


def set_budget(value: int | None) -> None:
    global _override
    if value is not None and not 1 <= value <= HARD_CAP:
        raise RangeError(f"budget must lie in 1..{HARD_CAP}, got {value}")
    _override = value


def current_budget() -> int:
    if _override is not None:
        return _override
    env = os.environ.get("KLOOMO_BUDGET")
    if env:
        value = int(env, 0)
        if not 1 <= value <= HARD_CAP:
            raise RangeError(f"KLOOMO_BUDGET must lie in 1..{HARD_CAP}, got {value}")
        return value
    return DEFAULT_BUDGET


def require(cost: int, what: str) -> None:
    limit = current_budget()
    if cost > limit:
        raise BudgetExceeded(f"{what}: {cost} steps exceeds the budget of {limit}")

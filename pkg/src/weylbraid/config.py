"""Enumeration and normal-form budgets.

``WEYLBRAID_BUDGET`` in the environment overrides the element cap used by
every enumeration routine.
"""

from __future__ import annotations

import os

DEFAULT_ENUMERATION_CAP = 10**6
MAX_GARSIDE_RANK = 8
MAX_GARSIDE_WORD_LENGTH = 10**4


def enumeration_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    raw = os.environ.get("WEYLBRAID_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_ENUMERATION_CAP

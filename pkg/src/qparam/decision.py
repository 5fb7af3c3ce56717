"""Verdicts for promise-problem deciders."""
from __future__ import annotations

import enum


class Verdict(enum.Enum):
    YES = "YES"
    NO = "NO"
    PROMISE_VIOLATED = "PROMISE_VIOLATED"

    def __str__(self) -> str:
        return self.value

"""Three-valued (Kleene) logic used by all structural oracles.

A determined value (YES/NO) must come from a structural rule, never from a
budget-limited search; UNKNOWN marks the absence of a rule.
"""

from __future__ import annotations

import enum


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


def tri_of(b) -> Tri:
    if b is None:
        return Tri.UNKNOWN
    return Tri.YES if b else Tri.NO


def tri_not(t: Tri) -> Tri:
    if t is Tri.YES:
        return Tri.NO
    if t is Tri.NO:
        return Tri.YES
    return Tri.UNKNOWN


def tri_and(*ts: Tri) -> Tri:
    if any(t is Tri.NO for t in ts):
        return Tri.NO
    if all(t is Tri.YES for t in ts):
        return Tri.YES
    return Tri.UNKNOWN


def tri_or(*ts: Tri) -> Tri:
    if any(t is Tri.YES for t in ts):
        return Tri.YES
    if all(t is Tri.NO for t in ts):
        return Tri.NO
    return Tri.UNKNOWN

"""Tiny shared result type for verification routines.

Every check_* function in this package returns a list of CheckResult so the
CLI can render them uniformly.  A witness is a human-readable string pinning
down the first counterexample found (inputs and the nonzero residual);
passing checks carry None.
"""

from __future__ import annotations

from typing import NamedTuple, Optional


class CheckResult(NamedTuple):
    name: str
    passed: bool
    witness: Optional[str] = None


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)


def failures(checks):
    return [c for c in checks if not c.passed]

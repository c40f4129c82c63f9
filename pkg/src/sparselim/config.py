"""Resource limits shared by the counting, product and kernel modules."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

BUDGET_ENV = "SPARSELIM_BUDGET"


class BudgetExceeded(RuntimeError):
    """An operation refused to run because its cost estimate exceeds a limit.

    This is a refusal, not a mathematical error: the caller may retry with a
    larger budget or a different method.
    """

    def __init__(self, what: str, cost: int, limit: int):
        super().__init__(f"{what}: estimated cost {cost} exceeds limit {limit}")
        self.what = what
        self.cost = cost
        self.limit = limit


@dataclass(frozen=True)
class Limits:
    enumeration_budget: int = 10**8
    max_vertices: int = 10**4
    max_edges: int = 10**7
    chromatic_cap: int = 12
    cutnorm_cap: int = 20
    mantissa_bits: int = 128

    def with_budget(self, budget: int | None) -> "Limits":
        if budget is None:
            return self
        return replace(self, enumeration_budget=int(budget))


def default_limits() -> Limits:
    """Defaults, with the enumeration budget overridable from the environment."""
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return Limits(enumeration_budget=int(float(raw)))
    return Limits()


def resolve_budget(budget: int | None) -> int:
    return default_limits().enumeration_budget if budget is None else int(budget)

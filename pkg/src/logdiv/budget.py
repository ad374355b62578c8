"""Resource budgets for Groebner computations.

Exceeding a budget raises; results are never silently truncated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class BudgetExceededError(RuntimeError):
    """A Groebner computation exceeded its pair, term or time budget."""

    def __init__(self, kind: str, used, limit):
        super().__init__(f"budget exceeded: {kind} used={used} limit={limit}")
        self.kind = kind
        self.used = used
        self.limit = limit


@dataclass
class Budget:
    """Mutable counters charged by the Groebner kernels.

    ``pairs`` counts S-pair reductions, ``term_ops`` counts elementary
    term operations inside reducers; both are deterministic and double as
    the reported "budget used" figures.  ``max_seconds`` adds an optional
    wall-clock limit (opt-in: results under a time limit may depend on the
    machine, the counters never do).
    """

    max_pairs: int = 200_000
    max_term_ops: int = 50_000_000
    max_seconds: float | None = None
    pairs: int = field(default=0, compare=False)
    term_ops: int = field(default=0, compare=False)
    started: float = field(default_factory=time.monotonic, compare=False)

    def _check_time(self) -> None:
        if self.max_seconds is not None:
            elapsed = time.monotonic() - self.started
            if elapsed > self.max_seconds:
                raise BudgetExceededError("seconds", round(elapsed, 1), self.max_seconds)

    def charge_pair(self) -> None:
        self.pairs += 1
        if self.pairs > self.max_pairs:
            raise BudgetExceededError("pairs", self.pairs, self.max_pairs)
        self._check_time()

    def charge_terms(self, n: int) -> None:
        self.term_ops += n
        if self.term_ops > self.max_term_ops:
            raise BudgetExceededError("term_ops", self.term_ops, self.max_term_ops)
        if self.term_ops % 8192 < n:
            self._check_time()

    def usage(self) -> dict:
        return {"pairs": self.pairs, "term_ops": self.term_ops}


def default_budget() -> Budget:
    return Budget()

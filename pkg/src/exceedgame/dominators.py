"""Functions that beat every (budgeted-)total short program.

Given the number of total programs of length at most n, the weak dominator
beats each of them from some input on.  Given the full totality bit-vector,
the strong dominator beats each of them on every input.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Union

from exceedgame.machine import (
    BitvectorAdvice,
    CountAdvice,
    Halted,
    MachineParams,
    program_list,
    result_at,
    run_profile,
)


class AdviceUnsatisfiable(Exception):
    """Fewer programs qualify than the count advice demands."""


class AdviceInconsistent(Exception):
    """A program flagged total failed to halt."""


def budget_schedule(limit: int) -> list[int]:
    """1, 2, 4, ... capped at ``limit``, always ending with ``limit``."""
    out = []
    b = 1
    while b < limit:
        out.append(b)
        b *= 2
    out.append(limit)
    return out


def weak_dominator_eval(advice: CountAdvice, k: int, params: MachineParams) -> int:
    if not 0 <= k <= params.K:
        raise ValueError(f"k={k} outside 0..K={params.K}")
    if advice.count == 0:
        return 0
    programs = program_list(advice.n)
    # steps each program needs to halt on all of 0..k (None: never within S)
    needed = []
    for p in programs:
        profiles = [run_profile(p, x, params.S) for x in range(k + 1)]
        ok = all(isinstance(r, Halted) for r, _ in profiles)
        needed.append(max(s for _, s in profiles) if ok else None)

    found: dict[int, int] = {}  # canonical index -> value on k
    for budget in budget_schedule(params.S):
        for idx, p in enumerate(programs):
            if idx in found or needed[idx] is None or needed[idx] > budget:
                continue
            found[idx] = result_at(run_profile(p, k, params.S), budget).value
            if len(found) == advice.count:
                return 1 + max(found.values())
    raise AdviceUnsatisfiable(
        f"only {len(found)} programs of length <= {advice.n} halt on 0..{k} within {params.S} steps; "
        f"advice claims {advice.count}"
    )


def strong_dominator_eval(advice: BitvectorAdvice, k: int, params: MachineParams) -> int:
    if not 0 <= k <= params.K:
        raise ValueError(f"k={k} outside 0..K={params.K}")
    best = -1
    for p, flagged in zip(program_list(advice.n), advice.bits):
        if not flagged:
            continue
        result = run_profile(p, k, params.S)[0]
        if not isinstance(result, Halted):
            raise AdviceInconsistent(f"program {p} is flagged total but gives {result} on input {k}")
        best = max(best, result.value)
    return best + 1


class Kind(enum.Enum):
    WEAK_FROM_COUNT = "WeakFromCount"
    STRONG_FROM_BITVECTOR = "StrongFromBitvector"


@dataclass(frozen=True)
class DominatorFunction:
    kind: Kind
    advice: Union[CountAdvice, BitvectorAdvice]
    params: MachineParams

    def __call__(self, k: int) -> int:
        if self.kind is Kind.WEAK_FROM_COUNT:
            return weak_dominator_eval(self.advice, k, self.params)
        return strong_dominator_eval(self.advice, k, self.params)

    def table(self) -> list[int]:
        return [self(k) for k in range(self.params.K + 1)]


@dataclass(frozen=True)
class ExceedanceReport:
    everywhere: bool
    weakly_from: Optional[int]
    checked_range: range


def exceedance_report(f: Callable[[int], int], g: Callable[[int], int], K: int) -> ExceedanceReport:
    wins = [f(k) > g(k) for k in range(K + 1)]
    k0 = K + 1
    while k0 > 0 and wins[k0 - 1]:
        k0 -= 1
    weakly_from = k0 if k0 <= K else None
    return ExceedanceReport(all(wins), weakly_from, range(K + 1))

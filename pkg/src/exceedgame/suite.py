"""Named strategies and the standard opposition used by tournaments and acceptance runs."""

from __future__ import annotations

from typing import Optional

from exceedgame.game import Side, Verdict
from exceedgame.machine import MachineParams, program_count
from exceedgame.reduction import blind_bob_strategy
from exceedgame.strategies import (
    Burst,
    Copycat,
    RandomGrower,
    Skipper,
    Strategy,
    TriggerBaiter,
    UnknownKind,
    alice_inductive,
    bob_powerset,
)

ALICE_NAMES = ("inductive", "random", "burst", "copycat", "skipper")
BOB_NAMES = ("powerset", "random", "burst", "baiter", "skipper", "blind")
DEMO_PARAMS = MachineParams(K=8, S=256, L=12)


def build(name: str, side: Side, a: int, seed: int = 0, params: MachineParams = DEMO_PARAMS) -> Strategy:
    if side is Side.ALICE:
        table = {
            "inductive": lambda: alice_inductive(a),
            "random": lambda: RandomGrower(seed=seed),
            "burst": lambda: Burst(seed=seed),
            "copycat": lambda: Copycat(),
            "skipper": lambda: Skipper(),
        }
    else:
        table = {
            "powerset": lambda: bob_powerset(a),
            "random": lambda: RandomGrower(seed=seed),
            "burst": lambda: Burst(seed=seed),
            "baiter": lambda: TriggerBaiter(seed=seed),
            "skipper": lambda: Skipper(),
            "blind": lambda: blind_bob_strategy(a, params),
        }
    if name not in table:
        raise UnknownKind(f"no {side.value} strategy named {name!r}; choose from {sorted(table)}")
    return table[name]()


def default_b(bob: str, a: int) -> int:
    return 2**a if bob == "powerset" else 2**a - 1


def bob_suite(a: int, seeds: int, base_seed: int = 0, params: MachineParams = DEMO_PARAMS) -> list[Strategy]:
    """Opposition for Alice in the b = 2^a - 1 game."""
    suite: list[Strategy] = [RandomGrower(seed=base_seed + s) for s in range(seeds)]
    suite += [Burst(seed=base_seed), TriggerBaiter(seed=base_seed)]
    if program_count(params.L) >= 2**a - 1:
        suite.append(blind_bob_strategy(a, params))
    return suite


def alice_suite(a: int, seeds: int, base_seed: int = 0) -> list[Strategy]:
    """Opposition for Bob in the b = 2^a game, including Alice's own strategy run over capacity."""
    suite: list[Strategy] = [RandomGrower(seed=base_seed + s) for s in range(seeds)]
    suite += [Burst(seed=base_seed), Skipper(), alice_inductive(a, enforce_capacity=False)]
    return suite


def expected_verdict(side_under_test: Side) -> Verdict:
    return Verdict.ALICE_WIN_WITNESSED if side_under_test is Side.ALICE else Verdict.BOB_LEADING


def suite_for(side_under_test: Side, a: int, seeds: int, base_seed: int = 0, params: Optional[MachineParams] = None):
    if side_under_test is Side.ALICE:
        return bob_suite(a, seeds, base_seed, params or DEMO_PARAMS)
    return alice_suite(a, seeds, base_seed)

"""Winning strategies for both sides, and an adversary suite to test them against.

``bob_powerset`` gives Bob one sequence per subset of Alice's labels, each
one above all of that subset's sequences.  ``alice_inductive`` is Alice's
recursive strategy: keep one sequence in reserve, play the smaller game with
the rest, and when Bob has opened too many sequences put a large term in the
reserved one, defeating all of them at once, then restart the smaller game
further along.
"""

from __future__ import annotations

import abc
import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from exceedgame.game import GameConfig, GameError, GameState, MoveBatch, Side

Move = tuple[MoveBatch, tuple[int, ...]]
VALUE_RANGE = 2**16


class StrategyError(GameError):
    pass


class CapacityMismatch(StrategyError):
    pass


class LabelOutOfRange(StrategyError, IndexError):
    pass


class UnknownKind(StrategyError, ValueError):
    pass


class Strategy(abc.ABC):
    """A deterministic player.

    :meth:`start` is called once per match and resets all internal state, so
    one instance can be replayed.  :meth:`move` returns the batch of appends
    for this turn plus the labels newly declared live.
    """

    side: Optional[Side] = None
    config: Optional[GameConfig] = None

    @property
    @abc.abstractmethod
    def name(self) -> str: ...

    def start(self, config: GameConfig, side: Side) -> None:
        self.config = config
        self.side = side

    @abc.abstractmethod
    def move(self, state: GameState) -> Move: ...


def _rng(seed: int, *tags: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *tags]))


def _fmt_set(labels: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(labels)) + "}"


# -- Bob: one sequence per subset ------------------------------------------


def subset_for_label(label: int, a: int) -> frozenset[int]:
    """Alice labels encoded by Bob ``label``: bit i set means Alice label i is in."""
    if not 0 <= label < 2**a:
        raise LabelOutOfRange(f"label {label} needs more than {a} bits")
    return frozenset(i for i in range(a) if label >> i & 1)


def label_for_subset(subset: Iterable[int], a: int) -> int:
    mask = 0
    for i in subset:
        if not 0 <= i < a:
            raise LabelOutOfRange(f"Alice label {i} outside 0..{a - 1}")
        mask |= 1 << i
    return mask


class BobPowerset(Strategy):
    def __init__(self, a: int):
        self.a = a

    @property
    def name(self) -> str:
        return f"bob_powerset(a={self.a})"

    def start(self, config, side):
        super().start(config, side)
        if side is not Side.BOB:
            raise CapacityMismatch("bob_powerset plays Bob")
        if config.a != self.a or config.b < 2**self.a:
            raise CapacityMismatch(f"bob_powerset(a={self.a}) needs a={self.a}, b>={2**self.a}; got a={config.a}, b={config.b}")
        self._subsets = [sorted(subset_for_label(x, self.a)) for x in range(2**self.a)]

    def move(self, state):
        alive = set(state.live_labels(Side.ALICE))
        alice = state.alice
        appends = []
        declared = []
        for label, members in enumerate(self._subsets):
            have = len(state.bob[label])
            if members:
                target = min(len(alice[i]) for i in members)
            else:
                target = have + 1
            for t in range(have, target):
                appends.append((label, 1 + max((alice[i].terms[t] for i in members), default=0)))
            if not state.bob[label].live and alive.issuperset(members):
                declared.append(label)
        return MoveBatch(Side.BOB, tuple(appends)), tuple(declared)


def bob_powerset(a: int) -> BobPowerset:
    return BobPowerset(a)


# -- Alice: inductive strategy ---------------------------------------------


class Phase(enum.Enum):
    PRE_TRIGGER = "PreTrigger"
    POST_TRIGGER = "PostTrigger"


@dataclass
class TriggerEvent:
    turn: int
    level: int
    offset: int
    reserved_label: int
    value: int
    killed: tuple[int, ...]
    new_offset: int


class _Pen:
    """Alice's writes for the current turn, with her lengths kept current."""

    def __init__(self, state: GameState):
        self.turn = state.turn
        self.lengths = list(state.lengths(Side.ALICE))
        self.appends: list[tuple[int, int]] = []
        self.declared: list[int] = []

    def append(self, label: int, value: int) -> None:
        self.appends.append((label, value))
        self.lengths[label] += 1

    def declare(self, label: int) -> None:
        if label not in self.declared:
            self.declared.append(label)


@dataclass
class StrategyFrame:
    """One level of Alice's recursion, playing the shifted game that starts at ``offset``.

    A level-k frame owns k Alice labels.  Level 1 copies its single assigned
    Bob sequence.  Above that, the last label is held in reserve while the
    child frame (level k-1, same offset) plays the opened Bob sequences; once
    2^(k-1) of them are open the reserve defeats them and a fresh child
    restarts past everything written so far.
    """

    level: int
    offset: int
    labels: tuple[int, ...]
    assigned: list[int] = field(default_factory=list)
    killed: set[int] = field(default_factory=set)
    phase: Phase = Phase.PRE_TRIGGER
    child: Optional["StrategyFrame"] = None

    def __post_init__(self):
        assert len(self.labels) == self.level
        if self.level >= 2:
            self.child = StrategyFrame(self.level - 1, self.offset, self.working_labels)

    @property
    def reserved_label(self) -> Optional[int]:
        return self.labels[-1] if self.level >= 2 else None

    @property
    def working_labels(self) -> tuple[int, ...]:
        return self.labels[:-1] if self.level >= 2 else self.labels

    @property
    def capacity(self) -> int:
        return 2**self.level - 1

    def assign(self, bob_label: int) -> None:
        self.assigned.append(bob_label)
        if self.phase is Phase.POST_TRIGGER:
            self.child.assign(bob_label)

    def chain(self) -> list["StrategyFrame"]:
        frames = [self]
        while frames[-1].child is not None:
            frames.append(frames[-1].child)
        return frames

    def step(self, state: GameState, pen: _Pen, events: list[TriggerEvent]) -> None:
        if self.level == 1:
            self._copy(state, pen)
            return
        if self.phase is Phase.POST_TRIGGER:
            pen.append(self.reserved_label, 0)
            self.child.step(state, pen, events)
            return

        opened = [j for j in self.assigned if len(state.bob[j]) > self.offset]
        if len(opened) >= 2 ** (self.level - 1):
            self._trigger(state, pen, opened, events)
            return
        known = set(self.child.assigned)
        for j in sorted(j for j in opened if j not in known):
            self.child.assign(j)
        self.child.step(state, pen, events)

    def _trigger(self, state, pen, opened, events):
        reserved = self.reserved_label
        assert pen.lengths[reserved] == self.offset, "reserved sequence touched before its trigger"
        value = 1 + max(state.bob[j].terms[self.offset] for j in opened)
        pen.append(reserved, value)
        pen.declare(reserved)
        self.killed = set(opened)

        restart = max([self.offset] + [pen.lengths[w] for w in self.working_labels])
        for w in self.working_labels:
            while pen.lengths[w] < restart:
                pen.append(w, 0)
        self.child = StrategyFrame(self.level - 1, restart, self.working_labels)
        for j in self.assigned:
            if j not in self.killed:
                self.child.assign(j)
        self.phase = Phase.POST_TRIGGER
        events.append(TriggerEvent(pen.turn, self.level, self.offset, reserved, value, tuple(sorted(opened)), restart))
        self.child.step(state, pen, events)

    def _copy(self, state, pen):
        if not self.assigned:
            return
        j = self.assigned[0]
        label = self.labels[0]
        bob = state.bob[j]
        assert pen.lengths[label] >= self.offset
        for t in range(pen.lengths[label], len(bob)):
            pen.append(label, bob.terms[t])
        if bob.live and pen.lengths[label] > self.offset:
            pen.declare(label)


class AliceInductive(Strategy):
    def __init__(self, a: int, enforce_capacity: bool = True):
        self.a = a
        self.enforce_capacity = enforce_capacity

    @property
    def name(self) -> str:
        return f"alice_inductive(a={self.a})"

    def start(self, config, side):
        super().start(config, side)
        if side is not Side.ALICE:
            raise CapacityMismatch("alice_inductive plays Alice")
        if config.a != self.a:
            raise CapacityMismatch(f"alice_inductive(a={self.a}) in a game with a={config.a}")
        if self.enforce_capacity and config.b >= 2**self.a:
            raise CapacityMismatch(f"alice_inductive(a={self.a}) needs b <= {2**self.a - 1}, got b={config.b}")
        self.root = StrategyFrame(self.a, 0, tuple(range(self.a)))
        for j in range(config.b):
            self.root.assign(j)
        self.events: list[TriggerEvent] = []

    def move(self, state):
        pen = _Pen(state)
        self.root.step(state, pen, self.events)
        return MoveBatch(Side.ALICE, tuple(pen.appends)), tuple(pen.declared)


def alice_inductive(a: int, enforce_capacity: bool = True) -> AliceInductive:
    return AliceInductive(a, enforce_capacity)


# -- adversaries -----------------------------------------------------------


class Skipper(Strategy):
    name = "skipper"

    def move(self, state):
        return MoveBatch.skip(self.side), ()


class RandomGrower(Strategy):
    """Fixed live set declared up front; random terms; finite noise elsewhere."""

    def __init__(self, seed: int = 0, live: Optional[Iterable[int]] = None, rate: int = 1, noise_turns: int = 32):
        if rate < 1:
            raise ValueError("rate must be at least 1")
        self.seed = seed
        self.live_param = None if live is None else frozenset(live)
        self.rate = rate
        self.noise_turns = noise_turns

    @property
    def name(self) -> str:
        live = "auto" if self.live_param is None else _fmt_set(self.live_param)
        return f"random_grower(seed={self.seed},live={live})"

    def start(self, config, side):
        super().start(config, side)
        n = config.count(side)
        self._rng = _rng(self.seed, 1, 0 if side is Side.ALICE else 1)
        if self.live_param is None:
            live = {i for i in range(n) if self._rng.random() < 0.5}
            if not live:
                live = {int(self._rng.integers(n))}
        else:
            live = set(self.live_param)
            if any(not 0 <= i < n for i in live):
                raise LabelOutOfRange(f"live set {_fmt_set(live)} outside 0..{n - 1}")
        self.live = sorted(live)
        self._idle = {i: 0 for i in self.live}
        self._turns = 0

    def move(self, state):
        self._turns += 1
        rng = self._rng
        appends = []
        for i in self.live:
            count = int(rng.integers(0, self.rate + 1))
            if count == 0 and self._idle[i] >= 3:
                count = 1
            self._idle[i] = 0 if count else self._idle[i] + 1
            appends += [(i, int(rng.integers(VALUE_RANGE))) for _ in range(count)]
        if self._turns <= self.noise_turns:
            for i in range(self.config.count(self.side)):
                if i not in self._idle and rng.random() < 0.25:
                    appends.append((i, int(rng.integers(VALUE_RANGE))))
        declared = tuple(self.live) if self._turns == 1 else ()
        return MoveBatch(self.side, tuple(appends)), declared


class Burst(Strategy):
    """Silent for ``delay`` turns, then opens ``m`` labels at once and keeps them growing."""

    def __init__(self, delay: int = 10, m: Optional[int] = None, seed: int = 0):
        self.delay = delay
        self.m = m
        self.seed = seed

    @property
    def name(self) -> str:
        return f"burst(D={self.delay},m={'all' if self.m is None else self.m})"

    def start(self, config, side):
        super().start(config, side)
        n = config.count(side)
        self._open = list(range(n if self.m is None else min(self.m, n)))
        self._rng = _rng(self.seed, 2)
        self._turns = 0

    def move(self, state):
        self._turns += 1
        if self._turns <= self.delay:
            return MoveBatch.skip(self.side), ()
        appends = tuple((i, int(self._rng.integers(VALUE_RANGE))) for i in self._open)
        declared = tuple(self._open) if self._turns == self.delay + 1 else ()
        return MoveBatch(self.side, appends), declared


class TriggerBaiter(Strategy):
    """Bob opens exactly 2^(k-1) labels at once, then the rest one at a time."""

    def __init__(self, k: Optional[int] = None, spacing: int = 8, seed: int = 0):
        self.k = k
        self.spacing = spacing
        self.seed = seed

    @property
    def name(self) -> str:
        return f"trigger_baiter(k={'a' if self.k is None else self.k},spacing={self.spacing})"

    def start(self, config, side):
        if side is not Side.BOB:
            raise UnknownKind("trigger_baiter plays Bob")
        super().start(config, side)
        k = config.a if self.k is None else self.k
        self._first = min(2 ** (k - 1), config.b)
        self._opened = 0
        self._rng = _rng(self.seed, 3)
        self._turns = 0

    def move(self, state):
        self._turns += 1
        declared = []
        if self._turns == 1:
            declared = list(range(self._first))
            self._opened = self._first
        elif (self._turns - 1) % self.spacing == 0 and self._opened < self.config.b:
            declared = [self._opened]
            self._opened += 1
        appends = tuple((j, int(self._rng.integers(VALUE_RANGE))) for j in range(self._opened))
        return MoveBatch(Side.BOB, appends), tuple(declared)


class Copycat(Strategy):
    """Alice label 0 mirrors Bob label 0."""

    name = "copycat"

    def start(self, config, side):
        if side is not Side.ALICE:
            raise UnknownKind("copycat plays Alice")
        super().start(config, side)

    def move(self, state):
        bob = state.bob[0]
        mine = len(state.alice[0])
        appends = tuple((0, v) for v in bob.terms[mine:])
        declared = (0,) if bob.live and not state.alice[0].live and (mine or appends) else ()
        return MoveBatch(Side.ALICE, appends), declared


ADVERSARY_KINDS = {
    "RandomGrower": RandomGrower,
    "Burst": Burst,
    "TriggerBaiter": TriggerBaiter,
    "Copycat": Copycat,
    "Skipper": Skipper,
}


def make_adversary(kind: str, side: Side, **params) -> Strategy:
    """Build an adversary by kind name.  ``side`` is checked when the match starts."""
    try:
        cls = ADVERSARY_KINDS[kind]
    except KeyError:
        raise UnknownKind(f"unknown adversary kind {kind!r}; choose from {sorted(ADVERSARY_KINDS)}") from None
    if kind == "TriggerBaiter" and side is not Side.BOB:
        raise UnknownKind("TriggerBaiter is a Bob adversary")
    if kind == "Copycat" and side is not Side.ALICE:
        raise UnknownKind("Copycat is an Alice adversary")
    return cls(**params)

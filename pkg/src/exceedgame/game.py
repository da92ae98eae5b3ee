"""Sequence-exceedance game: state, moves, witnesses and verdicts.

Alice owns ``a`` sequences and Bob owns ``b``.  Both only ever append.  Bob
wins in the limit if one of his infinite sequences strictly exceeds every
infinite sequence of Alice at every index.  A finite run cannot observe
infinity, so each player publicly declares which sequences are *live*
(committed to grow forever), and the referee certifies Alice's side with
permanent witnesses: a live Alice sequence and an index where it is at
least as large as the Bob sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence as Seq

MAX_VALUE = 2**63 - 1
FAIRNESS_WINDOW = 4


class GameError(Exception):
    """Base class for game engine errors."""


class DegenerateConfig(GameError, ValueError):
    pass


class UnknownLabel(GameError, IndexError):
    pass


class WrongSide(GameError, ValueError):
    pass


class ValueOverflow(GameError, OverflowError):
    pass


class MalformedTrace(GameError, ValueError):
    def __init__(self, message: str, record_index: Optional[int] = None):
        if record_index is not None:
            message = f"record {record_index}: {message}"
        super().__init__(message)
        self.record_index = record_index


class Side(str, enum.Enum):
    ALICE = "alice"
    BOB = "bob"

    @property
    def other(self) -> "Side":
        return Side.BOB if self is Side.ALICE else Side.ALICE


class Verdict(str, enum.Enum):
    ALICE_WIN_WITNESSED = "AliceWinWitnessed"
    BOB_LEADING = "BobLeading"


@dataclass(frozen=True)
class GameConfig:
    a: int
    b: int
    max_rounds: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise DegenerateConfig(f"need a >= 1 and b >= 1, got a={self.a}, b={self.b}")
        if self.max_rounds < 1:
            raise DegenerateConfig(f"max_rounds must be positive, got {self.max_rounds}")
        if not 0 <= self.seed < 2**64:
            raise DegenerateConfig(f"seed must fit in 64 unsigned bits, got {self.seed}")

    def count(self, side: Side) -> int:
        return self.a if side is Side.ALICE else self.b


@dataclass(frozen=True)
class Sequence:
    terms: tuple[int, ...] = ()
    live: bool = False

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class MoveBatch:
    side: Side
    appends: tuple[tuple[int, int], ...] = ()

    @classmethod
    def skip(cls, side: Side) -> "MoveBatch":
        return cls(side, ())


@dataclass(frozen=True)
class Witness:
    bob_label: int
    alice_label: int
    index: int


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    alice: tuple[Sequence, ...]
    bob: tuple[Sequence, ...]
    turn: int = 0
    history: tuple[MoveBatch, ...] = field(default=(), repr=False)

    def sequences(self, side: Side) -> tuple[Sequence, ...]:
        return self.alice if side is Side.ALICE else self.bob

    def seq(self, side: Side, label: int) -> Sequence:
        _check_label(self.config, side, label)
        return self.sequences(side)[label]

    def live_labels(self, side: Side) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sequences(side)) if s.live)

    def lengths(self, side: Side) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sequences(side))


def _check_label(config: GameConfig, side: Side, label: int) -> None:
    n = config.count(side)
    if not isinstance(label, int) or not 0 <= label < n:
        raise UnknownLabel(f"{side.value} label {label!r} out of range 0..{n - 1}")


def _check_value(value: int) -> None:
    if not isinstance(value, int) or value < 0:
        raise ValueOverflow(f"term {value!r} is not a natural number")
    if value > MAX_VALUE:
        raise ValueOverflow(f"term {value} exceeds the engine cap 2^63-1")


def new_game(config: GameConfig) -> GameState:
    return GameState(
        config=config,
        alice=tuple(Sequence() for _ in range(config.a)),
        bob=tuple(Sequence() for _ in range(config.b)),
    )


def apply_batch(state: GameState, batch: MoveBatch) -> GameState:
    """Append every term of ``batch`` in order and advance the turn counter."""
    side = Side(batch.side)
    pending: dict[int, list[int]] = {}
    for label, value in batch.appends:
        _check_label(state.config, side, label)
        _check_value(value)
        pending.setdefault(label, []).append(value)

    seqs = list(state.sequences(side))
    for label, values in pending.items():
        old = seqs[label]
        seqs[label] = Sequence(old.terms + tuple(values), old.live)
    kw = {"alice": tuple(seqs)} if side is Side.ALICE else {"bob": tuple(seqs)}
    return replace(state, turn=state.turn + 1, history=state.history + (batch,), **kw)


def declare_live(state: GameState, side: Side, label: int) -> GameState:
    seq = state.seq(side, label)
    if seq.live:
        return state
    seqs = list(state.sequences(side))
    seqs[label] = Sequence(seq.terms, True)
    kw = {"alice": tuple(seqs)} if side is Side.ALICE else {"bob": tuple(seqs)}
    return replace(state, **kw)


def find_witness(state: GameState, bob_label: int) -> Optional[Witness]:
    """Smallest index, then smallest Alice label, where a live Alice term is >= Bob's."""
    bob = state.seq(Side.BOB, bob_label).terms
    live = [(i, s.terms) for i, s in enumerate(state.alice) if s.live]
    horizon = max((min(len(bob), len(t)) for _, t in live), default=0)
    for t in range(horizon):
        for i, terms in live:
            if t < len(terms) and t < len(bob) and terms[t] >= bob[t]:
                return Witness(bob_label, i, t)
    return None


def verdict(state: GameState) -> Verdict:
    for j, s in enumerate(state.bob):
        if s.live and find_witness(state, j) is None:
            return Verdict.BOB_LEADING
    return Verdict.ALICE_WIN_WITNESSED


class WitnessIndex:
    """Incremental witness search over a growing game.

    Terms never change, so for each (Bob label, Alice label) pair the first
    index where Alice catches up is found once and scanning resumes where it
    stopped.  Answers agree with :func:`find_witness` on every state fed in
    order through :meth:`update`.
    """

    def __init__(self, config: GameConfig):
        self.config = config
        self._scanned = [[0] * config.a for _ in range(config.b)]
        self._first: list[list[Optional[int]]] = [[None] * config.a for _ in range(config.b)]
        self._state: Optional[GameState] = None

    def update(self, state: GameState) -> None:
        for j, bob in enumerate(state.bob):
            bt = bob.terms
            for i, alice in enumerate(state.alice):
                if self._first[j][i] is not None:
                    continue
                at = alice.terms
                stop = min(len(at), len(bt))
                t = self._scanned[j][i]
                while t < stop:
                    if at[t] >= bt[t]:
                        self._first[j][i] = t
                        break
                    t += 1
                self._scanned[j][i] = t
        self._state = state

    def witness(self, bob_label: int) -> Optional[Witness]:
        assert self._state is not None, "update() must be called first"
        best = None
        for i, alice in enumerate(self._state.alice):
            t = self._first[bob_label][i]
            if alice.live and t is not None and (best is None or t < best[0]):
                best = (t, i)
        return None if best is None else Witness(bob_label, best[1], best[0])

    def verdict(self) -> Verdict:
        assert self._state is not None, "update() must be called first"
        for j, s in enumerate(self._state.bob):
            if s.live and self.witness(j) is None:
                return Verdict.BOB_LEADING
        return Verdict.ALICE_WIN_WITNESSED

    def unwitnessed(self) -> list[int]:
        assert self._state is not None
        return [j for j, s in enumerate(self._state.bob) if s.live and self.witness(j) is None]


def exceeds_on_common(bob: Seq[int], alice: Seq[int]) -> bool:
    return all(x > y for x, y in zip(bob, alice))


def live_sets(state: GameState) -> dict[str, list[int]]:
    return {
        "alice": list(state.live_labels(Side.ALICE)),
        "bob": list(state.live_labels(Side.BOB)),
    }


def declare_many(state: GameState, side: Side, labels: Iterable[int]) -> GameState:
    for label in labels:
        state = declare_live(state, side, label)
    return state

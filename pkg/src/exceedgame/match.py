"""Running matches, recording traces, and replaying them for verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Optional, Union

from exceedgame.game import (
    FAIRNESS_WINDOW,
    GameConfig,
    GameError,
    GameState,
    MalformedTrace,
    MoveBatch,
    Side,
    Verdict,
    WitnessIndex,
    WrongSide,
    _check_value,
    apply_batch,
    declare_live,
    new_game,
)

if TYPE_CHECKING:
    from exceedgame.strategies import Strategy

FORMAT_VERSION = 1


@dataclass(frozen=True)
class TraceRecord:
    turn: int
    side: Side
    appends: tuple[tuple[int, ...], ...]
    # Full live sets after the turn, so a shrinking set is visible on replay.
    live_alice: tuple[int, ...]
    live_bob: tuple[int, ...]
    verdict: Verdict

    def to_json(self) -> dict:
        return {
            "turn": self.turn,
            "side": self.side.value,
            "appends": [list(a) for a in self.appends],
            "live": {"alice": list(self.live_alice), "bob": list(self.live_bob)},
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class Trace:
    config: GameConfig
    rounds: int
    alice_strategy: str
    bob_strategy: str
    records: tuple[TraceRecord, ...]
    final_state: Optional[GameState] = field(default=None, compare=False, repr=False)

    @property
    def final_verdict(self) -> Optional[Verdict]:
        return self.records[-1].verdict if self.records else None

    def header(self) -> dict:
        return {
            "a": self.config.a,
            "b": self.config.b,
            "rounds": self.rounds,
            "seed": self.config.seed,
            "alice_strategy": self.alice_strategy,
            "bob_strategy": self.bob_strategy,
            "format_version": FORMAT_VERSION,
        }

    def dumps(self) -> str:
        lines = [json.dumps(self.header(), separators=(",", ":"))]
        lines += [json.dumps(r.to_json(), separators=(",", ":")) for r in self.records]
        return "\n".join(lines) + "\n"

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps())


def run_match(
    config: GameConfig,
    alice: "Strategy",
    bob: "Strategy",
    rounds: Optional[int] = None,
) -> Trace:
    """Play ``rounds`` full rounds, Alice first, recording a verdict after every turn."""
    rounds = config.max_rounds if rounds is None else rounds
    if rounds < 1:
        raise ValueError("rounds must be positive")
    alice.start(config, Side.ALICE)
    bob.start(config, Side.BOB)

    state = new_game(config)
    index = WitnessIndex(config)
    records = []
    for _ in range(rounds):
        for side, player in ((Side.ALICE, alice), (Side.BOB, bob)):
            batch, declared = player.move(state)
            if batch.side is not side:
                raise WrongSide(f"{player.name} produced a {batch.side.value} batch on {side.value}'s turn")
            turn = state.turn
            state = apply_batch(state, batch)
            for label in declared:
                state = declare_live(state, side, label)
            index.update(state)
            records.append(
                TraceRecord(
                    turn=turn,
                    side=side,
                    appends=tuple(batch.appends),
                    live_alice=state.live_labels(Side.ALICE),
                    live_bob=state.live_labels(Side.BOB),
                    verdict=index.verdict(),
                )
            )
    return Trace(config, rounds, alice.name, bob.name, tuple(records), final_state=state)


# -- trace files -----------------------------------------------------------


def _parse_record(obj: dict, k: int) -> TraceRecord:
    try:
        appends = []
        for entry in obj["appends"]:
            if not isinstance(entry, list) or len(entry) not in (2, 3):
                raise MalformedTrace(f"bad append entry {entry!r}", k)
            appends.append(tuple(int(x) for x in entry))
        live = obj["live"]
        return TraceRecord(
            turn=int(obj["turn"]),
            side=Side(obj["side"]),
            appends=tuple(appends),
            live_alice=tuple(int(x) for x in live["alice"]),
            live_bob=tuple(int(x) for x in live["bob"]),
            verdict=Verdict(obj["verdict"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedTrace):
            raise
        raise MalformedTrace(f"cannot parse record: {exc}", k) from exc


def loads_trace(text: str) -> Trace:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedTrace("empty trace")
    try:
        header = json.loads(lines[0])
        if header.get("format_version") != FORMAT_VERSION:
            raise MalformedTrace(f"unsupported format_version {header.get('format_version')!r}", 0)
        config = GameConfig(a=header["a"], b=header["b"], max_rounds=header["rounds"], seed=header["seed"])
    except (KeyError, TypeError, json.JSONDecodeError, GameError) as exc:
        if isinstance(exc, MalformedTrace):
            raise
        raise MalformedTrace(f"bad header: {exc}", 0) from exc
    records = []
    for k, line in enumerate(lines[1:], start=1):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedTrace(f"invalid JSON: {exc}", k) from exc
        records.append(_parse_record(obj, k))
    return Trace(config, header["rounds"], header["alice_strategy"], header["bob_strategy"], tuple(records))


def read_trace(path: Union[str, Path]) -> Trace:
    return loads_trace(Path(path).read_text())


# -- replay ----------------------------------------------------------------


@dataclass
class Report:
    turns: int = 0
    violations: list[str] = field(default_factory=list)
    fairness: list[str] = field(default_factory=list)
    final_verdict: Optional[Verdict] = None

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_trace(trace: Trace) -> Report:
    """Replay ``trace`` from the empty position and list every broken rule.

    Integrity violations (append-only writes, monotone liveness, verdicts that
    disagree with the replay, a witnessed verdict reverting while Bob's live
    set is frozen) go to ``violations``.  Live sequences that go more than
    ``FAIRNESS_WINDOW`` of their owner's turns without an append are listed
    separately in ``fairness``.
    """
    config = trace.config
    report = Report()
    state = new_game(config)
    index = WitnessIndex(config)
    # (turn of last witnessed verdict, Bob live set at that time)
    witnessed_since: Optional[tuple[int, tuple[int, ...]]] = None
    own_turns = {Side.ALICE: 0, Side.BOB: 0}
    last_touch: dict[tuple[Side, int], int] = {}
    reported_lapse: set[tuple[Side, int]] = set()

    for k, rec in enumerate(trace.records):
        expected_side = Side.ALICE if k % 2 == 0 else Side.BOB
        if rec.turn != k:
            raise MalformedTrace(f"turn {rec.turn} where {k} was expected", k + 1)
        if rec.side is not expected_side:
            raise MalformedTrace(f"{rec.side.value} moved on {expected_side.value}'s turn", k + 1)
        n_own = config.count(rec.side)
        for label in (*(a[0] for a in rec.appends), *rec.live_alice, *rec.live_bob):
            if label < 0:
                raise MalformedTrace(f"negative label {label}", k + 1)
        for lab in rec.live_alice:
            if lab >= config.a:
                raise MalformedTrace(f"alice live label {lab} out of range", k + 1)
        for lab in rec.live_bob:
            if lab >= config.b:
                raise MalformedTrace(f"bob live label {lab} out of range", k + 1)

        side = rec.side
        plain: list[tuple[int, int]] = []
        lengths = list(state.lengths(side))
        for entry in rec.appends:
            label, value = entry[0], entry[1]
            if label >= n_own:
                raise MalformedTrace(f"{side.value} label {label} out of range", k + 1)
            try:
                _check_value(value)
            except GameError as exc:
                raise MalformedTrace(str(exc), k + 1) from exc
            if len(entry) == 3 and entry[2] != lengths[label]:
                report.violations.append(
                    f"append-only broken at turn {k}: {side.value}#{label} write at index "
                    f"{entry[2]} but length is {lengths[label]}"
                )
                continue
            plain.append((label, value))
            lengths[label] += 1
        state = apply_batch(state, MoveBatch(side, tuple(plain)))

        for s, recorded in ((Side.ALICE, rec.live_alice), (Side.BOB, rec.live_bob)):
            current = set(state.live_labels(s))
            if not current <= set(recorded):
                report.violations.append(
                    f"liveness not monotone at turn {k}: {s.value} labels "
                    f"{sorted(current - set(recorded))} stopped being live"
                )
            for lab in recorded:
                state = declare_live(state, s, lab)

        index.update(state)
        v = index.verdict()
        if v is not rec.verdict:
            report.violations.append(f"verdict mismatch at turn {k}: recorded {rec.verdict.value}, replay {v.value}")

        bob_live = state.live_labels(Side.BOB)
        if witnessed_since is not None and bob_live != witnessed_since[1]:
            witnessed_since = None
        if rec.verdict is Verdict.ALICE_WIN_WITNESSED or v is Verdict.ALICE_WIN_WITNESSED:
            if witnessed_since is None:
                witnessed_since = (k, bob_live)
        if witnessed_since is not None and Verdict.BOB_LEADING in (rec.verdict, v):
            report.violations.append(
                f"verdict not permanent at turn {k}: witnessed since turn {witnessed_since[0]} "
                f"with Bob live set unchanged"
            )
            witnessed_since = None

        own_turns[side] += 1
        for label, _ in plain:
            last_touch[(side, label)] = own_turns[side]
        for lab in state.live_labels(side):
            key = (side, lab)
            last_touch.setdefault(key, own_turns[side])
            if own_turns[side] - last_touch[key] >= FAIRNESS_WINDOW and key not in reported_lapse:
                report.fairness.append(
                    f"{side.value}#{lab} live but not extended for {FAIRNESS_WINDOW} own turns (turn {k})"
                )
                reported_lapse.add(key)
            if last_touch[key] == own_turns[side]:
                reported_lapse.discard(key)

    report.turns = len(trace.records)
    report.final_verdict = trace.records[-1].verdict if trace.records else None
    return report


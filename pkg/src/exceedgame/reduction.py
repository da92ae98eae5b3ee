"""From the game back to complexity: Bob runs every short program, Alice still wins.

Blind Bob feeds sequence j with the values of the j-th program on inputs
0, 1, 2, ...  Alice plays her inductive strategy with a = 2^n sequences.
Every sequence she produces is fixed by n and its label, so it has a short
description, yet no short total program exceeds all of her live sequences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from exceedgame.game import GameConfig, MoveBatch, Side, Verdict, Witness, WitnessIndex
from exceedgame.machine import Halted, MachineParams, Program, budgeted_totality, program_list, run_profile
from exceedgame.match import Trace, run_match
from exceedgame.strategies import AliceInductive, Strategy, StrategyError


class InsufficientPrograms(StrategyError):
    pass


class DemoInconclusive(Exception):
    def __init__(self, message: str, report: "DemoReport"):
        super().__init__(message)
        self.report = report


def short_programs(count: int, params: MachineParams) -> list[Program]:
    """The first ``count`` programs in length-lex order, within ``params.L`` bits."""
    progs = program_list(params.L)
    if len(progs) < count:
        raise InsufficientPrograms(f"need {count} programs, only {len(progs)} have at most {params.L} bits")
    return list(progs[:count])


class BlindBob(Strategy):
    """Bob label j shows the outputs of program j on 0, 1, 2, ... and never looks at Alice."""

    def __init__(self, a: int, params: MachineParams, programs: Optional[Sequence[Program]] = None):
        self.a = a
        self.params = params
        self.b = 2**a - 1
        self.programs = list(programs) if programs is not None else short_programs(self.b, params)
        if len(self.programs) < self.b:
            raise InsufficientPrograms(f"blind Bob needs {self.b} programs, got {len(self.programs)}")
        self.programs = self.programs[: self.b]
        self.total = [budgeted_totality(p, params) for p in self.programs]

    @property
    def name(self) -> str:
        p = self.params
        return f"blind_bob(a={self.a},K={p.K},S={p.S},L={p.L})"

    def start(self, config, side):
        if side is not Side.BOB:
            raise StrategyError("blind Bob plays Bob")
        if config.b != self.b:
            raise StrategyError(f"blind_bob(a={self.a}) runs {self.b} programs but the game has b={config.b}")
        super().start(config, side)
        self._budget = [1] * self.b
        self._stuck = [False] * self.b
        self._lengths = [0] * self.b
        self._turns = 0

    def move(self, state):
        # reads only its own bookkeeping, never ``state``
        self._turns += 1
        appends = []
        for j, p in enumerate(self.programs):
            if self._stuck[j]:
                continue
            x = self._lengths[j]
            result, steps = run_profile(p, x, self.params.S)
            # widen this label's budget until the run fits or the cap is hit
            while self._budget[j] < steps and self._budget[j] < self.params.S:
                self._budget[j] = min(2 * self._budget[j], self.params.S)
            if isinstance(result, Halted) and steps <= self._budget[j]:
                appends.append((j, result.value))
                self._lengths[j] += 1
            else:
                self._stuck[j] = True
        declared = tuple(j for j, t in enumerate(self.total) if t) if self._turns == 1 else ()
        return MoveBatch(Side.BOB, tuple(appends)), declared


def blind_bob_strategy(a: int, params: MachineParams, programs: Optional[Sequence[Program]] = None) -> BlindBob:
    return BlindBob(a, params, programs)


@dataclass
class BobLabelRecord:
    label: int
    program: str
    bits: int
    total: bool
    witness: Optional[Witness]

    def to_json(self) -> dict:
        w = self.witness
        return {
            "label": self.label,
            "program": self.program,
            "bits": self.bits,
            "total": self.total,
            "witness": None if w is None else {"alice": w.alice_label, "index": w.index},
        }


@dataclass
class DescriptionRecord:
    """What determines one Alice sequence: n, the label, and the shared fixed context."""

    label: int
    n: int
    index_bits: int
    context: dict

    def to_json(self) -> dict:
        return {"label": self.label, "n": self.n, "index_bits": self.index_bits, "context": self.context}


@dataclass
class DemoReport:
    n: int
    a: int
    b: int
    rounds: int
    params: MachineParams
    verdict: Verdict
    bob: list[BobLabelRecord]
    alice: list[DescriptionRecord]
    length_cut: int
    length_cut_note: str
    trace: Optional[Trace] = field(default=None, repr=False)

    @property
    def unwitnessed(self) -> list[int]:
        return [r.label for r in self.bob if r.total and r.witness is None]

    def records(self) -> list[dict]:
        head = {
            "n": self.n,
            "a": self.a,
            "b": self.b,
            "rounds": self.rounds,
            "K": self.params.K,
            "S": self.params.S,
            "L": self.params.L,
            "verdict": self.verdict.value,
            "length_cut": self.length_cut,
            "note": self.length_cut_note,
        }
        return [head] + [{"bob": r.to_json()} for r in self.bob] + [{"alice": d.to_json()} for d in self.alice]

    def dumps(self) -> str:
        return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in self.records())

    def render(self) -> str:
        lines = [
            f"n={self.n}  a={self.a}  b={self.b}  rounds={self.rounds}  verdict={self.verdict.value}",
            f"programs: first {self.b} in length-lex order, longest {self.length_cut} bits",
            f"{'label':>5}  {'program':<24} {'total':<5}  {'witness':<16}",
        ]
        state = self.trace.final_state if self.trace is not None else None
        for r in self.bob:
            w = "-"
            if r.witness is not None:
                w = f"alice#{r.witness.alice_label} t={r.witness.index}"
                if state is not None:
                    av = state.alice[r.witness.alice_label].terms[r.witness.index]
                    bv = state.bob[r.label].terms[r.witness.index]
                    w += f" ({av}>={bv})"
            lines.append(f"{r.label:>5}  {r.program:<24} {'yes' if r.total else 'no':<5}  {w}")
        for d in self.alice:
            lines.append(f"alice#{d.label}: described by n={d.n} plus a {d.index_bits}-bit label index")
        return "\n".join(lines)


def lower_bound_demo(n: int, rounds: int, params: MachineParams, seed: int = 0, check: bool = True) -> DemoReport:
    """Alice with a = 2^n sequences against blind Bob running the first 2^a - 1 programs.

    Raises :class:`DemoInconclusive` (carrying the report) if some live Bob
    label is still unwitnessed at the horizon, unless ``check`` is false.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    a = 2**n
    b = 2**a - 1
    bob = blind_bob_strategy(a, params)
    alice = AliceInductive(a)
    config = GameConfig(a=a, b=b, max_rounds=rounds, seed=seed)
    trace = run_match(config, alice, bob, rounds)
    state = trace.final_state
    index = WitnessIndex(config)
    index.update(state)
    verdict = index.verdict()

    bob_records = [
        BobLabelRecord(j, str(p), p.bit_length, bob.total[j], index.witness(j) if state.bob[j].live else None)
        for j, p in enumerate(bob.programs)
    ]
    context = {"engine": alice.name, "opponent": bob.name, "rounds": rounds}
    alice_records = [DescriptionRecord(i, n, n, context) for i in range(a)]
    cut = max(p.bit_length for p in bob.programs)
    note = (
        f"the first {b} programs stand in for all programs shorter than {a} bits; "
        f"their longest encoding is {cut} bits"
    )
    report = DemoReport(n, a, b, rounds, params, verdict, bob_records, alice_records, cut, note, trace)
    if check and verdict is not Verdict.ALICE_WIN_WITNESSED:
        raise DemoInconclusive(f"live Bob labels {report.unwitnessed} are unwitnessed after {rounds} rounds", report)
    return report

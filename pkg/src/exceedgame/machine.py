"""A tiny stack machine whose programs play the role of "programs of length n".

Every instruction is a 3-bit opcode.  The conditional jump has two opcodes,
backward and forward, each followed by a 3-bit distance field.  Program length is measured in bits of this encoding and
programs are ordered length-lex: by bit length, then by the encoding read as
a binary number.

Totality cannot be decided, so it is replaced by budgeted totality: a
program counts as total if it halts within ``S`` steps on every input
``0..K``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Union


class Op(enum.IntEnum):
    INPUT = 0
    PUSH0 = 1
    INC = 2
    DUP = 3
    ADD = 4
    POP = 5
    JNZ_BACK = 6
    JNZ_FWD = 7


JUMPS = (Op.JNZ_BACK, Op.JNZ_FWD)


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class Instr:
    op: Op
    field: int = 0  # jumps only: the 3-bit distance field

    def __post_init__(self):
        if self.op in JUMPS:
            if not 0 <= self.field < 8:
                raise ValueError(f"jump field {self.field} outside 0..7")
        elif self.field:
            raise ValueError(f"{self.op.name} takes no operand")

    @classmethod
    def jnz(cls, rel: int) -> "Instr":
        """Conditional jump by ``rel`` instructions, -7..8; ``JNZ(0)`` jumps to itself."""
        if -7 <= rel <= 0:
            return cls(Op.JNZ_BACK, -rel)
        if 1 <= rel <= 8:
            return cls(Op.JNZ_FWD, rel - 1)
        raise ValueError(f"jump offset {rel} outside -7..8")

    @property
    def rel(self) -> int:
        if self.op is Op.JNZ_BACK:
            return -self.field
        if self.op is Op.JNZ_FWD:
            return self.field + 1
        raise AttributeError(f"{self.op.name} has no jump offset")

    @property
    def bits(self) -> str:
        head = format(int(self.op), "03b")
        return head + format(self.field, "03b") if self.op in JUMPS else head

    def __str__(self) -> str:
        return f"JNZ({self.rel})" if self.op in JUMPS else self.op.name


@dataclass(frozen=True, order=False)
class Program:
    instrs: tuple[Instr, ...]

    @property
    def encoding(self) -> str:
        return "".join(i.bits for i in self.instrs)

    @property
    def bit_length(self) -> int:
        return 3 * len(self.instrs) + 3 * sum(i.op in JUMPS for i in self.instrs)

    @property
    def sort_key(self) -> tuple[int, int]:
        enc = self.encoding
        return (len(enc), int(enc, 2) if enc else 0)

    def __lt__(self, other: "Program") -> bool:
        return self.sort_key < other.sort_key

    def __len__(self) -> int:
        return len(self.instrs)

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.instrs)

    @classmethod
    def parse(cls, text: str) -> "Program":
        """Parse the literal form, e.g. ``"INPUT INC"`` or ``"PUSH0 INC JNZ(-2)"``."""
        instrs = []
        for tok in text.split():
            m = re.fullmatch(r"JNZ\(([-+]?\d+)\)", tok)
            if m:
                try:
                    instrs.append(Instr.jnz(int(m.group(1))))
                except ValueError as exc:
                    raise DecodeError(str(exc)) from None
            elif tok in Op.__members__ and Op[tok] not in JUMPS:
                instrs.append(Instr(Op[tok]))
            else:
                raise DecodeError(f"unknown instruction {tok!r}")
        return cls(tuple(instrs))


def encode(program: Program) -> str:
    return program.encoding


def decode(bits: str) -> Program:
    """Inverse of :func:`encode`.  Raises :class:`DecodeError` on a truncated jump."""
    if len(bits) % 3 or set(bits) - {"0", "1"}:
        raise DecodeError(f"not a multiple of 3 bits: {bits!r}")
    instrs = []
    pos = 0
    while pos < len(bits):
        op = Op(int(bits[pos : pos + 3], 2))
        pos += 3
        if op in JUMPS:
            if pos + 3 > len(bits):
                raise DecodeError("jump opcode without its distance field")
            instrs.append(Instr(op, int(bits[pos : pos + 3], 2)))
            pos += 3
        else:
            instrs.append(Instr(op))
    return Program(tuple(instrs))


# -- execution -------------------------------------------------------------


@dataclass(frozen=True)
class Halted:
    value: int


@dataclass(frozen=True)
class OutOfBudget:
    pass


@dataclass(frozen=True)
class StackFault:
    pass


ExecResult = Union[Halted, OutOfBudget, StackFault]


def _execute(program: Program, x: int, budget: int) -> tuple[ExecResult, int]:
    """Run and return the result with the number of steps taken."""
    code = program.instrs
    n = len(code)
    stack: list[int] = []
    pc = 0
    steps = 0
    while 0 <= pc < n:
        if steps == budget:
            return OutOfBudget(), steps
        steps += 1
        ins = code[pc]
        op = ins.op
        if op is Op.INPUT:
            stack.append(x)
        elif op is Op.PUSH0:
            stack.append(0)
        elif op is Op.INC:
            if not stack:
                return StackFault(), steps
            stack[-1] += 1
        elif op is Op.DUP:
            if not stack:
                return StackFault(), steps
            stack.append(stack[-1])
        elif op is Op.ADD:
            if len(stack) < 2:
                return StackFault(), steps
            top = stack.pop()
            stack[-1] += top
        elif op is Op.POP:
            if not stack:
                return StackFault(), steps
            stack.pop()
        else:
            if not stack:
                return StackFault(), steps
            if stack.pop() != 0:
                pc += ins.rel
                continue
        pc += 1
    return Halted(stack[-1] if stack else 0), steps


def run_program(program: Program, x: int, budget: int) -> ExecResult:
    """Interpret ``program`` on input ``x`` for at most ``budget`` steps.

    Control leaving the program (falling off the end, or a jump outside it)
    halts with the top of the stack, 0 if the stack is empty.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    return _execute(program, x, budget)[0]


@lru_cache(maxsize=None)
def run_profile(program: Program, x: int, budget: int) -> tuple[ExecResult, int]:
    """Cached (result, steps) at ``budget``.

    A run that stops within ``budget`` steps stops the same way under any
    larger budget, so a lower-budget result can be read off the profile with
    :func:`result_at`.
    """
    return _execute(program, x, budget)


def result_at(profile: tuple[ExecResult, int], budget: int) -> ExecResult:
    result, steps = profile
    if isinstance(result, OutOfBudget) or steps > budget:
        return OutOfBudget()
    return result


# -- enumeration and advice ------------------------------------------------


@dataclass(frozen=True)
class MachineParams:
    K: int = 8
    S: int = 256
    L: int = 12

    def __post_init__(self):
        if self.K < 1 or self.S < 1 or self.L < 3:
            raise ValueError(f"need K >= 1, S >= 1, L >= 3; got {self}")


def _programs_of_units(units: int) -> Iterator[tuple[Instr, ...]]:
    if units == 0:
        yield ()
        return
    # ascending opcode order is ascending encoding value
    for op in Op:
        width = 2 if op in JUMPS else 1
        if width > units:
            continue
        heads = [Instr(op, f) for f in range(8)] if op in JUMPS else [Instr(op)]
        for head in heads:
            for tail in _programs_of_units(units - width):
                yield (head,) + tail


def enumerate_programs(max_bits: int) -> Iterator[Program]:
    """Every non-empty program of at most ``max_bits`` bits, in length-lex order."""
    for units in range(1, max_bits // 3 + 1):
        for instrs in _programs_of_units(units):
            yield Program(instrs)


@lru_cache(maxsize=None)
def program_list(max_bits: int) -> tuple[Program, ...]:
    return tuple(enumerate_programs(max_bits))


def program_count(n: int) -> int:
    """Number of programs with bit length at most ``n`` (P_n)."""
    counts = [1, 6]  # programs of exactly u units; u=0 is the empty program
    while len(counts) <= n // 3:
        counts.append(6 * counts[-1] + 16 * counts[-2])
    return sum(counts[1 : n // 3 + 1])


def budgeted_totality(program: Program, params: MachineParams) -> bool:
    return all(isinstance(run_profile(program, x, params.S)[0], Halted) for x in range(params.K + 1))


@dataclass(frozen=True)
class CountAdvice:
    n: int
    count: int
    K: int
    S: int

    @property
    def programs(self) -> int:
        return program_count(self.n)

    @property
    def bit_size(self) -> int:
        return math.ceil(math.log2(self.programs + 1))

    def to_json(self) -> dict:
        return {"n": self.n, "K": self.K, "S": self.S, "count": self.count}


@dataclass(frozen=True)
class BitvectorAdvice:
    n: int
    bits: tuple[bool, ...]
    K: int
    S: int

    def __post_init__(self):
        if len(self.bits) != program_count(self.n):
            raise ValueError(f"expected {program_count(self.n)} flags, got {len(self.bits)}")

    @property
    def bit_size(self) -> int:
        return len(self.bits)

    @property
    def popcount(self) -> int:
        return sum(self.bits)

    def hex(self) -> str:
        if not self.bits:
            return ""
        value = int("".join("1" if b else "0" for b in self.bits), 2)
        return format(value, f"0{(len(self.bits) + 3) // 4}x")

    def to_json(self) -> dict:
        return {"n": self.n, "K": self.K, "S": self.S, "bits": self.hex()}


def _check_n(n: int, params: MachineParams) -> None:
    if not 0 <= n <= params.L:
        raise ValueError(f"n={n} outside 0..L={params.L}")


def advice_bitvector(n: int, params: MachineParams) -> BitvectorAdvice:
    _check_n(n, params)
    flags = tuple(budgeted_totality(p, params) for p in program_list(n))
    return BitvectorAdvice(n, flags, params.K, params.S)


def advice_count(n: int, params: MachineParams) -> CountAdvice:
    _check_n(n, params)
    return CountAdvice(n, sum(budgeted_totality(p, params) for p in program_list(n)), params.K, params.S)


def nth_program(index: int, max_bits: int) -> Optional[Program]:
    progs = program_list(max_bits)
    return progs[index] if index < len(progs) else None

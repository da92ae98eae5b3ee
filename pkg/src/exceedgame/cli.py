"""Command-line entry point: ``exceedgame <command> [flags]``.

Exit status is 0 on success, 1 when a checked property fails or a module
raises, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from exceedgame.dominators import (
    AdviceInconsistent,
    AdviceUnsatisfiable,
    DominatorFunction,
    Kind,
)
from exceedgame.game import GameConfig, GameError, Side
from exceedgame.machine import (
    MachineParams,
    advice_bitvector,
    advice_count,
    budgeted_totality,
    program_list,
    run_profile,
)
from exceedgame.match import read_trace, run_match, verify_trace
from exceedgame.reduction import DemoInconclusive, lower_bound_demo
from exceedgame.suite import ALICE_NAMES, BOB_NAMES, build, default_b, expected_verdict, suite_for

MODULE_ERRORS = (GameError, AdviceUnsatisfiable, AdviceInconsistent, OSError)


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _params(args, n: Optional[int] = None) -> MachineParams:
    L = args.max_bits if getattr(args, "max_bits", None) is not None else max(3, n or 0, 12)
    return MachineParams(K=args.K, S=args.S, L=L)


def cmd_play(args) -> int:
    b = args.b if args.b is not None else default_b(args.bob, args.a)
    config = GameConfig(a=args.a, b=b, max_rounds=args.rounds, seed=args.seed)
    alice = build(args.alice, Side.ALICE, args.a, args.seed)
    bob = build(args.bob, Side.BOB, args.a, args.seed)
    trace = run_match(config, alice, bob, args.rounds)
    if args.trace:
        trace.write(args.trace)
    else:
        sys.stdout.write(trace.dumps())
    print(f"final verdict: {trace.final_verdict.value}", file=sys.stderr if not args.trace else sys.stdout)
    return 0


def cmd_verify(args) -> int:
    report = verify_trace(read_trace(args.trace))
    print(f"{len(report.violations)} violations")
    for v in report.violations:
        print(f"violation: {v}")
    for f in report.fairness:
        print(f"fairness: {f}")
    return 0 if report.ok else 1


def cmd_tournament(args) -> int:
    if (args.alice is None) == (args.bob is None):
        raise _Usage("tournament needs exactly one of --alice or --bob")
    side = Side.ALICE if args.alice is not None else Side.BOB
    name = args.alice if side is Side.ALICE else args.bob
    a = args.a
    b = args.b if args.b is not None else (2**a - 1 if side is Side.ALICE else 2**a)
    want = expected_verdict(side)
    failures = 0
    rows = []
    for opponent in suite_for(side, a, args.seeds, args.seed):
        player = build(name, side, a, args.seed)
        config = GameConfig(a=a, b=b, max_rounds=args.rounds, seed=args.seed)
        alice, bob = (player, opponent) if side is Side.ALICE else (opponent, player)
        trace = run_match(config, alice, bob, args.rounds)
        report = verify_trace(trace)
        ok = trace.final_verdict is want and report.ok
        failures += not ok
        rows.append(
            {
                "alice": alice.name,
                "bob": bob.name,
                "verdict": trace.final_verdict.value,
                "violations": len(report.violations),
                "fairness_lapses": len(report.fairness),
                "ok": ok,
            }
        )
    rows.sort(key=lambda r: (r["alice"], r["bob"]))
    if args.pretty:
        for r in rows:
            print(f"{r['alice']:<40} {r['bob']:<44} {r['verdict']:<18} {'ok' if r['ok'] else 'FAIL'}")
    else:
        for r in rows:
            _emit(r)
    print(f"{len(rows) - failures}/{len(rows)} matches reached {want.value}")
    return 0 if failures == 0 else 1


def cmd_enumerate(args) -> int:
    params = MachineParams(K=args.K, S=args.S, L=max(3, args.max_bits))
    for idx, p in enumerate(program_list(args.max_bits)):
        rec = {
            "index": idx,
            "bits": p.bit_length,
            "encoding": p.encoding,
            "program": str(p),
            "total": budgeted_totality(p, params),
        }
        if args.pretty:
            print(f"{idx:>6} {p.bit_length:>3} {p.encoding:<15} {str(p):<28} {'total' if rec['total'] else '-'}")
        else:
            _emit(rec)
    return 0


def cmd_dominate(args) -> int:
    n = args.n
    params = _params(args, n)
    count = advice_count(n, params)
    bitvec = advice_bitvector(n, params)
    weak = DominatorFunction(Kind.WEAK_FROM_COUNT, count, params)
    strong = DominatorFunction(Kind.STRONG_FROM_BITVECTOR, bitvec, params)
    totals = [p for p, flag in zip(program_list(n), bitvec.bits) if flag]
    rows = []
    for k in range(params.K + 1):
        values = [run_profile(p, k, params.S)[0].value for p in totals]
        rows.append({"k": k, "weak": weak(k), "strong": strong(k), "values": values})

    if args.pretty:
        print(f"n={n} K={params.K} S={params.S}: {len(totals)} budgeted-total programs")
        print(f"{'k':>3} {'weak':>6} {'strong':>6} {'max p(k)':>9}")
        for r in rows:
            print(f"{r['k']:>3} {r['weak']:>6} {r['strong']:>6} {max(r['values'], default='-'):>9}")
    else:
        _emit({"n": n, "K": params.K, "S": params.S, "programs": [str(p) for p in totals]})
        for r in rows:
            _emit(r)
        _emit({"count_advice": count.to_json(), "bitvector_advice": bitvec.to_json()})
    print(f"count advice: {count.bit_size} bits, bitvector advice: {bitvec.bit_size} bits")
    return 0


def cmd_blind_bob(args) -> int:
    params = _params(args)
    try:
        report = lower_bound_demo(args.n, args.rounds, params, seed=args.seed)
        status = 0
    except DemoInconclusive as exc:
        report = exc.report
        print(f"inconclusive: {exc}", file=sys.stderr)
        status = 1
    sys.stdout.write(report.render() + "\n" if args.pretty else report.dumps())
    return status


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exceedgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def machine_flags(p, K=8, S=256):
        p.add_argument("--K", type=int, default=K, help="totality is probed on inputs 0..K")
        p.add_argument("--S", type=int, default=S, help="step budget per run")

    p = sub.add_parser("play", help="run one match and write its trace")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--alice", choices=ALICE_NAMES, default="inductive")
    p.add_argument("--bob", choices=BOB_NAMES, default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=500)
    p.add_argument("--trace")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify", help="replay a trace and list violations")
    p.add_argument("--trace", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tournament", help="one strategy against the adversary suite")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--alice", choices=ALICE_NAMES)
    p.add_argument("--bob", choices=BOB_NAMES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=20, help="number of random-grower seeds")
    p.add_argument("--rounds", type=int, default=1000)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_tournament)

    p = sub.add_parser("machine-enumerate", help="list programs with totality flags")
    p.add_argument("--max-bits", type=int, default=6)
    machine_flags(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dominate", help="weak and strong dominator tables with advice sizes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-bits", type=int)
    machine_flags(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_dominate)

    p = sub.add_parser("blind-bob", help="the lower-bound demo against blind Bob")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--rounds", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-bits", type=int)
    machine_flags(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_blind_bob)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except MODULE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


dispatch = main

if __name__ == "__main__":
    sys.exit(main())

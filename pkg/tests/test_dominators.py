import pytest

import oracle
from exceedgame.dominators import (
    AdviceInconsistent,
    AdviceUnsatisfiable,
    DominatorFunction,
    Kind,
    budget_schedule,
    exceedance_report,
    strong_dominator_eval,
    weak_dominator_eval,
)
from exceedgame.machine import BitvectorAdvice, CountAdvice, MachineParams, advice_bitvector, advice_count

PARAMS = MachineParams(K=4, S=64, L=12)


def test_budget_schedule():
    assert budget_schedule(64) == [1, 2, 4, 8, 16, 32, 64]
    assert budget_schedule(100)[-2:] == [64, 100]
    assert budget_schedule(1) == [1]


def test_strong_table_n6():
    g = DominatorFunction(Kind.STRONG_FROM_BITVECTOR, advice_bitvector(6, PARAMS), PARAMS)
    assert g.table() == [2, 3, 4, 5, 6]  # frozen from the oracle


@pytest.mark.parametrize("n", [3, 6, 9])
def test_strong_matches_oracle(n):
    bv = advice_bitvector(n, PARAMS)
    totals = [p for _, p in oracle.programs(n) if oracle.is_total(p, PARAMS.K, PARAMS.S)]
    for k in range(PARAMS.K + 1):
        assert strong_dominator_eval(bv, k, PARAMS) == 1 + max(oracle.run(p, k, PARAMS.S) for p in totals)


@pytest.mark.parametrize("n", [3, 6, 9])
def test_weak_exceeds_every_total_at_the_top_input(n):
    g = DominatorFunction(Kind.WEAK_FROM_COUNT, advice_count(n, PARAMS), PARAMS)
    totals = [p for _, p in oracle.programs(n) if oracle.is_total(p, PARAMS.K, PARAMS.S)]
    for p in totals:
        rep = exceedance_report(g, lambda k, p=p: oracle.run(p, k, PARAMS.S), PARAMS.K)
        assert rep.weakly_from is not None


def test_zero_advice():
    assert weak_dominator_eval(advice_count(0, PARAMS), 2, PARAMS) == 0
    assert strong_dominator_eval(advice_bitvector(0, PARAMS), 2, PARAMS) == 0


def test_overclaimed_count():
    with pytest.raises(AdviceUnsatisfiable):
        weak_dominator_eval(CountAdvice(3, 6, PARAMS.K, PARAMS.S), 0, PARAMS)


def test_wrong_bitvector():
    with pytest.raises(AdviceInconsistent):
        strong_dominator_eval(BitvectorAdvice(3, (True,) * 6, PARAMS.K, PARAMS.S), 0, PARAMS)


def test_k_range():
    with pytest.raises(ValueError):
        weak_dominator_eval(advice_count(3, PARAMS), PARAMS.K + 1, PARAMS)


def test_exceedance_report():
    rep = exceedance_report(lambda k: k, lambda k: 5, 8)
    assert (rep.everywhere, rep.weakly_from) == (False, 6)
    rep = exceedance_report(lambda k: k + 1, lambda k: k, 8)
    assert (rep.everywhere, rep.weakly_from) == (True, 0)
    rep = exceedance_report(lambda k: 0, lambda k: k, 8)
    assert (rep.everywhere, rep.weakly_from) == (False, None)

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import Scripted, powerset_invariant, states_after_each_turn
from exceedgame.game import GameConfig, Side, Verdict
from exceedgame.match import run_match
from exceedgame.strategies import (
    AliceInductive,
    Burst,
    CapacityMismatch,
    Copycat,
    LabelOutOfRange,
    Phase,
    RandomGrower,
    Skipper,
    TriggerBaiter,
    UnknownKind,
    alice_inductive,
    bob_powerset,
    label_for_subset,
    make_adversary,
    subset_for_label,
)


class TestSubsets:
    def test_examples(self):
        assert subset_for_label(5, 3) == {0, 2}
        assert subset_for_label(0, 3) == frozenset()
        assert label_for_subset({0, 1, 2}, 3) == 7

    def test_out_of_range(self):
        with pytest.raises(LabelOutOfRange):
            subset_for_label(8, 3)

    @given(a=st.integers(1, 6), data=st.data())
    def test_round_trip(self, a, data):
        label = data.draw(st.integers(0, 2**a - 1))
        assert label_for_subset(subset_for_label(label, a), a) == label


class TestPowerset:
    def _play(self, alice_moves, a, rounds):
        config = GameConfig(a=a, b=2**a)
        return run_match(config, Scripted(alice_moves), bob_powerset(a), rounds).final_state

    def test_single_label(self):
        s = self._play([([(0, 3), (0, 7)], [0])], 1, 3)
        assert s.bob[1].terms == (4, 8)
        assert s.bob[0].terms == (1, 1, 1)

    def test_pair_uses_max_and_shorter_length(self):
        s = self._play([([(0, 5), (0, 1), (1, 2)], [0, 1])], 2, 1)
        assert s.bob[3].terms == (6,)
        assert s.bob[1].terms == (6, 2)
        assert s.bob[2].terms == (3,)

    def test_declares_subsets_of_live_alice(self):
        s = self._play([([(0, 1), (1, 1)], [1])], 2, 2)
        assert s.live_labels(Side.BOB) == (0, 2)

    def test_capacity(self):
        with pytest.raises(CapacityMismatch):
            run_match(GameConfig(a=2, b=3), Skipper(), bob_powerset(2), 1)
        with pytest.raises(CapacityMismatch):
            run_match(GameConfig(a=2, b=4), bob_powerset(2), Skipper(), 1)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32), a=st.integers(1, 3))
    def test_invariant_after_every_bob_turn(self, seed, a):
        config = GameConfig(a=a, b=2**a)
        for side, state in states_after_each_turn(config, RandomGrower(seed=seed), bob_powerset(a), 40):
            if side is Side.BOB:
                assert powerset_invariant(state, a)


class TestInductive:
    def test_level_one_copies(self):
        config = GameConfig(a=1, b=1)
        bob = Scripted([([(0, 4)], [0]), ([(0, 9)], [])])
        s = run_match(config, alice_inductive(1), bob, 3).final_state
        assert s.alice[0].terms == (4, 9)
        assert s.alice[0].live
        assert s.bob[0].live

    def test_copy_label_waits_for_a_term(self):
        config = GameConfig(a=1, b=1)
        trace = run_match(config, alice_inductive(1), Scripted([([], [0]), ([(0, 2)], [])]), 3)
        live = [r.live_alice for r in trace.records if r.side is Side.ALICE]
        assert live == [(), (), (0,)]

    def test_trigger_example(self):
        config = GameConfig(a=2, b=3)
        alice = alice_inductive(2)
        bob = Scripted([([(0, 7), (2, 3)], [0, 2]), ([], []), ([(1, 4)], [1])])
        trace = run_match(config, alice, bob, 4)
        s = trace.final_state
        ev = alice.events[0]
        assert (ev.level, ev.offset, ev.reserved_label, ev.value) == (2, 0, 1, 8)
        assert ev.killed == (0, 2)
        assert s.alice[1].terms[0] == 8
        assert alice.root.phase is Phase.POST_TRIGGER
        assert alice.root.child.assigned == [1]
        assert s.alice[0].terms == (4,)
        assert trace.final_verdict is Verdict.ALICE_WIN_WITNESSED

    def test_capacity(self):
        with pytest.raises(CapacityMismatch):
            run_match(GameConfig(a=2, b=4), alice_inductive(2), Skipper(), 1)
        # over capacity is allowed when asked for
        run_match(GameConfig(a=2, b=4), alice_inductive(2, enforce_capacity=False), Skipper(), 1)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32), a=st.integers(1, 3))
    def test_frame_invariants(self, seed, a):
        config = GameConfig(a=a, b=2**a - 1)
        alice = AliceInductive(a)
        bob = RandomGrower(seed=seed)
        for side, state in states_after_each_turn(config, alice, bob, 60):
            if side is not Side.ALICE:
                continue
            chain = alice.root.chain()
            for parent, child in zip(chain, chain[1:]):
                assert child.offset >= parent.offset
                assert child.level == parent.level - 1
                assert set(child.labels) <= set(parent.labels)
            for frame in chain:
                assert len(frame.assigned) <= frame.capacity
                if frame.phase is Phase.PRE_TRIGGER and frame.reserved_label is not None:
                    assert len(state.alice[frame.reserved_label]) == frame.offset
        for ev in alice.events:
            assert state.alice[ev.reserved_label].terms[ev.offset] == ev.value
            for j in ev.killed:
                assert ev.value > state.bob[j].terms[ev.offset]
            assert ev.new_offset >= ev.offset


class TestAdversaries:
    @pytest.mark.parametrize(
        "make",
        [lambda: RandomGrower(seed=3), lambda: Burst(seed=3), lambda: TriggerBaiter(seed=3)],
    )
    def test_deterministic(self, make):
        config = GameConfig(a=2, b=3, seed=3)
        runs = {run_match(config, alice_inductive(2), make(), 50).dumps() for _ in range(3)}
        assert len(runs) == 1

    def test_reusable_after_start(self):
        config = GameConfig(a=2, b=3)
        bob = RandomGrower(seed=5)
        first = run_match(config, Skipper(), bob, 20).dumps()
        assert run_match(config, Skipper(), bob, 20).dumps() == first

    def test_burst_timing(self):
        trace = run_match(GameConfig(a=1, b=2), Skipper(), Burst(delay=10), 12)
        bob = [r for r in trace.records if r.side is Side.BOB]
        assert all(not r.appends for r in bob[:10])
        assert {label for label, _ in bob[10].appends} == {0, 1}
        assert bob[10].live_bob == (0, 1)

    def test_baiter_opens_half_then_one_at_a_time(self):
        trace = run_match(GameConfig(a=3, b=7), Skipper(), TriggerBaiter(spacing=8), 20)
        bob = [r for r in trace.records if r.side is Side.BOB]
        assert bob[0].live_bob == (0, 1, 2, 3)
        assert bob[8].live_bob == (0, 1, 2, 3, 4)
        assert bob[16].live_bob == (0, 1, 2, 3, 4, 5)

    def test_random_grower_keeps_live_labels_growing(self):
        trace = run_match(GameConfig(a=1, b=4), Skipper(), RandomGrower(seed=1, live=[1, 3]), 100)
        s = trace.final_state
        assert s.live_labels(Side.BOB) == (1, 3)
        assert len(s.bob[1]) >= 25 and len(s.bob[3]) >= 25

    def test_random_grower_bad_live_set(self):
        with pytest.raises(LabelOutOfRange):
            run_match(GameConfig(a=1, b=2), Skipper(), RandomGrower(live=[2]), 1)

    def test_copycat(self):
        trace = run_match(GameConfig(a=1, b=1), Copycat(), Scripted([([(0, 2), (0, 5)], [0])]), 3)
        assert trace.final_state.alice[0].terms == (2, 5)
        assert trace.final_verdict is Verdict.ALICE_WIN_WITNESSED

    def test_make_adversary(self):
        assert isinstance(make_adversary("Burst", Side.BOB, delay=3), Burst)
        with pytest.raises(UnknownKind):
            make_adversary("Nope", Side.BOB)
        with pytest.raises(UnknownKind):
            make_adversary("TriggerBaiter", Side.ALICE)

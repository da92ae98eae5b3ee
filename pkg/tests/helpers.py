from exceedgame.game import MoveBatch
from exceedgame.strategies import Strategy


class Scripted(Strategy):
    """Plays a fixed list of (appends, declared) moves, then skips."""

    name = "scripted"

    def __init__(self, moves):
        self.moves = list(moves)

    def start(self, config, side):
        super().start(config, side)
        self._turn = 0

    def move(self, state):
        k = self._turn
        self._turn += 1
        if k < len(self.moves):
            appends, declared = self.moves[k]
            return MoveBatch(self.side, tuple(appends)), tuple(declared)
        return MoveBatch.skip(self.side), ()


def powerset_invariant(state, a):
    """Bob#S has length min_{i in S} |Alice#i| and beats each Alice#i in S at every index."""
    for mask in range(1, 2**a):
        members = [i for i in range(a) if mask >> i & 1]
        bob = state.bob[mask].terms
        if len(bob) != min(len(state.alice[i]) for i in members):
            return False
        for i in members:
            if not all(y > x for x, y in zip(state.alice[i].terms, bob)):
                return False
    return True


def states_after_each_turn(config, alice, bob, rounds):
    """Replay a match turn by turn, yielding (side, state) after every move."""
    from exceedgame.game import Side, apply_batch, declare_live, new_game

    alice.start(config, Side.ALICE)
    bob.start(config, Side.BOB)
    state = new_game(config)
    for _ in range(rounds):
        for side, player in ((Side.ALICE, alice), (Side.BOB, bob)):
            batch, declared = player.move(state)
            state = apply_batch(state, batch)
            for label in declared:
                state = declare_live(state, side, label)
            yield side, state

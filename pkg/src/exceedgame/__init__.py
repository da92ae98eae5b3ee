"""Executable companion to the result on the complexity of functions that exceed all short total functions.

The package has a game engine (:mod:`exceedgame.game`, :mod:`exceedgame.match`),
the two winning strategies (:mod:`exceedgame.strategies`), a toy machine
(:mod:`exceedgame.machine`), the dominator constructions
(:mod:`exceedgame.dominators`) and the blind-Bob reduction
(:mod:`exceedgame.reduction`).
"""

from exceedgame.game import (
    GameConfig,
    GameState,
    MoveBatch,
    Side,
    Verdict,
    Witness,
    apply_batch,
    declare_live,
    find_witness,
    new_game,
    verdict,
)
from exceedgame.match import Trace, run_match, verify_trace

__version__ = "0.1.0"

__all__ = [
    "GameConfig",
    "GameState",
    "MoveBatch",
    "Side",
    "Trace",
    "Verdict",
    "Witness",
    "apply_batch",
    "declare_live",
    "find_witness",
    "new_game",
    "run_match",
    "verdict",
    "verify_trace",
]

"""
Exact game values and domination numbers for small graphs.

The game value is a memoised minimax over dominated sets: Dominator minimises
the number of remaining moves, Staller maximises it. Moves that lead to the same
dominated set are searched once.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

from django.conf import settings

from .choices import Player
from .exceptions import GameOverError, IllegalMoveError, MemoBudgetExceeded, SolverCapExceeded
from .game_engine import GameState, is_over
from .graph_core import Graph, VertexSet, iter_bits

logger = logging.getLogger(__name__)


class SolveKey(NamedTuple):
    dominated: int
    mover: Player


def _check_cap(graph: Graph, cap: int | None) -> None:
    cap = settings.DOMGAME_SOLVER_CAP if cap is None else cap
    if graph.n > cap:
        raise SolverCapExceeded(
            f"n={graph.n} exceeds the exact solver cap of {cap}; "
            f"use the greedy strategy search instead")


class GameSolver:
    """Optimal play on one graph. The memo table lives as long as the solver."""

    def __init__(self, graph: Graph, *, cap: int | None = None, memo_budget: int | None = None):
        _check_cap(graph, cap)
        self.graph = graph
        self.memo_budget = settings.DOMGAME_MEMO_BUDGET if memo_budget is None else memo_budget
        self._full = graph.full
        self._memo: dict[SolveKey, int] = {}

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def _children(self, dominated: int) -> list[int]:
        seen = set()
        children = []
        for v in range(self.graph.n):
            closed = self.graph.closed[v]
            if not closed & ~dominated:
                continue
            child = dominated | closed
            if child not in seen:
                seen.add(child)
                children.append(child)
        return children

    def value(self, dominated: int, mover: Player) -> int:
        """Number of moves left under optimal play from this position."""
        if dominated == self._full:
            return 0
        key = SolveKey(dominated, mover)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        following = mover.other
        children = self._children(dominated)
        if mover == Player.DOMINATOR:
            if self._full in children:
                best = 1
            else:
                best = None
                for child in children:
                    length = 1 + self.value(child, following)
                    if best is None or length < best:
                        best = length
                        # Every child is unfinished, so two moves is the floor.
                        if best == 2:
                            break
        else:
            best = 0
            for child in children:
                best = max(best, 1 + self.value(child, following))
        if len(self._memo) >= self.memo_budget:
            raise MemoBudgetExceeded(f"memo table passed {self.memo_budget} entries on n={self.graph.n}")
        self._memo[key] = best
        return best

    def game_value(self, first: Player = Player.DOMINATOR) -> int:
        result = self.value(0, Player(first))
        logger.info("game value n=%d first=%s: %d (%d memo entries)", self.graph.n, first, result, self.memo_size)
        return result

    def best_move(self, state: GameState) -> int:
        """Optimal move for the player to move; smallest id among equals."""
        if state.graph is not self.graph and state.graph != self.graph:
            raise IllegalMoveError("state belongs to another graph")
        if is_over(state):
            raise GameOverError("no move is left in a finished game")
        dominated = state.dominated.bits
        following = state.mover.other
        best_vertex, best = -1, None
        for v in range(self.graph.n):
            closed = self.graph.closed[v]
            if not closed & ~dominated:
                continue
            length = 1 + self.value(dominated | closed, following)
            if best is None:
                best_vertex, best = v, length
            elif state.mover == Player.DOMINATOR and length < best:
                best_vertex, best = v, length
            elif state.mover == Player.STALLER and length > best:
                best_vertex, best = v, length
        return best_vertex


def game_value(g: Graph, first: Player = Player.DOMINATOR, *, cap: int | None = None) -> int:
    """gamma_g (Dominator first) or gamma_g' (Staller first)."""
    return GameSolver(g, cap=cap).game_value(first)


def plain_game_value(g: Graph, first: Player = Player.DOMINATOR, dominated: int = 0) -> int:
    """Unmemoised minimax over every vertex; only usable on tiny graphs."""
    if dominated == g.full:
        return 0
    lengths = [
        1 + plain_game_value(g, Player(first).other, dominated | g.closed[v])
        for v in range(g.n) if g.closed[v] & ~dominated
    ]
    return min(lengths) if first == Player.DOMINATOR else max(lengths)


def _greedy_dominating_set(g: Graph) -> list[int]:
    dominated = 0
    chosen = []
    while dominated != g.full:
        v = max(range(g.n), key=lambda u: (g.closed[u] & ~dominated).bit_count())
        chosen.append(v)
        dominated |= g.closed[v]
    return chosen


def minimum_dominating_set(g: Graph, *, cap: int | None = None) -> VertexSet:
    """
    Branch and bound: some vertex of N[u] dominates the lowest undominated u.
    Branches are cut when even the widest closed neighbourhoods cannot beat
    the best set found so far.
    """
    _check_cap(g, cap)
    full = g.full
    widest = max(closed.bit_count() for closed in g.closed)
    best = _greedy_dominating_set(g)
    chosen: list[int] = []

    def search(dominated: int) -> None:
        nonlocal best
        missing = full & ~dominated
        if not missing:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + -(-missing.bit_count() // widest) >= len(best):
            return
        u = (missing & -missing).bit_length() - 1
        candidates = sorted(iter_bits(g.closed[u]), key=lambda w: -(g.closed[w] & missing).bit_count())
        for w in candidates:
            chosen.append(w)
            search(dominated | g.closed[w])
            chosen.pop()

    search(0)
    return VertexSet.of(g.n, best)


def domination_number(g: Graph, *, cap: int | None = None) -> int:
    return len(minimum_dominating_set(g, cap=cap))


@dataclass(frozen=True)
class SandwichReport:
    gamma: int
    gamma_g: int
    gamma_g_prime: int

    @property
    def holds(self) -> bool:
        return self.gamma <= self.gamma_g <= 2 * self.gamma - 1

    def to_dict(self) -> dict:
        return {
            'gamma': self.gamma,
            'gamma_g': self.gamma_g,
            'gamma_g_prime': self.gamma_g_prime,
            'holds': self.holds,
        }


def check_sandwich(g: Graph, *, cap: int | None = None) -> SandwichReport:
    """Compare gamma, gamma_g and gamma_g' on one graph."""
    solver = GameSolver(g, cap=cap)
    report = SandwichReport(
        gamma=domination_number(g, cap=cap),
        gamma_g=solver.game_value(Player.DOMINATOR),
        gamma_g_prime=solver.game_value(Player.STALLER),
    )
    if not report.holds:
        logger.error("gamma <= gamma_g <= 2 gamma - 1 fails on n=%d: %s", g.n, report.to_dict())
    return report

"""
Rules of the domination game on a fixed graph.

A state is the set of dominated vertices plus the move history; the mover is
fixed by the turn parity and by who started. A move is legal iff it dominates
at least one new vertex, and the game ends once every vertex is dominated.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .choices import Color, Player
from .exceptions import GameOverError, IllegalMoveError
from .graph_core import Graph, VertexSet, iter_bits

# Colour changes allowed between consecutive states.
ALLOWED_TRANSITIONS = frozenset({
    (Color.WHITE, Color.WHITE), (Color.WHITE, Color.BLUE), (Color.WHITE, Color.RED),
    (Color.BLUE, Color.BLUE), (Color.BLUE, Color.RED),
    (Color.RED, Color.RED),
})


@dataclass(frozen=True)
class GameState:
    graph: Graph
    dominated: VertexSet
    moves: tuple[int, ...] = ()
    first_player: Player = Player.DOMINATOR

    @classmethod
    def start(cls, graph: Graph, first: Player = Player.DOMINATOR) -> 'GameState':
        return cls(graph, VertexSet(graph.n), (), Player(first))

    @classmethod
    def replay(cls, graph: Graph, moves, first: Player = Player.DOMINATOR) -> 'GameState':
        """Rebuild a state by applying ``moves`` in order, checking legality."""
        state = cls.start(graph, first)
        for v in moves:
            state = apply_move(state, v)
        return state

    @property
    def turn(self) -> int:
        """Number of moves made so far."""
        return len(self.moves)

    @property
    def mover(self) -> Player:
        return self.first_player if self.turn % 2 == 0 else self.first_player.other


@dataclass(frozen=True)
class ResidualView:
    """Colours and residual degrees of every vertex of a state."""
    color: tuple[Color, ...]
    white_deg: tuple[int, ...]
    blue_deg: tuple[int, ...]
    residual_deg: tuple[int, ...]
    white: VertexSet
    blue: VertexSet
    red: VertexSet

    def count(self, color: Color) -> int:
        return self.color.count(color)


def color_masks(g: Graph, dominated: int) -> tuple[int, int, int]:
    """Split the vertex set into (white, blue, red) bitsets."""
    white = g.full & ~dominated
    red = 0
    for v in iter_bits(dominated):
        if not g.closed[v] & white:
            red |= 1 << v
    return white, dominated & ~red, red


def colors(g: Graph, dominated: VertexSet) -> ResidualView:
    """
    Colour the vertices and measure the residual graph.

    The residual graph drops red vertices and edges between two blue vertices.
    A blue vertex's residual degree is its number of white neighbours.
    """
    white, blue, red = color_masks(g, dominated.bits)
    color, white_deg, blue_deg, residual_deg = [], [], [], []
    for v in range(g.n):
        bit = 1 << v
        if white & bit:
            w = (g.adj[v] & white).bit_count()
            b = (g.adj[v] & blue).bit_count()
            color.append(Color.WHITE)
            white_deg.append(w)
            blue_deg.append(b)
            residual_deg.append(w + b)
        elif blue & bit:
            w = (g.adj[v] & white).bit_count()
            color.append(Color.BLUE)
            white_deg.append(w)
            blue_deg.append(0)
            residual_deg.append(w)
        else:
            color.append(Color.RED)
            white_deg.append(0)
            blue_deg.append(0)
            residual_deg.append(0)
    return ResidualView(
        color=tuple(color),
        white_deg=tuple(white_deg),
        blue_deg=tuple(blue_deg),
        residual_deg=tuple(residual_deg),
        white=VertexSet(g.n, white),
        blue=VertexSet(g.n, blue),
        red=VertexSet(g.n, red),
    )


def residual_edges(g: Graph, view: ResidualView) -> list[tuple[int, int]]:
    """Edges of the residual graph, built straight from the edge list."""
    kept = []
    for u, v in g.edges():
        cu, cv = view.color[u], view.color[v]
        if Color.RED in (cu, cv):
            continue
        if cu == Color.BLUE and cv == Color.BLUE:
            continue
        kept.append((u, v))
    return kept


def legal_moves(s: GameState) -> VertexSet:
    """Vertices whose closed neighbourhood still holds an undominated vertex."""
    g = s.graph
    undominated = g.full & ~s.dominated.bits
    bits = 0
    for v in range(g.n):
        if g.closed[v] & undominated:
            bits |= 1 << v
    return VertexSet(g.n, bits)


def is_over(s: GameState) -> bool:
    return s.dominated.bits == s.graph.full


def apply_move(s: GameState, v: int) -> GameState:
    if is_over(s):
        raise GameOverError(f"the game ended after {s.turn} moves")
    g = s.graph
    if not 0 <= v < g.n:
        raise IllegalMoveError(f"vertex {v} outside 0..{g.n - 1}")
    if not g.closed[v] & ~s.dominated.bits:
        raise IllegalMoveError(f"vertex {v} dominates no new vertex")
    dominated = VertexSet(g.n, s.dominated.bits | g.closed[v])
    return replace(s, dominated=dominated, moves=s.moves + (v,))


def illegal_transitions(before: ResidualView, after: ResidualView) -> list[int]:
    """Vertices whose colour moved backwards between two states."""
    return [
        v for v, pair in enumerate(zip(before.color, after.color))
        if pair not in ALLOWED_TRANSITIONS
    ]


def residual_invariant_violations(g: Graph, view: ResidualView) -> list[str]:
    """
    Check the residual-graph degree facts against an independently built
    residual edge set. A white vertex keeps its full degree and has no red
    neighbour. A blue vertex keeps exactly its white neighbours, and has one.
    """
    degree = [0] * g.n
    for u, v in residual_edges(g, view):
        degree[u] += 1
        degree[v] += 1
    problems = []
    for v in range(g.n):
        c = view.color[v]
        if c == Color.WHITE:
            if degree[v] != g.degree(v):
                problems.append(f"white vertex {v} has residual degree {degree[v]}, expected {g.degree(v)}")
            red = g.adj[v] & view.red.bits
            if red:
                problems.append(f"white vertex {v} is adjacent to red vertices {sorted(iter_bits(red))}")
        elif c == Color.BLUE:
            white = (g.adj[v] & view.white.bits).bit_count()
            if degree[v] != white:
                problems.append(f"blue vertex {v} keeps {degree[v]} residual edges but has {white} white neighbours")
            if not white:
                problems.append(f"blue vertex {v} has no white neighbour")
        if degree[v] != view.residual_deg[v]:
            problems.append(f"vertex {v} residual degree {view.residual_deg[v]} disagrees with edge count {degree[v]}")
    return problems

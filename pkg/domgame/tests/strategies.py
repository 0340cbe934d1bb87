"""Hypothesis strategies for graphs and partly played games."""
from hypothesis import strategies as st

from domgame.choices import Player
from domgame.game_engine import GameState, apply_move, is_over, legal_moves
from domgame.graph_core import from_edge_list
from domgame.verify_harness import gen_min_degree_graph


@st.composite
def graphs(draw, min_n=1, max_n=8, isolate_free=False):
    n = draw(st.integers(min_value=max(min_n, 2 if isolate_free else 1), max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {pair for pair, keep in zip(pairs, picks) if keep}
    if isolate_free:
        touched = {v for edge in edges for v in edge}
        for v in range(n):
            if v not in touched:
                u = (v + 1) % n
                edges.add((min(u, v), max(u, v)))
                touched.update((u, v))
    return from_edge_list(n, sorted(edges))


@st.composite
def min_degree_graphs(draw, delta, min_n=None, max_n=9):
    """Graphs with minimum degree at least ``delta``, from the degree-floor repair generator."""
    n = draw(st.integers(min_value=max(min_n or 0, delta + 1), max_value=max_n))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return gen_min_degree_graph(n, delta, 'degree-floor-repair', seed=seed)


@st.composite
def played_states(draw, graph_strategy=None, first=None):
    """A state reached by legal random moves, possibly finished."""
    graph = draw(graph_strategy if graph_strategy is not None else graphs())
    if first is None:
        first = draw(st.sampled_from([Player.DOMINATOR, Player.STALLER]))
    state = GameState.start(graph, first)
    for _ in range(draw(st.integers(min_value=0, max_value=graph.n))):
        if is_over(state):
            break
        state = apply_move(state, draw(st.sampled_from(list(legal_moves(state)))))
    return state


def permutations(n):
    return st.permutations(list(range(n)))

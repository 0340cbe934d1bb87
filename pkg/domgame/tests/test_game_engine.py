from dataclasses import replace

from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings

from domgame.choices import Color, Player
from domgame.exceptions import GameOverError, IllegalMoveError
from domgame.game_engine import (
    GameState,
    apply_move,
    colors,
    illegal_transitions,
    is_over,
    legal_moves,
    residual_edges,
    residual_invariant_violations,
)
from domgame.graph_core import VertexSet, from_edge_list

from .strategies import graphs, played_states

P4 = from_edge_list(4, [(0, 1), (1, 2), (2, 3)])


class GameStateTests(SimpleTestCase):
    def test_mover_alternates_from_the_first_player(self):
        state = GameState.start(P4)
        self.assertEqual(state.mover, Player.DOMINATOR)
        self.assertEqual(apply_move(state, 0).mover, Player.STALLER)
        self.assertEqual(GameState.start(P4, Player.STALLER).mover, Player.STALLER)

    def test_move_must_dominate_a_new_vertex(self):
        state = apply_move(GameState.start(P4), 1)
        self.assertEqual(list(state.dominated), [0, 1, 2])
        with self.assertRaises(IllegalMoveError):
            apply_move(state, 0)
        with self.assertRaises(IllegalMoveError):
            apply_move(state, 7)
        finished = apply_move(state, 3)
        self.assertTrue(is_over(finished))
        with self.assertRaises(GameOverError):
            apply_move(finished, 2)

    def test_replay_matches_step_by_step_play(self):
        state = apply_move(apply_move(GameState.start(P4), 0), 3)
        self.assertEqual(GameState.replay(P4, [0, 3]), state)
        self.assertEqual(state.turn, 2)

    def test_legal_moves(self):
        state = apply_move(GameState.start(P4), 1)
        self.assertEqual(list(legal_moves(state)), [2, 3])


class ColorTests(SimpleTestCase):
    def test_path_after_center_move(self):
        view = colors(P4, apply_move(GameState.start(P4), 1).dominated)
        self.assertEqual(view.color, (Color.RED, Color.RED, Color.BLUE, Color.WHITE))
        self.assertEqual(view.white_deg, (0, 0, 1, 0))
        self.assertEqual(view.blue_deg, (0, 0, 0, 1))
        self.assertEqual(view.residual_deg, (0, 0, 1, 1))
        self.assertEqual(residual_edges(P4, view), [(2, 3)])
        self.assertEqual(view.count(Color.RED), 2)

    def test_fresh_graph_is_white(self):
        view = colors(P4, GameState.start(P4).dominated)
        self.assertEqual(set(view.color), {Color.WHITE})
        self.assertEqual(view.residual_deg, P4.degrees())

    def test_blue_blue_edges_leave_the_residual_graph(self):
        # triangle 0-1-2 with pendants 3 on 1 and 4 on 2
        g = from_edge_list(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)])
        view = colors(g, GameState.replay(g, [0]).dominated)
        self.assertEqual(view.color, (Color.RED, Color.BLUE, Color.BLUE, Color.WHITE, Color.WHITE))
        self.assertEqual(residual_edges(g, view), [(1, 3), (2, 4)])
        self.assertEqual(view.residual_deg, (0, 1, 1, 1, 1))
        self.assertEqual(residual_invariant_violations(g, view), [])

    def test_inconsistent_views_are_reported(self):
        view = colors(P4, GameState.replay(P4, [1]).dominated)
        whitened = replace(view, color=(Color.RED, Color.RED, Color.WHITE, Color.WHITE))
        self.assertIn('white vertex 2 is adjacent to red vertices [1]', residual_invariant_violations(P4, whitened))
        emptied = replace(view, white=VertexSet(4))
        problems = residual_invariant_violations(P4, emptied)
        self.assertIn('blue vertex 2 keeps 1 residual edges but has 0 white neighbours', problems)
        self.assertIn('blue vertex 2 has no white neighbour', problems)


class GamePropertyTests(SimpleTestCase):
    @given(played_states())
    @hypothesis_settings(max_examples=80, deadline=None)
    def test_legal_moves_are_the_non_red_vertices(self, state):
        view = colors(state.graph, state.dominated)
        expected = [v for v in range(state.graph.n) if view.color[v] != Color.RED]
        self.assertEqual(list(legal_moves(state)), expected)

    @given(played_states())
    @hypothesis_settings(max_examples=80, deadline=None)
    def test_residual_degree_facts(self, state):
        view = colors(state.graph, state.dominated)
        self.assertEqual(residual_invariant_violations(state.graph, view), [])

    @given(played_states())
    @hypothesis_settings(max_examples=60, deadline=None)
    def test_colors_only_move_forward(self, state):
        if is_over(state):
            return
        before = colors(state.graph, state.dominated)
        for v in legal_moves(state):
            after = colors(state.graph, apply_move(state, v).dominated)
            self.assertEqual(illegal_transitions(before, after), [])

    @given(graphs())
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_every_game_ends_within_n_moves(self, g):
        state = GameState.start(g)
        while not is_over(state):
            state = apply_move(state, list(legal_moves(state))[-1])
        self.assertLessEqual(state.turn, g.n)
        self.assertEqual(set(colors(g, state.dominated).color), {Color.RED})

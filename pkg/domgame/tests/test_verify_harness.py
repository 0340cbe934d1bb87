import csv
import json
import math
import tempfile
from fractions import Fraction
from pathlib import Path

import networkx as nx
from django.test import SimpleTestCase

from domgame.choices import BoundFamily, RowStatus
from domgame.exceptions import GeneratorExhausted, GraphFormatError, ParameterError
from domgame.graph_core import Graph, from_edge_list, min_degree
from domgame.verify_harness import (
    CSV_COLUMNS,
    ORACLE_VS_GREEDY,
    CorpusEntry,
    GraphFacts,
    VerifyConfig,
    atlas_graphs,
    bound_value,
    certified_ln,
    compare_bounds,
    gen_min_degree_graph,
    load_corpus,
    min_degree_graphs,
    named_graphs,
    parse_d_range,
    random_graphs,
    tightest_bound,
    verify_corpus,
    verify_graph,
    write_csv,
    write_json,
)


class BoundValueTests(SimpleTestCase):
    def test_floors(self):
        self.assertEqual(bound_value(BoundFamily.DEG3, 61).floor, 34)
        self.assertEqual(bound_value(BoundFamily.DEG3_STALLER_START, 61).floor, 33)
        self.assertEqual(bound_value(BoundFamily.MIN_DEG, 72, 4).floor, 37)
        self.assertEqual(bound_value(BoundFamily.MIN_DEG_STALLER_START, 72, 4).floor, 36)
        self.assertEqual(bound_value(BoundFamily.MIN_DEG, 4377, 5).floor, 2102)
        self.assertEqual(bound_value(BoundFamily.GENERAL_23, 9).floor, 6)
        self.assertEqual(bound_value(BoundFamily.GENERAL_710, 10).floor, 7)
        self.assertEqual(bound_value(BoundFamily.GENERAL_710, 11).floor, 8)
        self.assertEqual(bound_value(BoundFamily.SANDWICH, 10, 3).floor, 5)

    def test_exact_values(self):
        self.assertEqual(bound_value(BoundFamily.MIN_DEG, 72, 4).value, 37)
        self.assertEqual(bound_value(BoundFamily.GENERAL_23, 10).value, Fraction(20, 3))
        self.assertTrue(bound_value(BoundFamily.DEG3, 10).exact)
        self.assertFalse(bound_value(BoundFamily.LOG_BOUND, 10, 3).exact)

    def test_admits(self):
        deg3 = bound_value(BoundFamily.DEG3, 61)
        self.assertTrue(deg3.admits(34))
        self.assertFalse(deg3.admits(35))
        log = bound_value(BoundFamily.LOG_BOUND, 10, 3)
        self.assertTrue(log.strict)
        self.assertEqual(log.floor, 11)
        self.assertTrue(log.admits(11))
        self.assertFalse(log.admits(12))

    def test_labels(self):
        self.assertEqual(bound_value(BoundFamily.MIN_DEG, 10, 4).label, 'mindeg(d=4)')
        self.assertEqual(bound_value(BoundFamily.LOG_BOUND, 10, 5).label, 'log(delta=5)')
        self.assertEqual(bound_value('general23', 10).label, 'general23')

    def test_parameter_errors(self):
        with self.assertRaises(ParameterError):
            bound_value(BoundFamily.MIN_DEG, 10, 3)
        with self.assertRaises(ParameterError):
            bound_value(BoundFamily.MIN_DEG, 10)
        with self.assertRaises(ParameterError):
            bound_value(BoundFamily.LOG_BOUND, 10, 1)
        with self.assertRaises(ParameterError):
            bound_value(BoundFamily.GENERAL_23, 0)
        with self.assertRaises(ValueError):
            bound_value('nope', 10)

    def test_floors_grow_with_n(self):
        for family, d in ((BoundFamily.DEG3, None), (BoundFamily.MIN_DEG, 4), (BoundFamily.GENERAL_23, None)):
            floors = [bound_value(family, n, d).floor for n in range(5, 80)]
            self.assertEqual(floors, sorted(floors))


class CertifiedLnTests(SimpleTestCase):
    def test_interval_contains_ln(self):
        for x in (2, 3, 5, 22, 65):
            lo, hi = certified_ln(x)
            with self.subTest(x=x):
                self.assertLess(lo, hi)
                self.assertLess(hi - lo, Fraction(1, 10**40))
                self.assertTrue(math.isclose(float(lo), math.log(x)))

    def test_ln_of_one_is_pinned(self):
        lo, hi = certified_ln(1)
        self.assertLessEqual(lo, 0)
        self.assertGreaterEqual(hi, 0)

    def test_rejects_non_positive(self):
        with self.assertRaises(ParameterError):
            certified_ln(0)


class CompareBoundsTests(SimpleTestCase):
    def test_polynomial_wins_up_to_21(self):
        rows = compare_bounds(range(3, 22))
        self.assertEqual({row.winner for row in rows}, {'polynomial'})
        self.assertEqual(rows[0].polynomial, Fraction(34, 61))

    def test_log_wins_from_22(self):
        self.assertEqual(compare_bounds([22])[0].winner, 'log')

    def test_range_limits(self):
        with self.assertRaises(ParameterError):
            compare_bounds([2])
        with self.assertRaises(ParameterError):
            compare_bounds([65])

    def test_parse_d_range(self):
        self.assertEqual(parse_d_range('3..21'), range(3, 22))
        self.assertEqual(parse_d_range('7'), range(7, 8))
        for text in ('9..3', 'a..b', ''):
            with self.subTest(text=text):
                with self.assertRaises(ParameterError):
                    parse_d_range(text)

    def test_to_dict(self):
        row = compare_bounds([4])[0].to_dict()
        self.assertEqual(row['polynomial'], '37/72')
        self.assertEqual(row['winner'], 'polynomial')


class TightestBoundTests(SimpleTestCase):
    def test_choice_by_minimum_degree(self):
        self.assertIsNone(tightest_bound(10, 0))
        self.assertEqual(tightest_bound(10, 1).family, BoundFamily.GENERAL_23)
        self.assertEqual(tightest_bound(10, 2).family, BoundFamily.GENERAL_23)
        self.assertEqual(tightest_bound(10, 3).family, BoundFamily.DEG3)
        self.assertEqual(tightest_bound(100, 5).label, 'mindeg(d=5)')
        self.assertEqual(tightest_bound(100, 30).label, 'log(delta=30)')


class GeneratorTests(SimpleTestCase):
    def test_regular_pairing(self):
        g = gen_min_degree_graph(10, 3, seed=1)
        self.assertEqual(set(g.degrees()), {3})
        self.assertEqual(g, gen_min_degree_graph(10, 3, seed=1))

    def test_odd_degree_sum(self):
        with self.assertRaises(ParameterError):
            gen_min_degree_graph(9, 3, seed=1)
        with self.assertRaises(ParameterError):
            gen_min_degree_graph(4, 4, seed=1)

    def test_floor_repair(self):
        for seed in range(5):
            g = gen_min_degree_graph(12, 4, 'degree-floor-repair', seed=seed)
            with self.subTest(seed=seed):
                self.assertEqual(g.n, 12)
                self.assertGreaterEqual(min_degree(g), 4)

    def test_pairing_gives_up(self):
        with self.assertRaises(GeneratorExhausted):
            gen_min_degree_graph(10, 3, seed=1, retries=0)

    def test_min_degree_corpus(self):
        corpus = min_degree_graphs(4, 3, 8, 10, seed=2)
        self.assertEqual(len(corpus), 4)
        for graph_id, g in corpus:
            self.assertTrue(graph_id.startswith('regular-pairing-d3-'))
            self.assertIn(g.n, (8, 10))
            self.assertEqual(min_degree(g), 3)
        with self.assertRaises(ParameterError):
            min_degree_graphs(1, 3, 9, 9)


class CorpusTests(SimpleTestCase):
    def test_named(self):
        graphs = named_graphs()
        self.assertEqual(len(graphs), 14)
        self.assertEqual(graphs['Petersen'].n, 10)
        self.assertEqual(min_degree(graphs['K3,3,3']), 6)

    def test_atlas(self):
        corpus = atlas_graphs(4)
        self.assertEqual(len(corpus), 10)
        self.assertTrue(all(graph_id.startswith('atlas-') for graph_id, _ in corpus))
        self.assertGreater(len(atlas_graphs(4, connected=False)), 10)

    def test_random(self):
        corpus = random_graphs(5, 4, 8, seed=3, isolate_free=True)
        self.assertEqual([graph_id for graph_id, _ in corpus], [f'gnp-3-{i:03d}' for i in range(5)])
        self.assertTrue(all(min_degree(g) >= 1 and 4 <= g.n <= 8 for _, g in corpus))
        self.assertEqual(corpus, random_graphs(5, 4, 8, seed=3, isolate_free=True))

    def test_load_corpus(self):
        with tempfile.TemporaryDirectory() as tmp:
            root = Path(tmp)
            (root / 'a.g6').write_text('Bw\n')
            (root / 'b.txt').write_text('3 2\n0 1\n1 2\n')
            (root / 'bad.g6').write_text('!!\n')
            (root / 'readme.md').write_text('not a graph\n')
            entries = load_corpus(root)
        self.assertEqual([entry.graph_id for entry in entries], ['a', 'b', 'bad'])
        self.assertEqual(entries[0].graph.edge_count, 3)
        self.assertIsNone(entries[2].graph)
        self.assertTrue(entries[2].error)

    def test_missing_directory(self):
        with self.assertRaises(GraphFormatError):
            load_corpus('/nonexistent/corpus')


class VerifyTests(SimpleTestCase):
    def test_small_corpus_passes(self):
        graphs = named_graphs()
        report = verify_corpus([(name, graphs[name]) for name in ('K5', 'Petersen', 'C6')])
        self.assertTrue(report.ok)
        self.assertEqual(report.graphs, 3)
        statuses = {row.status for row in report.rows}
        self.assertNotIn(RowStatus.FAIL, statuses)
        self.assertNotIn(RowStatus.ERROR, statuses)
        self.assertEqual(report.summary['lemma_violations'], 0)
        keys = [(row.graph_id, row.bound_family) for row in report.rows]
        self.assertEqual(keys, sorted(keys))

    def test_values_in_rows(self):
        rows = verify_graph('C6', Graph.from_networkx(nx.cycle_graph(6)))
        row = rows[0]
        self.assertEqual((row.n, row.delta, row.gamma, row.gamma_g, row.gamma_g_prime), (6, 2, 2, 3, 2))
        self.assertIsNotNone(row.greedy_wc_d)
        self.assertIn('tightest:general23', [r.bound_family for r in rows])
        self.assertNotIn('deg3', [r.bound_family for r in rows])

    def test_optimal_play_never_outlasts_greedy(self):
        rows = verify_graph('C6', Graph.from_networkx(nx.cycle_graph(6)))
        oracle = [row for row in rows if row.bound_family == ORACLE_VS_GREEDY]
        self.assertEqual(len(oracle), 1)
        self.assertEqual(oracle[0].status, RowStatus.PASS)
        self.assertIsNone(oracle[0].bound_floor)

    def test_oracle_above_greedy_fails(self):
        facts = GraphFacts('made-up', 8, 2, gamma_g=4, gamma_g_prime=3, wc_d=3, wc_s=4)
        self.assertEqual(facts.compare_with_greedy().status, RowStatus.FAIL)
        facts = GraphFacts('made-up', 8, 2, gamma_g=3, gamma_g_prime=5, wc_d=3, wc_s=4)
        self.assertEqual(facts.compare_with_greedy().status, RowStatus.FAIL)
        facts = GraphFacts('made-up', 8, 2, gamma_g=3, gamma_g_prime=3, wc_d=3, wc_s=4)
        self.assertEqual(facts.compare_with_greedy().status, RowStatus.PASS)
        self.assertEqual(GraphFacts('made-up', 8, 2, gamma_g=3).compare_with_greedy().status, RowStatus.SKIP)

    def test_empty_corpus(self):
        report = verify_corpus([])
        self.assertTrue(report.ok)
        self.assertEqual(report.summary['rows'], 0)

    def test_isolated_vertex(self):
        rows = verify_graph('loose', from_edge_list(3, [(0, 1)]))
        error = [row for row in rows if row.status == RowStatus.ERROR]
        self.assertEqual(len(error), 1)
        self.assertEqual(error[0].bound_family, 'general23')
        self.assertEqual(error[0].note, 'isolate-free required')

    def test_unreadable_entry(self):
        report = verify_corpus([CorpusEntry('broken', error='bad graph6')])
        self.assertEqual(len(report.rows), 1)
        self.assertEqual(report.rows[0].status, RowStatus.ERROR)
        self.assertEqual(report.rows[0].note, 'bad graph6')
        self.assertTrue(report.ok)

    def test_family_mismatch_is_an_error_row(self):
        rows = verify_graph('C4', Graph.from_networkx(nx.cycle_graph(4)), VerifyConfig(family='deg3'))
        self.assertIn(RowStatus.ERROR, [row.status for row in rows])

    def test_solver_cap_skips_exact_values(self):
        rows = verify_graph('Petersen', named_graphs()['Petersen'], VerifyConfig(cap=5))
        self.assertIsNone(rows[0].gamma_g)
        self.assertIn('exact skipped', rows[0].note)

    def test_report_files(self):
        report = verify_corpus([('K4', named_graphs()['K4'])])
        with tempfile.TemporaryDirectory() as tmp:
            csv_path = Path(tmp) / 'report.csv'
            json_path = Path(tmp) / 'report.json'
            write_csv(report, csv_path)
            write_json(report, json_path)
            with open(csv_path, newline='') as handle:
                lines = list(csv.reader(handle))
            payload = json.loads(json_path.read_text())
        self.assertEqual(lines[0], CSV_COLUMNS)
        self.assertEqual(len(lines), len(report.rows) + 1)
        self.assertEqual(payload['summary']['graphs'], 1)

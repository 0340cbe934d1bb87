"""
Bound catalogue, corpus supply and batch verification.

Bounds are exact rationals. The logarithmic bounds are carried as certified
intervals around ln, so a game length is only judged when the interval decides.
"""
from __future__ import annotations

import csv
import json
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import repeat
from pathlib import Path
from typing import Iterable

import django
import networkx as nx
from django.conf import settings

from .choices import BoundFamily, Family, GeneratorModel, Player, PolicyKind, RowStatus
from .exact_solver import GameSolver, domination_number
from .exceptions import (
    DomGameError,
    FamilyPreconditionError,
    GeneratorExhausted,
    GraphFormatError,
    ParameterError,
    SearchBudgetExceeded,
    SolverCapExceeded,
)
from .graph_core import EDGE_LIST_SUFFIXES, GRAPH6_SUFFIXES, Graph, from_edge_list, min_degree, read_graphs
from .potential_engine import FamilySpec, scheme_params
from .strategy_lab import Policy, WorstCaseSearch, play_game

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    'graph_id', 'n', 'delta', 'gamma', 'gamma_g', 'gamma_g_prime',
    'greedy_wc_D', 'greedy_wc_S', 'bound_family', 'bound_floor', 'pass', 'lemma_violations',
]

LN_DIGITS = 50

# Row comparing the exact game values with greedy Dominator's worst case.
ORACLE_VS_GREEDY = 'oracle-vs-greedy'


def certified_ln(x: int, *, digits: int = LN_DIGITS) -> tuple[Fraction, Fraction]:
    """Rational interval that contains ln(x)."""
    if x < 1:
        raise ParameterError(f"ln is only taken of positive integers, got {x}")
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x).ln()
    # Decimal.ln is correctly rounded: the true value is within one unit in the last place.
    exponent = value.adjusted() - digits + 1
    ulp = Fraction(10) ** exponent
    centre = Fraction(value)
    return centre - ulp, centre + ulp


def log_coefficient(delta: int, factor: int = 2) -> tuple[Fraction, Fraction]:
    """Interval around factor * (1 + ln(delta+1)) / (delta+1)."""
    lo, hi = certified_ln(delta + 1)
    return factor * (1 + lo) / (delta + 1), factor * (1 + hi) / (delta + 1)


@dataclass(frozen=True)
class BoundSpec:
    """
    An upper bound on a game length or a domination number. Exact bounds have
    lower == upper; ``strict`` bounds exclude their own value.
    """
    family: BoundFamily
    n: int
    d: int | None
    lower: Fraction
    upper: Fraction
    strict: bool = False

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Fraction:
        return self.upper

    @property
    def floor(self) -> int:
        """Largest integer length certainly admitted by the bound."""
        if self.strict:
            return math.ceil(self.lower) - 1
        return math.floor(self.lower)

    @property
    def label(self) -> str:
        if self.family in (BoundFamily.MIN_DEG, BoundFamily.MIN_DEG_STALLER_START):
            return f"{self.family.value}(d={self.d})"
        if self.family in (BoundFamily.LOG_BOUND, BoundFamily.DOMINATION_LOG):
            return f"{self.family.value}(delta={self.d})"
        return str(self.family.value)

    def admits(self, length: int) -> bool | None:
        """True or False when decided, None when the certified interval straddles ``length``."""
        if self.strict:
            if length < self.lower:
                return True
            if length >= self.upper:
                return False
            return None
        if length <= self.lower:
            return True
        if length > self.upper:
            return False
        return None


def _require(d: int | None, least: int, what: str) -> int:
    if d is None or d < least:
        raise ParameterError(f"{what} needs a value >= {least}, got {d}")
    return d


def bound_value(family: BoundFamily | str, n: int, d: int | None = None) -> BoundSpec:
    """
    The bound of ``family`` on an n-vertex graph. ``d`` is the degree parameter
    of the mindeg bounds, the minimum degree of the log bounds and gamma for the
    sandwich bound.
    """
    family = BoundFamily(family)
    if n < 1:
        raise ParameterError(f"bounds need n >= 1, got n={n}")

    def exact(value, degree=None) -> BoundSpec:
        return BoundSpec(family, n, degree, Fraction(value), Fraction(value))

    if family == BoundFamily.GENERAL_23:
        return exact(Fraction(2 * n, 3))
    if family == BoundFamily.GENERAL_710:
        return exact(-(-7 * n // 10))
    if family == BoundFamily.DEG3:
        return exact(Fraction(34 * n, 61), 3)
    if family == BoundFamily.DEG3_STALLER_START:
        return exact(Fraction(34 * n - 27, 61), 3)
    if family == BoundFamily.MIN_DEG:
        p = scheme_params(_require(d, 4, 'the mindeg bound'))
        return exact(Fraction(p.a * n, p.s), p.d)
    if family == BoundFamily.MIN_DEG_STALLER_START:
        p = scheme_params(_require(d, 4, 'the Staller-start mindeg bound'))
        return exact(Fraction(p.a * n - (p.phase0_floor - p.s), p.s), p.d)
    if family == BoundFamily.LOG_BOUND:
        delta = _require(d, 2, 'the log bound')
        lo, hi = log_coefficient(delta)
        return BoundSpec(family, n, delta, lo * n, hi * n, strict=True)
    if family == BoundFamily.DOMINATION_LOG:
        delta = _require(d, 1, 'the domination log bound')
        lo, hi = log_coefficient(delta, factor=1)
        return BoundSpec(family, n, delta, lo * n, hi * n)
    gamma = _require(d, 1, 'the sandwich bound')
    return exact(2 * gamma - 1, gamma)


def polynomial_coefficient(d: int) -> Fraction:
    if d < 3:
        raise ParameterError(f"polynomial bounds start at d=3, got d={d}")
    if d == 3:
        return Fraction(34, 61)
    return scheme_params(d).ratio


@dataclass(frozen=True)
class BoundComparison:
    d: int
    polynomial: Fraction
    log_lower: Fraction
    log_upper: Fraction

    @property
    def winner(self) -> str:
        if self.polynomial < self.log_lower:
            return 'polynomial'
        if self.polynomial > self.log_upper:
            return 'log'
        return 'undecided'

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            'polynomial': str(self.polynomial),
            'polynomial_approx': float(self.polynomial),
            'log_approx': float((self.log_lower + self.log_upper) / 2),
            'winner': self.winner,
        }


def parse_d_range(text: str) -> range:
    """Parse 'A..B' (inclusive) or a single integer."""
    try:
        if '..' in text:
            low, high = (int(part) for part in text.split('..', 1))
        else:
            low = high = int(text)
    except ValueError as exc:
        raise ParameterError(f"bad d range {text!r}; expected A..B") from exc
    if low > high:
        raise ParameterError(f"empty d range {text!r}")
    return range(low, high + 1)


def compare_bounds(d_values: Iterable[int]) -> list[BoundComparison]:
    """Polynomial coefficient against the log coefficient, per minimum degree d."""
    rows = []
    for d in d_values:
        if not 3 <= d <= 64:
            raise ParameterError(f"compare_bounds covers 3 <= d <= 64, got d={d}")
        lo, hi = log_coefficient(d)
        row = BoundComparison(d, polynomial_coefficient(d), lo, hi)
        if row.winner == 'undecided':
            logger.warning("d=%d: certified ln interval does not separate the coefficients", d)
        rows.append(row)
    return rows


def tightest_bound(n: int, delta: int) -> BoundSpec | None:
    """Smallest game-length bound available for an n-vertex graph of minimum degree delta."""
    if delta < 1:
        return None
    candidates = [bound_value(BoundFamily.GENERAL_23, n)]
    if delta >= 2:
        candidates.append(bound_value(BoundFamily.LOG_BOUND, n, delta))
    if delta >= 3:
        candidates.append(bound_value(BoundFamily.DEG3, n))
    for d in range(4, delta + 1):
        candidates.append(bound_value(BoundFamily.MIN_DEG, n, d))
    return min(candidates, key=lambda spec: (spec.upper, spec.strict))


def _suitable(edges: set[tuple[int, int]], potential_edges: dict[int, int]) -> bool:
    if not potential_edges:
        return True
    for s1 in potential_edges:
        for s2 in potential_edges:
            if s1 == s2:
                break
            if s1 > s2:
                s1, s2 = s2, s1
            if (s1, s2) not in edges:
                return True
    return False


def _try_pairing(n: int, delta: int, rng: random.Random) -> set[tuple[int, int]] | None:
    """
    One attempt of the stub pairing used by networkx.random_regular_graph.
    networkx repeats attempts until one succeeds; here the caller owns the loop
    and its retry limit. None means the leftover stubs cannot be paired simply.
    """
    edges: set[tuple[int, int]] = set()
    stubs = list(range(n)) * delta
    while stubs:
        potential_edges: dict[int, int] = {}
        rng.shuffle(stubs)
        stubiter = iter(stubs)
        for s1, s2 in zip(stubiter, stubiter):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential_edges[s1] = potential_edges.get(s1, 0) + 1
                potential_edges[s2] = potential_edges.get(s2, 0) + 1
        if not _suitable(edges, potential_edges):
            return None
        stubs = [node for node, count in potential_edges.items() for _ in range(count)]
    return edges


def _regular_pairing(n: int, delta: int, rng: random.Random, retries: int) -> set[tuple[int, int]]:
    for attempt in range(retries):
        edges = _try_pairing(n, delta, rng)
        if edges is not None:
            if attempt:
                logger.debug("pairing model needed %d retries for n=%d delta=%d", attempt, n, delta)
            return edges
    raise GeneratorExhausted(f"no simple {delta}-regular pairing on {n} vertices after {retries} attempts")


def _floor_repair(n: int, delta: int, rng: random.Random) -> set[tuple[int, int]]:
    p = min(1.0, delta / max(n - 1, 1))
    seed = rng.randrange(2**32)
    edges = {tuple(sorted(edge)) for edge in nx.gnp_random_graph(n, p, seed=seed).edges()}
    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    while True:
        low = [v for v in range(n) if degree[v] < delta]
        if not low:
            return edges
        v = rng.choice(low)
        free = [u for u in range(n) if u != v and (min(u, v), max(u, v)) not in edges]
        deficient = [u for u in free if degree[u] < delta]
        u = rng.choice(deficient or free)
        edges.add((min(u, v), max(u, v)))
        degree[u] += 1
        degree[v] += 1


def gen_min_degree_graph(n: int, delta: int, model: GeneratorModel | str = GeneratorModel.REGULAR_PAIRING,
                         seed: int | None = None, *, retries: int | None = None) -> Graph:
    """Seeded random graph on n vertices with minimum degree at least delta."""
    model = GeneratorModel(model)
    if n < 1 or delta < 0 or delta >= n:
        raise ParameterError(f"need 0 <= delta < n, got n={n} delta={delta}")
    rng = random.Random(settings.DOMGAME_SEED if seed is None else seed)
    if model == GeneratorModel.REGULAR_PAIRING:
        if n * delta % 2:
            raise ParameterError(f"a {delta}-regular graph on {n} vertices needs n*delta even")
        edges = _regular_pairing(n, delta, rng, settings.DOMGAME_PAIRING_RETRIES if retries is None else retries)
    else:
        edges = _floor_repair(n, delta, rng)
    return from_edge_list(n, sorted(edges))


# Corpus supply

def named_graphs() -> dict[str, Graph]:
    builders = {
        'P2': nx.path_graph(2),
        'P3': nx.path_graph(3),
        'K1,3': nx.star_graph(3),
        'C4': nx.cycle_graph(4),
        'C6': nx.cycle_graph(6),
        'K4': nx.complete_graph(4),
        'K5': nx.complete_graph(5),
        'K3,3': nx.complete_bipartite_graph(3, 3),
        'K4,4': nx.complete_bipartite_graph(4, 4),
        'Q3': nx.hypercube_graph(3),
        'Petersen': nx.petersen_graph(),
        'K2,2,2': nx.complete_multipartite_graph(2, 2, 2),
        'K2,2,2,2': nx.complete_multipartite_graph(2, 2, 2, 2),
        'K3,3,3': nx.complete_multipartite_graph(3, 3, 3),
    }
    return {name: Graph.from_networkx(nxg) for name, nxg in builders.items()}


def atlas_graphs(max_n: int = 7, *, connected: bool = True) -> list[tuple[str, Graph]]:
    """Every graph of the networkx atlas with 1..max_n vertices."""
    corpus = []
    for index, nxg in enumerate(nx.graph_atlas_g()):
        order = nxg.number_of_nodes()
        if order == 0 or order > max_n:
            continue
        if connected and not nx.is_connected(nxg):
            continue
        corpus.append((f"atlas-{index:04d}", Graph.from_networkx(nxg)))
    return corpus


def random_graphs(count: int, n_min: int, n_max: int, *, seed: int | None = None,
                  isolate_free: bool = False) -> list[tuple[str, Graph]]:
    """Seeded G(n, p) samples with p drawn from [0.2, 0.7]."""
    seed = settings.DOMGAME_SEED if seed is None else seed
    rng = random.Random(seed)
    corpus = []
    while len(corpus) < count:
        n = rng.randint(n_min, n_max)
        p = rng.uniform(0.2, 0.7)
        graph = Graph.from_networkx(nx.gnp_random_graph(n, p, seed=rng.randrange(2**32)))
        if isolate_free and min_degree(graph) == 0:
            continue
        corpus.append((f"gnp-{seed}-{len(corpus):03d}", graph))
    return corpus


def min_degree_graphs(count: int, delta: int, n_min: int, n_max: int,
                      model: GeneratorModel | str = GeneratorModel.REGULAR_PAIRING,
                      *, seed: int | None = None) -> list[tuple[str, Graph]]:
    model = GeneratorModel(model)
    seed = settings.DOMGAME_SEED if seed is None else seed
    rng = random.Random(seed)
    sizes = [n for n in range(max(n_min, delta + 1), n_max + 1)
             if model != GeneratorModel.REGULAR_PAIRING or n * delta % 2 == 0]
    if not sizes:
        raise ParameterError(f"no order in {n_min}..{n_max} admits a {model.value} graph with delta={delta}")
    corpus = []
    for index in range(count):
        n = rng.choice(sizes)
        graph = gen_min_degree_graph(n, delta, model, rng.randrange(2**32))
        corpus.append((f"{model.value}-d{delta}-{index:03d}", graph))
    return corpus


@dataclass(frozen=True)
class CorpusEntry:
    graph_id: str
    graph: Graph | None = None
    error: str = ''


def load_corpus(directory: str | Path) -> list[CorpusEntry]:
    """Read every graph6 and edge-list file of a directory; unreadable files become error entries."""
    directory = Path(directory)
    if not directory.is_dir():
        raise GraphFormatError(f"{directory} is not a directory")
    entries = []
    for path in sorted(directory.iterdir()):
        if path.suffix.lower() not in GRAPH6_SUFFIXES + EDGE_LIST_SUFFIXES:
            continue
        try:
            entries.extend(CorpusEntry(graph_id, graph) for graph_id, graph in read_graphs(path))
        except (GraphFormatError, OSError, UnicodeDecodeError) as exc:
            logger.warning("skipping %s: %s", path.name, exc)
            entries.append(CorpusEntry(path.stem, error=str(exc)))
    return entries


# Verification

@dataclass(frozen=True)
class VerifyConfig:
    family: str = 'auto'
    d: int | None = None
    cap: int | None = None
    search_budget: int | None = None
    staller_policies: tuple[PolicyKind, ...] = (
        PolicyKind.RANDOM_STALLER,
        PolicyKind.MIN_GAIN_STALLER,
        PolicyKind.WORST_CASE_STALLER,
    )
    staller_start: bool = True
    seed: int | None = None
    workers: int | None = None


@dataclass(frozen=True)
class ReportRow:
    graph_id: str
    n: int | None
    delta: int | None
    gamma: int | None
    gamma_g: int | None
    gamma_g_prime: int | None
    greedy_wc_d: int | None
    greedy_wc_s: int | None
    bound_family: str
    bound_floor: int | None
    status: RowStatus
    lemma_violations: int
    note: str = ''

    def csv_values(self) -> list:
        values = [
            self.graph_id, self.n, self.delta, self.gamma, self.gamma_g, self.gamma_g_prime,
            self.greedy_wc_d, self.greedy_wc_s, self.bound_family, self.bound_floor,
            str(self.status.value), self.lemma_violations,
        ]
        return ['' if value is None else value for value in values]

    def to_dict(self) -> dict:
        row = dict(zip(CSV_COLUMNS, self.csv_values()))
        row['note'] = self.note
        return row


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple[ReportRow, ...] = ()
    graphs: int = 0

    @property
    def summary(self) -> dict:
        counts = {status.value: 0 for status in RowStatus}
        for row in self.rows:
            counts[row.status.value] += 1
        violations = {row.graph_id: row.lemma_violations for row in self.rows}
        counts['graphs'] = self.graphs
        counts['rows'] = len(self.rows)
        counts['lemma_violations'] = sum(violations.values())
        return counts

    @property
    def ok(self) -> bool:
        summary = self.summary
        return summary[RowStatus.FAIL.value] == 0 and summary['lemma_violations'] == 0

    def to_dict(self) -> dict:
        return {'summary': self.summary, 'rows': [row.to_dict() for row in self.rows]}


@dataclass
class GraphFacts:
    """Everything measured on one graph before the bounds are judged."""
    graph_id: str
    n: int
    delta: int
    family: FamilySpec | None = None
    gamma: int | None = None
    gamma_g: int | None = None
    gamma_g_prime: int | None = None
    wc_d: int | None = None
    wc_s: int | None = None
    violations: int = 0
    notes: list[str] = field(default_factory=list)
    family_error: str = ''

    def row(self, bound: str, floor: int | None, status: RowStatus, note: str = '') -> ReportRow:
        return ReportRow(
            graph_id=self.graph_id, n=self.n, delta=self.delta,
            gamma=self.gamma, gamma_g=self.gamma_g, gamma_g_prime=self.gamma_g_prime,
            greedy_wc_d=self.wc_d, greedy_wc_s=self.wc_s,
            bound_family=bound, bound_floor=floor, status=status,
            lemma_violations=self.violations, note=note or '; '.join(self.notes),
        )

    def judge(self, bound: BoundSpec, subjects: Iterable[int | None]) -> ReportRow:
        values = [value for value in subjects if value is not None]
        if not values:
            return self.row(bound.label, bound.floor, RowStatus.SKIP)
        verdicts = [bound.admits(value) for value in values]
        if False in verdicts:
            status = RowStatus.FAIL
            logger.error("%s: bound %s (floor %d) fails for lengths %s", self.graph_id, bound.label, bound.floor, values)
        elif None in verdicts:
            status = RowStatus.UNDECIDED
            logger.warning("%s: bound %s undecided for lengths %s", self.graph_id, bound.label, values)
        else:
            status = RowStatus.PASS
        return self.row(bound.label, bound.floor, status)

    def compare_with_greedy(self) -> ReportRow:
        """The optimal game can never outlast greedy Dominator against its worst Staller."""
        pairs = [(self.gamma_g, self.wc_d), (self.gamma_g_prime, self.wc_s)]
        pairs = [(oracle, greedy) for oracle, greedy in pairs if oracle is not None and greedy is not None]
        if not pairs:
            return self.row(ORACLE_VS_GREEDY, None, RowStatus.SKIP)
        if any(oracle > greedy for oracle, greedy in pairs):
            logger.error("%s: optimal lengths exceed the greedy worst case: %s", self.graph_id, pairs)
            return self.row(ORACLE_VS_GREEDY, None, RowStatus.FAIL, 'optimal game longer than greedy worst case')
        return self.row(ORACLE_VS_GREEDY, None, RowStatus.PASS)


def _measure_exact(facts: GraphFacts, graph: Graph, config: VerifyConfig) -> None:
    try:
        solver = GameSolver(graph, cap=config.cap)
        facts.gamma = domination_number(graph, cap=config.cap)
        facts.gamma_g = solver.game_value(Player.DOMINATOR)
        if config.staller_start:
            facts.gamma_g_prime = solver.game_value(Player.STALLER)
    except SolverCapExceeded as exc:
        logger.warning("%s: exact values skipped: %s", facts.graph_id, exc)
        facts.notes.append(f"exact skipped: {exc}")


def _measure_greedy(facts: GraphFacts, graph: Graph, config: VerifyConfig) -> None:
    family = facts.family
    firsts = [Player.DOMINATOR, Player.STALLER] if config.staller_start else [Player.DOMINATOR]
    for first in firsts:
        search = WorstCaseSearch(graph, family, budget=config.search_budget)
        try:
            length = search.game_length(first)
        except SearchBudgetExceeded as exc:
            logger.warning("%s: worst-case search skipped: %s", facts.graph_id, exc)
            facts.notes.append(f"worst case skipped: {exc}")
            search = None
        else:
            if first == Player.DOMINATOR:
                facts.wc_d = length
            else:
                facts.wc_s = length
        for kind in config.staller_policies:
            if kind == PolicyKind.WORST_CASE_STALLER and search is None:
                continue
            try:
                trace = play_game(
                    graph, family, Policy.greedy(), Policy(kind), first,
                    graph_id=facts.graph_id, seed=config.seed, search=search,
                )
            except SearchBudgetExceeded:
                continue
            facts.violations += len(trace.findings)


def _resolve_family(facts: GraphFacts, graph: Graph, config: VerifyConfig) -> None:
    try:
        family = FamilySpec.resolve(config.family, graph, config.d)
        family.check(graph)
    except FamilyPreconditionError as exc:
        facts.family_error = str(exc)
        return
    except ParameterError as exc:
        facts.family_error = str(exc)
        return
    facts.family = family


def _bound_rows(facts: GraphFacts) -> list[ReportRow]:
    n, delta, family = facts.n, facts.delta, facts.family
    greedy_d = [facts.wc_d]
    greedy_s = [facts.wc_s]
    rows = []
    if facts.gamma is not None:
        sandwich = bound_value(BoundFamily.SANDWICH, n, facts.gamma)
        if facts.gamma_g is not None and facts.gamma_g < facts.gamma:
            logger.error("%s: gamma_g=%d below gamma=%d", facts.graph_id, facts.gamma_g, facts.gamma)
            rows.append(facts.row(sandwich.label, sandwich.floor, RowStatus.FAIL, 'gamma_g below gamma'))
        else:
            rows.append(facts.judge(sandwich, [facts.gamma_g]))
    if delta < 1:
        rows.append(facts.row(BoundFamily.GENERAL_23.value, None, RowStatus.ERROR, 'isolate-free required'))
        return rows
    if facts.gamma is not None:
        rows.append(facts.judge(bound_value(BoundFamily.DOMINATION_LOG, n, delta), [facts.gamma]))
    rows.append(facts.judge(
        bound_value(BoundFamily.GENERAL_23, n),
        [facts.gamma_g, facts.gamma_g_prime] + greedy_d + greedy_s,
    ))
    rows.append(facts.compare_with_greedy())
    rows.append(facts.judge(bound_value(BoundFamily.GENERAL_710, n), [facts.gamma_g]))
    if delta >= 2:
        rows.append(facts.judge(bound_value(BoundFamily.LOG_BOUND, n, delta), [facts.gamma_g]))
    if delta >= 3:
        own = family is not None and family.family == Family.DEG3
        rows.append(facts.judge(bound_value(BoundFamily.DEG3, n), [facts.gamma_g] + (greedy_d if own else [])))
        rows.append(facts.judge(
            bound_value(BoundFamily.DEG3_STALLER_START, n),
            [facts.gamma_g_prime] + (greedy_s if own else []),
        ))
    if delta >= 4:
        own = family is not None and family.family == Family.MIN_DEG
        d = family.d if own else delta
        rows.append(facts.judge(bound_value(BoundFamily.MIN_DEG, n, d), [facts.gamma_g] + (greedy_d if own else [])))
        rows.append(facts.judge(
            bound_value(BoundFamily.MIN_DEG_STALLER_START, n, d),
            [facts.gamma_g_prime] + (greedy_s if own else []),
        ))
    tightest = tightest_bound(n, delta)
    row = facts.judge(tightest, [facts.gamma_g])
    rows.append(replace(row, bound_family=f"tightest:{tightest.label}"))
    return rows


def verify_graph(graph_id: str, graph: Graph, config: VerifyConfig | None = None) -> list[ReportRow]:
    """Measure one graph and judge every bound that applies to it."""
    config = config or VerifyConfig()
    facts = GraphFacts(graph_id, graph.n, min_degree(graph))
    _measure_exact(facts, graph, config)
    _resolve_family(facts, graph, config)
    if facts.family is not None:
        _measure_greedy(facts, graph, config)
    rows = _bound_rows(facts)
    if facts.family_error and facts.delta >= 1:
        rows.append(facts.row(config.family, None, RowStatus.ERROR, facts.family_error))
    if facts.violations:
        logger.error("%s: %d lemma violations in simulated games", graph_id, facts.violations)
    return rows


def _verify_entry(entry: CorpusEntry, config: VerifyConfig) -> list[ReportRow]:
    if entry.graph is None:
        return [ReportRow(entry.graph_id, None, None, None, None, None, None, None,
                          '', None, RowStatus.ERROR, 0, entry.error)]
    try:
        return verify_graph(entry.graph_id, entry.graph, config)
    except DomGameError as exc:
        logger.error("%s: verification aborted: %s", entry.graph_id, exc)
        return [ReportRow(entry.graph_id, entry.graph.n, min_degree(entry.graph), None, None, None,
                          None, None, '', None, RowStatus.ERROR, 0, str(exc))]


def verify_corpus(corpus: Iterable[CorpusEntry | tuple[str, Graph]],
                  config: VerifyConfig | None = None) -> VerifyReport:
    config = config or VerifyConfig()
    entries = [entry if isinstance(entry, CorpusEntry) else CorpusEntry(*entry) for entry in corpus]
    workers = config.workers or settings.DOMGAME_WORKERS
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=django.setup) as pool:
            batches = list(pool.map(_verify_entry, entries, repeat(config)))
    else:
        batches = []
        for index, entry in enumerate(entries, start=1):
            batches.append(_verify_entry(entry, config))
            logger.info("verified %s (%d/%d)", entry.graph_id, index, len(entries))
    rows = sorted((row for batch in batches for row in batch), key=lambda row: (row.graph_id, row.bound_family))
    return VerifyReport(rows=tuple(rows), graphs=len(entries))


def write_csv(report: VerifyReport, path: str | Path) -> None:
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            writer.writerow(row.csv_values())


def write_json(report: VerifyReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True))

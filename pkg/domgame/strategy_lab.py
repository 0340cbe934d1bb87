"""
Players and game drivers.

Dominator plays the greedy potential strategy (or optimally, through the exact
solver). Staller is random, gain-minimising, a worst case found by searching
every Staller line against the deterministic greedy Dominator, or optimal.
``play_game`` produces a full trace and audits it turn by turn.
"""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, replace

from django.conf import settings

from .choices import PolicyKind, Player
from .exact_solver import GameSolver
from .exceptions import GameOverError, IllegalMoveError, SearchBudgetExceeded
from .game_engine import (
    GameState,
    apply_move,
    colors,
    illegal_transitions,
    is_over,
    legal_moves,
    residual_invariant_violations,
)
from .graph_core import Graph
from .potential_engine import (
    FamilySpec,
    PhaseMachine,
    SwitchRecord,
    advance_phase,
    gain,
    max_gain,
    min_gain,
    persistent_boundaries,
    phase0_floor,
    potential,
    structural_check,
    turn_average,
)

logger = logging.getLogger(__name__)

TRACE_SCHEMA_VERSION = 1

DOMINATOR_KINDS = frozenset({PolicyKind.GREEDY_DOMINATOR, PolicyKind.EXACT_OPTIMAL})
STALLER_KINDS = frozenset({
    PolicyKind.RANDOM_STALLER,
    PolicyKind.MIN_GAIN_STALLER,
    PolicyKind.WORST_CASE_STALLER,
    PolicyKind.EXACT_OPTIMAL,
})


@dataclass(frozen=True)
class Policy:
    kind: PolicyKind
    seed: int | None = None

    @classmethod
    def greedy(cls) -> 'Policy':
        return cls(PolicyKind.GREEDY_DOMINATOR)

    @classmethod
    def exact(cls) -> 'Policy':
        return cls(PolicyKind.EXACT_OPTIMAL)

    @classmethod
    def random(cls, seed: int | None = None) -> 'Policy':
        return cls(PolicyKind.RANDOM_STALLER, seed)

    @classmethod
    def min_gain(cls) -> 'Policy':
        return cls(PolicyKind.MIN_GAIN_STALLER)

    @classmethod
    def worst_case(cls) -> 'Policy':
        return cls(PolicyKind.WORST_CASE_STALLER)


@dataclass(frozen=True)
class TurnRecord:
    i: int
    player: Player
    vertex: int
    phase: int
    stage: str
    gain: int
    potential_after: int

    def to_dict(self) -> dict:
        return {
            'i': self.i,
            'player': str(self.player.value),
            'v': self.vertex,
            'phase': self.phase,
            'stage': self.stage,
            'gain': self.gain,
            'p_after': self.potential_after,
        }


@dataclass(frozen=True)
class PhaseSpan:
    """Turns b..e of one phase; a skipped phase has b = e and plays no turn."""
    phase: int
    begin: int
    end: int
    played: int

    def to_dict(self) -> dict:
        return {'phase': self.phase, 'b': self.begin, 'e': self.end, 'played': self.played}


@dataclass(frozen=True)
class AuditFinding:
    turn: int
    check: str
    detail: str

    def to_dict(self) -> dict:
        return {'turn': self.turn, 'check': self.check, 'detail': self.detail}


@dataclass(frozen=True)
class Trace:
    graph_id: str
    family: FamilySpec
    first: Player
    turns: tuple[TurnRecord, ...]
    switches: tuple[SwitchRecord, ...]
    phases: tuple[PhaseSpan, ...]
    initial_potential: int
    final_potential: int
    findings: tuple[AuditFinding, ...] = ()

    @property
    def length(self) -> int:
        return len(self.turns)

    @property
    def total_gain(self) -> int:
        return sum(record.gain for record in self.turns)

    @property
    def total_drop(self) -> int:
        return sum(record.drop for record in self.switches)

    @property
    def ok(self) -> bool:
        return not self.findings

    def to_dict(self) -> dict:
        return {
            'version': TRACE_SCHEMA_VERSION,
            'graph': self.graph_id,
            'family': self.family.label,
            'first': str(self.first.value),
            'turns': [record.to_dict() for record in self.turns],
            'switches': [record.to_dict() for record in self.switches],
            'phases': [span.to_dict() for span in self.phases],
            'p_initial': self.initial_potential,
            'p_final': self.final_potential,
            'findings': [finding.to_dict() for finding in self.findings],
            'length': self.length,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'))


def greedy_dominator_move(s: GameState, m: PhaseMachine) -> tuple[int, PhaseMachine]:
    if is_over(s):
        raise GameOverError("no move is left in a finished game")
    if s.mover != Player.DOMINATOR:
        raise IllegalMoveError(f"turn {s.turn + 1} belongs to Staller")
    m = advance_phase(m, s)
    vertex, _ = max_gain(s, m.scheme)
    return vertex, m


class WorstCaseSearch:
    """
    Longest game against the deterministic greedy Dominator, searched over every
    Staller line. Positions are memoised on (dominated set, mover, phase), which
    fixes the greedy continuation.
    """

    def __init__(self, graph: Graph, family: FamilySpec, *, budget: int | None = None):
        family.check(graph)
        self.graph = graph
        self.family = family
        self.budget = settings.DOMGAME_SEARCH_BUDGET if budget is None else budget
        self.nodes = 0
        self._memo: dict[tuple[int, Player, int], int] = {}

    def remaining(self, state: GameState, machine: PhaseMachine) -> int:
        """Moves left from ``state`` when Staller plays as badly for Dominator as possible."""
        if is_over(state):
            return 0
        key = (state.dominated.bits, state.mover, machine.phase)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"worst-case search passed {self.budget} nodes on n={self.graph.n}")
        if state.mover == Player.DOMINATOR:
            vertex, advanced = greedy_dominator_move(state, machine)
            result = 1 + self.remaining(apply_move(state, vertex), advanced)
        else:
            result = 1 + max(self.remaining(child, machine) for child in self._staller_children(state))
        self._memo[key] = result
        return result

    def _staller_children(self, state: GameState) -> list[GameState]:
        seen = set()
        children = []
        for v in legal_moves(state):
            child = apply_move(state, v)
            if child.dominated.bits not in seen:
                seen.add(child.dominated.bits)
                children.append(child)
        return children

    def best_staller_move(self, state: GameState, machine: PhaseMachine) -> int:
        """Staller move starting the longest completion; smallest id on ties."""
        best_vertex, best = -1, -1
        for v in legal_moves(state):
            length = self.remaining(apply_move(state, v), machine)
            if length > best:
                best_vertex, best = v, length
        return best_vertex

    def game_length(self, first: Player = Player.DOMINATOR) -> int:
        state = GameState.start(self.graph, first)
        result = self.remaining(state, PhaseMachine.start(self.family, first))
        logger.info("worst case vs greedy (%s, first=%s): %d moves, %d nodes",
                    self.family.label, first, result, self.nodes)
        return result


def worst_case_length_vs_greedy(g: Graph, family: FamilySpec, first: Player = Player.DOMINATOR,
                                *, budget: int | None = None) -> int:
    return WorstCaseSearch(g, family, budget=budget).game_length(Player(first))


def staller_move(s: GameState, policy: Policy, rng: random.Random, machine: PhaseMachine,
                 *, search: WorstCaseSearch | None = None, solver: GameSolver | None = None) -> int:
    if is_over(s):
        raise GameOverError("no move is left in a finished game")
    if s.mover != Player.STALLER:
        raise IllegalMoveError(f"turn {s.turn + 1} belongs to Dominator")
    moves = list(legal_moves(s))
    if len(moves) == 1:
        return moves[0]
    if policy.kind == PolicyKind.RANDOM_STALLER:
        return rng.choice(moves)
    if policy.kind == PolicyKind.MIN_GAIN_STALLER:
        vertex, _ = min_gain(s, machine.scheme)
        return vertex
    if policy.kind == PolicyKind.WORST_CASE_STALLER:
        search = search or WorstCaseSearch(s.graph, machine.family)
        return search.best_staller_move(s, machine)
    if policy.kind == PolicyKind.EXACT_OPTIMAL:
        solver = solver or GameSolver(s.graph)
        return solver.best_move(s)
    raise IllegalMoveError(f"{policy.kind.label} does not play for Staller")


class GameAuditor:
    """Checks every turn of a game against the properties the strategy guarantees."""

    def __init__(self, family: FamilySpec, *, greedy: bool):
        self.family = family
        self.greedy = greedy
        self.findings: list[AuditFinding] = []
        self._persistent: list[int] = []

    def flag(self, turn: int, check: str, detail: str) -> None:
        logger.error("%s turn %d %s: %s", self.family.label, turn, check, detail)
        self.findings.append(AuditFinding(turn, check, detail))

    def phase_switch(self, state: GameState, turn: int, old_phase: int, new_phase: int,
                     records: tuple[SwitchRecord, ...]) -> None:
        for record in records:
            if record.drop < 0:
                self.flag(turn, 'switch-drop', f"{record.from_stage} -> {record.to_stage} raised the potential by {-record.drop}")
        persistent = persistent_boundaries(self.family)
        for boundary in range(max(old_phase, 1), new_phase):
            for violation in structural_check(state, self.family, boundary):
                self.flag(turn, 'structure', str(violation))
            if boundary in persistent:
                self._persistent.append(boundary)

    def turn(self, before: GameState, after: GameState, record: TurnRecord, machine: PhaseMachine) -> None:
        g = before.graph
        view_before = colors(g, before.dominated)
        view_after = colors(g, after.dominated)
        for v in illegal_transitions(view_before, view_after):
            self.flag(record.i, 'colors', f"vertex {v} went {view_before.color[v]} -> {view_after.color[v]}")
        for problem in residual_invariant_violations(g, view_after):
            self.flag(record.i, 'residual', problem)

        if record.phase == 0:
            floor = phase0_floor(self.family)
            if record.gain < floor:
                self.flag(record.i, 'phase0-gain', f"opening Staller gain {record.gain} < {floor}")
        elif record.player == Player.STALLER:
            floor = machine.spec.staller_floor
            if record.gain < floor:
                self.flag(record.i, 'staller-gain', f"gain {record.gain} < {floor} in phase {record.phase}")
        elif self.greedy and record.gain < machine.threshold:
            self.flag(record.i, 'threshold', f"gain {record.gain} < {machine.threshold} in phase {record.phase}")

        for boundary in self._persistent:
            for violation in structural_check(after, self.family, boundary):
                self.flag(record.i, 'structure', str(violation))

    def close(self, trace: Trace) -> None:
        last = trace.length
        accounted = trace.total_gain + trace.total_drop + trace.final_potential
        if accounted != trace.initial_potential:
            self.flag(last, 'ledger', f"gains + drops + final = {accounted} != initial {trace.initial_potential}")
        if trace.final_potential != 0:
            self.flag(last, 'ledger', f"final potential {trace.final_potential} != 0")
        if not self.greedy:
            return
        average = turn_average(self.family)
        for span in trace.phases:
            if span.phase < 1:
                continue
            gains = [record.gain for record in trace.turns if record.phase == span.phase]
            if len(gains) % 2:
                gains = gains[:-1]
            if gains and sum(gains) < average * len(gains):
                self.flag(span.end, 'phase-average',
                          f"phase {span.phase} averaged {sum(gains)}/{len(gains)} < {average}")


def _close_span(spans: list[list[int]], old_phase: int, new_phase: int, turn: int) -> None:
    current = spans[-1]
    if current[1] > turn - 1:
        current[1] = turn - 1
    current[2] = turn - 1
    for skipped in range(old_phase + 1, new_phase):
        spans.append([skipped, turn - 1, turn - 1])
    spans.append([new_phase, turn, turn])


def play_game(g: Graph, family: FamilySpec, dominator: Policy, staller: Policy,
              first: Player = Player.DOMINATOR, *, graph_id: str = '', seed: int | None = None,
              audit: bool = True, search: WorstCaseSearch | None = None,
              solver: GameSolver | None = None) -> Trace:
    """Play one game to the end and return its trace."""
    family.check(g)
    if dominator.kind not in DOMINATOR_KINDS:
        raise IllegalMoveError(f"{dominator.kind.label} does not play for Dominator")
    if staller.kind not in STALLER_KINDS:
        raise IllegalMoveError(f"{staller.kind.label} does not play for Staller")
    first = Player(first)
    if PolicyKind.EXACT_OPTIMAL in (dominator.kind, staller.kind) and solver is None:
        solver = GameSolver(g)
    if staller.kind == PolicyKind.WORST_CASE_STALLER and search is None:
        search = WorstCaseSearch(g, family)
    if staller.seed is not None:
        seed = staller.seed
    rng = random.Random(settings.DOMGAME_SEED if seed is None else seed)

    greedy = dominator.kind == PolicyKind.GREEDY_DOMINATOR
    auditor = GameAuditor(family, greedy=greedy) if audit else None
    state = GameState.start(g, first)
    machine = PhaseMachine.start(family, first)
    initial = potential(state, machine.scheme)
    turns: list[TurnRecord] = []
    spans = [[machine.phase, 1, 1]]

    while not is_over(state):
        turn = state.turn + 1
        if state.mover == Player.DOMINATOR:
            if greedy:
                old_phase = machine.phase
                recorded = len(machine.switches)
                vertex, machine = greedy_dominator_move(state, machine)
                if machine.phase != old_phase:
                    _close_span(spans, old_phase, machine.phase, turn)
                    if auditor:
                        auditor.phase_switch(state, turn, old_phase, machine.phase, machine.switches[recorded:])
            else:
                if machine.phase == 0:
                    machine = PhaseMachine(family)
                    _close_span(spans, 0, 1, turn)
                vertex = solver.best_move(state)
        else:
            vertex = staller_move(state, staller, rng, machine, search=search, solver=solver)
        scheme = machine.scheme
        value = gain(state, scheme, vertex)
        after = apply_move(state, vertex)
        record = TurnRecord(turn, state.mover, vertex, machine.phase, scheme.label, value, potential(after, scheme))
        turns.append(record)
        if auditor:
            auditor.turn(state, after, record, machine)
        state = after
    spans[-1][2] = state.turn

    played = {}
    for record in turns:
        played[record.phase] = played.get(record.phase, 0) + 1
    trace = Trace(
        graph_id=graph_id,
        family=family,
        first=first,
        turns=tuple(turns),
        switches=machine.switches,
        phases=tuple(PhaseSpan(p, b, e, played.get(p, 0)) for p, b, e in spans),
        initial_potential=initial,
        final_potential=potential(state, machine.scheme),
    )
    if auditor:
        auditor.close(trace)
        trace = replace(trace, findings=tuple(auditor.findings))
    return trace

"""
Value assignments, potentials and the phase automaton of the greedy strategy.

Every vertex carries a value depending on its colour and, for blue vertices, on
its residual degree. The potential of a state is the sum of those values, and a
move's gain is how much it lowers the potential. Each strategy family splits the
game into phases, each phase valuing vertices with one assignment ("stage") and
asking Dominator for a minimum gain. When the greedy move falls below that
threshold the game moves on to the next phase whose threshold is met.

All arithmetic is on exact integers.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .choices import Color, Family, Player
from .exceptions import (
    FamilyPreconditionError,
    GameOverError,
    IllegalMoveError,
    ParameterError,
    SchemeInapplicable,
    UnknownBoundary,
)
from .game_engine import GameState, colors, is_over
from .graph_core import Graph, iter_bits, min_degree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Params:
    """Integer parameters of the minimum-degree-d value assignments."""
    d: int
    a: int
    b: int
    x1: int
    x2: int
    x3: int
    s: int

    @property
    def ratio(self) -> Fraction:
        """Bound coefficient a/s."""
        return Fraction(self.a, self.s)

    @property
    def phase0_floor(self) -> int:
        """Least gain of Staller's opening move in a Staller-start game."""
        return self.a + self.d * (self.a - self.b)

    def chain_holds(self) -> bool:
        a, b, x1, x2, x3 = self.a, self.b, self.x1, self.x2, self.x3
        return 0 < x1 < x2 < x3 < b - x1 - x2 - x3 < b < a and x3 < a - b

    def to_dict(self) -> dict:
        return {
            'd': self.d, 'a': self.a, 'b': self.b,
            'x1': self.x1, 'x2': self.x2, 'x3': self.x3, 's': self.s,
            'ratio': str(self.ratio),
        }


@lru_cache(maxsize=None)
def scheme_params(d: int) -> Params:
    if d < 4:
        raise ParameterError(f"the minimum-degree assignments need d >= 4, got d={d}")
    params = Params(
        d=d,
        a=30 * d**4 - 56 * d**3 - 258 * d**2 + 708 * d - 432,
        b=111 * d**3 - 561 * d**2 + 888 * d - 432,
        x1=6 * d**3 - 19 * d**2 + 15 * d,
        x2=15 * d**3 - 64 * d**2 + 65 * d,
        x3=30 * d**3 - 144 * d**2 + 202 * d - 72,
        s=90 * d**4 - 390 * d**3 + 348 * d**2 + 348 * d - 432,
    )
    if not params.chain_holds():
        raise ParameterError(f"parameter chain 0 < x1 < x2 < x3 < b-x1-x2-x3 < b < a fails at d={d}")
    return params


@dataclass(frozen=True)
class FamilySpec:
    """A strategy family, with its degree parameter for the minimum-degree case."""
    family: Family
    d: int | None = None

    def __post_init__(self):
        if self.family == Family.MIN_DEG:
            if self.d is None:
                raise ParameterError("the mindeg family needs a degree parameter d")
            scheme_params(self.d)
        elif self.family == Family.DEG3 and self.d not in (None, 3):
            raise ParameterError(f"the deg3 family has d=3, got d={self.d}")
        elif self.family == Family.TWO_THIRDS and self.d is not None:
            raise ParameterError("the two-thirds family takes no degree parameter")

    @classmethod
    def two_thirds(cls) -> 'FamilySpec':
        return cls(Family.TWO_THIRDS)

    @classmethod
    def deg3(cls) -> 'FamilySpec':
        return cls(Family.DEG3, 3)

    @classmethod
    def min_deg(cls, d: int) -> 'FamilySpec':
        return cls(Family.MIN_DEG, d)

    @classmethod
    def auto(cls, graph: Graph) -> 'FamilySpec':
        """The strongest family the graph's minimum degree admits."""
        delta = min_degree(graph)
        if delta >= 4:
            return cls.min_deg(delta)
        if delta == 3:
            return cls.deg3()
        return cls.two_thirds()

    @classmethod
    def resolve(cls, name: str, graph: Graph, d: int | None = None) -> 'FamilySpec':
        """Turn a command-line family name ('auto' included) into a spec."""
        if name == 'auto':
            return cls.auto(graph)
        family = Family(name)
        if family == Family.MIN_DEG:
            if d is None:
                d = min_degree(graph)
                if d < 4:
                    raise FamilyPreconditionError(
                        f"mindeg needs minimum degree >= 4 (delta={d})", delta=d, required=4)
            return cls.min_deg(d)
        if family == Family.DEG3:
            return cls.deg3()
        return cls.two_thirds()

    @property
    def required_min_degree(self) -> int:
        if self.family == Family.TWO_THIRDS:
            return 1
        if self.family == Family.DEG3:
            return 3
        return self.d

    @property
    def params(self) -> Params:
        if self.family != Family.MIN_DEG:
            raise ParameterError(f"{self.label} has no polynomial parameters")
        return scheme_params(self.d)

    @property
    def label(self) -> str:
        if self.family == Family.MIN_DEG:
            return f"mindeg(d={self.d})"
        return str(self.family.value)

    def check(self, graph: Graph) -> None:
        delta = min_degree(graph)
        required = self.required_min_degree
        if delta < required:
            if self.family == Family.TWO_THIRDS:
                message = f"{self.label} needs an isolate-free graph (delta={delta})"
            else:
                message = f"{self.label} needs minimum degree >= {required} (delta={delta})"
            raise FamilyPreconditionError(message, delta=delta, required=required)


@dataclass(frozen=True)
class Scheme:
    """
    One value assignment. ``blue[k-1]`` values a blue vertex of residual degree
    k; with ``open_top`` the last entry also covers every larger degree.
    """
    family: Family
    stage: int
    label: str
    white: int
    blue: tuple[int, ...]
    open_top: bool

    @property
    def max_blue_degree(self) -> int | None:
        return None if self.open_top else len(self.blue)

    def blue_value(self, degree: int) -> int:
        if degree < 1:
            raise SchemeInapplicable(f"{self.label}: a blue vertex has residual degree >= 1, got {degree}")
        if degree <= len(self.blue):
            return self.blue[degree - 1]
        if self.open_top:
            return self.blue[-1]
        raise SchemeInapplicable(f"{self.label} values no blue vertex of residual degree {degree}")

    def to_dict(self) -> dict:
        return {
            'stage': self.label,
            'white': self.white,
            'blue': {
                (f"{k}+" if self.open_top and k == len(self.blue) else str(k)): value
                for k, value in enumerate(self.blue, start=1)
            },
            'red': 0,
        }


@lru_cache(maxsize=None)
def schemes(spec: FamilySpec) -> tuple[Scheme, ...]:
    if spec.family == Family.TWO_THIRDS:
        return (Scheme(Family.TWO_THIRDS, 1, '2/1/0', 2, (1,), True),)
    if spec.family == Family.DEG3:
        return (
            Scheme(Family.DEG3, 1, 'A1.1', 34, (16, 16, 16), True),
            Scheme(Family.DEG3, 2, 'A1.2', 34, (10, 13, 16), True),
            Scheme(Family.DEG3, 3, 'A1.3', 34, (9, 13), False),
        )
    p = spec.params
    a, b, x1, x2, x3 = p.a, p.b, p.x1, p.x2, p.x3
    return (
        Scheme(Family.MIN_DEG, 1, 'A2.1', a, (b, b, b, b), True),
        Scheme(Family.MIN_DEG, 2, 'A2.2', a, (b - 3 * x1, b - 2 * x1, b - x1, b), True),
        Scheme(Family.MIN_DEG, 3, 'A2.3', a, (b - x1 - 2 * x2, b - x1 - x2, b - x1), False),
        Scheme(Family.MIN_DEG, 4, 'A2.4', a, (b - x1 - x2 - x3, b - x1 - x2), False),
    )


def get_scheme(spec: FamilySpec, stage: int) -> Scheme:
    table = schemes(spec)
    if not 1 <= stage <= len(table):
        raise ParameterError(f"{spec.label} has stages 1..{len(table)}, got {stage}")
    return table[stage - 1]


@dataclass(frozen=True)
class PhaseSpec:
    phase: int
    scheme: Scheme
    threshold: int
    staller_floor: int


@lru_cache(maxsize=None)
def phases(spec: FamilySpec) -> tuple[PhaseSpec, ...]:
    table = schemes(spec)
    if spec.family == Family.TWO_THIRDS:
        (only,) = table
        return (PhaseSpec(1, only, 4, 2), PhaseSpec(2, only, 1, 3))
    if spec.family == Family.DEG3:
        a1, a2, a3 = table
        return (
            PhaseSpec(1, a1, 88, 34),
            PhaseSpec(2, a2, 91, 31),
            PhaseSpec(3, a3, 84, 38),
            PhaseSpec(4, a3, 1, 61),
        )
    p = spec.params
    a, b, x1, x2, x3, s, d = p.a, p.b, p.x1, p.x2, p.x3, p.s, p.d
    a1, a2, a3, a4 = table
    return (
        PhaseSpec(1, a1, 5 * a - 4 * b, a),
        PhaseSpec(2, a2, 4 * a - 3 * b + (4 * d - 6) * x1, a + (d - 6) * x1),
        PhaseSpec(3, a3, 3 * a - 2 * b + 2 * x1 + (3 * d - 2) * x2, a + (d - 4) * x2),
        PhaseSpec(4, a4, 2 * a + (2 * d - 2) * x3, a + (d - 2) * x3),
        PhaseSpec(5, a4, 1, s),
    )


def phase0_floor(spec: FamilySpec) -> int:
    """Least gain of Staller's opening move under the family's first assignment."""
    if spec.family == Family.TWO_THIRDS:
        return 3
    if spec.family == Family.DEG3:
        return 88
    return spec.params.phase0_floor


def turn_average(spec: FamilySpec) -> int:
    """Per-turn average gain each completed phase guarantees."""
    if spec.family == Family.TWO_THIRDS:
        return 3
    if spec.family == Family.DEG3:
        return 61
    return spec.params.s


def vertex_value(scheme: Scheme, color: Color, blue_residual_degree: int = 0) -> int:
    if color == Color.RED:
        return 0
    if color == Color.WHITE:
        return scheme.white
    return scheme.blue_value(blue_residual_degree)


def _value(g: Graph, white: int, scheme: Scheme, u: int) -> int:
    if white >> u & 1:
        return scheme.white
    live = g.adj[u] & white
    if live:
        return scheme.blue_value(live.bit_count())
    return 0


def _potential(g: Graph, dominated: int, scheme: Scheme) -> int:
    white = g.full & ~dominated
    total = white.bit_count() * scheme.white
    for u in iter_bits(dominated):
        live = g.adj[u] & white
        if live:
            total += scheme.blue_value(live.bit_count())
    return total


def _gain(g: Graph, dominated: int, scheme: Scheme, v: int) -> int:
    # Only vertices within distance 2 of v can change value.
    before = g.full & ~dominated
    after = before & ~g.closed[v]
    return sum(
        _value(g, before, scheme, u) - _value(g, after, scheme, u)
        for u in iter_bits(g.ball2[v])
    )


def potential(s: GameState, scheme: Scheme) -> int:
    return _potential(s.graph, s.dominated.bits, scheme)


def gain(s: GameState, scheme: Scheme, v: int) -> int:
    g = s.graph
    if not 0 <= v < g.n or not g.closed[v] & ~s.dominated.bits:
        raise IllegalMoveError(f"vertex {v} is not a legal move")
    return _gain(g, s.dominated.bits, scheme, v)


def max_gain(s: GameState, scheme: Scheme) -> tuple[int, int]:
    """Legal vertex of largest gain, smallest id on ties."""
    if is_over(s):
        raise GameOverError("no move is left in a finished game")
    g = s.graph
    dominated = s.dominated.bits
    best_vertex, best = -1, -1
    for v in range(g.n):
        if not g.closed[v] & ~dominated:
            continue
        value = _gain(g, dominated, scheme, v)
        if value > best:
            best_vertex, best = v, value
    return best_vertex, best


def min_gain(s: GameState, scheme: Scheme) -> tuple[int, int]:
    """Legal vertex of smallest gain, smallest id on ties."""
    if is_over(s):
        raise GameOverError("no move is left in a finished game")
    g = s.graph
    dominated = s.dominated.bits
    best_vertex, best = -1, None
    for v in range(g.n):
        if not g.closed[v] & ~dominated:
            continue
        value = _gain(g, dominated, scheme, v)
        if best is None or value < best:
            best_vertex, best = v, value
    return best_vertex, best


def scheme_applicable(s: GameState, scheme: Scheme) -> bool:
    if scheme.open_top:
        return True
    view = colors(s.graph, s.dominated)
    return all(
        view.residual_deg[v] <= scheme.max_blue_degree
        for v in range(s.graph.n) if view.color[v] == Color.BLUE
    )


def switch_drop(s: GameState, old: Scheme, new: Scheme) -> int:
    """Potential lost by revaluing the state under a later stage."""
    if old.family != new.family or old.white != new.white:
        raise ParameterError(f"cannot switch from {old.label} to {new.label}: different families")
    if new.stage <= old.stage:
        raise ParameterError(f"switch must move to a later stage ({old.label} -> {new.label})")
    return potential(s, old) - potential(s, new)


@dataclass(frozen=True)
class SwitchRecord:
    before_turn: int
    from_phase: int
    to_phase: int
    from_stage: str
    to_stage: str
    drop: int

    def to_dict(self) -> dict:
        return {
            'before_turn': self.before_turn,
            'drop': self.drop,
            'from_phase': self.from_phase,
            'from_stage': self.from_stage,
            'to_phase': self.to_phase,
            'to_stage': self.to_stage,
        }


@dataclass(frozen=True)
class PhaseMachine:
    """
    Phase bookkeeping of one game. Phase 0 is Staller's opening turn in a
    Staller-start game and is valued with the first assignment.
    """
    family: FamilySpec
    phase: int = 1
    switches: tuple[SwitchRecord, ...] = ()

    @classmethod
    def start(cls, family: FamilySpec, first: Player = Player.DOMINATOR) -> 'PhaseMachine':
        return cls(family, 0 if first == Player.STALLER else 1)

    @property
    def spec(self) -> PhaseSpec:
        return phases(self.family)[max(self.phase, 1) - 1]

    @property
    def scheme(self) -> Scheme:
        return self.spec.scheme

    @property
    def threshold(self) -> int:
        return self.spec.threshold

    @property
    def is_last(self) -> bool:
        return self.phase == len(phases(self.family))

    @property
    def total_drop(self) -> int:
        return sum(record.drop for record in self.switches)


def advance_phase(m: PhaseMachine, s: GameState) -> PhaseMachine:
    """
    Move to the first phase, from the current one on, whose Dominator
    threshold the greedy move meets. Called before every Dominator turn.
    """
    if is_over(s):
        return m
    table = phases(m.family)
    phase = max(m.phase, 1)
    switches = list(m.switches)
    while phase < len(table):
        current = table[phase - 1]
        _, best = max_gain(s, current.scheme)
        if best >= current.threshold:
            break
        following = table[phase]
        if following.scheme.stage != current.scheme.stage:
            switches.append(SwitchRecord(
                before_turn=s.turn + 1,
                from_phase=phase,
                to_phase=phase + 1,
                from_stage=current.scheme.label,
                to_stage=following.scheme.label,
                drop=switch_drop(s, current.scheme, following.scheme),
            ))
        phase += 1
    if phase == m.phase:
        return m
    if m.phase >= 1:
        logger.debug("%s: phase %d -> %d before turn %d", m.family.label, m.phase, phase, s.turn + 1)
    return replace(m, phase=phase, switches=tuple(switches))


@dataclass(frozen=True)
class Cap:
    """One claim about the residual view: ``measure(v) op bound`` for every vertex of ``color``."""
    color: Color
    measure: str
    op: str
    bound: int
    lemma: str

    def holds(self, observed: int) -> bool:
        return observed <= self.bound if self.op == '<=' else observed >= self.bound


@dataclass(frozen=True)
class LemmaViolation:
    vertex: int
    color: Color
    measure: str
    observed: int
    op: str
    bound: int
    lemma: str

    def __str__(self):
        return (f"{self.lemma}: {self.color.label.lower()} vertex {self.vertex} has "
                f"{self.measure}={self.observed}, expected {self.op} {self.bound}")


def boundary_caps(spec: FamilySpec, boundary: int) -> tuple[Cap, ...]:
    """Caps that hold once the given phase has ended."""
    W, B = Color.WHITE, Color.BLUE
    if spec.family == Family.TWO_THIRDS:
        table = {
            1: (Cap(W, 'white_deg', '<=', 0, 'pairs'),
                Cap(W, 'residual_deg', '<=', 1, 'pairs'),
                Cap(B, 'residual_deg', '<=', 1, 'pairs')),
        }
    elif spec.family == Family.DEG3:
        table = {
            1: (Cap(W, 'white_deg', '<=', 2, 'deg3-phase1'),
                Cap(B, 'residual_deg', '<=', 3, 'deg3-phase1')),
            2: (Cap(W, 'white_deg', '<=', 1, 'deg3-phase2'),
                Cap(B, 'residual_deg', '<=', 2, 'deg3-phase2')),
            3: (Cap(W, 'white_deg', '<=', 0, 'deg3-stars'),
                Cap(W, 'residual_deg', '>=', 3, 'deg3-stars'),
                Cap(B, 'residual_deg', '<=', 1, 'deg3-stars')),
        }
    else:
        table = {
            1: (Cap(W, 'white_deg', '<=', 3, 'mindeg-phase1'),
                Cap(B, 'residual_deg', '<=', 4, 'mindeg-phase1')),
            2: (Cap(W, 'white_deg', '<=', 2, 'mindeg-phase2'),
                Cap(B, 'residual_deg', '<=', 3, 'mindeg-phase2')),
            3: (Cap(W, 'white_deg', '<=', 1, 'mindeg-phase3'),
                Cap(B, 'residual_deg', '<=', 2, 'mindeg-phase3')),
            4: (Cap(W, 'white_deg', '<=', 0, 'mindeg-stars'),
                Cap(W, 'residual_deg', '>=', spec.d, 'mindeg-stars'),
                Cap(B, 'residual_deg', '<=', 1, 'mindeg-stars')),
        }
    try:
        return table[boundary]
    except KeyError:
        raise UnknownBoundary(f"{spec.label} has no phase boundary {boundary}") from None


def persistent_boundaries(spec: FamilySpec) -> frozenset[int]:
    """Boundaries whose caps keep holding for the rest of the game."""
    if spec.family == Family.DEG3:
        return frozenset({1, 2})
    if spec.family == Family.MIN_DEG:
        return frozenset({1, 2, 3})
    return frozenset()


def structural_check(s: GameState, spec: FamilySpec, boundary: int) -> list[LemmaViolation]:
    caps = boundary_caps(spec, boundary)
    view = colors(s.graph, s.dominated)
    violations = []
    for v in range(s.graph.n):
        for cap in caps:
            if view.color[v] != cap.color:
                continue
            observed = getattr(view, cap.measure)[v]
            if not cap.holds(observed):
                violations.append(LemmaViolation(v, cap.color, cap.measure, observed, cap.op, cap.bound, cap.lemma))
    return violations

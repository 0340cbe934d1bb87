"""
Immutable simple graphs with bitset adjacency rows.

Vertices are the integers 0..n-1. Bit ``u`` of ``adj[v]`` is set iff ``uv`` is
an edge; ``closed[v]`` adds ``v`` itself. Graphs are frozen values and safe to
share between concurrent games.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import networkx as nx

from .exceptions import GraphFormatError

logger = logging.getLogger(__name__)

GRAPH6_HEADER = '>>graph6<<'

# Largest order the short (4 byte) graph6 header can carry.
GRAPH6_MAX_N = 258047

GRAPH6_SUFFIXES = ('.g6', '.graph6')
EDGE_LIST_SUFFIXES = ('.txt', '.edges', '.el')


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``bits`` in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class VertexSet:
    """A subset of 0..n-1 backed by an int bitset."""
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits >> self.n:
            raise ValueError(f"VertexSet bits exceed the vertex range 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> 'VertexSet':
        bits = 0
        for v in vertices:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside 0..{n - 1}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> 'VertexSet':
        return cls(n, (1 << n) - 1)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return bool(self.bits)

    def _same_universe(self, other: 'VertexSet') -> None:
        if self.n != other.n:
            raise ValueError(f"cannot combine vertex sets over {self.n} and {other.n} vertices")

    def __or__(self, other: 'VertexSet') -> 'VertexSet':
        self._same_universe(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __and__(self, other: 'VertexSet') -> 'VertexSet':
        self._same_universe(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __sub__(self, other: 'VertexSet') -> 'VertexSet':
        self._same_universe(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def complement(self) -> 'VertexSet':
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    def issubset(self, other: 'VertexSet') -> bool:
        self._same_universe(other)
        return not self.bits & ~other.bits

    def __repr__(self):
        return f"VertexSet({sorted(self)})"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertices 0..n-1."""
    n: int
    adj: tuple[int, ...]
    closed: tuple[int, ...] = field(init=False, repr=False, compare=False)
    ball2: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphFormatError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        for v, row in enumerate(self.adj):
            if row < 0 or row >> self.n:
                raise GraphFormatError(f"adjacency row of {v} names a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphFormatError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphFormatError(f"edge {v}-{u} is not symmetric")
        closed = tuple(row | (1 << v) for v, row in enumerate(self.adj))
        ball2 = []
        for v in range(self.n):
            reach = 0
            for u in iter_bits(closed[v]):
                reach |= closed[u]
            ball2.append(reach)
        object.__setattr__(self, 'closed', closed)
        object.__setattr__(self, 'ball2', tuple(ball2))

    @property
    def full(self) -> int:
        """Bitset of every vertex."""
        return (1 << self.n) - 1

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphFormatError(f"vertex {v} outside 0..{self.n - 1}")

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def neighbors(self, v: int) -> VertexSet:
        self.check_vertex(v)
        return VertexSet(self.n, self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) pairs with u < v, sorted."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def relabel(self, permutation: list[int] | tuple[int, ...]) -> 'Graph':
        """Copy of the graph where vertex v becomes ``permutation[v]``."""
        if sorted(permutation) != list(range(self.n)):
            raise GraphFormatError("relabeling must be a permutation of 0..n-1")
        return from_edge_list(self.n, [(permutation[u], permutation[v]) for u, v in self.edges()])

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.n))
        nxg.add_edges_from(self.edges())
        return nxg

    @classmethod
    def from_networkx(cls, nxg: nx.Graph) -> 'Graph':
        """Build a Graph from a networkx graph; nodes are numbered in sorted order."""
        if nxg.is_directed():
            raise GraphFormatError("directed graphs are not supported")
        if nxg.number_of_nodes() == 0:
            raise GraphFormatError("a graph needs at least one vertex")
        numbered = nx.convert_node_labels_to_integers(nx.Graph(nxg), ordering='sorted')
        return from_edge_list(numbered.number_of_nodes(), numbered.edges())


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on 0..n-1 from vertex pairs; duplicate edges collapse."""
    if n < 1:
        raise GraphFormatError(f"a graph needs at least one vertex, got n={n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    """N[v] = N(v) together with v."""
    g.check_vertex(v)
    return VertexSet(g.n, g.closed[v])


def min_degree(g: Graph) -> int:
    """Minimum degree; 0 when the graph has an isolated vertex."""
    return min(g.degrees())


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    data = text.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):].strip()
    if not data:
        raise GraphFormatError("malformed graph6: empty string")
    if data[0] in ':;&':
        raise GraphFormatError("sparse6 and digraph6 inputs are not graph6")
    if any(not 63 <= ord(ch) <= 126 for ch in data):
        raise GraphFormatError(f"malformed graph6 {data!r}: characters must lie in 63..126")
    try:
        nxg = nx.from_graph6_bytes(data.encode('ascii'))
    except (nx.NetworkXError, IndexError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph6 {data!r}: {exc}") from exc
    if nxg.number_of_nodes() > GRAPH6_MAX_N:
        raise GraphFormatError(f"graph6 order {nxg.number_of_nodes()} exceeds {GRAPH6_MAX_N}")
    return Graph.from_networkx(nxg)


def encode_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode('ascii').strip()


def parse_edge_list(text: str) -> Graph:
    """
    Parse the edge-list format: a first line "n m", then m lines "u v".
    Lines starting with '#' are comments.
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith('#')]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n, m = (int(token) for token in lines[0].split())
        edges = [tuple(int(token) for token in line.split()) for line in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"malformed edge list: {exc}") from exc
    if len(edges) != m:
        raise GraphFormatError(f"edge list announces {m} edges but lists {len(edges)}")
    for edge in edges:
        if len(edge) != 2:
            raise GraphFormatError(f"edge line {' '.join(map(str, edge))!r} must hold two vertices")
    return from_edge_list(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return '\n'.join(lines) + '\n'


def read_graphs(path: str | Path) -> list[tuple[str, Graph]]:
    """
    Read every graph stored in ``path``.

    graph6 files hold one graph per line and yield ids ``stem:line``; any other
    file is a single edge list whose id is the file stem.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() in GRAPH6_SUFFIXES:
        lines = [(number, line.strip()) for number, line in enumerate(text.splitlines(), start=1)]
        lines = [(number, line) for number, line in lines if line]
        if len(lines) == 1:
            return [(path.stem, parse_graph6(lines[0][1]))]
        return [(f"{path.stem}:{number}", parse_graph6(line)) for number, line in lines]
    return [(path.stem, parse_edge_list(text))]


def read_graph(path: str | Path) -> Graph:
    graphs = read_graphs(path)
    if not graphs:
        raise GraphFormatError(f"{path} holds no graph")
    if len(graphs) > 1:
        logger.warning("%s holds %d graphs; using the first", path, len(graphs))
    return graphs[0][1]

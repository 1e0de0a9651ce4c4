"""Simple graphs, mixed explosion states and the edge-list text format.

Vertices are 1-based throughout the public API. All types are immutable;
every operation returns a new value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]
Arc = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input."""


class SelfLoopError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EdgeListParseError(GraphError):
    """Malformed edge-list text; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected labeled graph on vertices ``1..n``."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"vertex count must be >= 1, got {self.n}")
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise GraphError(f"edge {(u, v)} is not a normalized pair in 1..{self.n}")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def size(self) -> int:
        """Edge count."""
        return len(self.edges)

    @cached_property
    def _neighbors(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._neighbors[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and _pair(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> dict[int, int]:
        return {v: len(self._neighbors[v]) for v in self.vertices}

    @property
    def min_degree(self) -> int:
        return min(self.degrees().values())

    @property
    def max_degree(self) -> int:
        return max(self.degrees().values())

    def adjacency_masks(self) -> np.ndarray:
        """Adjacency as uint64 words, 0-based bits; requires n <= 64."""
        if self.n > 64:
            raise GraphError(f"bitset adjacency supports n <= 64, got {self.n}")
        adj = np.zeros(self.n, dtype=np.uint64)
        for u, v in self.edges:
            adj[u - 1] |= np.uint64(1) << np.uint64(v - 1)
            adj[v - 1] |= np.uint64(1) << np.uint64(u - 1)
        return adj

    def with_edges(self, extra: Iterable[Edge]) -> SimpleGraph:
        return SimpleGraph(self.n, self.edges | {_pair(u, v) for u, v in extra})

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise VertexRangeError(f"vertex {v} out of range 1..{self.n}")

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.sorted_edges()})"


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> SimpleGraph:
    """Build a graph, rejecting self-loops, out-of-range endpoints and repeats."""
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    edges: set[Edge] = set()
    for u, v in edge_list:
        u, v = int(u), int(v)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        for w in (u, v):
            if not (1 <= w <= n):
                raise VertexRangeError(f"vertex {w} out of range 1..{n}")
        e = _pair(u, v)
        if e in edges:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        edges.add(e)
    return SimpleGraph(n, frozenset(edges))


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def null_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n)


def complement(G: SimpleGraph) -> SimpleGraph:
    return SimpleGraph(G.n, frozenset(non_edges(G)))


def non_edges(G: SimpleGraph) -> frozenset[Edge]:
    return frozenset(
        (u, v) for u in G.vertices for v in range(u + 1, G.n + 1) if (u, v) not in G.edges
    )


def is_complete(G: SimpleGraph) -> bool:
    return G.size == G.n * (G.n - 1) // 2


@dataclass(frozen=True)
class DegreeProfile:
    degrees: dict[int, int]
    min_degree: int
    max_degree: int


def degree_profile(G: SimpleGraph) -> DegreeProfile:
    degs = G.degrees()
    return DegreeProfile(degs, min(degs.values()), max(degs.values()))


def disjoint_union(graphs: Sequence[SimpleGraph]) -> SimpleGraph:
    """Union with vertex blocks relabeled consecutively in input order."""
    if not graphs:
        raise GraphError("disjoint_union needs at least one graph")
    edges: set[Edge] = set()
    offset = 0
    for H in graphs:
        edges.update((u + offset, v + offset) for u, v in H.edges)
        offset += H.n
    return SimpleGraph(offset, frozenset(edges))


def join_across(graphs: Sequence[SimpleGraph]) -> SimpleGraph:
    """Disjoint union plus every edge between different blocks."""
    base = disjoint_union(graphs)
    blocks = []
    offset = 0
    for H in graphs:
        blocks.append(range(offset + 1, offset + H.n + 1))
        offset += H.n
    cross = {
        (u, v)
        for i, bi in enumerate(blocks)
        for bj in blocks[i + 1:]
        for u in bi
        for v in bj
    }
    return SimpleGraph(base.n, base.edges | cross)


@dataclass(frozen=True)
class MixedState:
    """A base graph plus the arcs created by a sequence of explosions.

    ``last_added`` holds the arcs created by the most recent explosion.
    """

    base: SimpleGraph
    arcs: frozenset[Arc] = frozenset()
    log: tuple[int, ...] = ()
    last_added: frozenset[Arc] = field(default=frozenset(), compare=False)

    @classmethod
    def fresh(cls, G: SimpleGraph) -> MixedState:
        return cls(G)

    @cached_property
    def underlying_graph(self) -> SimpleGraph:
        return SimpleGraph(self.base.n, self.base.edges | {_pair(u, w) for u, w in self.arcs})


def underlying(state: MixedState) -> SimpleGraph:
    """The mixed graph with arc directions forgotten."""
    return state.underlying_graph


def explode(state: MixedState, v: int) -> MixedState:
    """Explode ``v``: add an arc from ``v`` to every current non-neighbour.

    Exploding a vertex that is already universal adds nothing.
    """
    H = state.underlying_graph
    H._check_vertex(v)
    nbrs = H.neighbors(v)
    added = frozenset((v, z) for z in H.vertices if z != v and z not in nbrs)
    return MixedState(state.base, state.arcs | added, state.log + (v,), added)


@dataclass(frozen=True)
class ExplosionStep:
    vertex: int
    arcs_added: frozenset[Arc]


@dataclass(frozen=True)
class ExplosionTrace:
    """An ordered explosion record starting from ``initial``."""

    initial: SimpleGraph
    steps: tuple[ExplosionStep, ...] = ()
    final_complete: bool = False

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s.vertex for s in self.steps)

    @property
    def arcs(self) -> frozenset[Arc]:
        """All arcs created, i.e. the arc digraph of the run."""
        out: set[Arc] = set()
        for s in self.steps:
            out |= s.arcs_added
        return frozenset(out)

    def replay(self) -> MixedState:
        """Re-run the explosions and check each step's recorded arcs."""
        state = MixedState.fresh(self.initial)
        for step in self.steps:
            state = explode(state, step.vertex)
            if state.last_added != step.arcs_added:
                raise ValueError(f"replay mismatch at vertex {step.vertex}")
        return state


def run_sequence(G: SimpleGraph, sequence: Iterable[int]) -> ExplosionTrace:
    """Explode ``sequence`` in order and record the trace."""
    state = MixedState.fresh(G)
    steps = []
    for v in sequence:
        state = explode(state, v)
        steps.append(ExplosionStep(v, state.last_added))
    return ExplosionTrace(G, tuple(steps), is_complete(state.underlying_graph))


def parse_edge_list(text: str) -> SimpleGraph:
    """Parse the ``n m`` header plus ``u v`` lines format."""
    header = None
    pairs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer field in {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 0:
                raise EdgeListParseError(f"bad header {line!r}", lineno)
            header = (a, b, lineno)
        else:
            pairs.append((a, b, lineno))
    if header is None:
        raise EdgeListParseError("missing 'n m' header", 1)
    n, m, header_line = header
    seen: set[Edge] = set()
    for u, v, lineno in pairs:
        if u == v:
            raise EdgeListParseError(f"self-loop at vertex {u}", lineno)
        for w in (u, v):
            if not (1 <= w <= n):
                raise EdgeListParseError(f"vertex {w} out of range 1..{n}", lineno)
        e = _pair(u, v)
        if e in seen:
            raise EdgeListParseError(f"duplicate edge {e}", lineno)
        seen.add(e)
    if len(pairs) != m:
        raise EdgeListParseError(f"header declares {m} edges, found {len(pairs)}", header_line)
    return SimpleGraph(n, frozenset(seen))


def format_edge_list(G: SimpleGraph) -> str:
    """Canonical form: header then edges sorted, one per line."""
    lines = [f"{G.n} {G.size}"]
    lines.extend(f"{u} {v}" for u, v in G.sorted_edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> SimpleGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(G: SimpleGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(G))

import itertools

import pytest
from hypothesis import strategies as st

from mcpherson.graph import SimpleGraph, build_graph

EXAMPLE1_EDGES = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (2, 6), (3, 4), (3, 5)]


@pytest.fixture
def example1():
    return build_graph(6, EXAMPLE1_EDGES)


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete(n):
    return build_graph(n, itertools.combinations(range(1, n + 1), 2))


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph(n, frozenset(p for p, k in zip(pairs, keep) if k))


# --- independent oracles: plain Python, no package solvers -------------------


def _closure(n, edges, exploded):
    out = set(edges)
    for v in exploded:
        for z in range(1, n + 1):
            if z != v:
                out.add((min(v, z), max(v, z)))
    return out


def brute_sequence_lengths(G):
    """(min, max) length over every maximal sequence of non-universal explosions."""
    n, total = G.n, G.n * (G.n - 1) // 2
    lengths = []

    def rec(seq):
        cur = _closure(n, G.edges, seq)
        if len(cur) == total:
            lengths.append(len(seq))
            return
        deg = {v: 0 for v in range(1, n + 1)}
        for a, b in cur:
            deg[a] += 1
            deg[b] += 1
        for v in range(1, n + 1):
            if deg[v] <= n - 2:
                rec(seq + (v,))

    rec(())
    return min(lengths), max(lengths)


def brute_clique_number(G):
    for k in range(G.n, 0, -1):
        for S in itertools.combinations(G.vertices, k):
            if all(G.has_edge(u, v) for u, v in itertools.combinations(S, 2)):
                return k
    return 0


def canonical_form(G):
    """Lexicographically least sorted edge list over all relabelings (n <= 8)."""
    best = None
    for perm in itertools.permutations(range(1, G.n + 1)):
        relabeled = sorted(tuple(sorted((perm[u - 1], perm[v - 1]))) for u, v in G.edges)
        if best is None or relabeled < best:
            best = relabeled
    return (G.n, tuple(best))


# --- acceptance reporting ----------------------------------------------------

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)

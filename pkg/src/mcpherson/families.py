"""Graph families with known McPherson numbers, Jaco graphs and platonic graphs."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .engine import exact_upsilon
from .graph import (
    Arc,
    SimpleGraph,
    build_graph,
    complete_graph,
    disjoint_union,
    join_across,
    null_graph,
)

# Fixed vertex numberings; see README for the layout of each solid.
_CUBE = [(1, 2), (1, 3), (1, 5), (2, 4), (2, 6), (3, 4), (3, 7), (4, 8),
         (5, 6), (5, 7), (6, 8), (7, 8)]  # vertex k+1 <-> 3-bit word k
_OCTAHEDRON = [(u, v) for u in range(1, 7) for v in range(u + 1, 7)
               if (u, v) not in {(1, 2), (3, 4), (5, 6)}]  # antipodal pairs 12, 34, 56


def _icosahedron() -> list[tuple[int, int]]:
    # 1 = top, 2..6 upper pentagon, 7..11 lower pentagon, 12 = bottom
    edges = []
    for k in range(5):
        up, up_next = 2 + k, 2 + (k + 1) % 5
        lo, lo_next = 7 + k, 7 + (k + 1) % 5
        edges += [(1, up), (up, up_next), (lo, lo_next), (lo, 12), (up, lo), (up, lo_next)]
    return edges


def _dodecahedron() -> list[tuple[int, int]]:
    # generalized Petersen graph GP(10, 2): outer 10-cycle 1..10, inner 11..20
    edges = []
    for k in range(10):
        edges += [(1 + k, 1 + (k + 1) % 10), (1 + k, 11 + k), (11 + k, 11 + (k + 2) % 10)]
    return edges


PLATONIC_EDGES: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "tetrahedron": (4, [(u, v) for u in range(1, 5) for v in range(u + 1, 5)]),
    "cube": (8, _CUBE),
    "octahedron": (6, _OCTAHEDRON),
    "dodecahedron": (20, _dodecahedron()),
    "icosahedron": (12, _icosahedron()),
}

KINDS = ("path", "cycle", "complete", "null", "matching", "multipartite",
         "jaco", "platonic", "union", "join")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family member.

    ``params`` holds sizes (one for most kinds, the part sizes for
    multipartite, the solid name for platonic); ``children`` holds the
    component specs of a union or join.
    """

    kind: str
    params: tuple = ()
    children: tuple[FamilySpec, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FamilyError(f"unknown family {self.kind!r}")
        if self.kind in ("union", "join"):
            if not self.children:
                raise FamilyError(f"{self.kind} needs at least one component")
            return
        if self.kind == "platonic":
            if len(self.params) != 1 or self.params[0] not in PLATONIC_EDGES:
                raise FamilyError(
                    f"platonic name must be one of {sorted(PLATONIC_EDGES)}, got {self.params}"
                )
            return
        if not self.params or any(not isinstance(p, int) or p < 1 for p in self.params):
            raise FamilyError(f"{self.kind} sizes must be integers >= 1, got {self.params}")
        if self.kind != "multipartite" and len(self.params) != 1:
            raise FamilyError(f"{self.kind} takes one size, got {self.params}")
        if self.kind == "cycle" and self.params[0] < 3:
            raise FamilyError("cycle needs n >= 3")
        if self.kind == "matching" and self.params[0] % 2:
            raise FamilyError("complete-minus-matching needs even n")

    @property
    def n(self) -> int:
        return generate(self).n

    @classmethod
    def path(cls, n): return cls("path", (n,))

    @classmethod
    def cycle(cls, n): return cls("cycle", (n,))

    @classmethod
    def complete(cls, n): return cls("complete", (n,))

    @classmethod
    def null(cls, n): return cls("null", (n,))

    @classmethod
    def matching(cls, n): return cls("matching", (n,))

    @classmethod
    def multipartite(cls, *parts): return cls("multipartite", tuple(parts))

    @classmethod
    def jaco(cls, n): return cls("jaco", (n,))

    @classmethod
    def platonic(cls, name): return cls("platonic", (name,))

    @classmethod
    def union(cls, *specs): return cls("union", (), tuple(specs))

    @classmethod
    def join(cls, *specs): return cls("join", (), tuple(specs))

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``kind:param`` tokens such as ``path:5`` or ``multipartite:2,3,4``."""
        kind, _, body = text.strip().partition(":")
        kind = kind.strip().lower()
        if kind == "complete-minus-matching":
            kind = "matching"
        if kind == "platonic":
            return cls.platonic(body.strip().lower())
        if kind in ("union", "join"):
            raise FamilyError(f"{kind} is built from component specs, not a single token")
        try:
            params = tuple(int(x) for x in body.split(",") if x.strip())
        except ValueError:
            raise FamilyError(f"bad parameters in {text!r}") from None
        return cls(kind, params)

    def __str__(self) -> str:
        if self.children:
            return f"{self.kind}(" + ", ".join(map(str, self.children)) + ")"
        return f"{self.kind}:" + ",".join(map(str, self.params))


def generate(spec: FamilySpec) -> SimpleGraph:
    """Deterministically labeled graph for ``spec``."""
    kind, p = spec.kind, spec.params
    if kind == "path":
        return build_graph(p[0], [(i, i + 1) for i in range(1, p[0])])
    if kind == "cycle":
        return build_graph(p[0], [(i, i + 1) for i in range(1, p[0])] + [(1, p[0])])
    if kind == "complete":
        return complete_graph(p[0])
    if kind == "null":
        return null_graph(p[0])
    if kind == "matching":
        n = p[0]
        return build_graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                               if not (u % 2 == 1 and v == u + 1)])
    if kind == "multipartite":
        return join_across([null_graph(k) for k in p])
    if kind == "jaco":
        return jaco(p[0]).underlying
    if kind == "platonic":
        n, edges = PLATONIC_EDGES[p[0]]
        return build_graph(n, edges)
    parts = [generate(c) for c in spec.children]
    return disjoint_union(parts) if kind == "union" else join_across(parts)


def closed_form_upsilon(spec: FamilySpec) -> int | None:
    """Known formula value for the family, or None where there is none."""
    kind, p = spec.kind, spec.params
    if kind == "path":
        return max(p[0] - 2, 0)
    if kind == "cycle":
        return 0 if p[0] == 3 else p[0] - 2
    if kind == "complete":
        return 0
    if kind == "null":
        return p[0] - 1
    if kind == "matching":
        return p[0] // 2
    if kind == "multipartite":
        return sum(p) - len(p)
    if kind == "jaco":
        return jaco_upsilon_formula(p[0]) if p[0] >= 3 else 0
    if kind == "join":
        values = [closed_form_upsilon(c) for c in spec.children]
        return None if None in values else sum(values)
    return None


# --- Jaco graphs ---------------------------------------------------------------


class JacoGraph(NamedTuple):
    arcs: frozenset[Arc]
    underlying: SimpleGraph


def jaco(n: int) -> JacoGraph:
    """Finite Jaco graph J_n(1).

    Vertex i sends arcs to i+1 .. min(n, 2i - indeg(i)), where indeg(i)
    is already fixed by the arcs from lower vertices.
    """
    if n < 1:
        raise FamilyError(f"jaco needs n >= 1, got {n}")
    indeg = [0] * (n + 1)
    arcs = []
    for i in range(1, n + 1):
        for j in range(i + 1, min(n, 2 * i - indeg[i]) + 1):
            arcs.append((i, j))
            indeg[j] += 1
    return JacoGraph(frozenset(arcs), build_graph(n, arcs))


@dataclass(frozen=True)
class JacoProfile:
    n: int
    in_degree: dict[int, int]
    out_degree: dict[int, int]
    prime_jaconian: int
    hope_range: tuple[int, int]
    lowest_arc_to_n: int


def jaco_profile(n: int) -> JacoProfile:
    if n < 3:
        raise FamilyError(f"jaco_profile needs n >= 3, got {n}")
    J = jaco(n)
    indeg = {v: 0 for v in range(1, n + 1)}
    outdeg = dict(indeg)
    for i, j in J.arcs:
        outdeg[i] += 1
        indeg[j] += 1
    degree = J.underlying.degrees()
    top = max(degree.values())
    prime = min(v for v in degree if degree[v] == top)
    lowest = min(i for i, j in J.arcs if j == n)
    return JacoProfile(n, indeg, outdeg, prime, (prime + 1, n), lowest)


def jaco_upsilon_formula(n: int) -> int:
    """Prime Jaconian index i, minus one when v_i v_n is an edge."""
    prof = jaco_profile(n)
    i = prof.prime_jaconian
    return i - 1 if (i, n) in jaco(n).arcs else i


@dataclass(frozen=True)
class JacoRow:
    n: int
    in_degree: int
    out_degree: int
    prime_jaconian: int
    upsilon: int

    def as_tuple(self) -> tuple[int, int, int, str, int]:
        return (self.n, self.in_degree, self.out_degree, f"v_{self.prime_jaconian}", self.upsilon)


def jaco_table(n_max: int) -> list[JacoRow]:
    """Rows for n = 3..n_max.

    The out-degree column is that of v_n in a Jaco graph large enough not
    to truncate it, i.e. n - indeg(v_n), since the untruncated degree of
    v_n is n.
    """
    if n_max < 3:
        raise FamilyError(f"jaco_table needs n_max >= 3, got {n_max}")
    rows = []
    for n in range(3, n_max + 1):
        prof = jaco_profile(n)
        d_in = prof.in_degree[n]
        rows.append(JacoRow(n, d_in, n - d_in, prof.prime_jaconian, jaco_upsilon_formula(n)))
    return rows


@dataclass(frozen=True)
class ConjectureReport:
    n_max: int
    rows: tuple[JacoRow, ...]
    unique_out_degree: tuple[int, ...]
    unique_upsilon: tuple[int, ...]
    violations: tuple[int, ...]

    @property
    def note(self) -> str:
        return (f"uniqueness is judged within n = 3..{self.n_max} only; "
                "values near the upper end may repeat beyond the range")


def conjecture_scan(n_max: int) -> ConjectureReport:
    """Indices where out-degree uniqueness and upsilon uniqueness disagree."""
    rows = jaco_table(n_max)
    outs = Counter(r.out_degree for r in rows)
    ups = Counter(r.upsilon for r in rows)
    uniq_out = tuple(r.n for r in rows if outs[r.out_degree] == 1)
    uniq_ups = tuple(r.n for r in rows if ups[r.upsilon] == 1)
    violations = tuple(sorted(set(uniq_out) ^ set(uniq_ups)))
    return ConjectureReport(n_max, tuple(rows), uniq_out, uniq_ups, violations)


def platonic_upsilon(name: str) -> int:
    return exact_upsilon(generate(FamilySpec.platonic(name))).value

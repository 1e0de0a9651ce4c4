"""McPherson recursion, its inverse, exact solvers and the greedy gap scan."""
from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .graph import (
    ExplosionTrace,
    MixedState,
    SimpleGraph,
    explode,
    is_complete,
    run_sequence,
)

DEFAULT_CLIQUE_LIMIT = 64
DEFAULT_SEQUENCE_LIMIT = 12


class SolverLimitError(RuntimeError):
    """The instance is larger than the configured solver limit."""


class PolicyViolation(ValueError):
    """An explicit explosion sequence picked an ineligible vertex."""


@dataclass(frozen=True)
class TieBreakPolicy:
    """How to choose among equally eligible vertices.

    ``kind`` is one of ``lowest-index``, ``highest-index``,
    ``explicit-sequence`` or ``exhaustive-best``. An explicit sequence is a
    prefix: once it is used up, the run continues with lowest-index.
    """

    kind: str = "lowest-index"
    sequence: tuple[int, ...] = ()

    KINDS = ("lowest-index", "highest-index", "explicit-sequence", "exhaustive-best")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown tie-break policy {self.kind!r}")
        if self.kind == "explicit-sequence" and not self.sequence:
            raise ValueError("explicit-sequence policy needs at least one vertex")

    @classmethod
    def explicit(cls, *vertices: int) -> TieBreakPolicy:
        return cls("explicit-sequence", tuple(vertices))

    @classmethod
    def parse(cls, text: str) -> TieBreakPolicy:
        """Parse ``lowest``, ``highest``, ``exhaustive`` or ``explicit:3,1,2``."""
        text = text.strip()
        aliases = {
            "lowest": "lowest-index",
            "highest": "highest-index",
            "exhaustive": "exhaustive-best",
            "best": "exhaustive-best",
        }
        if text.startswith("explicit:") or text.startswith("explicit-sequence:"):
            body = text.split(":", 1)[1]
            try:
                seq = tuple(int(x) for x in body.split(",") if x.strip())
            except ValueError:
                raise ValueError(f"bad explicit sequence {body!r}") from None
            return cls.explicit(*seq)
        return cls(aliases.get(text, text))

    @property
    def label(self) -> str:
        if self.kind == "explicit-sequence":
            return "explicit:" + ",".join(map(str, self.sequence))
        return self.kind


LOWEST_INDEX = TieBreakPolicy()


@dataclass(frozen=True)
class UpsilonCertificate:
    value: int
    witness_set: frozenset[int]
    trace: ExplosionTrace


class UpsilonStar(NamedTuple):
    value: int
    trace: ExplosionTrace


@dataclass(frozen=True)
class StabilityReport:
    upsilon: int
    upsilon_star: int
    discrepancy: int
    stable: bool


def clique_limit() -> int:
    raw = os.environ.get("MCPHERSON_SOLVER_LIMIT")
    if not raw:
        return DEFAULT_CLIQUE_LIMIT
    limit = int(raw)
    if not 1 <= limit <= kernels.MAX_WORD_VERTICES:
        raise ValueError(f"MCPHERSON_SOLVER_LIMIT must be in 1..64, got {limit}")
    return limit


def _check_limit(G: SimpleGraph, limit: int, what: str) -> None:
    if G.n > limit:
        raise SolverLimitError(f"{what}: n={G.n} exceeds solver limit {limit}")


def _mask_to_vertices(mask, n: int) -> frozenset[int]:
    m = int(mask)
    return frozenset(v + 1 for v in range(n) if (m >> v) & 1)


# --- greedy recursions -------------------------------------------------------


def _min_degree_eligible(H: SimpleGraph) -> list[int]:
    degs = H.degrees()
    open_ = [v for v, d in degs.items() if d < H.n - 1]
    if not open_:
        return []
    low = min(degs[v] for v in open_)
    return [v for v in open_ if degs[v] == low]


def _max_degree_eligible(H: SimpleGraph) -> list[int]:
    degs = H.degrees()
    open_ = [v for v, d in degs.items() if d <= H.n - 2]
    if not open_:
        return []
    high = max(degs[v] for v in open_)
    return [v for v in open_ if degs[v] == high]


def _run_policy(G, policy, eligible_fn, rule, maximize, limit) -> ExplosionTrace:
    if policy.kind == "exhaustive-best":
        _check_limit(G, limit, "exhaustive-best search")
        _, choice = kernels.restricted_search(G.adjacency_masks(), G.n, rule, maximize)
        return run_sequence(G, _follow_choices(choice))
    state = MixedState.fresh(G)
    steps_left = list(policy.sequence)
    while True:
        H = state.underlying_graph
        eligible = eligible_fn(H)
        if not eligible:
            if steps_left:
                raise PolicyViolation(
                    f"vertex {steps_left[0]} listed after the graph became complete"
                )
            break
        if steps_left:
            v = steps_left.pop(0)
            if v not in eligible:
                raise PolicyViolation(
                    f"vertex {v} is not eligible at step {len(state.log) + 1}; "
                    f"eligible: {eligible}"
                )
        elif policy.kind == "highest-index":
            v = eligible[-1]
        else:
            v = eligible[0]
        state = explode(state, v)
    return run_sequence(G, state.log)


def _follow_choices(choice: np.ndarray) -> list[int]:
    seq = []
    s = 0
    while choice[s] >= 0:
        v = int(choice[s])
        seq.append(v + 1)
        s |= 1 << v
    return seq


def greedy_mcpherson(
    G: SimpleGraph,
    policy: TieBreakPolicy = LOWEST_INDEX,
    limit: int = DEFAULT_SEQUENCE_LIMIT,
) -> ExplosionTrace:
    """McPherson recursion: repeatedly explode a minimum-degree vertex.

    Only non-universal vertices are candidates. ``limit`` bounds the
    vertex count for the exhaustive-best policy.
    """
    return _run_policy(
        G, policy, _min_degree_eligible, kernels.RULE_MIN_DEGREE, False, limit
    )


def inverse_mcpherson(
    G: SimpleGraph,
    policy: TieBreakPolicy = LOWEST_INDEX,
    limit: int = DEFAULT_SEQUENCE_LIMIT,
) -> ExplosionTrace:
    """Inverse recursion: explode a maximum-degree vertex of degree <= n-2.

    With exhaustive-best, returns the longest run over all such choices.
    """
    return _run_policy(
        G, policy, _max_degree_eligible, kernels.RULE_MAX_DEGREE, True, limit
    )


# --- exact solvers -----------------------------------------------------------


def exact_upsilon(G: SimpleGraph, limit: int | None = None) -> UpsilonCertificate:
    """Minimum number of explosions, as n minus the clique number.

    The witness is the complement of a maximum clique; its trace explodes
    the witness in ascending order.
    """
    _check_limit(G, clique_limit() if limit is None else limit, "exact_upsilon")
    clique = kernels.max_clique_mask(G.adjacency_masks(), G.n)
    witness = frozenset(G.vertices) - _mask_to_vertices(clique, G.n)
    trace = run_sequence(G, sorted(witness))
    return UpsilonCertificate(len(witness), witness, trace)


def complement_cover_upsilon(G: SimpleGraph) -> frozenset[int]:
    """Minimum vertex cover of the complement by scanning all vertex subsets."""
    _check_limit(G, kernels.MAX_SUBSET_VERTICES, "complement cover search")
    return _mask_to_vertices(kernels.min_complement_cover_mask(G.adjacency_masks(), G.n), G.n)


def sequence_upsilon(G: SimpleGraph) -> int:
    """Minimum explosion count by breadth-first search over underlying graphs."""
    _check_limit(G, kernels.MAX_SEQUENCE_BFS_VERTICES, "sequence search")
    return int(kernels.sequence_bfs_min(G.adjacency_masks(), G.n))


def exact_upsilon_star(G: SimpleGraph, limit: int = DEFAULT_SEQUENCE_LIMIT) -> UpsilonStar:
    """Longest sequence of explosions of non-universal vertices.

    Any such sequence ends at K_n since each step adds at least one arc.
    """
    _check_limit(G, limit, "exact_upsilon_star")
    _, choice = kernels.restricted_search(G.adjacency_masks(), G.n, kernels.RULE_ANY, True)
    trace = run_sequence(G, _follow_choices(choice))
    return UpsilonStar(len(trace), trace)


def upsilon_upper_bound(G: SimpleGraph) -> int:
    return G.n * (G.n - 1) // 2 - G.size


def stability_report(G: SimpleGraph, limit: int = DEFAULT_SEQUENCE_LIMIT) -> StabilityReport:
    ups = exact_upsilon(G).value
    star = exact_upsilon_star(G, limit).value
    return StabilityReport(ups, star, star - ups, star == ups)


def order_invariance_check(
    G: SimpleGraph,
    S: Iterable[int],
    trials: int | None = None,
    seed: int = 0,
) -> bool:
    """True iff every tried ordering of ``S`` gives the same underlying graph.

    All orderings are tried when ``trials`` is None or at least ``|S|!``;
    otherwise ``trials`` seeded random orderings are sampled.
    """
    S = sorted(set(S))
    if len(S) > 8:
        raise ValueError(f"order_invariance_check supports |S| <= 8, got {len(S)}")
    for v in S:
        G._check_vertex(v)
    if len(S) <= 1:
        return True
    if trials is None or trials >= math.factorial(len(S)):
        orderings: Iterable[Sequence[int]] = itertools.permutations(S)
    else:
        rng = random.Random(seed)
        orderings = (rng.sample(S, len(S)) for _ in range(trials))
    reference = None
    for order in orderings:
        state = MixedState.fresh(G)
        for v in order:
            state = explode(state, v)
        final = state.underlying_graph
        if reference is None:
            reference = final
        elif final != reference:
            return False
    return True


# --- greedy versus exact scan -----------------------------------------------


@dataclass(frozen=True)
class GapEntry:
    index: int
    name: str
    n: int
    m: int
    exact: int
    greedy_best: int
    greedy_worst: int
    lengths: dict[str, int | None]
    violations: dict[str, str] = field(default_factory=dict)

    @property
    def policy_sensitive(self) -> bool:
        """Some minimum-degree choice sequence is longer than optimal."""
        return self.greedy_worst > self.exact

    @property
    def hard_counterexample(self) -> bool:
        """No minimum-degree choice sequence attains the optimum."""
        return self.greedy_best > self.exact

    @property
    def status(self) -> str:
        if self.hard_counterexample:
            return "hard-counterexample"
        if self.policy_sensitive:
            return "policy-sensitive"
        return "ok"


@dataclass(frozen=True)
class GapReport:
    entries: tuple[GapEntry, ...]
    policies: tuple[str, ...]

    @property
    def policy_sensitive(self) -> list[GapEntry]:
        return [e for e in self.entries if e.policy_sensitive]

    @property
    def hard_counterexamples(self) -> list[GapEntry]:
        return [e for e in self.entries if e.hard_counterexample]

    def summary(self) -> dict[str, int]:
        return {
            "instances": len(self.entries),
            "policy_sensitive": len(self.policy_sensitive),
            "hard_counterexamples": len(self.hard_counterexamples),
            "policy_violations": sum(len(e.violations) for e in self.entries),
        }


def gap_entry(
    G: SimpleGraph,
    policies: Sequence[TieBreakPolicy],
    index: int = 0,
    name: str = "",
) -> GapEntry:
    _check_limit(G, DEFAULT_SEQUENCE_LIMIT, "greedy_gap_scan")
    adj = G.adjacency_masks()
    exact = G.n - int(kernels.max_clique_mask(adj, G.n)).bit_count()
    best, _ = kernels.restricted_search(adj, G.n, kernels.RULE_MIN_DEGREE, False)
    worst, _ = kernels.restricted_search(adj, G.n, kernels.RULE_MIN_DEGREE, True)
    lengths: dict[str, int | None] = {}
    violations: dict[str, str] = {}
    for policy in policies:
        try:
            lengths[policy.label] = len(greedy_mcpherson(G, policy))
        except PolicyViolation as exc:
            lengths[policy.label] = None
            violations[policy.label] = str(exc)
    return GapEntry(
        index, name or f"g{index}", G.n, G.size, exact, int(best[0]), int(worst[0]),
        lengths, violations,
    )


def greedy_gap_scan(
    instances: Sequence[SimpleGraph],
    policies: Sequence[TieBreakPolicy] = (LOWEST_INDEX,),
    names: Sequence[str] | None = None,
) -> GapReport:
    """Compare greedy recursion lengths with the exact value per instance.

    Policy sensitivity and hard counterexamples are decided by exhaustive
    search over all minimum-degree choices, not only by the listed policies.
    """
    entries = tuple(
        gap_entry(G, policies, i, names[i] if names else "")
        for i, G in enumerate(instances)
    )
    return GapReport(entries, tuple(p.label for p in policies))


def edge_code_name(G: SimpleGraph) -> str:
    """Name a labeled graph by its lexicographic pair bitmask."""
    code = 0
    k = 0
    for u in range(1, G.n + 1):
        for v in range(u + 1, G.n + 1):
            if (u, v) in G.edges:
                code |= 1 << k
            k += 1
    return f"n{G.n}-e{code}"


def all_labeled_graphs(n: int) -> Iterable[SimpleGraph]:
    """Every labeled graph on ``n`` vertices, in edge-code order."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    for code in range(1 << len(pairs)):
        yield SimpleGraph(n, frozenset(p for k, p in enumerate(pairs) if (code >> k) & 1))


def random_graph(rng: np.random.Generator, n: int, p: float | None = None) -> SimpleGraph:
    """Erdos-Renyi graph; the density is drawn uniformly when ``p`` is None."""
    if p is None:
        p = float(rng.random())
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    keep = rng.random(len(pairs)) < p
    return SimpleGraph(n, frozenset(e for e, k in zip(pairs, keep) if k))


def is_complete_after(G: SimpleGraph, S: Iterable[int]) -> bool:
    """Whether exploding ``S`` (in any order) completes ``G``."""
    state = MixedState.fresh(G)
    for v in S:
        state = explode(state, v)
    return is_complete(state.underlying_graph)

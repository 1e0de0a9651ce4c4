"""Bitset kernels for the exact solvers and exhaustive sweeps.

A graph on ``n <= 64`` vertices is an array ``adj`` of ``n`` uint64 words;
bit ``j`` of ``adj[i]`` is set iff vertices ``i`` and ``j`` (0-based) are
adjacent. Vertex sets use the same word encoding.

Every shift and mask operation is kept in uint64 explicitly: numba promotes
mixed signed/unsigned integer arithmetic to float64.
"""
import numpy as np

from ._accel import njit

ONE = np.uint64(1)
ZERO = np.uint64(0)

# Eligibility rules for the set-indexed explosion search.
RULE_MIN_DEGREE = 0  # minimum degree among non-universal vertices
RULE_MAX_DEGREE = 1  # maximum degree among vertices of degree <= n-2
RULE_ANY = 2  # any non-universal vertex

MAX_WORD_VERTICES = 64
MAX_SUBSET_VERTICES = 20
MAX_SEQUENCE_BFS_VERTICES = 7


@njit(cache=True)
def bit(v):
    return ONE << np.uint64(v)


@njit(cache=True)
def has_bit(mask, v):
    return ((mask >> np.uint64(v)) & ONE) != ZERO


@njit(cache=True)
def full_mask(n):
    if n >= 64:
        return ~ZERO
    return (ONE << np.uint64(n)) - ONE


@njit(cache=True)
def popcount(x):
    c = 0
    while x != ZERO:
        x &= x - ONE
        c += 1
    return c


@njit(cache=True)
def lowest_index(x):
    i = 0
    while ((x >> np.uint64(i)) & ONE) == ZERO:
        i += 1
    return i


@njit(cache=True)
def color_bound(adj, p):
    """Number of colour classes in a greedy colouring of the vertices in ``p``."""
    colors = 0
    uncolored = p
    while uncolored != ZERO:
        colors += 1
        q = uncolored
        while q != ZERO:
            v = lowest_index(q)
            b = bit(v)
            uncolored &= ~b
            q &= ~b
            q &= ~adj[v]
    return colors


@njit(cache=True)
def max_clique_mask(adj, n):
    """Maximum clique by branch and bound with a greedy-colouring bound.

    Iterative DFS; ``cand[d]`` holds the candidates still to branch on at
    depth ``d`` and ``chosen[d]`` the clique built so far (of size ``d``).
    """
    if n == 0:
        return ZERO
    cand = np.zeros(n + 1, dtype=np.uint64)
    chosen = np.zeros(n + 1, dtype=np.uint64)
    cand[0] = full_mask(n)
    best = 0
    best_mask = ZERO
    depth = 0
    while depth >= 0:
        p = cand[depth]
        if p == ZERO or depth + color_bound(adj, p) <= best:
            depth -= 1
            continue
        v = lowest_index(p)
        b = bit(v)
        cand[depth] = p & ~b
        chosen[depth + 1] = chosen[depth] | b
        cand[depth + 1] = p & adj[v]
        depth += 1
        if depth > best:
            best = depth
            best_mask = chosen[depth]
    return best_mask


@njit(cache=True)
def is_clique(adj, mask):
    q = mask
    while q != ZERO:
        v = lowest_index(q)
        b = bit(v)
        q &= ~b
        if (mask & ~b) & ~adj[v] != ZERO:
            return False
    return True


@njit(cache=True)
def covers_complement(adj, n, s):
    """True iff every non-adjacent pair has an endpoint in ``s``."""
    full = full_mask(n)
    for u in range(n):
        if has_bit(s, u):
            continue
        if (full & ~adj[u] & ~bit(u) & ~s) != ZERO:
            return False
    return True


@njit(cache=True)
def min_complement_cover_mask(adj, n):
    """Smallest vertex cover of the complement, by scanning every subset."""
    best = n + 1
    best_mask = full_mask(n)
    for s in range(1 << n):
        sm = np.uint64(s)
        k = popcount(sm)
        if k >= best:
            continue
        if covers_complement(adj, n, sm):
            best = k
            best_mask = sm
    return best_mask


@njit(cache=True)
def pair_index_table(n):
    idx = np.full((n, n), -1, dtype=np.int64)
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            idx[u, v] = k
            idx[v, u] = k
            k += 1
    return idx


@njit(cache=True)
def sequence_bfs_min(adj, n):
    """Fewest explosions reaching K_n, by BFS over underlying graphs.

    States are edge sets of the underlying graph encoded over vertex pairs,
    so this search does not assume that the outcome depends only on the set
    of exploded vertices.
    """
    npairs = n * (n - 1) // 2
    if npairs == 0:
        return 0
    idx = pair_index_table(n)
    incident = np.zeros(n, dtype=np.int64)
    start = 0
    for u in range(n):
        for v in range(n):
            if u != v:
                incident[u] |= 1 << idx[u, v]
                if u < v and has_bit(adj[u], v):
                    start |= 1 << idx[u, v]
    target = (1 << npairs) - 1
    if start == target:
        return 0
    dist = np.full(1 << npairs, -1, dtype=np.int8)
    queue = np.empty(1 << npairs, dtype=np.int64)
    dist[start] = 0
    queue[0] = start
    head = 0
    tail = 1
    while head < tail:
        state = queue[head]
        head += 1
        for v in range(n):
            nxt = state | incident[v]
            if nxt == state or dist[nxt] >= 0:
                continue
            dist[nxt] = dist[state] + 1
            if nxt == target:
                return dist[nxt]
            queue[tail] = nxt
            tail += 1
    return -1


@njit(cache=True)
def underlying_degrees(adj, n, s, deg):
    """Fill ``deg`` with degrees after exploding the vertex set ``s``.

    Returns True when the underlying graph is complete.
    """
    full = full_mask(n)
    complete = True
    for u in range(n):
        if has_bit(s, u):
            deg[u] = n - 1
        else:
            deg[u] = popcount((adj[u] | s) & full & ~bit(u))
        if deg[u] < n - 1:
            complete = False
    return complete


@njit(cache=True)
def restricted_search(adj, n, rule, maximize):
    """Optimal explosion-sequence length under an eligibility rule.

    Indexed by exploded set: ``value[s]`` is the best number of further
    explosions from the state where ``s`` has exploded, ``choice[s]`` the
    lowest-index vertex attaining it (-1 at complete states). Supersets
    have larger indices, so a single descending pass suffices.
    """
    size = 1 << n
    value = np.zeros(size, dtype=np.int64)
    choice = np.full(size, -1, dtype=np.int64)
    deg = np.empty(n, dtype=np.int64)
    for s in range(size - 1, -1, -1):
        if underlying_degrees(adj, n, np.uint64(s), deg):
            continue
        target = -1
        if rule == RULE_MIN_DEGREE:
            target = n
            for u in range(n):
                if deg[u] < n - 1 and deg[u] < target:
                    target = deg[u]
        elif rule == RULE_MAX_DEGREE:
            for u in range(n):
                if deg[u] < n - 1 and deg[u] > target:
                    target = deg[u]
        best = -1
        for v in range(n):
            if deg[v] >= n - 1:
                continue
            if rule != RULE_ANY and deg[v] != target:
                continue
            cand = value[s | (1 << v)]
            if best < 0 or (maximize and cand > best) or (not maximize and cand < best):
                best = cand
                choice[s] = v
        value[s] = best + 1
    return value, choice


@njit(cache=True)
def adjacency_from_code(code, n, pairs_u, pairs_v):
    adj = np.zeros(n, dtype=np.uint64)
    for k in range(pairs_u.shape[0]):
        if (code >> k) & 1:
            u = pairs_u[k]
            v = pairs_v[k]
            adj[u] |= bit(v)
            adj[v] |= bit(u)
    return adj


@njit(cache=True)
def pair_arrays(n):
    npairs = n * (n - 1) // 2
    pu = np.empty(npairs, dtype=np.int64)
    pv = np.empty(npairs, dtype=np.int64)
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            pu[k] = u
            pv[k] = v
            k += 1
    return pu, pv


@njit(cache=True)
def sweep_oracles(n, with_sequence):
    """Evaluate every labeled graph of order ``n``.

    Graph ``code`` has edge ``k`` (pairs in lexicographic order) iff bit
    ``k`` of ``code`` is set. Columns: clique-based value, complement-cover
    value, sequence-BFS value (-1 when skipped), best and worst
    minimum-degree greedy lengths.
    """
    pu, pv = pair_arrays(n)
    count = 1 << pu.shape[0]
    out = np.empty((count, 5), dtype=np.int64)
    for code in range(count):
        adj = adjacency_from_code(code, n, pu, pv)
        out[code, 0] = n - popcount(max_clique_mask(adj, n))
        out[code, 1] = popcount(min_complement_cover_mask(adj, n))
        out[code, 2] = sequence_bfs_min(adj, n) if with_sequence else -1
        best, _ = restricted_search(adj, n, RULE_MIN_DEGREE, False)
        worst, _ = restricted_search(adj, n, RULE_MIN_DEGREE, True)
        out[code, 3] = best[0]
        out[code, 4] = worst[0]
    return out

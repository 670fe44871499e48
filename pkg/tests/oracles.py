"""Brute-force reference implementations used only by the tests.

Everything here works on plain edge sets and avoids the package's own
search code, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations


def norm(u, v):
    return (u, v) if u < v else (v, u)


def adjacency(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def components(vertices, edges):
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())


def connected(n, edges):
    return n == 0 or len(components(range(n), edges)) == 1


def triangle_free(n, edges):
    es = set(edges)
    return not any(
        norm(a, b) in es and norm(b, c) in es and norm(a, c) in es
        for a, b, c in combinations(range(n), 3)
    )


def all_simple_paths(n, edges, u, v):
    adj = adjacency(n, edges)
    out = []

    def walk(seq):
        if seq[-1] == v:
            out.append(tuple(seq))
            return
        for w in sorted(adj[seq[-1]]):
            if w not in seq:
                walk(seq + [w])

    walk([u])
    return out


# -- path checks ---------------------------------------------------------------

def is_path_block(edges):
    """True when the edge set forms a single path with at least one edge."""
    if not edges:
        return False
    deg = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if max(deg.values()) > 2 or len(deg) != len(edges) + 1:
        return False
    return len(components(list(deg), edges)) == 1


def is_decomposition(edges, seqs):
    """Independent check that ``seqs`` is a path decomposition of ``edges``."""
    es = set(edges)
    used = []
    for seq in seqs:
        seq = list(seq)
        if len(seq) < 2 or len(set(seq)) != len(seq):
            return False
        for a, b in zip(seq, seq[1:]):
            e = norm(a, b)
            if e not in es:
                return False
            used.append(e)
    return len(used) == len(set(used)) and set(used) == es


def path_number_by_partition(edges):
    """Minimum number of blocks in a partition of ``edges`` into paths.

    Every block containing the lowest remaining edge is tried, as a subset
    of the remaining edges. Exponential, fine for m <= 9.
    """
    edges = sorted(edges)
    m = len(edges)
    if m == 0:
        return 0
    block_ok = {}

    def ok(mask):
        if mask not in block_ok:
            block_ok[mask] = is_path_block([edges[i] for i in range(m) if mask >> i & 1])
        return block_ok[mask]

    best = [m]

    def rec(rem, count):
        if rem == 0:
            best[0] = min(best[0], count)
            return
        if count + 1 >= best[0]:
            return
        low = rem & -rem
        rest = rem ^ low
        sub = rest
        while True:
            block = sub | low
            if ok(block):
                rec(rem ^ block, count + 1)
            if sub == 0:
                break
            sub = (sub - 1) & rest

    rec((1 << m) - 1, 0)
    return best[0]


# -- planarity -----------------------------------------------------------------

def _relabelled(edges):
    vs = sorted({x for e in edges for x in e})
    idx = {v: i for i, v in enumerate(vs)}
    return frozenset(norm(idx[u], idx[v]) for u, v in edges)


def _reduce(edges):
    """Drop vertices of degree <= 1 and smooth degree-2 vertices.

    A smoothing that would duplicate an existing edge just drops the vertex;
    no Kuratowski subdivision needs both routes.
    """
    es = set(edges)
    changed = True
    while changed:
        changed = False
        adj = {}
        for u, v in es:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for w, nb in adj.items():
            if len(nb) <= 1:
                es -= {norm(w, x) for x in nb}
                changed = True
                break
            if len(nb) == 2:
                a, b = nb
                es -= {norm(w, a), norm(w, b)}
                es.add(norm(a, b))
                changed = True
                break
    return _relabelled(es)


def _is_kuratowski(edges):
    k = len({x for e in edges for x in e})
    if k == 5 and len(edges) == 10:
        return True
    if k == 6 and len(edges) == 9:
        adj = adjacency(6, edges)
        if all(len(adj[v]) == 3 for v in range(6)):
            side = {0: 0}
            stack = [0]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in side:
                        side[y] = 1 - side[x]
                        stack.append(y)
                    elif side[y] == side[x]:
                        return False
            return True
    return False


@lru_cache(maxsize=None)
def _has_kuratowski_subdivision(edges):
    if _is_kuratowski(edges):
        return True
    k = len({x for e in edges for x in e})
    if k < 5 or len(edges) < 9:
        return False
    return any(_has_kuratowski_subdivision(_reduce(edges - {e})) for e in edges)


def planar_by_kuratowski(edges):
    """Planarity via a search for a subdivided K5 or K3,3 subgraph."""
    return not _has_kuratowski_subdivision(_reduce(edges))


# -- isomorphism classes -------------------------------------------------------

def brute_canonical(n, edges):
    return min(
        tuple(sorted(norm(p[u], p[v]) for u, v in edges))
        for p in permutations(range(n))
    )


def classes_by_scan(n, keep):
    """Isomorphism classes of labelled n-vertex graphs accepted by ``keep``."""
    pairs = list(combinations(range(n), 2))
    seen = set()
    for mask in range(1 << len(pairs)):
        es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if keep(n, es):
            seen.add(brute_canonical(n, es))
    return seen

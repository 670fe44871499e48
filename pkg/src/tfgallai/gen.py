"""Exhaustive enumeration of small graphs up to isomorphism, and seeded random
generators of connected triangle-free planar graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .graph import (
    Graph,
    GraphError,
    build_graph,
    connected_components,
    cut_edges,
    edge,
    is_connected,
    path_edges,
    is_planar,
)
from .decomp import fan_condition, greedy_decomposition
from .frs import ReducingScheme, validate_feasible
from .io import graph6_encode

MAX_ORDER = 10


# -- canonical labelling ------------------------------------------------------

def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Colour refinement to a stable partition; colours are 0..k-1 in an
    order that depends only on the coloured graph up to isomorphism."""
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == ncolors:
            return colors
        ncolors = len(ranks)


def _twin_representatives(g: Graph, cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        if not any(g.adj[v] - {r} == g.adj[r] - {v} for r in reps):
            reps.append(v)
    return reps


def _leaf_code(g: Graph, colors: list[int]) -> tuple[int, ...]:
    return tuple(sorted(edge(colors[u], colors[v]) for u, v in g.edges))


def _canonical_labels(g: Graph) -> list[int]:
    """A labelling ``v -> label`` such that the relabelled graph is canonical.

    Individualisation-refinement search; branches on one vertex per twin class
    since swapping twins is an automorphism fixing everything else.
    """
    best: Optional[tuple[tuple[int, ...], list[int]]] = None

    def search(colors: list[int]) -> None:
        nonlocal best
        colors = _refine(g, colors)
        if len(set(colors)) == g.n:
            code = _leaf_code(g, colors)
            if best is None or code < best[0]:
                best = (code, colors)
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(g.n) if colors[v] == target]
        for v in _twin_representatives(g, cell):
            search([2 * c + (0 if (x == v or c != target) else 1) for x, c in enumerate(colors)])

    search([0] * g.n)
    assert best is not None
    return best[1]


def canonical_graph(g: Graph) -> Graph:
    """Canonical representative of the isomorphism class of ``g``.

    Components are canonised separately and laid out in sorted order, which
    keeps the search small for graphs with many isomorphic components.
    """
    if g.n == 0:
        return g
    parts = []
    for comp in connected_components(g):
        sub, _ = g.induced(comp)
        labels = _canonical_labels(sub) if sub.n > 1 else [0]
        can = sub.relabel(labels)
        parts.append((can.n, sorted(can.edges), can))
    parts.sort(key=lambda t: (t[0], t[1]))
    es = []
    off = 0
    for k, _, can in parts:
        es.extend((u + off, v + off) for u, v in can.edges)
        off += k
    return Graph(off, frozenset(es))


def canonical_form(g: Graph) -> str:
    """graph6 string of :func:`canonical_graph`; equal iff isomorphic."""
    return graph6_encode(canonical_graph(g))


# -- enumeration --------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    connected: bool = True
    triangle_free: bool = False
    planar: bool = False
    max_degree: Optional[int] = None
    isomorphism_rejection: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("enumeration order must be at least 1")
        if self.n > MAX_ORDER:
            raise GraphError(f"enumeration capped at n={MAX_ORDER}")


def _independent_sets(g: Graph, candidates: Sequence[int]) -> Iterator[tuple[int, ...]]:
    def rec(i: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        if i == len(candidates):
            yield tuple(chosen)
            return
        yield from rec(i + 1, chosen)
        v = candidates[i]
        if not any(w in g.adj[v] for w in chosen):
            chosen.append(v)
            yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def _neighbor_sets(parent: Graph, spec: EnumerationSpec) -> Iterator[tuple[int, ...]]:
    cands = list(range(parent.n))
    if spec.max_degree is not None:
        cands = [v for v in cands if parent.degree(v) < spec.max_degree]
    if spec.triangle_free:
        sets: Iterable[tuple[int, ...]] = _independent_sets(parent, cands)
    else:
        sets = (s for k in range(len(cands) + 1) for s in combinations(cands, k))
    for s in sets:
        if spec.connected and not s:
            continue
        if spec.max_degree is not None and len(s) > spec.max_degree:
            continue
        yield s


def _children(parent: Graph, spec: EnumerationSpec) -> Iterator[Graph]:
    k = parent.n
    for s in _neighbor_sets(parent, spec):
        child = Graph(k + 1, parent.edges | {(v, k) for v in s})
        if spec.planar and not is_planar(child):
            continue
        yield child


def enumerate_graphs(spec: EnumerationSpec, shard: Optional[tuple[int, int]] = None) -> Iterator[Graph]:
    """Stream graphs on ``spec.n`` vertices satisfying the filters.

    Graphs are grown one vertex at a time from canonical representatives of
    the previous order. All filters are closed under deleting a suitable
    vertex (a non-cut vertex in the connected case), so nothing is missed.
    With ``shard=(i, k)`` only parents ``i, i+k, ...`` of the final level are
    expanded; the union over all shards, deduplicated, is the full output.
    """
    level = [Graph(1)]
    for size in range(2, spec.n + 1):
        last = size == spec.n
        parents = level[shard[0] :: shard[1]] if (last and shard) else level
        seen: dict[str, Graph] = {}
        for parent in parents:
            for child in _children(parent, spec):
                if last and not spec.isomorphism_rejection:
                    yield child
                    continue
                key = canonical_form(child)
                if key not in seen:
                    can = canonical_graph(child)
                    seen[key] = can
                    if last:
                        yield can
        level = list(seen.values())
    if spec.n == 1:
        yield Graph(1)


def enumerate_list(n: int, **filters) -> list[Graph]:
    return list(enumerate_graphs(EnumerationSpec(n, **filters)))


def merge_shards(streams: Iterable[Iterable[Graph]]) -> list[Graph]:
    seen: dict[str, Graph] = {}
    for stream in streams:
        for g in stream:
            seen.setdefault(canonical_form(g), g)
    return list(seen.values())


def edge_graphs(max_m: int) -> dict[int, list[Graph]]:
    """All graphs without isolated vertices with ``m <= max_m`` edges, up to
    isomorphism, keyed by edge count. Each class with ``m`` edges arises from
    one with ``m - 1`` by adding an edge, possibly with new endpoints."""
    out = {0: [Graph(0)]}
    for m in range(1, max_m + 1):
        seen: dict[str, Graph] = {}
        for parent in out[m - 1]:
            k = parent.n
            cands = [(u, v) for u, v in combinations(range(k), 2) if (u, v) not in parent.edges]
            cands += [(u, k) for u in range(k)] + [(k, k + 1)]
            for u, v in cands:
                child = Graph(max(k, v + 1), parent.edges | {(u, v)})
                key = canonical_form(child)
                if key not in seen:
                    seen[key] = canonical_graph(child)
        out[m] = list(seen.values())
    return out


# -- random instances ---------------------------------------------------------

def subdivide(g: Graph) -> Graph:
    """Subdivide every edge once; new vertex ``n + i`` sits on the i-th sorted edge."""
    es = []
    for i, (u, v) in enumerate(g.edge_list):
        w = g.n + i
        es += [(u, w), (w, v)]
    return build_graph(g.n + g.m, es)


def _random_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    return [(rng.randrange(i), i) for i in range(1, n)]


def _add_planar_edges(n: int, es: set, pool: list, target: int, rng: random.Random) -> set:
    rng.shuffle(pool)
    for e in pool:
        if len(es) >= target:
            break
        if e in es:
            continue
        trial = Graph(n, frozenset(es | {e}))
        if is_planar(trial):
            es.add(e)
    return es


def _shuffle_labels(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def random_bipartite_planar(n: int, rng: random.Random) -> Graph:
    tree = _random_tree(n, rng)
    side = [0] * n
    for parent, child in tree:
        side[child] = 1 - side[parent]
    es = {edge(*e) for e in tree}
    pool = [(u, v) for u, v in combinations(range(n), 2) if side[u] != side[v]]
    top = max(n - 1, 2 * n - 4)
    target = rng.randint(n - 1, top)
    return _shuffle_labels(Graph(n, frozenset(_add_planar_edges(n, es, pool, target, rng))), rng)


def random_subdivision(n: int, rng: random.Random, max_retries: int = 50) -> Graph:
    """Random connected planar base graph with ``k + m = n``, every edge subdivided."""
    if n < 3:
        raise GraphError("a subdivided graph has at least 3 vertices")
    choices = []
    for k in range(2, n):
        m = n - k
        cap = 1 if k == 2 else 3 * k - 6
        if k - 1 <= m <= cap:
            choices.append(k)
    if not choices:
        raise GraphError(f"no subdivided simple connected graph has exactly {n} vertices")
    for _ in range(max_retries):
        k = rng.choice(choices)
        m = n - k
        es = {edge(*e) for e in _random_tree(k, rng)}
        es = _add_planar_edges(k, es, list(combinations(range(k), 2)), m, rng)
        if len(es) == m:
            return _shuffle_labels(subdivide(Graph(k, frozenset(es))), rng)
    raise GraphError(f"could not build a subdivision on {n} vertices")


def random_grid_subgraph(n: int, rng: random.Random) -> Graph:
    side = math.isqrt(n - 1) + 2
    grid_adj = {}
    for r in range(side):
        for c in range(side):
            grid_adj[(r, c)] = [(r + dr, c + dc) for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0))
                                if 0 <= r + dr < side and 0 <= c + dc < side]
    start = (rng.randrange(side), rng.randrange(side))
    cells = [start]
    chosen = {start}
    frontier = set(grid_adj[start])
    while len(cells) < n:
        nxt = rng.choice(sorted(frontier))
        frontier.discard(nxt)
        cells.append(nxt)
        chosen.add(nxt)
        frontier.update(x for x in grid_adj[nxt] if x not in chosen)
    label = {cell: i for i, cell in enumerate(cells)}
    es = {edge(label[a], label[b]) for a in cells for b in grid_adj[a] if b in chosen}
    g = Graph(n, frozenset(es))
    # thin out: drop non-bridge edges at random, keeping the graph connected
    for e in sorted(g.edges):
        if rng.random() < 0.3 and e not in cut_edges(g):
            g = Graph(n, g.edges - {e})
    return _shuffle_labels(g, rng)


KINDS = ("bipartite-planar", "subdivision", "grid-subgraph")


def random_instance(kind: str, n: int, seed: int) -> Graph:
    """A connected triangle-free planar graph on ``n`` vertices; same seed, same graph."""
    if n < 2:
        raise GraphError("random instances need n >= 2")
    rng = random.Random(f"{kind}:{n}:{seed}")
    if kind == "bipartite-planar":
        g = random_bipartite_planar(n, rng)
    elif kind == "subdivision":
        g = random_subdivision(n, rng)
    elif kind == "grid-subgraph":
        g = random_grid_subgraph(n, rng)
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    assert is_connected(g)
    return g


def _walk(g: Graph, start: int, steps: int, rng: random.Random) -> list[int]:
    seq = [start]
    for _ in range(steps):
        nxt = sorted(g.adj[seq[-1]] - set(seq))
        if not nxt:
            break
        seq.append(rng.choice(nxt))
    return seq


def plant_scheme(seed: int, max_n: int = 12, max_tries: int = 500) -> tuple[Graph, ReducingScheme]:
    """A random triangle-free planar host together with a feasible reducing scheme.

    A random base graph ``B`` gets three kinds of additions: some of its
    edges are subdivided (these become ``L``), pendant paths are hung on
    vertices that stay odd after the reduction (``A``), and ``H`` is one or
    two paths whose ends are new pendant vertices, possibly running through
    ``B``. Labels are shuffled at the end.
    """
    rng = random.Random(f"scheme:{max_n}:{seed}")
    for _ in range(max_tries):
        k = rng.randint(3, max(3, max_n - 3))
        try:
            base = random_instance(rng.choice(KINDS), k, rng.randrange(1 << 30))
        except GraphError:
            continue
        n = k
        es = set(base.edges)

        def fresh() -> int:
            nonlocal n
            n += 1
            return n - 1

        r = 2 if rng.random() < 0.2 else 1
        h_paths = []
        for _ in range(r):
            spine = _walk(base, rng.randrange(k), rng.choice((0, 0, 1, 2)), rng)
            h_paths.append([fresh()] + spine + [fresh()])
        h_edges = {edge(*e) for p in h_paths for e in zip(p, p[1:])}
        if len(h_edges) != sum(len(p) - 1 for p in h_paths):
            continue
        spare = sorted(base.edges - h_edges)
        rng.shuffle(spare)
        L = []
        for u, v in spare[: rng.randint(0, min(3, len(spare)))]:
            inner = [fresh() for _ in range(rng.choice((1, 1, 2)))]
            es.discard((u, v))
            L.append([u] + inner + [v])
        reduced_deg = [base.degree(v) - sum(1 for e in h_edges if v in e and max(e) < k) for v in range(k)]
        odd = [v for v in range(k) if reduced_deg[v] % 2]
        rng.shuffle(odd)
        A = []
        for v in odd[: rng.randint(0, min(2, len(odd)))]:
            A.append([v] + [fresh() for _ in range(rng.choice((1, 1, 2)))])
        if n > max_n:
            continue
        for p in h_paths + L + A:
            es.update(edge(*e) for e in zip(p, p[1:]))
        perm = list(range(n))
        rng.shuffle(perm)

        def move(p: list[int]) -> list[int]:
            q = [perm[v] for v in p]
            return q[::-1] if rng.random() < 0.5 else q

        g = Graph(n, frozenset(edge(perm[u], perm[v]) for u, v in es))
        scheme = ReducingScheme.of(
            [edge(perm[u], perm[v]) for u, v in h_edges],
            [move(p) for p in A],
            [move(p) for p in L],
            r,
        )
        if validate_feasible(g, scheme):
            return g, scheme
    raise GraphError(f"no feasible scheme planted within {max_tries} tries")


def cycle_path_instances(max_n: int = 9, lengths: Sequence[int] = (3, 4, 5), max_chords: int = 3
                         ) -> Iterator[tuple[Graph, tuple[int, ...], tuple[int, ...]]]:
    """Every connected union of a cycle ``0..c-1`` and an edge-disjoint path.

    New path vertices are numbered ``c, c+1, ...`` in order of first use, so
    isomorphic copies may repeat but nothing is missed. Paths with more than
    ``max_chords`` chords of the cycle are skipped.
    """
    for c in lengths:
        cyc = tuple(range(c))
        c_edges = {edge(i, (i + 1) % c) for i in range(c)}

        def grow(seq: list[int], chords: int) -> Iterator[tuple[int, ...]]:
            if len(seq) >= 2:
                yield tuple(seq)
            nxt_new = max([c - 1] + seq) + 1
            options = [x for x in range(c) if x not in seq]
            if nxt_new < max_n:
                options.append(nxt_new)
            for x in options:
                e = edge(seq[-1], x)
                if e in c_edges:
                    continue
                k = chords + (seq[-1] < c and x < c)
                if k > max_chords:
                    continue
                seq.append(x)
                yield from grow(seq, k)
                seq.pop()

        starts = list(range(c)) + ([c] if c < max_n else [])
        seen: set[frozenset] = set()
        for start in starts:
            for path in grow([start], 0):
                if not any(x < c for x in path):
                    continue
                key = frozenset(path_edges(path))
                if key in seen:
                    continue
                seen.add(key)
                n = max(max(path) + 1, c)
                yield build_graph(n, list(c_edges) + path_edges(path)), cyc, path


def fan_instance(seed: int, max_n: int = 8, max_tries: int = 1000) -> tuple[Graph, int, int, list[tuple[int, ...]]]:
    """``(G, u, v, D')`` with ``D'`` a decomposition of ``G - uv`` meeting the
    edge-extension hypothesis ``D'(v) > |{w in N(u) : D'(w) = 0}|``."""
    rng = random.Random(f"fan:{max_n}:{seed}")
    for _ in range(max_tries):
        n = rng.randint(3, max_n)
        p = rng.uniform(0.25, 0.7)
        es = [e for e in combinations(range(n), 2) if rng.random() < p]
        if len(es) < 2:
            continue
        g = Graph(n, frozenset(es))
        u, v = rng.choice(es)
        if rng.random() < 0.5:
            u, v = v, u
        g_minus = Graph(n, g.edges - {edge(u, v)})
        paths = greedy_decomposition(g_minus, rng)
        # optionally cut some paths at interior vertices to create more ends
        for _ in range(rng.choice((0, 0, 1, 2))):
            long = [i for i, q in enumerate(paths) if len(q) >= 3]
            if not long:
                break
            i = rng.choice(long)
            q = paths.pop(i)
            cut = rng.randrange(1, len(q) - 1)
            paths[i:i] = [q[: cut + 1], q[cut:]]
        lhs, rhs = fan_condition(g_minus, u, v, paths)
        if lhs > rhs:
            return g, u, v, paths
    raise GraphError(f"no instance meeting the hypothesis within {max_tries} tries")

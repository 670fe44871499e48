"""Simple undirected graphs on dense integer vertex ids and the structural
queries the rest of the package is built on."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx

Edge = tuple[int, int]
Path = tuple[int, ...]


class GraphError(ValueError):
    """Raised when a graph operation receives an invalid input."""


def edge(u: int, v: int) -> Edge:
    """Normalise an unordered vertex pair to ``(min, max)``."""
    return (u, v) if u < v else (v, u)


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [edge(path[i], path[i + 1]) for i in range(len(path) - 1)]


@dataclass(frozen=True)
class Graph:
    """An immutable simple graph on vertices ``0..n-1``.

    Use :func:`build_graph` to construct one from an arbitrary edge list; the
    constructor expects ``edges`` already normalised and validated.
    """

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"bad edge {(u, v)} for n={self.n}")

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        """Edges in sorted order; positions in this tuple are edge indices."""
        return tuple(sorted(self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def is_path(self, seq: Sequence[int]) -> bool:
        """True if ``seq`` is a path of this graph (distinct, consecutive adjacent)."""
        if len(seq) == 0 or len(set(seq)) != len(seq):
            return False
        if any(not (0 <= v < self.n) for v in seq):
            return False
        return all(self.has_edge(a, b) for a, b in zip(seq, seq[1:]))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph relabelled monotonically; returns (graph, old->new)."""
        keep = sorted(set(vertices))
        relabel = {v: i for i, v in enumerate(keep)}
        es = [(relabel[u], relabel[v]) for u, v in self.edges if u in relabel and v in relabel]
        return Graph(len(keep), frozenset(edge(u, v) for u, v in es)), relabel

    def delete_vertices(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def with_edges(self, extra: Iterable[Edge], n: Optional[int] = None) -> "Graph":
        return build_graph(self.n if n is None else n, list(self.edges) + list(extra))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Apply ``v -> perm[v]``; ``perm`` must be a permutation of range(n)."""
        return Graph(self.n, frozenset(edge(perm[u], perm[v]) for u, v in self.edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Construct a graph; duplicate pairs collapse, loops and bad endpoints raise."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    es: set[Edge] = set()
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in {(u, v)} for n={n}")
        es.add(edge(u, v))
    return Graph(n, frozenset(es))


def remove_edges(
    g: Graph, ys: Iterable[Sequence[int]], prune_isolated: bool = False
) -> tuple[Graph, dict[int, int]]:
    """``G - Y`` or, with ``prune_isolated``, ``G ⊖ Y``.

    Returns the graph and the old->new relabelling (identity when nothing is
    pruned). Vertices isolated in ``G - Y`` are the ones dropped, including
    those that were already isolated in ``G``.
    """
    y = {edge(*e) for e in ys}
    missing = y - g.edges
    if missing:
        raise GraphError(f"edges not in graph: {sorted(missing)}")
    rest = Graph(g.n, g.edges - y)
    if not prune_isolated:
        return rest, {v: v for v in range(g.n)}
    return rest.induced(v for v in range(g.n) if rest.adj[v])


def shortest_path(g: Graph, u: int, v: int) -> Optional[Path]:
    """A shortest u-v path, lexicographically smallest among all shortest ones."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError("vertex out of range")
    dist_to_v = bfs_distances(g, v)
    if dist_to_v[u] is None:
        return None
    # walking greedily from u along decreasing distance to v, always to the
    # smallest admissible neighbour, yields the lexicographic minimum
    path = [u]
    cur = u
    while cur != v:
        d = dist_to_v[cur]
        cur = min(w for w in g.adj[cur] if dist_to_v[w] == d - 1)
        path.append(cur)
    return tuple(path)


def bfs_distances(g: Graph, source: int) -> list[Optional[int]]:
    dist: list[Optional[int]] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] is None:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Components of ``G - removed`` as sorted vertex lists, ordered by minimum vertex."""
    skip = set(removed)
    seen = set(skip)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    # empty graph counts as connected
    return len(connected_components(g)) <= 1


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("graph must be connected")


def _lowpoints(g: Graph) -> tuple[list[Edge], set[int]]:
    """Bridges and articulation points via an iterative Tarjan DFS."""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges: list[Edge] = []
    cuts: set[int] = set()
    t = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            x, parent, it = stack[-1]
            for y in it:
                if y == parent:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = t
                    t += 1
                    if x == root:
                        root_children += 1
                    stack.append((y, x, iter(sorted(g.adj[y]))))
                    break
                low[x] = min(low[x], disc[y])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[x])
                    if low[x] > disc[parent]:
                        bridges.append(edge(parent, x))
                    if parent != root and low[x] >= disc[parent]:
                        cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    return sorted(bridges), cuts


def cut_edges(g: Graph) -> list[Edge]:
    return _lowpoints(g)[0]


def cut_vertices(g: Graph) -> list[int]:
    return sorted(_lowpoints(g)[1])


def useful_cut_edges(g: Graph) -> list[Edge]:
    """Cut-edges whose removal leaves two components of at least two vertices each."""
    _require_connected(g)
    out = []
    for e in cut_edges(g):
        rest = Graph(g.n, g.edges - {e})
        if all(len(c) >= 2 for c in connected_components(rest)):
            out.append(e)
    return out


def classify_cut_vertices(g: Graph) -> list[tuple[int, str]]:
    """Label each cut-vertex ``"useful"`` or ``"useless"``.

    A cut-vertex is useless when ``G - v`` has exactly two components and one
    of them is a single vertex.
    """
    _require_connected(g)
    out = []
    for v in cut_vertices(g):
        comps = connected_components(g, removed=[v])
        useless = len(comps) == 2 and min(len(c) for c in comps) == 1
        out.append((v, "useless" if useless else "useful"))
    return out


@dataclass(frozen=True)
class SeparatorReport:
    separator: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def separated_pairs(self) -> list[Edge]:
        pairs = []
        for a, b in combinations(self.components, 2):
            pairs.extend(edge(x, y) for x in a for y in b)
        return sorted(pairs)

    def separates(self, u: int, v: int) -> bool:
        where = {x: i for i, comp in enumerate(self.components) for x in comp}
        return u in where and v in where and where[u] != where[v]


def two_vertex_separators(g: Graph) -> list[SeparatorReport]:
    """Every 2-subset S with ``G - S`` disconnected, in lexicographic order."""
    out = []
    for s in combinations(range(g.n), 2):
        comps = connected_components(g, removed=s)
        if len(comps) >= 2:
            out.append(SeparatorReport(s, tuple(tuple(c) for c in comps)))
    return out


def is_triangle_free(g: Graph) -> bool:
    for u, v in g.edges:
        if g.adj[u] & g.adj[v]:
            return False
    return True


def is_planar(g: Graph) -> bool:
    if g.n < 5 or g.m < 9:
        return True
    if g.m > 3 * g.n - 6:
        return False
    planar, _ = nx.check_planarity(g.to_networkx())
    return planar


def euler_bound_holds(g: Graph) -> bool:
    """``m <= 2n - 4``: necessary for a triangle-free planar graph with n >= 3."""
    if g.n < 3:
        raise GraphError("Euler bound needs n >= 3")
    return g.m <= 2 * g.n - 4


# small named graphs, used throughout tests and generators

def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def cube_graph() -> Graph:
    return build_graph(8, [(a, a ^ (1 << k)) for a in range(8) for k in range(3) if a < a ^ (1 << k)])


def grid_graph(rows: int, cols: int) -> Graph:
    es = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                es.append((v, v + 1))
            if r + 1 < rows:
                es.append((v, v + cols))
    return build_graph(rows * cols, es)


def disjoint_union(*graphs: Graph) -> Graph:
    es = []
    off = 0
    for g in graphs:
        es.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return build_graph(off, es)

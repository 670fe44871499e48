"""Path decompositions: verification, the exact path-number solver, and the
cycle+path and edge-extension procedures used by the reductions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .graph import Edge, Graph, GraphError, Path, edge, is_connected, path_edges


class DecompositionError(ValueError):
    """A precondition of a decomposition procedure does not hold."""


@dataclass(frozen=True)
class PathDecomposition:
    host: Graph
    paths: tuple[Path, ...]

    @classmethod
    def of(cls, host: Graph, paths: Iterable[Sequence[int]]) -> "PathDecomposition":
        return cls(host, tuple(tuple(int(v) for v in p) for p in paths))

    def __len__(self) -> int:
        return len(self.paths)

    def end_count(self, v: int) -> int:
        return end_count(self.paths, v)

    def as_lists(self) -> list[list[int]]:
        return [list(p) for p in self.paths]


def end_count(paths: Iterable[Sequence[int]], v: int) -> int:
    """Number of paths having ``v`` as an end vertex."""
    count = 0
    for p in paths:
        if len(p) >= 2:
            count += (p[0] == v) + (p[-1] == v)
        elif len(p) == 1 and p[0] == v:
            count += 1
    return count


@dataclass
class VerificationReport:
    valid_paths: bool = True
    edge_disjoint: bool = True
    covers: bool = True
    parity: bool = True
    bad_paths: list[int] = field(default_factory=list)
    repeated_edges: list[Edge] = field(default_factory=list)
    uncovered_edges: list[Edge] = field(default_factory=list)
    parity_violations: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.valid_paths and self.edge_disjoint and self.covers and self.parity

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "valid"
        parts = []
        if not self.valid_paths:
            parts.append(f"invalid path elements at {self.bad_paths}")
        if not self.edge_disjoint:
            parts.append(f"edges used twice {self.repeated_edges}")
        if not self.covers:
            parts.append(f"uncovered edges {self.uncovered_edges}")
        if not self.parity:
            parts.append(f"parity broken at {self.parity_violations}")
        return "; ".join(parts)


def verify(g: Graph, d: PathDecomposition | Iterable[Sequence[int]]) -> VerificationReport:
    """Check path validity, edge-disjointness, coverage and end-count parity."""
    paths = d.paths if isinstance(d, PathDecomposition) else [tuple(p) for p in d]
    report = VerificationReport()
    used: dict[Edge, int] = {}
    for i, p in enumerate(paths):
        # an element must carry at least one edge
        if len(p) < 2 or not g.is_path(p):
            report.valid_paths = False
            report.bad_paths.append(i)
        for e in path_edges(p):
            used[e] = used.get(e, 0) + 1
    report.repeated_edges = sorted(e for e, c in used.items() if c > 1)
    report.edge_disjoint = not report.repeated_edges
    report.uncovered_edges = sorted(g.edges - used.keys())
    report.covers = not report.uncovered_edges
    for v in range(g.n):
        if (end_count(paths, v) - g.degree(v)) % 2:
            report.parity_violations.append(v)
    report.parity = not report.parity_violations
    return report


def odd_vertex_lower_bound(g: Graph) -> int:
    odd = sum(1 for x in g.degrees() if x % 2)
    return (odd + 1) // 2


@dataclass
class SolveResult:
    path_number: int
    witness: PathDecomposition
    nodes_explored: int
    optimal: bool


class _EdgeIndex:
    """Bitmask view of a graph: edge i is bit i of an int."""

    def __init__(self, g: Graph):
        self.g = g
        self.edges = g.edge_list
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        self.incmask = [0] * g.n
        for i, (u, v) in enumerate(self.edges):
            self.inc[u].append((v, i))
            self.inc[v].append((u, i))
            self.incmask[u] |= 1 << i
            self.incmask[v] |= 1 << i
        for lst in self.inc:
            lst.sort()
        self.full = (1 << len(self.edges)) - 1

    def mask_of(self, path: Sequence[int]) -> int:
        mask = 0
        for e in path_edges(path):
            mask |= 1 << self.index[e]
        return mask

    def odd_count(self, rem: int) -> int:
        return sum(1 for m in self.incmask if (rem & m).bit_count() & 1)

    def lower_bound(self, rem: int) -> int:
        if not rem:
            return 0
        return max(1, (self.odd_count(rem) + 1) // 2)

    def _extend(self, start: int, rem: int, blocked: set[int]) -> Iterator[tuple[list[int], int]]:
        """All simple walks out of ``start`` in ``rem`` avoiding ``blocked``, incl. empty."""
        yield [], 0
        for w, i in self.inc[start]:
            if rem >> i & 1 and w not in blocked:
                blocked.add(w)
                for tail, mask in self._extend(w, rem & ~(1 << i), blocked):
                    yield [w] + tail, mask | (1 << i)
                blocked.discard(w)

    def paths_through(self, i: int, rem: int) -> list[tuple[int, Path]]:
        """Every path inside ``rem`` that contains edge ``i``, longest first."""
        a, b = self.edges[i]
        rem &= ~(1 << i)
        out = []
        blocked = {a, b}
        for tail_b, mask_b in list(self._extend(b, rem, blocked)):
            used = blocked | set(tail_b)
            for tail_a, mask_a in self._extend(a, rem & ~mask_b, set(used)):
                seq = tuple(reversed(tail_a)) + (a, b) + tuple(tail_b)
                out.append((mask_a | mask_b | (1 << i), seq))
        out.sort(key=lambda t: -len(t[1]))
        return out


def greedy_decomposition(g: Graph, rng: Optional[random.Random] = None) -> list[Path]:
    """Peel paths greedily, starting at odd-degree vertices when possible.

    Deterministic without ``rng``; with one, start vertices and steps are
    drawn at random (used to generate varied decompositions in tests).
    """
    rem = set(g.edges)
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    paths: list[Path] = []
    while rem:
        live = [v for v in range(g.n) if adj[v]]
        odd = [v for v in live if len(adj[v]) % 2]
        pool = odd or live
        cur = rng.choice(pool) if rng else pool[0]
        seq = [cur]
        seen = {cur}
        while True:
            options = sorted(w for w in adj[cur] if w not in seen)
            if not options or (rng and len(seq) > 1 and rng.random() < 0.15):
                break
            nxt = rng.choice(options) if rng else options[0]
            adj[cur].discard(nxt)
            adj[nxt].discard(cur)
            rem.discard(edge(cur, nxt))
            seq.append(nxt)
            seen.add(nxt)
            cur = nxt
        paths.append(tuple(seq))
    return paths


def path_number_exact(g: Graph, budget: Optional[int] = None) -> SolveResult:
    """Minimum path decomposition by branch and bound.

    Branches on the lowest-indexed uncovered edge over every path through it
    inside the remaining graph. Prunes on ``count + lower bound >= incumbent``
    and on revisiting a remaining-edge set with no smaller count. ``budget``
    caps the number of search nodes; if hit, the incumbent is returned with
    ``optimal=False``.
    """
    if g.m == 0:
        raise DecompositionError("graph has no edges")
    idx = _EdgeIndex(g)
    best_paths = greedy_decomposition(g)
    best = len(best_paths)
    root_lb = idx.lower_bound(idx.full)
    nodes = 0
    exhausted = False
    seen: dict[int, int] = {}
    stack: list[Path] = []

    def search(rem: int, count: int) -> None:
        nonlocal best, best_paths, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if budget is not None and nodes > budget:
            exhausted = True
            return
        if not rem:
            if count < best:
                best = count
                best_paths = list(stack)
            return
        if count + idx.lower_bound(rem) >= best:
            return
        prev = seen.get(rem)
        if prev is not None and prev <= count:
            return
        seen[rem] = count
        i = (rem & -rem).bit_length() - 1
        for mask, seq in idx.paths_through(i, rem):
            stack.append(seq)
            search(rem & ~mask, count + 1)
            stack.pop()
            if best <= root_lb or exhausted:
                return

    if best > root_lb:
        search(idx.full, 0)
    witness = PathDecomposition.of(g, best_paths)
    return SolveResult(best, witness, nodes, optimal=not exhausted)


@dataclass
class GallaiVerdict:
    is_gallai: bool
    bound: int
    result: SolveResult

    def __bool__(self) -> bool:
        return self.is_gallai


def is_gallai(g: Graph) -> GallaiVerdict:
    """Whether ``pn(G) <= floor(n/2)``, with the optimal witness attached."""
    if g.n < 2 or not is_connected(g):
        raise GraphError("is_gallai needs a connected graph with n >= 2")
    res = path_number_exact(g)
    return GallaiVerdict(res.path_number <= g.n // 2, g.n // 2, res)


def split_to_size(paths: list[Path], k: int) -> list[Path]:
    """Split paths at interior vertices until there are exactly ``k`` of them."""
    out = list(paths)
    while len(out) < k:
        i = next((j for j, p in enumerate(out) if len(p) >= 3), None)
        if i is None:
            raise DecompositionError(f"cannot reach {k} paths: too few edges")
        p = out.pop(i)
        out[i:i] = [p[:2], p[1:]]
    return out


def _cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    return [edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def decompose_cycle_plus_path(g: Graph, cycle: Sequence[int], path: Sequence[int]) -> tuple[Path, Path]:
    """Split a connected cycle+path graph into two paths.

    Requires the cycle to have at most five vertices and the path to use at
    most three chords of it. ``cycle`` lists its vertices once (a repeated
    first vertex at the end is tolerated).
    """
    cyc = list(cycle)
    if len(cyc) > 1 and cyc[0] == cyc[-1]:
        cyc.pop()
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise DecompositionError("cycle must have at least 3 distinct vertices")
    if len(cyc) > 5:
        raise DecompositionError("cycle longer than 5")
    c_edges = _cycle_edges(cyc)
    if not all(e in g.edges for e in c_edges):
        raise DecompositionError("cycle is not a cycle of the graph")
    if len(path) < 2 or not g.is_path(path):
        raise DecompositionError("path is not a path of the graph with at least one edge")
    p_edges = path_edges(path)
    if set(c_edges) & set(p_edges):
        raise DecompositionError("cycle and path share an edge")
    if set(c_edges) | set(p_edges) != g.edges:
        raise DecompositionError("cycle and path do not cover the graph")
    if not is_connected(g.delete_vertices(v for v in range(g.n) if not g.adj[v])[0]):
        raise DecompositionError("graph is not connected")
    on_cycle = set(cyc)
    chords = [e for e in p_edges if e[0] in on_cycle and e[1] in on_cycle]
    if len(chords) > 3:
        raise DecompositionError(f"path contains {len(chords)} chords of the cycle")
    res = path_number_exact(g)
    if res.path_number != 2:
        raise RuntimeError(f"cycle+path instance needs {res.path_number} paths")
    first, second = res.witness.paths
    return first, second


def fan_condition(g_minus: Graph, u: int, v: int, paths: Sequence[Sequence[int]]) -> tuple[int, int]:
    """``(D'(v), |{w in N(u): D'(w) = 0}|)`` for the edge-extension hypothesis."""
    lhs = end_count(paths, v)
    rhs = sum(1 for w in g_minus.adj[u] if end_count(paths, w) == 0)
    return lhs, rhs


def fan_extend(g: Graph, u: int, v: int, d_prime: PathDecomposition | Sequence[Sequence[int]]) -> PathDecomposition:
    """Absorb edge ``uv`` into a decomposition of ``G - uv`` without adding a path.

    Requires ``D'(v) > |{w in N_{G-uv}(u) : D'(w) = 0}|``.
    """
    if not g.has_edge(u, v):
        raise DecompositionError(f"{(u, v)} is not an edge")
    g_minus = Graph(g.n, g.edges - {edge(u, v)})
    paths = [tuple(p) for p in (d_prime.paths if isinstance(d_prime, PathDecomposition) else d_prime)]
    report = verify(g_minus, paths)
    if not report:
        raise DecompositionError(f"D' is not a decomposition of G - uv: {report.summary()}")
    lhs, rhs = fan_condition(g_minus, u, v, paths)
    if lhs <= rhs:
        raise DecompositionError(f"hypothesis fails: D'(v) = {lhs} is not > {rhs} zero-end neighbours of u")
    k = len(paths)
    # direct append when a path ends at v (or u) and misses the other endpoint
    for i, p in enumerate(paths):
        for end, other in ((v, u), (u, v)):
            if other in p:
                continue
            if p[-1] == end:
                new = p + (other,)
            elif p[0] == end:
                new = (other,) + p
            else:
                continue
            out = paths[:i] + [new] + paths[i + 1 :]
            return PathDecomposition.of(g, out)
    res = path_number_exact(g)
    if res.path_number > k:
        raise RuntimeError(f"no decomposition of size {k} exists (pn = {res.path_number})")
    return PathDecomposition.of(g, split_to_size(list(res.witness.paths), k))

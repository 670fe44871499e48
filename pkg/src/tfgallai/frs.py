"""Reducing schemes ``(H, A, L)``: validation of the five feasibility
conditions, the reduced graph, and lifting decompositions back to the host."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional, Sequence

from .decomp import PathDecomposition, path_number_exact, verify
from .graph import Edge, Graph, GraphError, Path, edge, is_planar, path_edges


class SchemeError(ValueError):
    """A triple violates the basic reducing-scheme invariants."""

    def __init__(self, clause: str, detail: str):
        super().__init__(f"{clause}: {detail}")
        self.clause = clause


class LiftError(RuntimeError):
    """A lifted element is not a path: only possible if validation is wrong."""


class PlanarityAlarm(RuntimeWarning):
    pass


def parallel_edge(path: Sequence[int]) -> Edge:
    """The pair of end vertices of a path (the path itself when it is one edge)."""
    if len(path) < 2:
        raise SchemeError("parallel", "a path of length 0 has no parallel edge")
    if path[0] == path[-1]:
        raise SchemeError("parallel", "path ends coincide")
    return edge(path[0], path[-1])


@dataclass(frozen=True)
class ReducingScheme:
    H: frozenset[Edge]
    A: tuple[Path, ...] = ()
    L: tuple[Path, ...] = ()
    r: int = 1

    @classmethod
    def of(cls, H: Iterable[Sequence[int]], A: Iterable[Sequence[int]] = (),
           L: Iterable[Sequence[int]] = (), r: int = 1) -> "ReducingScheme":
        return cls(
            frozenset(edge(*e) for e in H),
            tuple(tuple(p) for p in A),
            tuple(tuple(p) for p in L),
            int(r),
        )

    @classmethod
    def from_path(cls, path: Sequence[int], r: int = 1) -> "ReducingScheme":
        return cls.of(path_edges(path), r=r)

    def to_dict(self) -> dict[str, Any]:
        return {
            "H": [list(e) for e in sorted(self.H)],
            "A": [list(p) for p in self.A],
            "L": [list(p) for p in self.L],
            "r": self.r,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ReducingScheme":
        return cls.of(data.get("H", []), data.get("A", []), data.get("L", []), data.get("r", 1))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReducingScheme":
        return cls.from_dict(json.loads(text))

    def r_edges(self) -> set[Edge]:
        """Edge set of the subgraph decomposed by ``{H} + A + L``."""
        es = set(self.H)
        for p in self.A + self.L:
            es.update(path_edges(p))
        return es

    def parallel_edges(self) -> list[Edge]:
        return [parallel_edge(p) for p in self.L]

    def h_graph(self, n: int) -> Graph:
        return Graph(n, frozenset(self.H))


def check_scheme(g: Graph, s: ReducingScheme) -> None:
    """Raise :class:`SchemeError` unless ``s`` is a reducing scheme of ``g``."""
    if s.r < 1:
        raise SchemeError("witness", "r must be a positive integer")
    if not s.H <= g.edges:
        raise SchemeError("subgraph", f"H has non-edges {sorted(s.H - g.edges)}")
    for name, group in (("A", s.A), ("L", s.L)):
        for p in group:
            if len(p) < 2 or not g.is_path(p):
                raise SchemeError("paths", f"{name}-element {list(p)} is not a path of G")
    seen = set(s.H)
    for p in s.A + s.L:
        es = set(path_edges(p))
        if es & seen:
            raise SchemeError("decomposition", f"element {list(p)} reuses edges {sorted(es & seen)}")
        seen |= es
    outside = g.edges - seen
    for p in s.L:
        e = parallel_edge(p)
        if e in outside:
            raise SchemeError("parallel", f"parallel edge {e} of {list(p)} is an edge of G - E(R)")


@dataclass(frozen=True)
class ReductionOutcome:
    reduced: Graph
    isolated: tuple[int, ...]
    parallel_edges: frozenset[Edge]
    relabeling: dict[int, int]

    @property
    def inverse(self) -> dict[int, int]:
        return {new: old for old, new in self.relabeling.items()}

    def to_host(self, path: Sequence[int]) -> Path:
        inv = self.inverse
        return tuple(inv[v] for v in path)


def compute_reduction(g: Graph, s: ReducingScheme) -> ReductionOutcome:
    """Delete ``E(R)``, add the parallel edges of ``L``, drop isolated vertices."""
    check_scheme(g, s)
    e_l = frozenset(s.parallel_edges())
    rest = (g.edges - s.r_edges()) | e_l
    touched = {v for e in rest for v in e}
    isolated = tuple(v for v in range(g.n) if v not in touched)
    keep = [v for v in range(g.n) if v in touched]
    relabel = {v: i for i, v in enumerate(keep)}
    reduced = Graph(len(keep), frozenset(edge(relabel[u], relabel[v]) for u, v in rest))
    return ReductionOutcome(reduced, isolated, e_l, relabel)


@dataclass
class FeasibilityReport:
    scheme_error: Optional[str] = None
    pn_h: Optional[int] = None
    isolated_count: int = 0
    cond_i: bool = False
    cond_ii: bool = False
    cond_iii: bool = False
    cond_iv: bool = False
    cond_v: bool = False
    attachment_ends: dict[int, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.scheme_error is None and all(
            (self.cond_i, self.cond_ii, self.cond_iii, self.cond_iv, self.cond_v)
        )

    def __bool__(self) -> bool:
        return self.feasible

    def lines(self) -> list[str]:
        if self.scheme_error:
            return [f"not a reducing scheme: {self.scheme_error}"]
        mark = {True: "ok", False: "FAIL"}
        out = [
            f"(i)   pn(H) = {self.pn_h} <= r: {mark[self.cond_i]}",
            f"(ii)  |I| = {self.isolated_count} >= 2r: {mark[self.cond_ii]}",
            f"(iii) attachment paths: {mark[self.cond_iii]}",
            f"(iv)  lift paths: {mark[self.cond_iv]}",
            f"(v)   isolated vertices on at most one path: {mark[self.cond_v]}",
        ]
        return out + [f"  - {note}" for note in self.notes]


def _attachment_end(p: Path, odd_in_reduced: set[int], isolated: set[int]) -> Optional[int]:
    for v in (p[0], p[-1]):
        if v in odd_in_reduced and set(p) - {v} <= isolated:
            return v
    return None


def validate_feasible(g: Graph, s: ReducingScheme) -> FeasibilityReport:
    """Evaluate the five feasibility conditions of a reducing scheme."""
    report = FeasibilityReport()
    try:
        out = compute_reduction(g, s)
    except SchemeError as exc:
        report.scheme_error = str(exc)
        return report
    iso = set(out.isolated)
    inv = out.inverse
    odd = {inv[v] for v in range(out.reduced.n) if out.reduced.degree(v) % 2}

    h = s.h_graph(g.n)
    report.pn_h = path_number_exact(h).path_number if h.m else 0
    report.cond_i = report.pn_h <= s.r
    report.isolated_count = len(iso)
    report.cond_ii = len(iso) >= 2 * s.r

    ok = True
    used: set[int] = set()
    for k, p in enumerate(s.A):
        if used & set(p):
            ok = False
            report.notes.append(f"A-path {list(p)} meets another A-path")
        used |= set(p)
        v = _attachment_end(p, odd, iso)
        if v is None:
            ok = False
            report.notes.append(f"A-path {list(p)} has no odd end with the rest isolated")
        else:
            report.attachment_ends[k] = v
    report.cond_iii = ok

    ok = True
    for p in s.L:
        if not set(p[1:-1]) <= iso:
            ok = False
            report.notes.append(f"L-path {list(p)} has a non-isolated interior vertex")
    pes = s.parallel_edges()
    if len(set(pes)) != len(pes):
        ok = False
        report.notes.append("two L-paths share a parallel edge")
    report.cond_iv = ok

    counts: dict[int, int] = {}
    for p in s.A + s.L:
        for v in set(p) & iso:
            counts[v] = counts.get(v, 0) + 1
    shared = sorted(v for v, c in counts.items() if c > 1)
    if shared:
        report.notes.append(f"isolated vertices on several paths: {shared}")
    report.cond_v = not shared
    return report


def lift(
    g: Graph,
    s: ReducingScheme,
    d: PathDecomposition | Sequence[Sequence[int]],
    d_h: PathDecomposition | Sequence[Sequence[int]],
) -> PathDecomposition:
    """Turn decompositions of the reduced graph and of ``H`` into one of ``G``.

    Each A-path is glued onto the lowest-indexed path of ``d`` ending at its
    odd end; every parallel edge inside a path of ``d`` is replaced by its
    L-path. ``d`` is in the reduced graph's labels, ``d_h`` in the host's.
    """
    report = validate_feasible(g, s)
    if not report:
        raise SchemeError("feasibility", "; ".join(report.lines()))
    out = compute_reduction(g, s)
    d_paths = [tuple(p) for p in (d.paths if isinstance(d, PathDecomposition) else d)]
    dh_paths = [tuple(p) for p in (d_h.paths if isinstance(d_h, PathDecomposition) else d_h)]
    check = verify(out.reduced, d_paths)
    if not check:
        raise GraphError(f"not a decomposition of the reduced graph: {check.summary()}")
    h = s.h_graph(g.n)
    check = verify(h, dh_paths)
    if not check:
        raise GraphError(f"not a decomposition of H: {check.summary()}")

    host_paths = [out.to_host(p) for p in d_paths]
    # (index of host path, end position 0 or -1) -> A-path oriented to end there
    glued: dict[tuple[int, int], Path] = {}
    for k, a in enumerate(s.A):
        v = report.attachment_ends[k]
        oriented = a if a[-1] == v else tuple(reversed(a))
        for i, p in enumerate(host_paths):
            if p[0] == v:
                glued[(i, 0)] = oriented
                break
            if p[-1] == v:
                glued[(i, -1)] = oriented
                break
        else:
            raise LiftError(f"no path of the reduced decomposition ends at odd vertex {v}")

    by_parallel = {parallel_edge(p): p for p in s.L}
    lifted: list[Path] = []
    for i, p in enumerate(host_paths):
        seq = [p[0]]
        for x, y in zip(p, p[1:]):
            rep = by_parallel.get(edge(x, y))
            if rep is not None:
                inner = rep[1:-1] if rep[0] == x else tuple(reversed(rep))[1:-1]
                seq.extend(inner)
            seq.append(y)
        if (i, 0) in glued:
            seq = list(glued[(i, 0)][:-1]) + seq
        if (i, -1) in glued:
            seq = seq + list(reversed(glued[(i, -1)][:-1]))
        if not g.is_path(seq):
            raise LiftError(f"lifted element {seq} is not a path")
        lifted.append(tuple(seq))
    result = PathDecomposition.of(g, lifted + dh_paths)
    check = verify(g, result)
    if not check:
        raise LiftError(f"lifted decomposition fails verification: {check.summary()}")
    return result


def reconstruct(outcome: ReductionOutcome, s: ReducingScheme, n: int) -> Graph:
    """Rebuild the host from the reduced graph: subdivide E_L, restore H and A."""
    inv = outcome.inverse
    es = {edge(inv[u], inv[v]) for u, v in outcome.reduced.edges}
    es -= set(outcome.parallel_edges)
    es |= set(s.H)
    for p in s.A + s.L:
        es.update(path_edges(p))
    return Graph(n, frozenset(es))


def check_planarity_preservation(g: Graph, s: ReducingScheme) -> bool:
    """Planarity of the reduced graph of a planar host; ``False`` is a bug and warns."""
    if not is_planar(g):
        raise GraphError("host graph is not planar")
    report = validate_feasible(g, s)
    if not report:
        raise SchemeError("feasibility", "scheme is not feasible")
    planar = is_planar(compute_reduction(g, s).reduced)
    if not planar:
        warnings.warn(f"reduced graph of a planar host is not planar: {s.to_json()}", PlanarityAlarm)
    return planar


def _simple_paths(g: Graph, max_length: int) -> Iterator[Path]:
    """Each simple path with 1..max_length edges once, as ``start < end``."""

    def grow(seq: list[int], on: set[int]) -> Iterator[Path]:
        if len(seq) >= 2 and seq[0] < seq[-1]:
            yield tuple(seq)
        if len(seq) - 1 >= max_length:
            return
        for w in sorted(g.adj[seq[-1]]):
            if w not in on:
                seq.append(w)
                on.add(w)
                yield from grow(seq, on)
                on.discard(w)
                seq.pop()

    for s in range(g.n):
        yield from grow([s], {s})


def isolated_by(g: Graph, removed: set[Edge]) -> list[int]:
    """Vertices of positive degree left isolated by deleting ``removed``."""
    touched = {v for e in removed for v in e}
    return sorted(v for v in touched if all(edge(v, w) in removed for w in g.adj[v]))


def search_reducing_subgraph(g: Graph, r: int = 1, max_length: Optional[int] = None) -> Optional[ReducingScheme]:
    """First path (in DFS order) whose edge deletion isolates at least two vertices."""
    if r != 1:
        raise NotImplementedError("only 1-reducing subgraphs are searched")
    cap = g.n if max_length is None else max_length
    for p in _simple_paths(g, cap):
        if len(isolated_by(g, set(path_edges(p)))) >= 2:
            return ReducingScheme.from_path(p)
    return None

"""Detectors for the local configurations used in the reductions: terminals,
small diamonds, kites, terminal separators and neighbourhood profiles.

These report what is present in a graph; they make no claim about which
configurations must or cannot occur.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graph import Graph, GraphError, SeparatorReport, is_connected, two_vertex_separators


@dataclass(frozen=True)
class TerminalReport:
    terminals: tuple[int, ...]
    degree_histogram: dict[int, int]


def terminals(g: Graph) -> TerminalReport:
    """Vertices of degree at most 3."""
    degs = g.degrees()
    return TerminalReport(
        tuple(v for v in range(g.n) if degs[v] <= 3),
        dict(sorted(Counter(degs).items())),
    )


@dataclass(frozen=True, order=True)
class DiamondWitness:
    u: int
    v: int
    w: int


def find_small_diamonds(g: Graph) -> list[DiamondWitness]:
    """Adjacent degree-3 pairs ``u < v`` with an apex ``w`` seeing all their other neighbours."""
    out = []
    for u, v in sorted(g.edges):
        if g.degree(u) != 3 or g.degree(v) != 3:
            continue
        closed = g.adj[u] | g.adj[v]
        outside = closed - {u, v}
        for w in range(g.n):
            if w in closed or w in (u, v):
                continue
            if outside <= g.adj[w]:
                out.append(DiamondWitness(u, v, w))
    return out


def find_kites(g: Graph) -> list[tuple[int, int, int]]:
    """Triples ``(u, u', v)``: ``u`` has degree 1 with neighbour ``u'``, ``v`` is a
    terminal other than ``u`` and ``u'``, and ``N(v) ⊆ N(u')``."""
    out = []
    for u in range(g.n):
        if g.degree(u) != 1:
            continue
        (hub,) = g.adj[u]
        for v in range(g.n):
            if v in (u, hub) or g.degree(v) > 3:
                continue
            if g.adj[v] <= g.adj[hub]:
                out.append((u, hub, v))
    return out


@dataclass(frozen=True)
class TerminalSeparator:
    report: SeparatorReport
    separated_terminals: tuple[tuple[int, int], ...]
    eta: int


def terminal_separators(g: Graph) -> list[TerminalSeparator]:
    """2-separators of ``g`` splitting at least two terminals apart.

    ``eta`` is the fewest vertices in a component that holds a terminal.
    """
    if not is_connected(g):
        raise GraphError("graph must be connected")
    term = set(terminals(g).terminals)
    out = []
    for rep in two_vertex_separators(g):
        pairs = tuple((a, b) for a, b in rep.separated_pairs if a in term and b in term)
        if not pairs:
            continue
        eta = min(len(c) for c in rep.components if term & set(c))
        out.append(TerminalSeparator(rep, pairs, eta))
    return out


def common_neighbor_count(g: Graph, u: int, v: int) -> int:
    if u == v:
        raise GraphError("vertices must differ")
    return len(g.adj[u] & g.adj[v])


def even_neighbor_profile(g: Graph, v: int) -> int:
    """Number of neighbours of ``v`` with even degree."""
    return sum(1 for w in g.adj[v] if g.degree(w) % 2 == 0)

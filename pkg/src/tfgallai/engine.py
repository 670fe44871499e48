"""Rule-based decomposer for connected triangle-free planar graphs.

Each rule shrinks the instance, solves the pieces recursively and stitches
the pieces' decompositions back together; the exact solver is the fallback
when no rule applies. Every run produces a :class:`Certificate`, a tree of
rule applications that :func:`replay` re-executes deterministically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from .decomp import PathDecomposition, decompose_cycle_plus_path, path_number_exact, verify
from .frs import ReducingScheme, compute_reduction, lift, search_reducing_subgraph
from .graph import (
    Edge,
    Graph,
    GraphError,
    Path,
    classify_cut_vertices,
    connected_components,
    edge,
    is_connected,
    is_planar,
    is_triangle_free,
    path_edges,
    remove_edges,
    shortest_path,
    useful_cut_edges,
)
from .io import graph6_decode, graph6_encode

RULES = ("cut-edge", "cut-vertex", "reducing-path", "two-small-vertices")


class RuleError(ValueError):
    """A rule was asked to fire where it does not apply."""


class TheoremContradiction(RuntimeError):
    """A connected triangle-free planar graph got more than floor(n/2) paths."""

    def __init__(self, graph: Graph, size: int):
        super().__init__(
            f"decomposition of size {size} exceeds floor(n/2) = {graph.n // 2} "
            f"for {graph6_encode(graph)}"
        )
        self.graph = graph
        self.size = size


@dataclass(frozen=True)
class EngineConfig:
    rules: tuple[str, ...] = RULES
    exact_budget: Optional[int] = None
    frs_max_length: Optional[int] = None


@dataclass
class Step:
    rule: str
    detail: dict[str, Any]
    children: list["Certificate"] = field(default_factory=list)


@dataclass
class Certificate:
    graph_id: str
    steps: list[Step]
    final: PathDecomposition
    bound: int

    @property
    def method(self) -> str:
        used = rules_used(self)
        if not used:
            return "rules"
        if set(used) == {"exact"}:
            return "exact"
        return "mixed" if "exact" in used else "rules"

    def to_dict(self) -> dict[str, Any]:
        return {
            "graph": self.graph_id,
            "bound": self.bound,
            "method": self.method,
            "final": self.final.as_lists(),
            "steps": [
                {"rule": s.rule, "detail": s.detail, "children": [c.to_dict() for c in s.children]}
                for s in self.steps
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Certificate":
        g = graph6_decode(data["graph"])
        steps = [
            Step(s["rule"], s["detail"], [cls.from_dict(c) for c in s["children"]])
            for s in data["steps"]
        ]
        return cls(data["graph"], steps, PathDecomposition.of(g, data["final"]), data["bound"])


def rules_used(cert: Certificate) -> list[str]:
    out = []
    for s in cert.steps:
        if s.rule not in ("components", "empty"):
            out.append(s.rule)
        for c in s.children:
            out.extend(rules_used(c))
    return out


ChildSolver = Callable[[int, Graph], Certificate]


def _child_paths(cert: Certificate, to_parent: Sequence[int]) -> list[Path]:
    return [tuple(to_parent[v] for v in p) for p in cert.final.paths]


def _inverse(relabel: dict[int, int]) -> list[int]:
    inv = [0] * len(relabel)
    for old, new in relabel.items():
        inv[new] = old
    return inv


def _orient(p: Path, first: int, second: int) -> Path:
    """Orient ``p`` so it starts ``first, second``; the pair must be an end edge."""
    if p[:2] == (first, second):
        return p
    if p[-2:] == (second, first):
        return tuple(reversed(p))
    raise RuleError(f"{(first, second)} is not an end edge of {p}")


# -- rules --------------------------------------------------------------------
# each apply function returns (detail, children, paths of g)

def _apply_cut_edge(g: Graph, e: Edge, solve: ChildSolver):
    e = edge(*e)
    if e not in useful_cut_edges(g):
        raise RuleError(f"{e} is not a useful cut-edge")
    a, b = e
    rest = Graph(g.n, g.edges - {e})
    comps = {tuple(c) for c in connected_components(rest)}
    side_a = next(c for c in comps if a in c)
    side_b = next(c for c in comps if b in c)
    g1, r1 = g.induced(set(side_a) | {b})
    g2, r2 = g.induced(set(side_b) | {a})
    c1, c2 = solve(0, g1), solve(1, g2)
    d1, d2 = _child_paths(c1, _inverse(r1)), _child_paths(c2, _inverse(r2))
    p1 = next(p for p in d1 if e in path_edges(p))
    p2 = next(p for p in d2 if e in path_edges(p))
    # b is a leaf of g1 and a is a leaf of g2
    merged = tuple(reversed(_orient(p1, b, a))) + _orient(p2, a, b)[2:]
    paths = [p for p in d1 if p is not p1] + [p for p in d2 if p is not p2] + [merged]
    detail = {"edge": list(e), "maps": [_inverse(r1), _inverse(r2)]}
    return detail, [c1, c2], paths


def _apply_cut_vertex(g: Graph, v: int, solve: ChildSolver):
    labels = dict(classify_cut_vertices(g))
    if labels.get(v) != "useful":
        raise RuleError(f"{v} is not a useful cut-vertex")
    comps = connected_components(g, removed=[v])
    even = [c for c in comps if len(c) % 2 == 0]
    if even:
        comp = even[0]
        h, rh = g.induced(set(comp) | {v})
        h_edges = [(x, y) for x, y in g.edges if x in rh and y in rh]
        scheme = ReducingScheme.of(h_edges, r=len(comp) // 2)
        out = compute_reduction(g, scheme)
        ch = solve(0, h)
        cr = solve(1, out.reduced)
        d_h = _child_paths(ch, _inverse(rh))
        lifted = lift(g, scheme, cr.final.paths, d_h)
        detail = {"vertex": v, "branch": "reducing-subgraph", "scheme": scheme.to_dict(),
                  "maps": [_inverse(rh), _inverse(out.relabeling)]}
        return detail, [ch, cr], list(lifted.paths)
    big = [c for c in comps if len(c) >= 2]
    if not big:
        raise RuleError("every component is a single vertex (a star)")
    comp = big[0]
    others = [x for x in range(g.n) if x not in comp]
    # v' is appended as the last label of both pieces
    h1, r1 = g.induced(others)
    h1 = h1.with_edges([(r1[v], h1.n)], n=h1.n + 1)
    h2, r2 = g.induced(set(comp) | {v})
    h2 = h2.with_edges([(r2[v], h2.n)], n=h2.n + 1)
    c1, c2 = solve(0, h1), solve(1, h2)
    vp = -1
    m1 = _inverse(r1) + [vp]
    m2 = _inverse(r2) + [vp]
    d1, d2 = _child_paths(c1, m1), _child_paths(c2, m2)
    p1 = next(p for p in d1 if vp in p)
    p2 = next(p for p in d2 if vp in p)
    merged = tuple(reversed(_orient(p1, vp, v)))[:-1] + _orient(p2, vp, v)[2:]
    paths = [p for p in d1 if p is not p1] + [p for p in d2 if p is not p2]
    if len(merged) >= 2:
        paths.append(merged)
    detail = {"vertex": v, "branch": "split", "maps": [m1, m2]}
    return detail, [c1, c2], paths


def _apply_reducing_path(g: Graph, path: Sequence[int], solve: ChildSolver):
    scheme = ReducingScheme.from_path(path)
    out = compute_reduction(g, scheme)
    cr = solve(0, out.reduced)
    lifted = lift(g, scheme, cr.final.paths, [tuple(path)])
    detail = {"path": list(path), "maps": [_inverse(out.relabeling)]}
    return detail, [cr], list(lifted.paths)


def _path_order(g: Graph, es: set[Edge]) -> Optional[Path]:
    """Vertex sequence of an edge set that forms a path, else None."""
    deg: dict[int, int] = {}
    for x, y in es:
        deg[x] = deg.get(x, 0) + 1
        deg[y] = deg.get(y, 0) + 1
    ends = sorted(x for x, k in deg.items() if k == 1)
    if len(ends) != 2 or any(k > 2 for k in deg.values()) or len(es) != len(deg) - 1:
        return None
    seq = [ends[0]]
    left = set(es)
    while left:
        cur = seq[-1]
        nxt = next((edge(cur, w) for w in g.adj[cur] if edge(cur, w) in left), None)
        if nxt is None:
            return None
        left.discard(nxt)
        seq.append(nxt[0] if nxt[1] == cur else nxt[1])
    return tuple(seq)


def _two_small_structure(g: Graph, u: int, v: int) -> tuple[str, Path]:
    if u == v or g.degree(u) > 2 or g.degree(v) > 2:
        raise RuleError(f"need two distinct vertices of degree <= 2, got {u}, {v}")
    sp = shortest_path(g, u, v)
    if sp is None:
        raise RuleError(f"{u} and {v} are not connected")
    es = set(path_edges(sp)) | {edge(x, w) for x in (u, v) for w in g.adj[x]}
    seq = _path_order(g, es)
    if seq is not None:
        return "path", seq
    # the only other shape a shortest path plus end edges can take: a 4-cycle
    if len(sp) == 3:
        common = (g.adj[u] & g.adj[v]) - {sp[1]}
        if len(es) == 4 and len(common) == 1:
            return "cycle", (u, sp[1], v, next(iter(common)))
    raise RuleError(f"structure around {u}, {v} is neither a path nor a 4-cycle")


def _apply_two_small(g: Graph, u: int, v: int, solve: ChildSolver):
    shape, seq = _two_small_structure(g, u, v)
    if shape == "path":
        detail, children, paths = _apply_reducing_path(g, seq, solve)
        return {"pair": [u, v], "shape": "path", **detail}, children, paths
    cyc = list(seq)
    c_edges = [edge(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
    if set(c_edges) == g.edges:
        paths = [tuple(cyc[:3]), (cyc[2], cyc[3], cyc[0])]
        return {"pair": [u, v], "shape": "cycle", "cycle": cyc, "maps": []}, [], paths
    rest, relabel = remove_edges(g, c_edges, prune_isolated=True)
    child = solve(0, rest)
    to_parent = _inverse(relabel)
    d = _child_paths(child, to_parent)
    k = next(i for i, p in enumerate(d) if set(p) & set(cyc))
    tilde = d[k]
    pair_graph = Graph(g.n, frozenset(c_edges) | frozenset(path_edges(tilde)))
    first, second = decompose_cycle_plus_path(pair_graph, cyc, tilde)
    paths = d[:k] + d[k + 1 :] + [first, second]
    detail = {"pair": [u, v], "shape": "cycle", "cycle": cyc, "joined": list(tilde), "maps": [to_parent]}
    return detail, [child], paths


def _apply_exact(g: Graph, budget: Optional[int]):
    res = path_number_exact(g, budget)
    detail = {"budget": budget, "optimal": res.optimal, "nodes": res.nodes_explored}
    return detail, [], list(res.witness.paths)


def _apply_components(g: Graph, solve: ChildSolver):
    paths: list[Path] = []
    children = []
    maps = []
    for i, comp in enumerate(connected_components(g)):
        sub, relabel = g.induced(comp)
        c = solve(i, sub)
        inv = _inverse(relabel)
        paths += _child_paths(c, inv)
        children.append(c)
        maps.append(inv)
    return {"maps": maps}, children, paths


# -- rule selection -------------------------------------------------------------

def _find(g: Graph, rule: str, cfg: EngineConfig) -> Optional[dict[str, Any]]:
    if rule == "cut-edge":
        es = useful_cut_edges(g)
        return {"edge": list(es[0])} if es else None
    if rule == "cut-vertex":
        for v, label in classify_cut_vertices(g):
            if label == "useful":
                if any(len(c) >= 2 for c in connected_components(g, removed=[v])):
                    return {"vertex": v}
        return None
    if rule == "reducing-path":
        s = search_reducing_subgraph(g, 1, cfg.frs_max_length)
        if s is None:
            return None
        return {"path": list(_path_order(g, set(s.H)))}
    if rule == "two-small-vertices":
        small = [x for x in range(g.n) if g.degree(x) <= 2]
        for i, x in enumerate(small):
            for y in small[i + 1 :]:
                try:
                    _two_small_structure(g, x, y)
                except RuleError:
                    continue
                return {"pair": [x, y]}
        return None
    raise ValueError(f"unknown rule {rule!r}")


def _apply(g: Graph, rule: str, params: dict[str, Any], cfg: EngineConfig, solve: ChildSolver):
    if rule == "cut-edge":
        return _apply_cut_edge(g, tuple(params["edge"]), solve)
    if rule == "cut-vertex":
        return _apply_cut_vertex(g, params["vertex"], solve)
    if rule == "reducing-path":
        return _apply_reducing_path(g, params["path"], solve)
    if rule == "two-small-vertices":
        return _apply_two_small(g, *params["pair"], solve)
    if rule == "exact":
        return _apply_exact(g, params.get("budget", cfg.exact_budget))
    if rule == "components":
        return _apply_components(g, solve)
    raise ValueError(f"unknown rule {rule!r}")


def _finish(g: Graph, rule: str, detail, children, paths, strict: bool = False) -> Certificate:
    final = PathDecomposition.of(g, paths)
    report = verify(g, final)
    if not report:
        raise RuntimeError(f"rule {rule} produced an invalid decomposition: {report.summary()}")
    # with a triangle-free planar root every connected piece must meet the bound
    if strict and is_connected(g) and len(final) > g.n // 2 and detail.get("optimal", True):
        raise TheoremContradiction(g, len(final))
    return Certificate(graph6_encode(g), [Step(rule, detail, children)], final, g.n // 2)


def _solve(g: Graph, cfg: EngineConfig, strict: bool = False) -> Certificate:
    if g.m == 0:
        return Certificate(graph6_encode(g), [], PathDecomposition.of(g, []), g.n // 2)
    solve: ChildSolver = lambda i, sub: _solve(sub, cfg, strict)
    if not is_connected(g):
        return _finish(g, "components", *_apply_components(g, solve), strict=strict)
    for rule in cfg.rules:
        params = _find(g, rule, cfg)
        if params is None:
            continue
        try:
            result = _apply(g, rule, params, cfg, solve)
        except RuleError:
            continue
        return _finish(g, rule, *result, strict=strict)
    return _finish(g, "exact", *_apply_exact(g, cfg.exact_budget), strict=strict)


def check_input(g: Graph) -> None:
    if g.n < 2:
        raise GraphError("need at least two vertices")
    if not is_connected(g):
        raise GraphError("graph is not connected")
    if not is_triangle_free(g):
        raise GraphError("graph contains a triangle")
    if not is_planar(g):
        raise GraphError("graph is not planar")


def decompose_gallai(g: Graph, config: Optional[EngineConfig] = None) -> Certificate:
    """A verified decomposition into at most ``floor(n/2)`` paths, with its certificate."""
    cfg = config or EngineConfig()
    check_input(g)
    cert = _solve(g, cfg, strict=True)
    if len(cert.final) > g.n // 2:
        raise TheoremContradiction(g, len(cert.final))
    return cert


def _single_rule(g: Graph, rule: str, params: dict[str, Any], config: Optional[EngineConfig]) -> Certificate:
    cfg = config or EngineConfig()
    solve: ChildSolver = lambda i, sub: _solve(sub, cfg)
    return _finish(g, rule, *_apply(g, rule, params, cfg, solve))


def rule_cut_edge(g: Graph, e: Sequence[int], config: Optional[EngineConfig] = None) -> Certificate:
    """Split at a useful cut-edge, solve both sides, join the two paths through it."""
    return _single_rule(g, "cut-edge", {"edge": list(e)}, config)


def rule_cut_vertex(g: Graph, v: int, config: Optional[EngineConfig] = None) -> Certificate:
    """Reduce at a useful cut-vertex.

    With an even component ``C``, ``G[C + v]`` is removed as a reducing
    subgraph. Otherwise a component with at least two vertices is split off,
    both pieces get a pendant edge at ``v`` and the two paths through it are
    joined.
    """
    return _single_rule(g, "cut-vertex", {"vertex": v}, config)


def rule_two_small_vertices(g: Graph, u: int, v: int, config: Optional[EngineConfig] = None) -> Certificate:
    return _single_rule(g, "two-small-vertices", {"pair": [u, v]}, config)


def replay(cert: Certificate | dict[str, Any], config: Optional[EngineConfig] = None) -> Certificate:
    """Re-execute a certificate's recorded rule choices and rebuild it."""
    data = cert.to_dict() if isinstance(cert, Certificate) else cert
    cfg = config or EngineConfig()
    g = graph6_decode(data["graph"])
    if not data["steps"]:
        return Certificate(data["graph"], [], PathDecomposition.of(g, []), g.n // 2)
    step = data["steps"][0]
    recorded = step["children"]

    def solve(i: int, sub: Graph) -> Certificate:
        if graph6_encode(sub) != recorded[i]["graph"]:
            raise ValueError(f"replayed child {i} differs from the recorded one")
        return replay(recorded[i], cfg)

    rule = step["rule"]
    detail = step["detail"]
    if rule == "exact":
        params = {"budget": detail["budget"]}
    elif rule == "two-small-vertices":
        params = {"pair": detail["pair"]}
    else:
        params = detail
    return _finish(g, rule, *_apply(g, rule, params, cfg, solve))

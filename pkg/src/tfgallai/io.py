"""graph6 and edge-list formats, and the JSONL report record."""

from __future__ import annotations

import json
import warnings
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from .graph import Graph, edge

HEADER = ">>graph6<<"


class ParseError(ValueError):
    pass


class Graph6Error(ParseError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class EdgeListError(ParseError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateEdgeWarning(UserWarning):
    pass


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def graph6_encode(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in g.edges else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _encode_n(g.n) + "".join(body)


def graph6_decode(line: str) -> Graph:
    """Decode one graph6 string (an optional ``>>graph6<<`` header is accepted)."""
    s = line.strip()
    start = len(HEADER) if s.startswith(HEADER) else 0
    data = s[start:]
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", start + k)
    if not data:
        raise Graph6Error("empty input", start)
    vals = [ord(ch) - 63 for ch in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated size field", start + len(vals))
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | v
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated size field", start + len(vals))
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | v
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes, got {len(body)}", start + len(vals))
    if len(body) > need:
        raise Graph6Error("trailing bytes after adjacency data", start + pos + need)
    es = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                es.append((i, j))
            k += 1
    if need and body[-1] & ((1 << (6 * need - nbits)) - 1):
        raise Graph6Error("non-zero padding bits", start + pos + need - 1)
    return Graph(n, frozenset(es))


def edgelist_parse(text: str) -> Graph:
    """Parse ``n`` then one ``u v`` pair per line; ``#`` starts a comment."""
    n: Optional[int] = None
    es: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        tokens = content.split()
        try:
            nums = [int(t) for t in tokens]
        except ValueError:
            raise EdgeListError(f"non-integer token in {content!r}", lineno) from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise EdgeListError("first line must hold the vertex count", lineno)
            n = nums[0]
            continue
        if len(nums) != 2:
            raise EdgeListError(f"expected two endpoints, got {len(nums)} tokens", lineno)
        u, v = nums
        if u == v:
            raise EdgeListError(f"loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"endpoint out of range for n={n}", lineno)
        e = edge(u, v)
        if e in es:
            warnings.warn(f"line {lineno}: duplicate edge {e} ignored", DuplicateEdgeWarning, stacklevel=2)
        es.add(e)
    if n is None:
        raise EdgeListError("missing vertex count", 1)
    return Graph(n, frozenset(es))


def edgelist_format(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in sorted(g.edges)]) + "\n"


def read_graphs(text: str, fmt: str) -> list[Graph]:
    """Graphs from file contents: one per non-blank line for g6, one per file otherwise."""
    if fmt == "g6":
        return [graph6_decode(line) for line in text.splitlines() if line.strip()]
    if fmt == "edgelist":
        return [edgelist_parse(text)]
    raise ValueError(f"unknown format {fmt!r}")


def guess_format(path: str) -> str:
    return "g6" if path.endswith((".g6", ".graph6")) else "edgelist"


@dataclass
class ReportRecord:
    graph: str
    n: int
    m: int
    pn: Optional[int]
    bound: int
    decomposition: list[list[int]] = field(default_factory=list)
    method: str = "exact"
    elapsed_ms: float = 0.0
    optimal: bool = False

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ReportRecord":
        data: dict[str, Any] = json.loads(line)
        return cls(**data)

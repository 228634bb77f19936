"""Weighted-tree plumbing descriptions.

A plumbing graph is a finite tree with an integer weight on every
vertex.  Vertices are indexed 0-based in the API; the PLUMB v1 text
format uses 1-based indices:

    line 1:        vertex count s
    line 2:        s space-separated integer weights
    next s-1 lines: one edge per line, two 1-based vertex indices

Lines starting with ``#`` are comments; encoding is UTF-8 with LF
newlines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError, NotALeaf, NotATree
from .exact import ExactMatrix


@dataclass(frozen=True)
class PlumbingGraph:
    """Immutable weighted tree; validated at construction."""

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        s = len(self.weights)
        if s == 0:
            raise NotATree("graph needs at least one vertex")
        norm = []
        for a, b in self.edges:
            if not (0 <= a < s and 0 <= b < s):
                raise FormatError(f"edge ({a + 1}, {b + 1}) out of range")
            if a == b:
                raise NotATree("self-loop")
            norm.append((min(a, b), max(a, b)))
        if len(set(norm)) != len(norm):
            raise NotATree("repeated edge")
        if len(norm) != s - 1:
            raise NotATree(f"a tree on {s} vertices needs {s - 1} edges, got {len(norm)}")
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        # connectivity (with s-1 edges and no repeats this also rules out cycles)
        parent = list(range(s))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                raise NotATree("cycle detected")
            parent[ra] = rb
        if len({find(v) for v in range(s)}) != 1:
            raise NotATree("graph is disconnected")

    @property
    def vertex_count(self) -> int:
        return len(self.weights)

    def degree_vector(self) -> tuple[int, ...]:
        deg = [0] * self.vertex_count
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)

    def linking_matrix(self) -> ExactMatrix:
        """Weights on the diagonal, 1 for every edge."""
        s = self.vertex_count
        rows = [[0] * s for _ in range(s)]
        for i, w in enumerate(self.weights):
            rows[i][i] = w
        for a, b in self.edges:
            rows[a][b] = 1
            rows[b][a] = 1
        return ExactMatrix(rows)

    def high_degree_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, d in enumerate(self.degree_vector()) if d >= 3)

    def delete_vertex(self, v: int) -> "PlumbingGraph":
        """Remove a leaf; remaining indices compact order-preservingly
        (old index i maps to i if i < v else i - 1)."""
        deg = self.degree_vector()
        if not (0 <= v < self.vertex_count) or deg[v] != 1:
            raise NotALeaf(f"vertex {v} has degree {deg[v] if 0 <= v < self.vertex_count else 'n/a'}, not 1")
        weights = tuple(w for i, w in enumerate(self.weights) if i != v)

        def shift(i: int) -> int:
            return i if i < v else i - 1

        edges = tuple((shift(a), shift(b)) for a, b in self.edges if v not in (a, b))
        return PlumbingGraph(weights, edges)


def parse_plumb(text: str) -> PlumbingGraph:
    """Parse the PLUMB v1 format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty input")
    try:
        s = int(lines[0])
    except ValueError as exc:
        raise FormatError(f"bad vertex count: {lines[0]!r}") from exc
    if s < 1:
        raise FormatError("vertex count must be positive")
    if len(lines) < 2:
        raise FormatError("missing weights line")
    try:
        weights = tuple(int(tok) for tok in lines[1].split())
    except ValueError as exc:
        raise FormatError(f"bad weight in {lines[1]!r}") from exc
    if len(weights) != s:
        raise FormatError(f"expected {s} weights, got {len(weights)}")
    edges = []
    for ln in lines[2:]:
        toks = ln.split()
        if len(toks) != 2:
            raise FormatError(f"bad edge line {ln!r}")
        try:
            a, b = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
        if not (1 <= a <= s and 1 <= b <= s):
            raise FormatError(f"edge ({a}, {b}) out of range")
        edges.append((a - 1, b - 1))
    return PlumbingGraph(weights, tuple(edges))


def format_plumb(g: PlumbingGraph) -> str:
    """Canonical PLUMB v1 text (edges sorted, 1-based, LF newlines)."""
    lines = [str(g.vertex_count), " ".join(str(w) for w in g.weights)]
    for a, b in g.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"

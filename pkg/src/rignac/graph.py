"""Immutable simple graphs with a canonical edge order, plus basic structure.

Vertices are dense integers 0..n-1.  The edge list is sorted lexicographically
with u < v in every pair; the position of an edge in that list is its edge
index, and every colouring bitmask, JSON report and decomposition in this
package refers to edges through those indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class GraphParseError(ValueError):
    """Raised for malformed graph input (edge list or graph6)."""


class PreconditionError(ValueError):
    """Raised when an operation's documented precondition is violated."""


CANONICAL_FORM_MAX_VERTICES = 12


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with lex-sorted edge tuple."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range or not u<v")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edge list not strictly increasing")
            prev = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Normalize an edge iterable: orient pairs, sort, reject loops/duplicates."""
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            norm.append((u, v))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        return cls(n, tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_index

    def add_edge(self, u: int, v: int) -> "Graph":
        if self.has_edge(u, v):
            raise ValueError(f"edge ({u},{v}) already present")
        return Graph.from_edges(self.n, list(self.edges) + [(u, v)])

    def remove_edge_index(self, i: int) -> "Graph":
        return Graph(self.n, self.edges[:i] + self.edges[i + 1 :])

    def __repr__(self) -> str:  # compact, deterministic
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on the given vertices, compacted to 0..k-1.

    Returns the subgraph and the tuple of original vertex ids in the order
    they were relabelled (sorted ascending).
    """
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    kset = set(keep)
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in kset and v in kset]
    return Graph.from_edges(len(keep), edges), tuple(keep)


def remove_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Delete vertices and compact labels; returns (graph, kept original ids)."""
    drop = set(vertices)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


# ---------------------------------------------------------------------------
# parsing and emission


def parse_edge_list(text: str) -> tuple[Graph, list[str]]:
    """Parse 'u v' lines ('#' starts a comment).

    Labels that already form the dense integer range 0..n-1 are kept
    verbatim (so emission round-trips); any other label set is compacted to
    0..n-1 in order of first appearance.  Returns the graph and the label
    table (index -> original token).
    """
    order: dict[str, int] = {}
    raw_edges: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected two tokens, got {line!r}")
        a, b = parts
        if a == b:
            raise GraphParseError(f"line {lineno}: loop at {a!r}")
        for tok in (a, b):
            if tok not in order:
                order[tok] = len(order)
        raw_edges.append((a, b, lineno))
    if not order:
        raise GraphParseError("empty edge list")
    try:
        ints = {tok: int(tok) for tok in order}
    except ValueError:
        ints = None
    if ints is not None and sorted(ints.values()) == list(range(len(order))):
        labels = {tok: val for tok, val in ints.items()}
    else:
        labels = order
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for a, b, lineno in raw_edges:
        u, v = labels[a], labels[b]
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge {a!r} {b!r}")
        seen.add((u, v))
        edges.append((u, v))
    table = [tok for tok, _ in sorted(labels.items(), key=lambda kv: kv[1])]
    return Graph.from_edges(len(labels), edges), table


_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    """Decode a standard graph6 string (n <= 62)."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER) :]
    if not s:
        raise GraphParseError("empty graph6 string")
    n = ord(s[0]) - 63
    if n < 0 or n > 62:
        raise GraphParseError(f"unsupported graph6 vertex count byte {s[0]!r}")
    body = s[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphParseError(f"graph6 body length {len(body)}, expected {need} for n={n}")
    bits: list[int] = []
    for ch in body:
        val = ord(ch) - 63
        if val < 0 or val > 63:
            raise GraphParseError(f"invalid graph6 character {ch!r}")
        for k in range(5, -1, -1):
            bits.append((val >> k) & 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


def emit_graph6(g: Graph) -> str:
    """Encode as a standard graph6 string (n <= 62), bit-exact."""
    if g.n > 62:
        raise ValueError("graph6 emission limited to 62 vertices")
    bits = []
    for j in range(1, g.n):
        adj_j = g.adjacency[j]
        for i in range(j):
            bits.append(1 if i in adj_j else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def emit_edge_list(g: Graph) -> str:
    return "\n".join(f"{u} {v}" for u, v in g.edges)


def parse_graph(text: str) -> Graph:
    """Parse either format; graph6 iff no line carries a whitespace-separated pair."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphParseError("empty input")
    if any(len(line.split()) >= 2 for line in lines):
        return parse_edge_list(text)[0]
    if len(lines) != 1:
        raise GraphParseError("multiple single-token lines; cannot detect format")
    return parse_graph6(lines[0])


# ---------------------------------------------------------------------------
# connectivity and blocks


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex partition into connected components, ordered by smallest vertex."""
    seen = [False] * g.n
    comps: list[frozenset[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.add(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def blocks(g: Graph) -> list[frozenset[int]]:
    """Partition of the edge-index set into blocks (2-connected pieces and bridges).

    Rejects graphs with isolated vertices, which belong to no block.
    """
    for v in range(g.n):
        if not g.adjacency[v]:
            raise PreconditionError(f"isolated vertex {v} belongs to no block")
    disc = [-1] * g.n
    low = [0] * g.n
    result: list[set[int]] = []
    estack: list[int] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # iterative DFS: (vertex, parent edge index, iterator position)
        stack: list[tuple[int, int, list[tuple[int, int]]]] = []
        nbrs = sorted((w, g.edge_index[(min(root, w), max(root, w))]) for w in g.adjacency[root])
        disc[root] = low[root] = timer
        timer += 1
        stack.append((root, -1, nbrs))
        while stack:
            v, pedge, it = stack[-1]
            if it:
                w, eidx = it.pop(0)
                if eidx == pedge:
                    continue
                if disc[w] == -1:
                    estack.append(eidx)
                    disc[w] = low[w] = timer
                    timer += 1
                    wn = sorted((x, g.edge_index[(min(w, x), max(w, x))]) for x in g.adjacency[w])
                    stack.append((w, eidx, wn))
                elif disc[w] < disc[v]:  # back edge to an ancestor, seen once
                    estack.append(eidx)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] >= disc[u]:
                        # u is a cut vertex (or root): pop one block
                        block: set[int] = set()
                        while True:
                            eidx = estack.pop()
                            block.add(eidx)
                            if eidx == pedge:
                                break
                        result.append(block)
    result.sort(key=min)
    return [frozenset(b) for b in result]


# ---------------------------------------------------------------------------
# vertex-set predicates


def is_stable_set(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff no edge of g has both endpoints in the set."""
    s = set(vertices)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    return all(not (u in s and v in s) for u, v in g.edges)


def is_cut(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff deleting the set leaves a disconnected graph (>= 2 components)."""
    x = set(vertices)
    for v in x:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    rest = [v for v in range(g.n) if v not in x]
    if len(rest) < 2:
        return False
    seen = {rest[0]}
    queue = deque([rest[0]])
    while queue:
        a = queue.popleft()
        for b in g.adjacency[a]:
            if b not in x and b not in seen:
                seen.add(b)
                queue.append(b)
    return len(seen) < len(rest)


# ---------------------------------------------------------------------------
# separations


@dataclass(frozen=True)
class Separation:
    """Edge bipartition {G1, G2} with both sides owning a private vertex."""

    edge_set1: frozenset[int]
    edge_set2: frozenset[int]

    def validate(self, g: Graph) -> None:
        if not self.edge_set1 or not self.edge_set2:
            raise ValueError("separation sides must be nonempty")
        if self.edge_set1 & self.edge_set2:
            raise ValueError("separation sides must be disjoint")
        if self.edge_set1 | self.edge_set2 != frozenset(range(g.m)):
            raise ValueError("separation must partition the edge set")
        v1, v2 = self.side_vertices(g)
        if not v1 - v2 or not v2 - v1:
            raise ValueError("each side must contain a vertex missing from the other")

    def side_vertices(self, g: Graph) -> tuple[frozenset[int], frozenset[int]]:
        v1 = frozenset(v for i in self.edge_set1 for v in g.edges[i])
        v2 = frozenset(v for i in self.edge_set2 for v in g.edges[i])
        return v1, v2

    def shared_vertices(self, g: Graph) -> frozenset[int]:
        v1, v2 = self.side_vertices(g)
        return v1 & v2

    def is_stable(self, g: Graph) -> bool:
        return is_stable_set(g, self.shared_vertices(g))


# ---------------------------------------------------------------------------
# contraction


def contract_edge(g: Graph, e: int) -> tuple[Graph, int]:
    """Contract edge index e to a simple graph; returns (graph, merged vertex id).

    The merged vertex keeps the smaller endpoint's id; larger ids shift down.
    """
    if not 0 <= e < g.m:
        raise ValueError(f"edge index {e} out of range")
    u, v = g.edges[e]

    def relabel(w: int) -> int:
        if w == v:
            return u
        return w - 1 if w > v else w

    edges = set()
    for a, b in g.edges:
        x, y = relabel(a), relabel(b)
        if x == y:
            continue
        edges.add((min(x, y), max(x, y)))
    return Graph.from_edges(g.n - 1, sorted(edges)), u


# ---------------------------------------------------------------------------
# canonical forms (small graphs)


def _refine(adj: Sequence[frozenset[int]], colours: list[int]) -> list[int]:
    n = len(colours)
    while True:
        sigs = [
            (colours[v], tuple(sorted(colours[u] for u in adj[v]))) for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if new == colours:
            return colours
        colours = new


def _form_bytes(g: Graph, order: Sequence[int]) -> bytes:
    pos = {v: i for i, v in enumerate(order)}
    relabelled = Graph.from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges])
    return emit_graph6(relabelled).encode("ascii")


def canonical_form(g: Graph) -> bytes:
    """Canonical byte string: equal iff isomorphic (n <= 12).

    Colour refinement plus individualisation search; the result is the graph6
    encoding of the canonical labelling, so it doubles as a catalog key.
    """
    if g.n > CANONICAL_FORM_MAX_VERTICES:
        raise PreconditionError(
            f"canonical_form limited to {CANONICAL_FORM_MAX_VERTICES} vertices, got {g.n}"
        )
    if g.m == 0 or g.m == g.n * (g.n - 1) // 2:
        # empty/complete: every labelling yields the same form
        return _form_bytes(g, range(g.n))
    adj = g.adjacency
    best: list[bytes | None] = [None]

    def search(colours: list[int]) -> None:
        colours = _refine(adj, colours)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            order = [v for _, v in sorted((c, v) for v, c in enumerate(colours))]
            form = _form_bytes(g, order)
            if best[0] is None or form < best[0]:
                best[0] = form
            return
        for v in cells[target]:
            branched = [c * 2 + (0 if u == v else 1) for u, c in enumerate(colours)]
            search(branched)

    search([0] * g.n)
    assert best[0] is not None
    return best[0]


def canonical_graph(g: Graph) -> Graph:
    """The canonically labelled copy of g (n <= 12)."""
    return parse_graph6(canonical_form(g).decode("ascii"))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g) == canonical_form(h)

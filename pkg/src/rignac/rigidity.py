"""(2,3)-sparsity pebble game, rigid components, and structural recognizers.

The rank of a graph is the size of a maximum (2,3)-sparse edge subset, which
the pebble game computes deterministically.  A graph on n >= 2 vertices is
rigid iff its rank is 2n-3, and minimally rigid iff additionally m = 2n-3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Optional

from .graph import (
    CANONICAL_FORM_MAX_VERTICES,
    Graph,
    PreconditionError,
    canonical_form,
    connected_components,
    induced_subgraph,
    is_connected,
)


class PebbleState:
    """Mutable (2,3) pebble game state: 2 pebbles per vertex, 4 to accept an edge.

    Single-owner; not safe for concurrent mutation.
    """

    __slots__ = ("n", "pebbles", "out", "accepted")

    def __init__(self, n: int) -> None:
        self.n = n
        self.pebbles = [2] * n
        self.out: list[set[int]] = [set() for _ in range(n)]
        self.accepted: list[tuple[int, int]] = []

    def _gather(self, target: int, protect: int) -> bool:
        """Move one pebble to `target` by reversing a directed path, if possible.

        The search never visits `protect`, so its pebbles stay untouched.
        """
        prev: dict[int, int] = {target: -1}
        stack = [target]
        while stack:
            x = stack.pop()
            for y in sorted(self.out[x]):
                if y in prev or y == protect:
                    continue
                prev[y] = x
                if self.pebbles[y] > 0:
                    self.pebbles[y] -= 1
                    self.pebbles[target] += 1
                    while y != target:
                        x2 = prev[y]
                        self.out[x2].remove(y)
                        self.out[y].add(x2)
                        y = x2
                    return True
                stack.append(y)
        return False

    def _collect(self, u: int, v: int) -> bool:
        while self.pebbles[u] < 2:
            if not self._gather(u, v):
                break
        while self.pebbles[v] < 2:
            if not self._gather(v, u):
                break
        return self.pebbles[u] + self.pebbles[v] >= 4

    def try_accept(self, u: int, v: int) -> bool:
        """Accept edge (u,v) into the sparse set if independent."""
        if self._collect(u, v):
            self.pebbles[u] -= 1
            self.out[u].add(v)
            self.accepted.append((u, v))
            return True
        return False

    def probe(self, u: int, v: int) -> bool:
        """Would (u,v) be accepted?  Reorients but never consumes pebbles."""
        return self._collect(u, v)


def _play(g: Graph) -> PebbleState:
    state = PebbleState(g.n)
    for u, v in g.edges:
        state.try_accept(u, v)
    return state


def rank(g: Graph) -> int:
    """Maximum (2,3)-sparse edge subset size."""
    if g.n < 2:
        raise PreconditionError("rank requires at least two vertices")
    return len(_play(g).accepted)


@dataclass(frozen=True)
class RigidityReport:
    rank: int
    rigid_components: tuple[frozenset[int], ...]
    is_rigid: bool
    is_minimally_rigid: bool
    is_flexible: bool

    @property
    def component_count(self) -> int:
        return len(self.rigid_components)


def _related_pairs(g: Graph, state: PebbleState) -> set[tuple[int, int]]:
    """Pairs (u,v), u<v, lying in a common rigid component.

    Adjacent pairs qualify; a nonadjacent pair qualifies iff adding the edge
    would not raise the rank, i.e. the pebble probe fails.
    """
    related = set(g.edges)
    for u, v in combinations(range(g.n), 2):
        if (u, v) in related:
            continue
        if not state.probe(u, v):
            related.add((u, v))
    return related


def rigidly_related_pairs(g: Graph) -> set[tuple[int, int]]:
    """All pairs (u,v), u<v, sharing a rigid component (includes every edge)."""
    if g.n < 2:
        return set()
    return _related_pairs(g, _play(g))


def rigidity_report(g: Graph) -> RigidityReport:
    """Rank, rigid components (ordered by smallest contained edge index), verdicts."""
    if g.n < 1:
        raise PreconditionError("rigidity_report requires at least one vertex")
    if g.n == 1:
        return RigidityReport(0, (), True, False, False)
    state = _play(g)
    rk = len(state.accepted)
    target = 2 * g.n - 3
    related = _related_pairs(g, state)

    def rel(a: int, b: int) -> bool:
        return a == b or ((a, b) in related if a < b else (b, a) in related)

    comps: list[frozenset[int]] = []
    assigned = [False] * g.m
    for i, (u, v) in enumerate(g.edges):
        if assigned[i]:
            continue
        comp = frozenset(w for w in range(g.n) if rel(w, u) and rel(w, v))
        comps.append(comp)
        for j in range(i, g.m):
            a, b = g.edges[j]
            if a in comp and b in comp:
                assigned[j] = True
    is_rigid = rk == target
    return RigidityReport(
        rank=rk,
        rigid_components=tuple(comps),
        is_rigid=is_rigid,
        is_minimally_rigid=is_rigid and g.m == target,
        is_flexible=not is_rigid,
    )


# ---------------------------------------------------------------------------
# 2-trees and extensions


def two_tree_peel(g: Graph) -> Optional[list[int]]:
    """Peel order certifying g is a 2-tree, or None.

    Greedily removes any degree-2 vertex with adjacent neighbours; greedy
    order is complete for 2-tree recognition.
    """
    if g.n < 2:
        return None
    adj = [set(s) for s in g.adjacency]
    alive = set(range(g.n))
    order: list[int] = []
    while len(alive) > 2:
        pick = -1
        for v in sorted(alive):
            if len(adj[v]) == 2:
                a, b = adj[v]
                if b in adj[a]:
                    pick = v
                    break
        if pick < 0:
            return None
        for w in adj[pick]:
            adj[w].discard(pick)
        adj[pick].clear()
        alive.discard(pick)
        order.append(pick)
    a, b = sorted(alive)
    if b in adj[a]:
        return order
    return None


def is_2tree(g: Graph) -> bool:
    return two_tree_peel(g) is not None


def zero_extend(g: Graph, u: int, v: int) -> tuple[Graph, bool]:
    """Add a degree-2 vertex adjacent to u and v; open iff uv is a non-edge."""
    if u == v:
        raise PreconditionError("0-extension endpoints must be distinct")
    for w in (u, v):
        if not 0 <= w < g.n:
            raise ValueError(f"vertex {w} out of range")
    is_open = not g.has_edge(u, v)
    new = g.n
    return Graph.from_edges(g.n + 1, list(g.edges) + [(u, new), (v, new)]), is_open


def vertex_split(g: Graph, v: int, n1: Iterable[int], n2: Iterable[int]) -> Graph:
    """Split v into adjacent v1=v and v2=n with neighbourhoods N1, N2.

    Requires N1 u N2 = N(v) and |N1 n N2| = 1.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    s1, s2 = frozenset(n1), frozenset(n2)
    nbrs = g.adjacency[v]
    if s1 | s2 != nbrs:
        raise PreconditionError("N1 u N2 must equal the neighbourhood of v")
    if len(s1 & s2) != 1:
        raise PreconditionError("N1 and N2 must share exactly one vertex")
    v2 = g.n
    edges = [(a, b) for a, b in g.edges if a != v and b != v]
    edges += [(v, x) for x in s1]
    edges += [(v2, x) for x in s2]
    edges.append((v, v2))
    return Graph.from_edges(g.n + 1, edges)


# ---------------------------------------------------------------------------
# the stable-cut-free family: recognition and certificates


@dataclass(frozen=True)
class GscStep:
    """One gluing step.

    For prism pieces glued along an edge, `layout` records whether the glue
    edge lies on a prism triangle or on the matching; the two cases build
    different graphs.  With layout "triangle" and new (p,q,r,t): triangles
    (a,b,p) and (q,r,t), matching a-q, b-r, p-t.  With layout "matching" and
    new (x,y,xx,yy): triangles (a,x,y) and (b,xx,yy), matching x-xx, y-yy.
    """

    piece: str  # "triangle" or "prism"
    glue_type: str  # "edge" or "triangle"
    glue_at: tuple[int, ...]
    new_vertices: tuple[int, ...]
    layout: Optional[str] = None


@dataclass(frozen=True)
class GscDecomposition:
    """Build script: K2 base, then triangle/prism gluings, in original vertex ids."""

    base_vertices: tuple[int, int]
    steps: tuple[GscStep, ...]

    @property
    def prism_count(self) -> int:
        return sum(1 for s in self.steps if s.piece == "prism")

    @property
    def depth(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        steps = []
        for s in self.steps:
            item = {
                "piece": s.piece,
                "glue": {"type": s.glue_type, "at": list(s.glue_at)},
                "new": list(s.new_vertices),
            }
            if s.layout is not None:
                item["layout"] = s.layout
            steps.append(item)
        return {
            "base": "K2",
            "base_vertices": list(self.base_vertices),
            "steps": steps,
            "prisms": self.prism_count,
        }

    def replay(self) -> Graph:
        """Rebuild the graph described by the script."""
        verts = set(self.base_vertices)
        edges = {tuple(sorted(self.base_vertices))}

        def add(a: int, b: int) -> None:
            edges.add((min(a, b), max(a, b)))

        for s in self.steps:
            if any(w in verts for w in s.new_vertices):
                raise ValueError("step reuses an existing vertex id")
            if not all(w in verts for w in s.glue_at):
                raise ValueError(f"glue site {s.glue_at} not present yet")
            if s.piece == "triangle":
                (a, b), (w,) = s.glue_at, s.new_vertices
                add(a, w)
                add(b, w)
            elif s.glue_type == "triangle":
                a, b, c = s.glue_at
                p, q, r = s.new_vertices
                for x, y in ((p, q), (q, r), (p, r), (a, p), (b, q), (c, r)):
                    add(x, y)
            elif s.layout == "matching":
                a, b = s.glue_at
                x, y, xx, yy = s.new_vertices
                for p, q in ((a, x), (a, y), (x, y), (b, xx), (b, yy), (xx, yy), (x, xx), (y, yy), (a, b)):
                    add(p, q)
            else:
                a, b = s.glue_at
                p, q, r, t = s.new_vertices
                for x, y in ((a, b), (a, p), (b, p), (q, r), (r, t), (q, t), (a, q), (b, r), (p, t)):
                    add(x, y)
            verts.update(s.new_vertices)
        ids = sorted(verts)
        pos = {v: i for i, v in enumerate(ids)}
        return Graph.from_edges(len(ids), [(pos[a], pos[b]) for a, b in edges])


@dataclass(frozen=True)
class GscNonMembership:
    reason: str  # "edge count" or "stable cut"
    stable_cut: Optional[frozenset[int]] = None


def _triangles(adj: list[frozenset[int]], verts: Iterable[int]) -> list[tuple[int, int, int]]:
    vs = sorted(verts)
    out = []
    for a in vs:
        for b in sorted(adj[a]):
            if b <= a:
                continue
            for c in sorted(adj[a] & adj[b]):
                if c > b:
                    out.append((a, b, c))
    return out


def _prisms_in(adj: list[frozenset[int]], verts: set[int]) -> list[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Prism subgraphs as (triangle1, matched triangle2): vertex i of t1 matched to i of t2."""
    tris = _triangles(adj, verts)
    out = []
    for i, t1 in enumerate(tris):
        for t2 in tris[i + 1 :]:
            if set(t1) & set(t2):
                continue
            for perm in permutations(t2):
                if all(perm[k] in adj[t1[k]] for k in range(3)):
                    out.append((t1, perm))
    return out


def count_prism_subgraphs(g: Graph) -> int:
    """Number of distinct 3-prism subgraphs (as 9-edge sets) of g."""
    seen = set()
    for t1, t2 in _prisms_in(list(g.adjacency), set(range(g.n))):
        edges = set()
        for k in range(3):
            a, b = t1[k], t1[(k + 1) % 3]
            edges.add((min(a, b), max(a, b)))
            a, b = t2[k], t2[(k + 1) % 3]
            edges.add((min(a, b), max(a, b)))
            a, b = t1[k], t2[k]
            edges.add((min(a, b), max(a, b)))
        seen.add(frozenset(edges))
    return len(seen)


def recognize_gsc(g: Graph):
    """Decide membership in the triangle/prism gluing family.

    Returns a GscDecomposition on success, else GscNonMembership carrying a
    witness stable cut (which must exist when the edge count matches).
    Backtracking peel with memoisation; per-instance certification is by
    replaying the decomposition.
    """
    if g.n < 2:
        raise PreconditionError("recognize_gsc requires at least two vertices")
    if not is_connected(g):
        raise PreconditionError("recognize_gsc requires a connected graph")
    if g.m != 2 * g.n - 3:
        return GscNonMembership("edge count")

    adj_full = list(g.adjacency)
    failed: set[frozenset[int]] = set()
    failed_canon: set[bytes] = set()

    def live_adj(verts: set[int]) -> list[frozenset[int]]:
        return [adj_full[v] & frozenset(verts) if v in verts else frozenset() for v in range(g.n)]

    def search(verts: set[int]) -> Optional[list[GscStep]]:
        if len(verts) == 2:
            return []
        key = frozenset(verts)
        if key in failed:
            return None
        ckey = None
        if len(verts) <= CANONICAL_FORM_MAX_VERTICES:
            sub, _ = induced_subgraph(g, verts)
            ckey = canonical_form(sub)
            if ckey in failed_canon:
                failed.add(key)
                return None
        adj = live_adj(verts)
        moves: list[GscStep] = []
        for w in sorted(verts):
            if len(adj[w]) == 2:
                a, b = sorted(adj[w])
                if b in adj[a]:
                    moves.append(GscStep("triangle", "edge", (a, b), (w,)))
        for t1, t2 in _prisms_in(adj, verts):
            # prism glued along a triangle: one face is internal (degree 3), other stays
            for face, kept in ((t1, t2), (t2, t1)):
                if all(len(adj[x]) == 3 for x in face):
                    kt = tuple(sorted(kept))
                    order = {kept[k]: face[k] for k in range(3)}
                    moves.append(
                        GscStep("prism", "triangle", kt, tuple(order[x] for x in kt))
                    )
            # prism glued along one of its triangle edges
            for face, other in ((t1, t2), (t2, t1)):
                partner = {face[k]: other[k] for k in range(3)}
                for i, j in ((0, 1), (1, 2), (0, 2)):
                    a, b = face[i], face[j]
                    if a > b:
                        a, b = b, a
                    (p,) = set(face) - {a, b}
                    new = (p, partner[a], partner[b], partner[p])
                    if all(len(adj[x]) == 3 for x in new):
                        moves.append(GscStep("prism", "edge", (a, b), new, "triangle"))
            # prism glued along one of its matching edges
            for k in range(3):
                a, b = t1[k], t2[k]
                fa = tuple(x for x in t1 if x != a)
                fb = tuple(t2[(t1.index(x))] for x in fa)
                if a > b:
                    a, b = b, a
                    fa, fb = fb, fa
                new = (fa[0], fa[1], fb[0], fb[1])
                if all(len(adj[x]) == 3 for x in new):
                    moves.append(GscStep("prism", "edge", (a, b), new, "matching"))
        seen_moves = set()
        for mv in moves:
            mkey = (mv.piece, mv.glue_type, mv.glue_at, tuple(sorted(mv.new_vertices)), mv.layout)
            if mkey in seen_moves:
                continue
            seen_moves.add(mkey)
            sub = search(verts - set(mv.new_vertices))
            if sub is not None:
                sub.append(mv)
                return sub
        failed.add(key)
        if ckey is not None:
            failed_canon.add(ckey)
        return None

    steps = search(set(range(g.n)))
    if steps is None:
        from .stable_cut import exhaustive_stable_cut

        witness = exhaustive_stable_cut(g)
        if witness is None:
            raise RuntimeError("peel failed but no stable cut exists; recognizer is incomplete")
        return GscNonMembership("stable cut", witness.cut)

    remaining = set(range(g.n))
    for s in steps:
        remaining -= set(s.new_vertices)
    a, b = sorted(remaining)
    return GscDecomposition((a, b), tuple(steps))


# ---------------------------------------------------------------------------
# 0-extension graphs


def recognize_0extension_graph(g: Graph) -> tuple[bool, Optional[int]]:
    """Is g buildable from an edge by 0-extensions; if so, the minimum number
    of open steps over all construction orders (memoised full search)."""
    if g.n < 2:
        return (False, None)
    if g.n == 2:
        return (g.m == 1, 0 if g.m == 1 else None)
    if g.m != 2 * g.n - 3 or not is_connected(g):
        return (False, None)

    adj_full = list(g.adjacency)
    memo: dict[frozenset[int], Optional[int]] = {}
    memo_canon: dict[bytes, Optional[int]] = {}

    def search(verts: frozenset[int]) -> Optional[int]:
        if len(verts) == 2:
            return 0
        if verts in memo:
            return memo[verts]
        ckey = None
        if len(verts) <= CANONICAL_FORM_MAX_VERTICES:
            sub, _ = induced_subgraph(g, verts)
            ckey = canonical_form(sub)
            if ckey in memo_canon:
                memo[verts] = memo_canon[ckey]
                return memo_canon[ckey]
        best: Optional[int] = None
        for w in sorted(verts):
            nbrs = adj_full[w] & verts
            if len(nbrs) != 2:
                continue
            a, b = sorted(nbrs)
            cost = 0 if b in adj_full[a] else 1
            sub_open = search(verts - {w})
            if sub_open is not None and (best is None or cost + sub_open < best):
                best = cost + sub_open
                if best == 0:
                    break
        memo[verts] = best
        if ckey is not None:
            memo_canon[ckey] = best
        return best

    result = search(frozenset(range(g.n)))
    return (result is not None, result)

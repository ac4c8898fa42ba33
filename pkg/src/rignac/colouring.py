"""NAC- and NAP-colourings: validation, construction, enumeration, counting.

A NAC-colouring is a surjective red/blue edge colouring with no almost
monochromatic cycle; equivalently no edge of one colour joins two vertices of
a single component of the other colour.  Counts are reported modulo the
colour-swap involution.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Optional

from .graph import (
    Graph,
    PreconditionError,
    Separation,
    blocks,
    connected_components,
    induced_subgraph,
    is_cut,
    is_stable_set,
)

RED = 1
BLUE = 0


@dataclass(frozen=True)
class EdgeColouring:
    """Total red/blue assignment: bit i of `mask` set means edge i is red."""

    m: int
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask < (1 << self.m):
            raise ValueError("colour mask out of range for edge count")

    @classmethod
    def from_red_edges(cls, m: int, red: Iterable[int]) -> "EdgeColouring":
        mask = 0
        for i in red:
            if not 0 <= i < m:
                raise ValueError(f"edge index {i} out of range")
            mask |= 1 << i
        return cls(m, mask)

    def is_red(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def red_edges(self) -> list[int]:
        return [i for i in range(self.m) if self.mask >> i & 1]

    def blue_edges(self) -> list[int]:
        return [i for i in range(self.m) if not self.mask >> i & 1]

    def complement(self) -> "EdgeColouring":
        return EdgeColouring(self.m, self.mask ^ ((1 << self.m) - 1))

    def is_surjective(self) -> bool:
        return 0 < self.mask < (1 << self.m) - 1

    def to_json(self) -> dict:
        return {"red": self.red_edges(), "blue": self.blue_edges()}


def _check_length(g: Graph, c: EdgeColouring) -> None:
    if c.m != g.m:
        raise ValueError(f"colouring length {c.m} does not match edge count {g.m}")


def _colour_components(g: Graph, edge_ids: Iterable[int]) -> list[int]:
    """Component label per vertex for the subgraph on the given edges."""
    label = list(range(g.n))

    def find(x: int) -> int:
        while label[x] != x:
            label[x] = label[label[x]]
            x = label[x]
        return x

    for i in edge_ids:
        u, v = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            label[rv] = ru
    return [find(v) for v in range(g.n)]


def is_nac(g: Graph, c: EdgeColouring) -> bool:
    """Surjective and no edge of one colour joins one component of the other."""
    _check_length(g, c)
    if not c.is_surjective():
        return False
    red = c.red_edges()
    blue = c.blue_edges()
    red_comp = _colour_components(g, red)
    for i in blue:
        u, v = g.edges[i]
        if red_comp[u] == red_comp[v]:
            return False
    blue_comp = _colour_components(g, blue)
    for i in red:
        u, v = g.edges[i]
        if blue_comp[u] == blue_comp[v]:
            return False
    return True


def is_nap(g: Graph, c: EdgeColouring) -> bool:
    """Surjective, all triangles monochromatic, no alternating 3-edge path.

    Equivalent endvertex criterion: every edge has an endpoint all of whose
    incident edges share one colour.
    """
    _check_length(g, c)
    if not c.is_surjective():
        return False
    sees = [0] * g.n  # bit 1: incident red, bit 2: incident blue
    for i, (u, v) in enumerate(g.edges):
        b = 1 if c.is_red(i) else 2
        sees[u] |= b
        sees[v] |= b
    for u, v in g.edges:
        if sees[u] == 3 and sees[v] == 3:
            return False
    return True


def nap_from_separation(g: Graph, sep: Separation) -> EdgeColouring:
    """Colour side 1 red and side 2 blue; valid for stable separations."""
    sep.validate(g)
    if not sep.is_stable(g):
        raise PreconditionError("separation is not stable")
    return EdgeColouring.from_red_edges(g.m, sep.edge_set1)


def separation_from_nap(g: Graph, c: EdgeColouring) -> Separation:
    """The red/blue edge bipartition of a NAP-colouring, as a stable separation."""
    _check_length(g, c)
    for v in range(g.n):
        if not g.adjacency[v]:
            raise PreconditionError(f"isolated vertex {v}")
    if not is_nap(g, c):
        raise PreconditionError("colouring is not a NAP-colouring")
    return Separation(frozenset(c.red_edges()), frozenset(c.blue_edges()))


def separation_from_stable_cut(g: Graph, cut: Iterable[int]) -> Separation:
    """Stable separation splitting the edges at a stable cut of a connected graph."""
    s = frozenset(cut)
    if not is_stable_set(g, s):
        raise PreconditionError("cut is not a stable set")
    if not is_cut(g, s):
        raise PreconditionError("set does not disconnect the graph")
    comps = [comp for comp in connected_components_without(g, s)]
    first = comps[0]
    e1 = frozenset(i for i, (u, v) in enumerate(g.edges) if u in first or v in first)
    e2 = frozenset(range(g.m)) - e1
    return Separation(e1, e2)


def connected_components_without(g: Graph, removed: frozenset[int]) -> list[frozenset[int]]:
    sub, ids = induced_subgraph(g, (v for v in range(g.n) if v not in removed))
    return [frozenset(ids[v] for v in comp) for comp in connected_components(sub)]


# ---------------------------------------------------------------------------
# the incremental partial-colouring state


class PartialNacState:
    """Two union-find forests (red and blue components) with trail-based undo.

    Union by size, iterative find, no path compression, so a rollback
    restores the exact prior forest.  Per colour and per component root a
    list of other-coloured edge indices incident to that component is kept;
    it is what makes the almost-monochromatic-cycle test O(small) under
    unions.  Component counts never reach the component count of the graph
    itself (that would force a monochromatic spanning forest); equality
    triggers rejection.
    """

    __slots__ = ("g", "base", "parent", "size", "cross", "counts", "colours", "trail")

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.base = len(connected_components(g))
        self.parent = (list(range(g.n)), list(range(g.n)))
        self.size = ([1] * g.n, [1] * g.n)
        self.cross: tuple[list[list[int]], list[list[int]]] = (
            [[] for _ in range(g.n)],
            [[] for _ in range(g.n)],
        )
        self.counts = [g.n, g.n]
        self.colours = [-1] * g.m
        self.trail: list[tuple] = []

    def find(self, colour: int, x: int) -> int:
        p = self.parent[colour]
        while p[x] != x:
            x = p[x]
        return x

    def red_component_count(self) -> int:
        return self.counts[RED]

    def blue_component_count(self) -> int:
        return self.counts[BLUE]

    def try_colour(self, i: int, red: bool) -> bool:
        """Colour edge i; reject (committing nothing) if an invariant breaks."""
        mine = RED if red else BLUE
        other = 1 - mine
        u, v = self.g.edges[i]
        ou, ov = self.find(other, u), self.find(other, v)
        if ou == ov:
            return False  # almost cycle in the other colour through edge i
        mu, mv = self.find(mine, u), self.find(mine, v)
        union_rec = None
        if mu != mv:
            la, lb = self.cross[mine][mu], self.cross[mine][mv]
            scan = la if len(la) <= len(lb) else lb
            for j in scan:
                a, b = self.g.edges[j]
                ra, rb = self.find(mine, a), self.find(mine, b)
                if (ra == mu and rb == mv) or (ra == mv and rb == mu):
                    return False  # merging would trap an other-coloured edge
            if self.counts[mine] - 1 == self.base:
                return False  # monochromatic spanning forest
            if self.size[mine][mu] < self.size[mine][mv]:
                mu, mv = mv, mu
            self.parent[mine][mv] = mu
            self.size[mine][mu] += self.size[mine][mv]
            old_len = len(self.cross[mine][mu])
            self.cross[mine][mu].extend(self.cross[mine][mv])
            self.counts[mine] -= 1
            union_rec = (mine, mu, mv, old_len)
        self.cross[other][ou].append(i)
        self.cross[other][ov].append(i)
        self.colours[i] = mine
        self.trail.append((i, other, ou, ov, union_rec))
        return True

    def undo_last(self) -> None:
        i, other, ou, ov, union_rec = self.trail.pop()
        self.colours[i] = -1
        self.cross[other][ov].pop()
        self.cross[other][ou].pop()
        if union_rec is not None:
            colour, win, lose, old_len = union_rec
            del self.cross[colour][win][old_len:]
            self.size[colour][win] -= self.size[colour][lose]
            self.parent[colour][lose] = lose
            self.counts[colour] += 1

    def checkpoint(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.undo_last()

    def mask(self) -> int:
        out = 0
        for i, c in enumerate(self.colours):
            if c == RED:
                out |= 1 << i
        return out


# ---------------------------------------------------------------------------
# enumeration engine


def canonical_edge_order(g: Graph) -> list[int]:
    return list(range(g.m))


def cycle_closing_edge_order(g: Graph) -> list[int]:
    """Heuristic order: starts at edge 0, prefers edges closing cycles early."""
    visited: set[int] = set(g.edges[0]) if g.m else set()
    order = [0] if g.m else []
    remaining = set(range(1, g.m))
    while remaining:
        best = None
        for i in sorted(remaining):
            u, v = g.edges[i]
            k = (u in visited) + (v in visited)
            cand = (-k, i)
            if best is None or cand < best:
                best = cand
        i = best[1]
        order.append(i)
        remaining.remove(i)
        visited.update(g.edges[i])
    return order


def _dfs(
    g: Graph,
    order: list[int],
    start_depth: int,
    state: PartialNacState,
    sink: Optional[Callable[[EdgeColouring], None]],
    first_only: bool,
    stop_depth: Optional[int] = None,
    prefix_sink: Optional[Callable[[tuple[int, ...]], None]] = None,
) -> tuple[int, int]:
    """Iterative DFS from `start_depth`; returns (leaves, nodes).

    Colours are tried red first, then blue; depth 0 is pinned blue.  When
    `stop_depth` is set, paths are cut there and handed to `prefix_sink`
    instead of being counted.
    """
    m = len(order)
    limit = m if stop_depth is None else stop_depth
    count = 0
    nodes = 0
    tried = [0] * (limit + 1)
    marks = [0] * (limit + 1)
    chosen = [BLUE] * (limit + 1)
    d = start_depth
    if d >= limit:
        raise ValueError("start depth beyond stop depth")
    tried[d] = 0
    marks[d] = state.checkpoint()
    while d >= start_depth:
        if d == limit:
            if stop_depth is not None:
                prefix_sink(tuple(chosen[start_depth:limit]))
            else:
                count += 1
                if sink is not None:
                    sink(EdgeColouring(g.m, state.mask()))
                if first_only:
                    state.rollback(marks[start_depth])
                    return count, nodes
            d -= 1
            continue
        t = tried[d]
        if order[d] == 0:  # pinned edge: blue only
            nxt = BLUE if not t & 2 else None
        elif not t & 1:
            nxt = RED
        elif not t & 2:
            nxt = BLUE
        else:
            nxt = None
        if nxt is None:
            state.rollback(marks[d])
            d -= 1
            continue
        tried[d] = t | (2 if nxt == BLUE else 1)
        state.rollback(marks[d])
        nodes += 1
        if state.try_colour(order[d], nxt == RED):
            chosen[d] = nxt
            d += 1
            if d <= limit:
                tried[d] = 0
                marks[d] = state.checkpoint()
    return count, nodes


def _replay_prefix(state: PartialNacState, order: list[int], prefix: tuple[int, ...]) -> None:
    for d, colour in enumerate(prefix):
        ok = state.try_colour(order[d], colour == RED)
        if not ok:
            raise RuntimeError("prefix replay failed; split is inconsistent")


def _subtree_job(args) -> tuple[int, int, list[int]]:
    g, order, prefix, want_masks = args
    state = PartialNacState(g)
    _replay_prefix(state, order, prefix)
    masks: list[int] = []
    sink = (lambda c: masks.append(c.mask)) if want_masks else None
    count, nodes = _dfs(g, order, len(prefix), state, sink, False)
    return count, nodes, masks


def _split_prefixes(g: Graph, order: list[int], target: int) -> tuple[list[tuple[int, ...]], int]:
    depth = 1
    prefixes: list[tuple[int, ...]] = []
    nodes = 0
    while depth < g.m - 1:
        prefixes = []
        state = PartialNacState(g)
        _, spent = _dfs(g, order, 0, state, None, False, stop_depth=depth, prefix_sink=prefixes.append)
        nodes += spent
        if len(prefixes) >= target or depth >= g.m - 2:
            break
        depth += 1
    return prefixes, nodes


def enumerate_nac(
    g: Graph,
    on_found: Optional[Callable[[EdgeColouring], None]] = None,
    *,
    first_only: bool = False,
    workers: int = 1,
    heuristic_order: bool = False,
) -> int:
    """Exact count of NAC colour classes; optionally emits one witness per class.

    Edge 0 is pinned blue, so every class is seen exactly once and the
    returned count is already the half-count.  Emission order is the DFS
    (red-before-blue) order over the processing sequence; the count is
    invariant under edge order and worker count.
    """
    count, _nodes, _ms = enumerate_nac_detailed(
        g, on_found, first_only=first_only, workers=workers, heuristic_order=heuristic_order
    )
    return count


def enumerate_nac_detailed(
    g: Graph,
    on_found: Optional[Callable[[EdgeColouring], None]] = None,
    *,
    first_only: bool = False,
    workers: int = 1,
    heuristic_order: bool = False,
) -> tuple[int, int, float]:
    """enumerate_nac plus (search nodes, elapsed milliseconds)."""
    if g.m < 1:
        raise PreconditionError("enumeration requires at least one edge")
    start = time.perf_counter()
    order = cycle_closing_edge_order(g) if heuristic_order else canonical_edge_order(g)
    if workers <= 1 or first_only or g.m < 6:
        state = PartialNacState(g)
        count, nodes = _dfs(g, order, 0, state, on_found, first_only)
        return count, nodes, (time.perf_counter() - start) * 1000.0
    from concurrent.futures import ProcessPoolExecutor

    prefixes, nodes = _split_prefixes(g, order, 8 * workers)
    want_masks = on_found is not None
    jobs = [(g, order, p, want_masks) for p in prefixes]
    total = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for cnt, nds, masks in pool.map(_subtree_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))):
            total += cnt
            nodes += nds
            if on_found is not None:
                for mask in masks:
                    on_found(EdgeColouring(g.m, mask))
    return total, nodes, (time.perf_counter() - start) * 1000.0


def default_workers() -> int:
    env = os.environ.get("RIGNAC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# counting


def count_nac(g: Graph) -> int:
    """nnac via block decomposition: half the product of (2*nnac(block)+2), minus 1.

    Isolated vertices do not affect the count and are dropped before the
    block decomposition.
    """
    if g.m < 1:
        raise PreconditionError("count requires at least one edge")
    core, _ = induced_subgraph(g, (v for v in range(g.n) if g.adjacency[v]))
    product = 1
    for block in blocks(core):
        verts = {v for i in block for v in core.edges[i]}
        sub, _ = induced_subgraph(core, verts)
        product *= 2 * enumerate_nac(sub) + 2
    return product // 2 - 1


def nnac_upper_bound(n: int) -> int:
    """Exact evaluation of the binomial colouring-count bound."""
    if n < 2:
        raise PreconditionError("bound requires at least two vertices")
    return comb(2 * n - 4, n - 2) // 2


def count_nac_complete_bipartite(n1: int, n2: int) -> int:
    if n1 < 1 or n2 < 1:
        raise PreconditionError("parts must be nonempty")
    return 2 ** (n1 + n2 - 2) - 1


# ---------------------------------------------------------------------------
# constructive colouring for minimally rigid graphs


@dataclass(frozen=True)
class TwoTreeCertificate:
    """Witness that no NAC-colouring exists: a triangle peel order to K2."""

    peel_order: tuple[int, ...]


def _prism_step_coloured_edges(step) -> tuple[list[tuple[int, int]], list[tuple[int, int]], int]:
    """(blue edges, red edges, glue-site colour) for a prism gluing step.

    Both prism triangles are blue and the matching is red; the glue site's
    colour follows from where it sits in the prism.
    """

    def e(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    if step.glue_type == "triangle":
        a, b, c = step.glue_at
        p, q, r = step.new_vertices
        blue = [e(a, b), e(b, c), e(a, c), e(p, q), e(q, r), e(p, r)]
        red = [e(a, p), e(b, q), e(c, r)]
        return blue, red, BLUE
    a, b = step.glue_at
    if step.layout == "matching":
        x, y, xx, yy = step.new_vertices
        blue = [e(a, x), e(a, y), e(x, y), e(b, xx), e(b, yy), e(xx, yy)]
        red = [e(a, b), e(x, xx), e(y, yy)]
        return blue, red, RED
    p, q, r, t = step.new_vertices
    blue = [e(a, b), e(a, p), e(b, p), e(q, r), e(r, t), e(q, t)]
    red = [e(a, q), e(b, r), e(p, t)]
    return blue, red, BLUE


def _colouring_from_decomposition(g: Graph, dec) -> EdgeColouring:
    """Replay a gluing certificate into a NAC-colouring.

    Triangle gluings copy the glue edge's colour; a prism gluing paints the
    whole existing graph in its glue site's colour and contributes its own
    two-triangles-blue, matching-red pattern.
    """
    colour: dict[tuple[int, int], int] = {}
    painted = False
    present: set[tuple[int, int]] = {tuple(sorted(dec.base_vertices))}

    def e(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    for step in dec.steps:
        if step.piece == "triangle":
            a, b = step.glue_at
            (w,) = step.new_vertices
            if painted:
                col = colour[e(a, b)]
                colour[e(a, w)] = col
                colour[e(b, w)] = col
            present.update((e(a, w), e(b, w)))
        else:
            blue, red, glue_colour = _prism_step_coloured_edges(step)
            for edge in present:
                colour[edge] = glue_colour
            for edge in blue:
                colour[edge] = BLUE
            for edge in red:
                colour[edge] = RED
            present.update(blue)
            present.update(red)
            painted = True
    if not painted:
        raise RuntimeError("decomposition has no prism step; graph is a 2-tree")
    red_ids = [g.edge_index[edge] for edge, col in colour.items() if col == RED]
    return EdgeColouring.from_red_edges(g.m, red_ids)


def construct_nac_minimally_rigid(g: Graph):
    """A NAC-colouring of a minimally rigid graph, or a 2-tree certificate.

    Tries stable-neighbourhood cuts first, then the gluing-family
    decomposition; a failed recognition hands back a witness stable cut,
    which also yields a colouring.
    """
    from .rigidity import GscNonMembership, recognize_gsc, rigidity_report, two_tree_peel
    from .stable_cut import exhaustive_stable_cut

    report = rigidity_report(g)
    if not report.is_minimally_rigid:
        raise PreconditionError("input graph is not minimally rigid")
    peel = two_tree_peel(g)
    if peel is not None:
        return TwoTreeCertificate(tuple(peel))
    for u in range(g.n):
        nbrs = g.adjacency[u]
        if is_stable_set(g, nbrs) and is_cut(g, nbrs):
            return nap_from_separation(g, separation_from_stable_cut(g, nbrs))
    small = exhaustive_stable_cut(g, max_per_rigid_component=1)
    if small is not None:
        return nap_from_separation(g, separation_from_stable_cut(g, small.cut))
    dec = recognize_gsc(g)
    if isinstance(dec, GscNonMembership):
        if dec.stable_cut is None:
            raise RuntimeError("non-membership without witness on a tight graph")
        return nap_from_separation(g, separation_from_stable_cut(g, dec.stable_cut))
    return _colouring_from_decomposition(g, dec)


# ---------------------------------------------------------------------------
# windowed condition on the ladder family


def ladder_edges(k: int) -> list[tuple[int, int]]:
    """Edge list of the 2k-vertex ladder with crossed rungs (a_i=2i-2, b_i=2i-1)."""
    edges = []
    for i in range(k - 1):
        a, b, a2, b2 = 2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3
        edges += [(a, a2), (b, b2), (a, b2), (b, a2)]
    return sorted(edges)


def locally_nac_check(gk_prime: Graph, c: EdgeColouring, k: int) -> bool:
    """Windowed almost-monochromatic-cycle check on three consecutive rungs."""
    if k < 1:
        raise PreconditionError("k must be positive")
    expected = ladder_edges(k)
    if gk_prime.n != 2 * k or list(gk_prime.edges) != expected:
        raise PreconditionError("graph is not the expected ladder fixture")
    _check_length(gk_prime, c)
    for i in range(k - 2):
        window = {2 * i + j for j in range(6)}
        ids = [j for j, (u, v) in enumerate(gk_prime.edges) if u in window and v in window]
        red = [j for j in ids if c.is_red(j)]
        blue = [j for j in ids if not c.is_red(j)]
        red_comp = _colour_components(gk_prime, red)
        if any(red_comp[gk_prime.edges[j][0]] == red_comp[gk_prime.edges[j][1]] for j in blue):
            return False
        blue_comp = _colour_components(gk_prime, blue)
        if any(blue_comp[gk_prime.edges[j][0]] == blue_comp[gk_prime.edges[j][1]] for j in red):
            return False
    return True

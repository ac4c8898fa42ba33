"""Stable cuts: the contraction algorithm for flexible graphs, the
avoid-a-vertex variant for 2-connected inputs, and exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .graph import (
    Graph,
    PreconditionError,
    blocks,
    connected_components,
    contract_edge,
    induced_subgraph,
    is_connected,
    is_cut,
    is_stable_set,
)
from .rigidity import rigidity_report, rigidly_related_pairs

EXHAUSTIVE_MAX_VERTICES = 24


@dataclass(frozen=True)
class StableCutResult:
    cut: frozenset[int]
    separated_pair: Optional[tuple[int, int]] = None
    avoided_vertex: Optional[int] = None


def _components_without(g: Graph, removed: frozenset[int]) -> list[frozenset[int]]:
    sub, ids = induced_subgraph(g, (v for v in range(g.n) if v not in removed))
    return [frozenset(ids[v] for v in comp) for comp in connected_components(sub)]


def _validate_result(g: Graph, result: StableCutResult) -> StableCutResult:
    """Re-validate independently of the search path; never trust the recursion."""
    if not is_stable_set(g, result.cut):
        raise RuntimeError(f"produced cut {sorted(result.cut)} is not stable")
    if not is_cut(g, result.cut):
        raise RuntimeError(f"produced set {sorted(result.cut)} does not disconnect the graph")
    if result.separated_pair is not None:
        u, v = result.separated_pair
        comps = _components_without(g, result.cut)
        cu = next(c for c in comps if u in c)
        if v in cu:
            raise RuntimeError(f"cut fails to separate {u} and {v}")
    if result.avoided_vertex is not None and result.avoided_vertex in result.cut:
        raise RuntimeError("cut contains the vertex it must avoid")
    return result


def _complete_components(g: Graph) -> tuple[Graph, set[tuple[int, int]]]:
    """Add the missing edges inside every rigid component."""
    related = rigidly_related_pairs(g)
    return Graph.from_edges(g.n, sorted(related)), related


def _alg1(g: Graph, u: int, v: int, stats: dict) -> frozenset[int]:
    """Recursive step on current labels; returns the cut in current labels."""
    stats["calls"] += 1
    stats["pair_probes"] += g.n * (g.n - 1) // 2
    comp, related = _complete_components(g)
    nbrs = sorted(comp.adjacency[u])
    stable = True
    tri: Optional[tuple[int, int]] = None
    for x1, x2 in combinations(nbrs, 2):
        if comp.has_edge(x1, x2):
            stable = False
            tri = (x1, x2)
            break
    if stable:
        return frozenset(nbrs)
    assert tri is not None
    for xi in tri:
        a, b = (u, xi) if u < xi else (xi, u)
        contracted, merged = contract_edge(comp, comp.edge_index[(a, b)])
        removed = max(u, xi)
        u2 = merged
        v2 = v - 1 if v > removed else v
        stats["pair_probes"] += contracted.n * (contracted.n - 1) // 2
        rel2 = rigidly_related_pairs(contracted)
        pair = (u2, v2) if u2 < v2 else (v2, u2)
        if pair not in rel2:
            cut2 = _alg1(contracted, u2, v2, stats)
            # lift back: ids >= removed shift up by one
            return frozenset(w + 1 if w >= removed else w for w in cut2)
    raise RuntimeError("neither contraction separates; flexibility invariant broken")


def algorithm1_stable_cut(
    g: Graph, u: int, v: int, stats: Optional[dict] = None
) -> StableCutResult:
    """Stable cut separating u and v in a connected flexible graph.

    Recursion: if the (component-completed) neighbourhood of u is stable it
    is the cut; otherwise contract one of two triangle edges at u, picking
    the contraction that keeps the merged vertex and v in different rigid
    components.
    """
    for w in (u, v):
        if not 0 <= w < g.n:
            raise ValueError(f"vertex {w} out of range")
    if u == v:
        raise PreconditionError("endpoints must be distinct")
    if not is_connected(g):
        raise PreconditionError("graph is not connected")
    report = rigidity_report(g)
    if not report.is_flexible:
        raise PreconditionError("graph is not flexible")
    pair = (u, v) if u < v else (v, u)
    if pair in rigidly_related_pairs(g):
        raise PreconditionError(f"{u} and {v} lie in a common rigid component")
    if stats is None:
        stats = {}
    stats.setdefault("calls", 0)
    stats.setdefault("pair_probes", 0)
    cut = _alg1(g, u, v, stats)
    return _validate_result(g, StableCutResult(cut=cut, separated_pair=(u, v)))


def is_biconnected(g: Graph) -> bool:
    if g.n < 3 or not is_connected(g):
        return False
    return len(blocks(g)) == 1


def stable_cut_avoiding(g: Graph, v: int) -> StableCutResult:
    """Stable cut avoiding v in a 2-connected flexible graph.

    Picks u sharing no rigid component with v (exists: otherwise v would be
    a cut vertex); the separating cut excludes both endpoints by definition.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if not is_biconnected(g):
        raise PreconditionError("graph is not 2-connected")
    report = rigidity_report(g)
    if not report.is_flexible:
        raise PreconditionError("graph is not flexible")
    related = rigidly_related_pairs(g)
    for u in range(g.n):
        if u == v:
            continue
        pair = (u, v) if u < v else (v, u)
        if pair in related:
            continue
        result = algorithm1_stable_cut(g, u, v)
        if v not in result.cut:
            return _validate_result(
                g,
                StableCutResult(cut=result.cut, separated_pair=(u, v), avoided_vertex=v),
            )
    raise RuntimeError("no partner vertex found; 2-connectivity invariant broken")


def exhaustive_stable_cut(
    g: Graph,
    separate: Optional[tuple[int, int]] = None,
    avoid: Optional[int] = None,
    max_per_rigid_component: Optional[int] = None,
) -> Optional[StableCutResult]:
    """Minimum-cardinality stable cut meeting the constraints, or None.

    Deterministic: lexicographically smallest among minimum size.  Documented
    exponential search, limited to 24 vertices.
    """
    if g.n > EXHAUSTIVE_MAX_VERTICES:
        raise PreconditionError(
            f"exhaustive search limited to {EXHAUSTIVE_MAX_VERTICES} vertices, got {g.n}"
        )
    comps_limit = None
    if max_per_rigid_component is not None:
        comps_limit = rigidity_report(g).rigid_components if g.n >= 2 else ()
    forbidden = set()
    if separate is not None:
        forbidden.update(separate)
    if avoid is not None:
        forbidden.add(avoid)
    for k in range(0, g.n - 1):
        for cand in combinations(range(g.n), k):
            s = frozenset(cand)
            if s & forbidden:
                continue
            if not is_stable_set(g, s):
                continue
            if comps_limit is not None and any(
                len(s & comp) > max_per_rigid_component for comp in comps_limit
            ):
                continue
            comps = _components_without(g, s)
            if len(comps) < 2:
                continue
            if separate is not None:
                u, v = separate
                cu = next(c for c in comps if u in c)
                if v in cu:
                    continue
            return StableCutResult(
                cut=s,
                separated_pair=separate,
                avoided_vertex=avoid,
            )
    return None

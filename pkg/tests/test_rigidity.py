from __future__ import annotations

import random

import pytest

from rignac.colouring import count_nac
from rignac.graph import Graph, PreconditionError, are_isomorphic, canonical_form, parse_graph6
from rignac.rigidity import (
    GscDecomposition,
    GscNonMembership,
    count_prism_subgraphs,
    is_2tree,
    rank,
    recognize_0extension_graph,
    recognize_gsc,
    rigidity_report,
    two_tree_peel,
    vertex_split,
    zero_extend,
)
from rignac.stable_cut import exhaustive_stable_cut
from rignac.constructions import make_2tree, make_complete_bipartite, make_gk, make_gsc

from oracles import (
    brute_max_sparse_subset,
    brute_rigid_components,
    generic_matrix_rank,
    random_connected_graph,
)


def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def k4():
    return Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def k4_minus_e():
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def bowtie():
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


class TestRank:
    def test_examples(self):
        assert rank(Graph.from_edges(2, [(0, 1)])) == 1
        assert rank(c4()) == 4
        assert rank(k4()) == 5

    def test_requires_two_vertices(self):
        with pytest.raises(PreconditionError):
            rank(Graph.from_edges(1, []))

    def test_matches_exhaustive_sparse_maximum(self, laman_keys):
        rnd = random.Random(2)
        corpus = [parse_graph6(k) for k in laman_keys[6]]
        for _ in range(40):
            n = rnd.randrange(3, 8)
            m = rnd.randrange(1, min(12, n * (n - 1) // 2) + 1)
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            corpus.append(Graph.from_edges(n, rnd.sample(pairs, m)))
        for g in corpus:
            assert rank(g) == brute_max_sparse_subset(g)

    def test_matches_generic_matrix_rank(self, laman_keys):
        rnd = random.Random(3)
        for _ in range(30):
            n = rnd.randrange(2, 10)
            m = rnd.randrange(0, n * (n - 1) // 2 + 1)
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            g = Graph.from_edges(n, rnd.sample(pairs, m))
            assert rank(g) == generic_matrix_rank(g)


class TestRigidityReport:
    def test_prism_rigid(self, fix):
        rep = rigidity_report(fix["prism"].graph)
        assert rep.is_rigid and rep.is_minimally_rigid and rep.rank == 9
        assert rep.component_count == 1

    def test_bowtie_flexible_two_components(self):
        rep = rigidity_report(bowtie())
        assert rep.is_flexible and rep.component_count == 2
        assert rep.rigid_components == (frozenset({0, 1, 2}), frozenset({2, 3, 4}))

    def test_c4_each_edge_own_component(self):
        rep = rigidity_report(c4())
        assert rep.component_count == 4
        assert all(len(c) == 2 for c in rep.rigid_components)

    def test_single_vertex_convention(self):
        rep = rigidity_report(Graph.from_edges(1, []))
        assert rep.is_rigid and not rep.is_minimally_rigid and not rep.is_flexible

    def test_components_match_brute_maximal_rigid_sets(self, laman_keys):
        rnd = random.Random(7)
        corpus = [parse_graph6(k) for k in laman_keys[6]] + [parse_graph6(k) for k in laman_keys[7][:15]]
        for _ in range(25):
            n = rnd.randrange(3, 8)
            g = random_connected_graph(rnd, n, rnd.randrange(n - 1, min(2 * n - 2, n * (n - 1) // 2) + 1))
            corpus.append(g)
        for g in corpus:
            got = set(rigidity_report(g).rigid_components)
            assert got == brute_rigid_components(g)

    def test_component_structure_invariants(self):
        rnd = random.Random(9)
        for _ in range(40):
            n = rnd.randrange(2, 10)
            m = rnd.randrange(1, n * (n - 1) // 2 + 1)
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            g = Graph.from_edges(n, rnd.sample(pairs, m))
            comps = rigidity_report(g).rigid_components
            for i, a in enumerate(comps):
                for b in comps[i + 1 :]:
                    assert len(a & b) <= 1
            owners = [sum(1 for c in comps if u in c and v in c) for u, v in g.edges]
            assert owners == [1] * g.m


class TestTwoTrees:
    def test_examples(self):
        assert is_2tree(Graph.from_edges(2, [(0, 1)]))
        assert not is_2tree(Graph.from_edges(1, []))
        assert is_2tree(k4_minus_e())
        assert not is_2tree(c4())

    def test_prism_not_2tree(self, fix):
        assert not is_2tree(fix["prism"].graph)

    def test_random_2trees_recognized_with_certificate(self):
        for seed in range(12):
            g = make_2tree(seed, 4 + seed % 6)
            peel = two_tree_peel(g)
            assert peel is not None and len(peel) == g.n - 2

    def test_catalog_link_no_nac_iff_2tree(self, catalog6):
        for entry in catalog6:
            assert entry.is_2tree == (entry.nnac == 0)


class TestExtensions:
    def test_zero_extend_examples(self):
        k2 = Graph.from_edges(2, [(0, 1)])
        tri, is_open = zero_extend(k2, 0, 1)
        assert tri.m == 3 and not is_open
        p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
        sq, is_open = zero_extend(p3, 0, 2)
        assert is_open and are_isomorphic(sq, c4())
        with pytest.raises(PreconditionError):
            zero_extend(k2, 1, 1)

    def test_zero_extension_preserves_minimal_rigidity(self, laman_keys):
        for key in laman_keys[5]:
            g = parse_graph6(key)
            for u in range(g.n):
                for v in range(u + 1, g.n):
                    child, _ = zero_extend(g, u, v)
                    assert rigidity_report(child).is_minimally_rigid

    def test_vertex_split_validation(self):
        tri = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(PreconditionError, match="share exactly one"):
            vertex_split(tri, 0, {1, 2}, {1, 2})
        with pytest.raises(PreconditionError, match="neighbourhood"):
            vertex_split(tri, 0, {1}, {1})

    def test_vertex_split_preserves_minimal_rigidity(self):
        g = k4_minus_e()
        # split at the degree-3 vertex 1 (neighbours 0, 2, 3)
        out = vertex_split(g, 1, {0, 2}, {2, 3})
        assert rigidity_report(out).is_minimally_rigid

    def test_split_then_contract_is_identity(self):
        g = k4_minus_e()
        out = vertex_split(g, 1, {0, 2}, {2, 3})
        from rignac.graph import contract_edge

        back, _ = contract_edge(out, out.edge_index[(1, 4)])
        assert canonical_form(back) == canonical_form(g)

    def test_vertex_split_on_minimally_rigid_corpus(self, laman_keys):
        from itertools import combinations

        for key in laman_keys[5]:
            g = parse_graph6(key)
            for v in range(g.n):
                nbrs = sorted(g.adjacency[v])
                for shared in nbrs:
                    rest = [w for w in nbrs if w != shared]
                    for take in range(len(rest) + 1):
                        for left in combinations(rest, take):
                            n1 = frozenset(left) | {shared}
                            n2 = frozenset(rest) - frozenset(left) | {shared}
                            out = vertex_split(g, v, n1, n2)
                            assert rigidity_report(out).is_minimally_rigid


class TestGscRecognition:
    def test_prism_is_member_with_one_prism(self, fix):
        prism = fix["prism"].graph
        dec = recognize_gsc(prism)
        assert isinstance(dec, GscDecomposition)
        assert dec.prism_count == 1
        assert are_isomorphic(dec.replay(), prism)

    def test_k4_minus_e_two_triangle_steps(self):
        dec = recognize_gsc(k4_minus_e())
        assert isinstance(dec, GscDecomposition)
        assert dec.prism_count == 0 and dec.depth == 2

    def test_edge_count_mismatch(self):
        out = recognize_gsc(c4())
        assert isinstance(out, GscNonMembership) and out.reason == "edge count"

    def test_g2_not_member_with_witness(self):
        g2, _ = make_gk(2)
        out = recognize_gsc(g2)
        assert isinstance(out, GscNonMembership)
        assert out.reason == "stable cut"
        from rignac.graph import is_cut, is_stable_set

        assert is_stable_set(g2, out.stable_cut) and is_cut(g2, out.stable_cut)

    def test_disconnected_rejected(self):
        g = Graph.from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
        with pytest.raises(PreconditionError):
            recognize_gsc(g)

    def test_dichotomy_on_catalogs(self, catalog6, catalog7):
        # member <=> no stable cut, for every tight graph
        for entry in catalog6 + catalog7:
            g = entry.graph
            has_cut = exhaustive_stable_cut(g) is not None
            assert entry.is_gsc == (not has_cut)

    def test_replay_reconstructs_catalog_members(self, catalog7):
        for entry in catalog7:
            if entry.is_gsc:
                dec = recognize_gsc(entry.graph)
                assert are_isomorphic(dec.replay(), entry.graph)

    def test_power_law_on_members(self, catalog6, catalog7):
        for entry in catalog6 + catalog7:
            if entry.is_gsc:
                assert entry.nnac == 2 ** entry.prism_count - 1

    def test_power_law_on_scripted_members(self):
        rnd = random.Random(123)

        def triangles_of(g: Graph) -> list[tuple[int, int, int]]:
            out = []
            for a in range(g.n):
                for b in sorted(g.adjacency[a]):
                    if b <= a:
                        continue
                    out.extend((a, b, c) for c in sorted(g.adjacency[a] & g.adjacency[b]) if c > b)
            return out

        for trial in range(20):
            steps: list[list] = [["prism", "edge", [0, 1]]] if trial % 2 else [["triangle", "edge", [0, 1]]]
            g = make_gsc(steps)
            for _ in range(rnd.randrange(1, 4)):
                piece = rnd.choice(["triangle", "prism"])
                tris = triangles_of(g)
                if piece == "prism" and tris and rnd.random() < 0.4:
                    steps.append(["prism", "triangle", list(rnd.choice(tris))])
                else:
                    edge = list(g.edges[rnd.randrange(g.m)])
                    if piece == "prism":
                        steps.append(["prism", "edge", edge, rnd.choice(["triangle", "matching"])])
                    else:
                        steps.append(["triangle", "edge", edge])
                g = make_gsc(steps)
            dec = recognize_gsc(g)
            assert isinstance(dec, GscDecomposition), steps
            assert count_nac(g) == 2 ** dec.prism_count - 1
            assert g.m == 2 * g.n - 3

    def test_json_schema(self, fix):
        dec = recognize_gsc(fix["prism"].graph)
        payload = dec.to_json()
        assert payload["base"] == "K2"
        assert payload["prisms"] == 1
        assert all({"piece", "glue", "new"} <= set(s) for s in payload["steps"])


class TestZeroExtensionRecognition:
    def test_2trees_are_closed_0ext_graphs(self):
        for seed in range(8):
            g = make_2tree(seed, 5 + seed % 4)
            assert recognize_0extension_graph(g) == (True, 0)

    def test_k33_and_its_extension(self):
        k33 = make_complete_bipartite(3, 3)
        assert recognize_0extension_graph(k33) == (False, None)
        seven, _ = zero_extend(k33, 0, 1)
        assert recognize_0extension_graph(seven) == (False, None)

    def test_c4_not_0ext(self):
        # wrong edge count for any 0-extension graph (m = 2n-3 always)
        assert recognize_0extension_graph(c4()) == (False, None)

    def test_gk_min_open_steps(self):
        g1, _ = make_gk(1)
        assert recognize_0extension_graph(g1) == (True, 0)
        g2, _ = make_gk(2)
        assert recognize_0extension_graph(g2) == (True, 2)

    def test_open_step_count_oracle(self, laman_keys):
        # independent unmemoised search on the 5- and 6-vertex classes
        def search(g: Graph) -> int | None:
            if g.n == 2:
                return 0
            best = None
            for w in range(g.n):
                if g.degree(w) != 2:
                    continue
                a, b = sorted(g.adjacency[w])
                cost = 0 if g.has_edge(a, b) else 1
                from rignac.graph import remove_vertices

                sub, _ = remove_vertices(g, [w])
                rec = search(sub)
                if rec is not None and (best is None or cost + rec < best):
                    best = cost + rec
            return best

        for n in (5, 6):
            for key in laman_keys[n]:
                g = parse_graph6(key)
                expect = search(g)
                assert recognize_0extension_graph(g) == (expect is not None, expect)


class TestPrismSubgraphCount:
    def test_prism_has_one(self, fix):
        assert count_prism_subgraphs(fix["prism"].graph) == 1

    def test_k33_has_none(self):
        assert count_prism_subgraphs(make_complete_bipartite(3, 3)) == 0

    def test_triangle_free_has_none(self):
        assert count_prism_subgraphs(c4()) == 0

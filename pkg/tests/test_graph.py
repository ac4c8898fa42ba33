from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from rignac.graph import (
    Graph,
    GraphParseError,
    PreconditionError,
    are_isomorphic,
    blocks,
    canonical_form,
    connected_components,
    contract_edge,
    emit_edge_list,
    emit_graph6,
    induced_subgraph,
    is_connected,
    is_cut,
    is_stable_set,
    parse_edge_list,
    parse_graph,
    parse_graph6,
)

from oracles import brute_is_biconnected, brute_isomorphic, random_connected_graph


def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def k4():
    return Graph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


class TestParsing:
    def test_edge_list_path(self):
        g = parse_graph("0 1\n1 2")
        assert g.n == 3 and g.edges == ((0, 1), (1, 2))

    def test_labels_compacted_by_first_appearance(self):
        g, labels = parse_edge_list("7 3\n3 9")
        assert labels == ["7", "3", "9"]
        assert g.edges == ((0, 1), (1, 2))

    def test_comments_and_blank_lines(self):
        g = parse_graph("# a path\n0 1\n\n1 2  # tail\n")
        assert g.m == 2

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphParseError, match="duplicate"):
            parse_graph("0 1\n0 1")
        with pytest.raises(GraphParseError, match="duplicate"):
            parse_graph("0 1\n1 0")

    def test_loop_rejected(self):
        with pytest.raises(GraphParseError, match="loop"):
            parse_graph("2 2")

    def test_malformed_line_names_line(self):
        with pytest.raises(GraphParseError, match="line 2"):
            parse_graph("0 1\n0 1 2")

    def test_autodetect_graph6(self):
        g = parse_graph("D?{")
        assert g == parse_graph6("D?{")

    def test_empty_input(self):
        with pytest.raises(GraphParseError):
            parse_graph("   \n# only a comment\n")


class TestGraph6:
    def test_round_trip_examples(self):
        for g in (triangle(), c4(), k4()):
            assert parse_graph6(emit_graph6(g)) == g

    def test_header_stripped(self):
        g = c4()
        assert parse_graph6(">>graph6<<" + emit_graph6(g)) == g

    def test_networkx_oracle_bit_exact(self, laman_keys):
        rnd = random.Random(5)
        corpus = [triangle(), c4(), k4()]
        for n in range(3, 8):
            corpus.extend(parse_graph6(k) for k in laman_keys[n][:10])
        for _ in range(20):
            n = rnd.randrange(2, 12)
            m = rnd.randrange(0, n * (n - 1) // 2 + 1)
            corpus.append(Graph.from_edges(n, rnd.sample(list(combinations(range(n), 2)), m)))
        for g in corpus:
            mine = emit_graph6(g)
            theirs = nx.to_graph6_bytes(_to_nx(g), header=False).decode().strip()
            assert mine == theirs
            back = nx.from_graph6_bytes(mine.encode())
            assert sorted(map(tuple, map(sorted, back.edges))) == list(g.edges)

    def test_parse_rejects_garbage(self):
        with pytest.raises(GraphParseError):
            parse_graph6("D?")  # truncated body
        with pytest.raises(GraphParseError):
            parse_graph6("D?{{")  # oversized body

    def test_edge_list_round_trip(self):
        g = k4()
        assert parse_graph(emit_edge_list(g)) == g


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestComponentsAndBlocks:
    def test_components_examples(self):
        assert connected_components(triangle()) == [frozenset({0, 1, 2})]
        two = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert connected_components(two) == [frozenset({0, 1}), frozenset({2, 3})]
        empty3 = Graph.from_edges(3, [])
        assert connected_components(empty3) == [frozenset({0}), frozenset({1}), frozenset({2})]

    def test_blocks_examples(self):
        bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        assert sorted(len(b) for b in blocks(bowtie)) == [3, 3]
        p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert len(blocks(p4)) == 3
        assert len(blocks(k4())) == 1

    def test_blocks_reject_isolated_vertex(self):
        g = Graph.from_edges(3, [(0, 1)])
        with pytest.raises(PreconditionError, match="isolated"):
            blocks(g)

    def test_blocks_partition_and_biconnectivity(self):
        rnd = random.Random(11)
        for _ in range(25):
            n = rnd.randrange(4, 9)
            g = random_connected_graph(rnd, n, rnd.randrange(n - 1, 2 * n))
            bl = blocks(g)
            covered = sorted(i for b in bl for i in b)
            assert covered == list(range(g.m))
            for b in bl:
                verts = {v for i in b for v in g.edges[i]}
                sub, _ = induced_subgraph(g, verts)
                edge_pick = [e for e in g.edges if e[0] in verts and e[1] in verts]
                assert len(b) == 1 or brute_is_biconnected(
                    Graph.from_edges(len(verts), _relabel(edge_pick, sorted(verts)))
                )

    def test_block_order_deterministic(self):
        bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        assert [min(b) for b in blocks(bowtie)] == sorted(min(b) for b in blocks(bowtie))


def _relabel(edges, order):
    pos = {v: i for i, v in enumerate(order)}
    return [(pos[u], pos[v]) for u, v in edges]


class TestPredicates:
    def test_stable_set(self):
        assert is_stable_set(c4(), {0, 2})
        assert not is_stable_set(c4(), {0, 1})
        assert is_stable_set(c4(), set())

    def test_is_cut(self):
        p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert is_cut(p3, {1})
        assert not any(is_cut(k4(), set(s)) for s in combinations(range(4), 2))
        disconnected = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert is_cut(disconnected, set())

    def test_cut_needs_two_survivors(self):
        assert not is_cut(triangle(), {0, 1})

    def test_out_of_range_vertex(self):
        with pytest.raises(ValueError):
            is_stable_set(triangle(), {5})


class TestContraction:
    def test_triangle_to_edge(self):
        g, merged = contract_edge(triangle(), 0)
        assert g.n == 2 and g.m == 1 and merged == 0

    def test_c4_to_triangle(self):
        g, _ = contract_edge(c4(), 0)
        assert are_isomorphic(g, triangle())

    def test_k4_quotient_oracle(self):
        g, merged = contract_edge(k4(), 0)

        def quotient(w: int) -> int:  # contract (0,1): 1 -> 0, then compact
            w = 0 if w == 1 else w
            return w - 1 if w > 1 else w

        expect = {
            (min(a, b), max(a, b))
            for a, b in ((quotient(x), quotient(y)) for x, y in k4().edges)
            if a != b
        }
        assert set(g.edges) == expect
        assert are_isomorphic(g, triangle())
        assert merged == 0

    def test_merged_keeps_smaller_id(self):
        g = Graph.from_edges(5, [(1, 3), (3, 4), (0, 1), (0, 4)])
        contracted, merged = contract_edge(g, g.edge_index[(1, 3)])
        assert merged == 1
        assert contracted.n == 4


class TestCanonicalForm:
    def test_prism_relabellings_equal(self, fix):
        prism = fix["prism"].graph
        perm = [3, 5, 1, 0, 4, 2]
        relab = Graph.from_edges(6, [(perm[u], perm[v]) for u, v in prism.edges])
        assert canonical_form(prism) == canonical_form(relab)

    def test_prism_vs_c6(self, fix):
        # same degree sequence, different graphs
        c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        assert canonical_form(fix["prism"].graph) != canonical_form(c6)

    def test_c6_vs_two_triangles(self):
        c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        tt = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert canonical_form(c6) != canonical_form(tt)

    def test_size_limit(self):
        big = Graph.from_edges(13, [(0, i) for i in range(1, 13)])
        with pytest.raises(PreconditionError):
            canonical_form(big)

    def test_agrees_with_brute_force_on_laman6(self, laman_keys):
        graphs = [parse_graph6(k) for k in laman_keys[6]]
        for i, g in enumerate(graphs):
            for h in graphs[i:]:
                assert (canonical_form(g) == canonical_form(h)) == brute_isomorphic(g, h)

    def test_random_relabelling_invariance(self):
        rnd = random.Random(23)
        for _ in range(30):
            n = rnd.randrange(2, 9)
            g = random_connected_graph(rnd, n, rnd.randrange(n - 1, min(2 * n, n * (n - 1) // 2) + 1))
            perm = list(range(n))
            rnd.shuffle(perm)
            h = Graph.from_edges(n, [(perm[u], perm[v]) for u, v in g.edges])
            assert canonical_form(g) == canonical_form(h)

    def test_parse_emit_identity_on_catalog(self, laman_keys):
        for n in range(3, 8):
            for key in laman_keys[n]:
                g = parse_graph6(key)
                assert emit_graph6(g) == key
                assert parse_graph(emit_edge_list(g)) == g


class TestInvariantsMisc:
    def test_graph_invariants_enforced(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 0)])
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 1), (1, 0)])
        with pytest.raises(ValueError):
            Graph(2, ((1, 0),))

    def test_connectivity_helper(self):
        assert is_connected(triangle())
        assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))

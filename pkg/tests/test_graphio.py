import logging

import networkx as nx
import pytest

from romanbond.graph import GraphError, build_graph, enumerate_small_graphs, girth, is_connected
from romanbond.graphio import (
    GraphIOError,
    arm_vertices,
    generate,
    hat_construction,
    load_corpus,
    parse_family,
    parse_graph6,
    write_edge_list,
    write_graph6,
)

from conftest import complete, cycle, path


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestGraph6:
    def test_empty5(self):
        g = parse_graph6("D??")
        assert g.n == 5 and g.m == 0
        assert write_graph6(g) == b"D??"

    def test_k2(self):
        assert parse_graph6(b"A_") == complete(2)
        assert write_graph6(complete(2)) == b"A_"

    @pytest.mark.parametrize("bad", [b"B", b"A_?", b"A\x1f", b"", b"Bw?"])
    def test_errors(self, bad):
        with pytest.raises(GraphIOError):
            parse_graph6(bad)

    def test_error_offset(self):
        with pytest.raises(GraphIOError) as exc:
            parse_graph6(b"D?\x1f")
        assert exc.value.offset == 2

    def test_header_and_newline(self):
        assert parse_graph6(b">>graph6<<A_\n") == complete(2)

    def test_matches_networkx_writer(self):
        for n in range(1, 6):
            for g in enumerate_small_graphs(n):
                want = nx.to_graph6_bytes(to_nx(g), header=False).strip()
                assert write_graph6(g) == want

    def test_large_n_form(self):
        g = path(70)
        data = write_graph6(g)
        assert data[0] == 126
        assert data == nx.to_graph6_bytes(to_nx(g), header=False).strip()
        assert parse_graph6(data) == g

    def test_round_trip_upto6(self):
        for n in range(1, 7):
            for g in enumerate_small_graphs(n, connected_only=True):
                assert parse_graph6(write_graph6(g)) == g


class TestGenerate:
    def test_path(self):
        g, emb = generate("path", 5)
        assert g.m == 4 and emb.chi == 2

    def test_toroidal(self):
        g, emb = generate("toroidal_grid", 3, 3)
        assert (g.n, g.m, g.min_degree, g.max_degree, emb.chi, emb.genus) == (9, 18, 4, 4, 0, 1)

    def test_icosahedron(self):
        g, emb = generate("icosahedron")
        assert (g.n, g.m, g.min_degree, g.max_degree, emb.chi) == (12, 30, 5, 5, 2)
        assert nx.is_isomorphic(to_nx(g), nx.icosahedral_graph())

    def test_embedding_declarations(self):
        assert generate("complete", 4)[1].chi == 2
        assert not generate("complete", 5)[1].declared
        assert generate("star", 4)[1].chi == 2
        assert generate("grid", 2, 3)[1].chi == 2

    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_cycle_girth(self, n):
        assert girth(cycle(n)) == n

    @pytest.mark.parametrize("a,b", [(2, 2), (3, 4), (4, 4)])
    def test_grid_girth(self, a, b):
        assert girth(generate("grid", a, b)[0]) == 4

    @pytest.mark.parametrize("args", [("hexagon", 3), ("cycle", 2), ("toroidal_grid", 2, 3), ("path", 0), ("grid", 3)])
    def test_errors(self, args):
        with pytest.raises(GraphError):
            generate(*args)

    def test_parse_family(self):
        assert parse_family("grid:3,4") == ("grid", (3, 4))
        assert parse_family("grid:3x4") == ("grid", (3, 4))
        assert parse_family("icosahedron") == ("icosahedron", ())


class TestHat:
    def test_c3(self):
        h = hat_construction(cycle(3))
        assert (h.n, h.m) == (15, 15)

    def test_k2(self):
        h = hat_construction(complete(2))
        assert (h.n, h.m) == (10, 9)

    def test_too_small(self):
        with pytest.raises(GraphError):
            hat_construction(build_graph(1, []))

    @pytest.mark.parametrize("g", [path(2), path(3), cycle(3), cycle(4), complete(4), generate("star", 3)[0]])
    def test_structure(self, g):
        n = g.n
        h = hat_construction(g)
        assert h.n == 5 * n and h.m == g.m + 4 * n
        leaves = [v for v in range(h.n) if h.degree(v) == 1]
        assert len(leaves) == 2 * n
        assert all(h.degree(next(iter(h.adj[v]))) == 2 for v in leaves)
        assert build_graph(n, [e for e in h.edges if e[1] < n]) == g
        for v in range(n):
            assert h.degree(v) == g.degree(v) + 2
            arm = arm_vertices(n, v)
            assert arm[2] == v
            assert all(h.has_edge(arm[k], arm[k + 1]) for k in range(4))


class TestCorpus:
    def test_graph6_file(self, tmp_path):
        f = tmp_path / "c.g6"
        f.write_text("A_\nD??\n\nBw\n")
        recs = list(load_corpus(f, "graph6"))
        assert [r.id for r in recs] == ["L1", "L2", "L4"]
        assert recs[0].graph == complete(2) and recs[2].graph == complete(3)

    def test_graph6_strict_error(self, tmp_path):
        f = tmp_path / "c.g6"
        f.write_bytes(b"A_\nD?\x1f\n")
        with pytest.raises(GraphIOError) as exc:
            list(load_corpus(f, "graph6", strict=True))
        assert exc.value.line == 2

    def test_graph6_lenient(self, tmp_path, caplog):
        f = tmp_path / "c.g6"
        f.write_bytes(b"A_\nD?\x1f\nBw\n")
        with caplog.at_level(logging.WARNING):
            recs = list(load_corpus(f, "graph6", strict=False))
        assert [r.id for r in recs] == ["L1", "L3"]
        assert "line 2" in caplog.text

    def test_edge_list(self, tmp_path):
        f = tmp_path / "c.txt"
        f.write_text("# chi=0\n3 3\n0 1\n1 2\n0 2\n\n# a comment\n2 1\n0 1\n"
                     "# chi=2 orientable=true genus=0\n1 0\n")
        recs = list(load_corpus(f, "edgelist"))
        assert [r.id for r in recs] == ["L2", "L8", "L11"]
        assert recs[0].embedding.chi == 0 and recs[0].graph == complete(3)
        assert recs[1].embedding is None
        assert recs[2].embedding.surface_kind == "orientable" and recs[2].graph.n == 1

    def test_edge_list_errors(self, tmp_path):
        f = tmp_path / "c.txt"
        f.write_text("3 2\n0 1\n1 x\n2 1\n0 1\n")
        with pytest.raises(GraphIOError) as exc:
            list(load_corpus(f, "edgelist"))
        assert exc.value.line == 3
        recs = list(load_corpus(f, "edgelist", strict=False))
        assert [r.id for r in recs] == ["L4"]

    def test_edge_list_truncated(self, tmp_path):
        f = tmp_path / "c.txt"
        f.write_text("3 2\n0 1\n")
        with pytest.raises(GraphIOError):
            list(load_corpus(f, "edgelist"))

    def test_bad_metadata(self, tmp_path):
        f = tmp_path / "c.txt"
        f.write_text("# chi=2 orientable=true genus=1\n2 1\n0 1\n")
        with pytest.raises(GraphIOError):
            list(load_corpus(f, "edgelist"))

    def test_write_edge_list_round_trip(self, tmp_path):
        g, emb = generate("toroidal_grid", 3, 3)
        f = tmp_path / "t.txt"
        f.write_text(write_edge_list(g, emb))
        (rec,) = load_corpus(f, "edgelist")
        assert rec.graph == g and rec.embedding == emb

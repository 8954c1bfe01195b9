import csv
import json

import pytest

from romanbond.campaign import CampaignConfig, Predicate, UsageError, iter_reports
from romanbond.cli import main
from romanbond.graph import is_connected
from romanbond.graphio import generate, hat_construction, load_corpus, parse_graph6, write_edge_list, write_graph6

from conftest import cycle

REPORT_FIELDS = {
    "id", "n", "m", "min_degree", "max_degree", "ad", "girth", "chi", "graph6", "gamma", "gamma_r",
    "gamma_r_witness", "bondage", "v_minus_size", "v_zero_size", "v_plus_size", "vertex_critical",
    "bounds", "checks", "violations", "timings_ms",
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


def test_exhaustive_five_full_pipeline(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    table = tmp_path / "r.csv"
    code, _, _ = run(["verify", "--exhaustive", "5", "--connected", "--out", str(out), "--csv", str(table)], capsys)
    assert code == 0
    reports = lines(out.read_text())
    assert len(reports) == 728
    with open(table, newline="") as fh:
        assert len(list(csv.DictReader(fh))) == 728
    r = reports[0]
    assert set(r) == REPORT_FIELDS
    assert all(not r["violations"] for r in reports)
    for r in reports:
        b = r["bondage"]
        g = parse_graph6(r["graph6"])
        if b["witness_indices"] is not None:
            assert [list(g.edges[i]) for i in b["witness_indices"]] == b["witness"]


def test_hat_corpus_bondage(tmp_path, capsys):
    src = tmp_path / "c3.txt"
    src.write_text(write_edge_list(cycle(3)))
    hat = tmp_path / "hat.g6"
    assert run(["hat", "--input", str(src), "--format", "edgelist", "--out", str(hat)], capsys)[0] == 0
    assert parse_graph6(hat.read_text().strip()) == hat_construction(cycle(3))
    code, out, _ = run(["bondage", "--input", str(hat), "--cap", "4"], capsys)
    (rec,) = lines(out)
    assert code == 0
    assert (rec["bondage"]["status"], rec["bondage"]["value"]) == ("EXACT", 4)


@pytest.mark.parametrize("argv", [
    ["verify", "--gen", "path:3", "--checks", "NOPE"],
    ["verify"],
    ["verify", "--exhaustive", "9"],
    ["verify", "--gen", "hexagon:3"],
    ["verify", "--input", "/nonexistent/file.g6"],
    ["hunt", "bondage.value >> 3", "--gen", "path:3"],
    ["hunt", "nosuchfield > 3", "--gen", "path:3"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 2


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"gen": ["path:3"], "colour": "blue"}))
    code, _, err = run(["verify", "--config", str(cfg)], capsys)
    assert code == 2 and "colour" in err


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"gen": ["cycle:4"], "checks": "none", "timings": False}))
    code, out, _ = run(["bounds", "--config", str(cfg)], capsys)
    (rec,) = lines(out)
    assert code == 0 and rec["checks"] is None and "timings_ms" not in rec


def test_violation_exit_code(tmp_path, capsys):
    src = tmp_path / "k7.txt"
    # K7 is not planar, so this declaration is false and the edge-sum check must fail
    src.write_text("# chi=2\n" + write_edge_list(generate("complete", 7)[0]))
    code, out, _ = run(["verify", "--input", str(src), "--format", "edgelist", "--checks", "EDGE_SUM_11"], capsys)
    (rec,) = lines(out)
    assert code == 1 and rec["checks"]["EDGE_SUM_11"]["status"] == "VIOLATED"


def test_strict_corpus(tmp_path, capsys):
    src = tmp_path / "bad.g6"
    src.write_bytes(b"A_\nD?\x1f\nBw\n")
    assert run(["solve", "--input", str(src), "--strict"], capsys)[0] == 2
    code, out, _ = run(["solve", "--input", str(src)], capsys)
    assert code == 0 and [r["id"] for r in lines(out)] == ["L1", "L3"]


class TestDeterminism:
    ARGS = ["verify", "--exhaustive", "4", "--connected", "--gen", "icosahedron", "--gen", "grid:3,3"]

    def test_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(self.ARGS + ["--no-timings", "--out", str(a)], capsys)
        run(self.ARGS + ["--no-timings", "--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()

    def test_timings_only_difference(self, tmp_path, capsys):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(self.ARGS + ["--out", str(a)], capsys)
        run(self.ARGS + ["--no-timings", "--out", str(b)], capsys)
        stripped = [{k: v for k, v in r.items() if k != "timings_ms"} for r in lines(a.read_text())]
        assert stripped == lines(b.read_text())

    def test_workers_preserve_order(self, tmp_path, capsys):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(self.ARGS + ["--no-timings", "--out", str(a)], capsys)
        run(self.ARGS + ["--no-timings", "--workers", "3", "--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()


def test_worker_resolution(monkeypatch):
    cfg = CampaignConfig(gen=["path:3"])
    monkeypatch.setenv("RB_WORKERS", "4")
    assert cfg.resolved_workers() == 4
    cfg.workers = 2
    assert cfg.resolved_workers() == 2
    monkeypatch.setenv("RB_WORKERS", "x")
    cfg.workers = None
    with pytest.raises(UsageError):
        cfg.resolved_workers()


class TestHunt:
    def test_first_plus_vertex(self, capsys):
        code, out, _ = run(["hunt", "v_plus_size > 0", "--exhaustive", "1-6", "--checks", "none"], capsys)
        g6, report = out.splitlines()
        assert code == 0 and g6 == "Cs"
        assert json.loads(report)["id"] == "n4:7"
        assert parse_graph6(g6) == generate("star", 3)[0]

    def test_bondage_above_max_degree_is_vertex_critical(self):
        cfg = CampaignConfig(exhaustive="1-6", connected=True, pipeline="bondage")
        pred = Predicate("bondage.value > Delta")
        hits = [r for r in iter_reports(cfg) if pred(r)]
        assert hits
        assert all(r["vertex_critical"] for r in hits)

    def test_none_on_cycles(self, capsys):
        code, out, _ = run(["hunt", "girth = inf AND bondage.status = EXACT",
                            "--gen", "cycle:3", "--gen", "cycle:5", "--gen", "cycle:8"], capsys)
        assert code == 3 and out.strip() == "NONE"

    def test_predicate_semantics(self):
        r = {"girth": "inf", "max_degree": 2, "bondage": {"status": "EXACT", "value": 3}, "ad": "3/2",
             "v_plus_size": None}
        assert Predicate("girth = inf")(r)
        assert Predicate("bondage.value > Delta")(r)
        assert Predicate("ad < 2 AND bondage.status = EXACT")(r)
        assert Predicate("n = 3 OR girth = inf")(r)
        assert not Predicate("v_plus_size > 0")(r)
        assert not Predicate("girth < 5")(r)


def test_gen_verb(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert run(["gen", "--gen", "toroidal_grid:3,3", "--emit", "edgelist", "--out", str(out)], capsys)[0] == 0
    (rec,) = load_corpus(out, "edgelist")
    assert rec.graph == generate("toroidal_grid", 3, 3)[0] and rec.embedding.chi == 0
    code, text, _ = run(["gen", "--exhaustive", "3", "--connected"], capsys)
    graphs = [parse_graph6(x) for x in text.split()]
    assert len(graphs) == 4 and all(is_connected(g) for g in graphs)


def test_figures(tmp_path, capsys):
    fig = tmp_path / "figs"
    code, _, _ = run(["bounds", "--exhaustive", "4", "--connected", "--figures", str(fig),
                      "--out", str(tmp_path / "r.jsonl")], capsys)
    assert code == 0
    pngs = sorted(p.name for p in fig.iterdir())
    assert pngs == ["bondage_vs_bounds.png", "domination_histogram.png"]
    assert all((fig / p).stat().st_size > 1000 for p in pngs)


def test_solve_only_leaves_nulls(capsys):
    code, out, _ = run(["solve", "--gen", "path:5"], capsys)
    (rec,) = lines(out)
    assert rec["gamma_r"] == 4 and rec["gamma"] == 2
    assert rec["bondage"] is None and rec["bounds"] is None and rec["checks"] is None


def test_write_graph6_stdout(capsys):
    code, out, _ = run(["hat", "--gen", "cycle:3"], capsys)
    assert out.strip() == write_graph6(hat_construction(cycle(3))).decode()

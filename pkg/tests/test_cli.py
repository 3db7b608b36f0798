import json

import pytest

from bchrome.cli import main
from bchrome.generators import gen_bridged_pair, gen_cycle, gen_petersen, gen_random_regular_c4_free
from bchrome.graph6 import emit_graph6, parse_graph6


@pytest.fixture
def write_graph(tmp_path):
    def write(g, name="g.g6"):
        path = tmp_path / name
        path.write_text(emit_graph6(g) + "\n")
        return str(path)

    return write


@pytest.fixture
def quartic_file(write_graph):
    h = gen_random_regular_c4_free(16, 4, seed=3, max_tries=500)
    return write_graph(gen_bridged_pair(h, h.edges()[0]), "quartic.g6")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_petersen(capsys, write_graph):
    code, out, _ = run(capsys, "analyze", write_graph(gen_petersen()))
    report = json.loads(out)
    assert code == 0
    assert report["theorem_applies"] is False
    assert report["super_edge_connected"] is True
    assert (report["n"], report["m"], report["lambda"], report["girth"]) == (10, 15, 3, 5)


def test_analyze_bridged_quartic(capsys, quartic_file):
    code, out, _ = run(capsys, "analyze", quartic_file)
    report = json.loads(out)
    assert code == 0 and report["theorem_applies"] is True
    assert report["lambda"] == 2 and len(report["nontrivial_min_cut"]) == 2


def test_analyze_c4(capsys, write_graph):
    code, out, _ = run(capsys, "analyze", write_graph(gen_cycle(4)))
    report = json.loads(out)
    assert report["has_c4"] is True and report["theorem_applies"] is False


def test_analyze_multiple_graphs(capsys, tmp_path):
    path = tmp_path / "many.g6"
    path.write_text(emit_graph6(gen_cycle(5)) + "\n" + emit_graph6(gen_petersen()) + "\n")
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and [r["n"] for r in json.loads(out)] == [5, 10]


def test_parse_error_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_text("D? {\n")
    code, out, err = run(capsys, "analyze", str(bad))
    assert code == 1 and out == "" and "outside graph6 range" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.g6"))[0] == 1


def test_usage_error_exit_1(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_bcolor_and_verify(capsys, quartic_file, tmp_path):
    code, out, _ = run(capsys, "bcolor", quartic_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "construction"
    assert payload["coloring"]["k"] == 5 and len(payload["certificate"]["dominating"]) == 5
    saved = tmp_path / "coloring.json"
    saved.write_text(out)
    code, out, _ = run(capsys, "verify", quartic_file, str(saved))
    result = json.loads(out)
    assert code == 0 and result["valid"] and result["claimed_certificate_valid"]


def test_verify_rejects_bad_coloring(capsys, write_graph, tmp_path):
    path = write_graph(gen_cycle(5))
    bad = tmp_path / "bad.json"
    # four colors on a cycle: no degree-2 vertex can see three other colors
    bad.write_text(json.dumps({"k": 4, "colors": [1, 2, 3, 4, 2]}))
    code, out, _ = run(capsys, "verify", path, str(bad))
    result = json.loads(out)
    assert code == 2 and result["valid"] is False and result["missing_colors"]


def test_bcolor_trace(capsys, quartic_file):
    code, out, _ = run(capsys, "bcolor", quartic_file, "--trace")
    trace = json.loads(out)["trace"]
    assert code == 0 and trace["d"] == 4 and len(trace["stage1_steps"]) == 2


def test_bcolor_petersen_precondition(capsys, write_graph):
    code, out, err = run(capsys, "bcolor", write_graph(gen_petersen()))
    assert code == 2 and out == "" and "super-edge-connected" in err


def test_bcolor_petersen_fallback(capsys, write_graph):
    code, out, _ = run(capsys, "bcolor", write_graph(gen_petersen()), "--fallback-exact")
    payload = json.loads(out)
    assert code == 0 and payload["method"] == "exact" and payload["phi"] == 3


def test_bcolor_fallback_respects_limit(capsys, write_graph):
    code, _, err = run(capsys, "bcolor", write_graph(gen_cycle(20)), "--fallback-exact")
    assert code == 2 and "n <= 16" in err


def test_bcolor_construction_failure_exit_3(capsys, quartic_file, monkeypatch):
    from bchrome import construction
    from bchrome.matching import PerfectMatchingError

    def refuse(inst):
        raise PerfectMatchingError(frozenset(), None)

    monkeypatch.setattr(construction, "perfect_matching_or_fail", refuse)
    code, out, _ = run(capsys, "bcolor", quartic_file)
    assert code == 3
    assert "trace" in json.loads(out)


def test_phi(capsys, write_graph):
    code, out, _ = run(capsys, "phi", write_graph(gen_cycle(5)))
    assert code == 0 and json.loads(out)["phi"] == 3
    code, _, _ = run(capsys, "phi", write_graph(gen_cycle(20)))
    assert code == 2


def test_gen_regular_stdout(capsys):
    code, out, _ = run(capsys, "gen", "regular", "--n", "20", "--d", "3", "--seed", "4", "--count", "3")
    lines = out.split()
    assert code == 0 and len(lines) == 3
    assert all(parse_graph6(line).n == 20 for line in lines)
    assert lines == run(capsys, "gen", "regular", "--n", "20", "--d", "3", "--seed", "4", "--count", "3")[1].split()


def test_gen_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("BCHROME_SEED", "4")
    from_env = run(capsys, "gen", "regular", "--n", "20", "--d", "3")[1]
    explicit = run(capsys, "gen", "regular", "--n", "20", "--d", "3", "--seed", "4")[1]
    assert from_env == explicit


def test_gen_failure_reports(capsys):
    code, _, err = run(capsys, "gen", "regular", "--n", "4", "--d", "3", "--max-tries", "5")
    assert code == 2 and "attempts=5" in err


def test_gen_bad_parameters(capsys):
    assert run(capsys, "gen", "regular", "--n", "5", "--d", "3")[0] == 1


def test_gen_petersen_and_bridged_edge(capsys):
    assert run(capsys, "gen", "petersen")[1].strip() == emit_graph6(gen_petersen())
    code, out, _ = run(capsys, "gen", "bridged", "--n", "16", "--d", "4", "--seed", "3", "--edge", "0", "7")
    h = gen_random_regular_c4_free(16, 4, seed=3, max_tries=500)
    if h.has_edge(0, 7):
        assert code == 0 and parse_graph6(out.strip()) == gen_bridged_pair(h, (0, 7))
    else:
        assert code == 1


def test_batch(capsys, tmp_path):
    gen_dir = tmp_path / "inst"
    code, _, _ = run(capsys, "gen", "bridged", "--n", "16", "--d", "4", "--count", "4", "--out-dir", str(gen_dir))
    assert code == 0 and len(list(gen_dir.iterdir())) == 4
    code, out, _ = run(capsys, "batch", str(gen_dir))
    summary = json.loads(out)
    assert code == 0
    assert summary["total"] == 4 == summary["succeeded"]
    assert all(r["status"] == "ok" and r["k"] == 5 for r in summary["rows"])


def test_batch_records_failures(capsys, tmp_path, write_graph):
    write_graph(gen_petersen(), "a_petersen.g6")
    (tmp_path / "b_broken.g6").write_text("!!!\n")
    code, out, _ = run(capsys, "batch", str(tmp_path))
    rows = json.loads(out)["rows"]
    assert code == 2
    assert [r["status"] for r in rows] == ["precondition", "error"]
    code, out, _ = run(capsys, "batch", str(tmp_path), "--fallback-exact")
    rows = json.loads(out)["rows"]
    assert rows[0]["status"] == "ok" and rows[0]["k"] == 3


def test_batch_parallel_matches_serial(capsys, tmp_path):
    gen_dir = tmp_path / "inst"
    run(capsys, "gen", "bridged", "--n", "18", "--d", "4", "--count", "3", "--out-dir", str(gen_dir))
    serial = run(capsys, "batch", str(gen_dir), "--jobs", "1")[1]
    parallel = run(capsys, "batch", str(gen_dir), "--jobs", "2")[1]
    assert serial == parallel


def test_batch_rejects_bad_jobs(capsys, tmp_path):
    assert run(capsys, "batch", str(tmp_path), "--jobs", "0")[0] == 1

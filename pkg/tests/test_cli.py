from pathlib import Path

import pytest

from errold.cli import main
from errold.graph import parse_edge_list, serialize_edge_list
from errold.families import petersen_graph, complete_graph
from errold.detection import serialize_detector_set

PATTERN_DIR = Path(__file__).resolve().parent.parent / "patterns"


@pytest.fixture
def files(tmp_path):
    paths = {}
    paths["petersen"] = tmp_path / "petersen.el"
    paths["petersen"].write_text(serialize_edge_list(petersen_graph()))
    paths["k4"] = tmp_path / "k4.el"
    paths["k4"].write_text(serialize_edge_list(complete_graph(4)))
    paths["all10"] = tmp_path / "all10.ds"
    paths["all10"].write_text(serialize_detector_set(range(10)))
    paths["all4"] = tmp_path / "all4.ds"
    paths["all4"].write_text(serialize_detector_set(range(4)))
    paths["cnf"] = tmp_path / "f.cnf"
    paths["cnf"].write_text("p cnf 3 1\n1 -2 3 0\n")
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def report_dict(out):
    d = {}
    for line in out.splitlines():
        if line.startswith("#") or ": " not in line:
            continue
        k, v = line.split(": ", 1)
        d[k] = v
    return d


def test_verify_pass(capsys, files):
    code, out = run(capsys, "verify", "--graph", files["petersen"],
                    "--set", files["all10"], "--kind", "err")
    rep = report_dict(out)
    assert code == 0 and rep["status"] == "ok" and rep["pass"] == "true"
    assert rep["digest-graph"].startswith("sha256:")
    assert rep["digest-set"].startswith("sha256:")


def test_verify_fail_witness(capsys, files):
    code, out = run(capsys, "verify", "--graph", files["k4"],
                    "--set", files["all4"], "--kind", "err")
    rep = report_dict(out)
    assert code == 1 and rep["status"] == "fail"
    assert rep["pass"] == "false" and rep["witness-pair"] == "0 1" \
        and rep["witness-value"] == "2"


def test_missing_file_is_error(capsys, tmp_path):
    code, out = run(capsys, "solve", "--graph", tmp_path / "missing.el",
                    "--kind", "err")
    rep = report_dict(out)
    assert code == 2 and rep["status"] == "error"


def test_unknown_flag_exits_two(files):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--graph", str(files["petersen"]), "--bogus", "x"])
    assert exc.value.code == 2


def test_solve_and_decide(capsys, files):
    code, out = run(capsys, "solve", "--graph", files["petersen"], "--kind", "err")
    rep = report_dict(out)
    assert code == 0 and rep["optimum"] == "10"
    code, out = run(capsys, "decide", "--graph", files["petersen"],
                    "--kind", "err", "--k", "9")
    rep = report_dict(out)
    assert code == 1 and rep["answer"] == "false"
    code, out = run(capsys, "solve", "--graph", files["k4"], "--kind", "err")
    rep = report_dict(out)
    assert code == 1 and rep["result"] == "infeasible"


def test_exists(capsys, files):
    code, out = run(capsys, "exists", "--graph", files["petersen"])
    assert code == 0 and report_dict(out)["exists"] == "true"
    code, out = run(capsys, "exists", "--graph", files["k4"])
    rep = report_dict(out)
    assert code == 1 and rep["witness-cycle"] == "0 1 2 3" and rep["witness-pair"] == "0 2"


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--n", "4")
    rep = report_dict(out)
    assert code == 0 and rep["count"] == "0"


def test_enumerate_parallel_predicate(capsys):
    code, out = run(capsys, "enumerate", "--n", "6", "--m", "9",
                    "--min-degree", "3", "--predicate", "err", "--jobs", "2")
    rep = report_dict(out)
    assert code == 0 and rep["count"] == "0"     # no 6-vertex graph supports


def test_enumerate_outdir(capsys, tmp_path):
    out_dir = tmp_path / "graphs"
    code, out = run(capsys, "enumerate", "--n", "7", "--m", "12",
                    "--min-degree", "3", "--out", out_dir)
    rep = report_dict(out)
    assert code == 0 and rep["count"] == "2"
    manifest = (out_dir / "manifest.txt").read_text().splitlines()
    assert len(manifest) == 2
    for line in manifest:
        n, m, hexenc = line.split()
        g = parse_edge_list((out_dir / f"graph_{hexenc}.el").read_text())
        assert g.n == int(n) and g.m == int(m)


def test_expand(capsys, tmp_path):
    from errold.families import heawood_graph
    hw = tmp_path / "heawood.el"
    hw.write_text(serialize_edge_list(heawood_graph()))
    code, out = run(capsys, "expand", "--graph", hw, "--e1", "0", "1",
                    "--e2", "2", "3")
    rep = report_dict(out)
    assert code == 0 and rep["quasi-cubic"] == "true" and rep["n"] == "15"
    assert "## graph" in out
    # precondition violation is a usage error
    code, out = run(capsys, "expand", "--graph", hw, "--e1", "0", "1",
                    "--e2", "1", "2")
    assert code == 2


def test_reduce_and_gadget_check(capsys, files, tmp_path):
    gfile = tmp_path / "out.el"
    mfile = tmp_path / "out.manifest"
    code, out = run(capsys, "reduce", "--cnf", files["cnf"],
                    "--out-graph", gfile, "--out-manifest", mfile)
    rep = report_dict(out)
    assert code == 0
    assert rep["vertices"] == "83" and rep["edges"] == "170" and rep["K"] == "73"
    g = parse_edge_list(gfile.read_text())
    assert g.n == 83 and g.m == 170
    assert mfile.read_text().startswith("K 73\n")

    code, out = run(capsys, "gadget-check", "--cnf", files["cnf"])
    rep = report_dict(out)
    assert code == 0 and rep["pass"] == "true" and rep["forced-count"] == "70"


def test_roundtrip(capsys, files):
    code, out = run(capsys, "roundtrip", "--cnf", files["cnf"])
    rep = report_dict(out)
    assert code == 0 and rep["equivalent"] == "true" and rep["satisfiable"] == "true"


def test_grid_commands(capsys, tmp_path):
    pat = PATTERN_DIR / "sqr_7_8.pattern"
    code, out = run(capsys, "grid-certify", "--pattern", pat)
    rep = report_dict(out)
    assert code == 0 and rep["density"] == "7/8" and rep["pass"] == "true"

    code, out = run(capsys, "grid-share", "--pattern", pat)
    rep = report_dict(out)
    assert code == 0 and rep["share-sum"] == "8"

    code, out = run(capsys, "grid-search", "--grid", "TRI", "--max-index", "7")
    rep = report_dict(out)
    assert code == 0 and rep["density"] == "4/7"
    assert "## pattern" in out

    bad = tmp_path / "bad.pattern"
    bad.write_text("grid SQR\nbasis 2 0 0 2\ndetector 0 0\ndetector 1 1\n")
    code, out = run(capsys, "grid-certify", "--pattern", bad)
    rep = report_dict(out)
    assert code == 1 and rep["pass"] == "false"


def test_render(capsys):
    pat = PATTERN_DIR / "sqr_7_8.pattern"
    code, out = run(capsys, "render", "--pattern", pat, "--window", "8")
    assert code == 0
    figure = out.split("figure:\n", 1)[1]
    assert figure.count("#") == 56


def test_reports_are_reproducible(capsys, files):
    _, out1 = run(capsys, "verify", "--graph", files["petersen"],
                  "--set", files["all10"], "--kind", "err")
    _, out2 = run(capsys, "verify", "--graph", files["petersen"],
                  "--set", files["all10"], "--kind", "err")
    assert out1 == out2

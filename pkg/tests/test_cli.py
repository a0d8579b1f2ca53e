import json

import pytest

from synchro.cli import main
from synchro.graphs import Graph, from_graph6, to_adjacency_text, to_graph6
from synchro.latin import LatinSquare


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing_seconds"}


def test_latin_spectrum(capsys):
    code, rep = run_cli(capsys, "latin", "spectrum", "-k", "3")
    assert code == 0
    assert rep["results"]["achievable"] == [3, 9]


def test_latin_rorth_and_hom(capsys, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text(LatinSquare.cyclic(4).to_text())
    b.write_text(LatinSquare.cyclic(4).to_text())
    code, rep = run_cli(capsys, "latin", "rorth", "-a", str(a), "-b", str(b))
    assert code == 0 and rep["results"]["r"] == 4
    code, rep = run_cli(capsys, "latin", "hom", "-a", str(a), "-b", str(b))
    assert code == 0 and rep["results"]["rank"] == 4


def test_sync_check_c6(capsys, tmp_path):
    gf = tmp_path / "group.txt"
    mf = tmp_path / "map.txt"
    gf.write_text("# degree 6\n(1 2 3 4 5 6)\n")
    mf.write_text("[1, 2, 3, 1, 2, 3]\n")
    code, rep = run_cli(capsys, "sync", "check", "-g", str(gf), "-f", str(mf))
    assert code == 0
    res = rep["results"]
    assert res["synchronizes"] is False and res["min_rank"] == 3
    assert res["kernel_type"] == [2, 2, 2]
    assert res["graph_stats"]["omega"] == res["graph_stats"]["chi"] == 3


def test_sync_graph_round_trip(capsys, tmp_path):
    gf = tmp_path / "group.txt"
    mf = tmp_path / "map.txt"
    gf.write_text("# degree 6\n(1 2 3 4 5 6)\n")
    mf.write_text("[1, 2, 3, 1, 2, 3]\n")
    code, rep = run_cli(capsys, "sync", "graph", "-g", str(gf), "-f", str(mf), "--format", "g6")
    assert code == 0
    g = from_graph6(rep["results"]["graph"])
    assert g.n == 6 and g.edge_count() == rep["results"]["edges"]


def test_sync_minrank_and_scan(capsys, tmp_path):
    gf = tmp_path / "group.txt"
    mf = tmp_path / "map.txt"
    gf.write_text("# degree 6\n(1 2 3 4 5 6)\n")
    mf.write_text("[1, 2, 3, 1, 2, 3]\n")
    code, rep = run_cli(capsys, "sync", "minrank", "-g", str(gf), "-f", str(mf))
    assert code == 0 and rep["results"]["min_rank"] == 3
    code, rep = run_cli(
        capsys, "--seed", "5", "sync", "scan", "--catalog-group", "rook_group_3",
        "--ranks", "8,7", "--samples", "10",
    )
    assert code == 0
    assert rep["results"]["ranks"]["8"]["all_synchronized"]
    assert rep["results"]["ranks"]["7"]["all_synchronized"]


def test_graph_clique_chroma_endos(capsys, tmp_path):
    path = tmp_path / "g.g6"
    path.write_text(to_graph6(Graph.cycle(5)) + "\n")
    code, rep = run_cli(capsys, "graph", "clique", str(path))
    assert code == 0 and rep["results"]["clique_number"] == 2
    code, rep = run_cli(capsys, "graph", "chroma", str(path))
    assert code == 0 and rep["results"]["chromatic_number"] == 3
    code, rep = run_cli(capsys, "graph", "endos", str(path), "--proper", "--count-only")
    assert code == 0 and rep["results"]["total"] == 0
    code, rep = run_cli(capsys, "graph", "endos", str(path))
    assert code == 0 and rep["results"]["total"] == 10
    assert len(rep["results"]["endomorphisms"]) == 10


def test_graph_adjacency_input(capsys, tmp_path):
    path = tmp_path / "g.adj"
    path.write_text(to_adjacency_text(Graph.complete(4)))
    code, rep = run_cli(capsys, "graph", "clique", str(path))
    assert code == 0 and rep["results"]["clique_number"] == 4


def test_catalog_list_build_verify(capsys, tmp_path):
    code, rep = run_cli(capsys, "catalog", "list")
    assert code == 0 and "c5" in rep["results"]["graphs"]
    out = tmp_path / "c5.g6"
    code, rep = run_cli(capsys, "catalog", "build", "c5", "-o", str(out), "--format", "g6")
    assert code == 0
    assert from_graph6(out.read_text().strip()) == Graph.cycle(5)
    out2 = tmp_path / "rook.grp"
    code, rep = run_cli(capsys, "catalog", "build", "rook_group_3", "-o", str(out2))
    assert code == 0
    from synchro.perms import parse_group_file

    grp = parse_group_file(out2.read_text())
    assert grp.degree == 9
    code, rep = run_cli(capsys, "catalog", "verify", "c5")
    assert code == 0


def test_srg_analyze(capsys):
    code, rep = run_cli(capsys, "srg", "analyze", "--catalog", "petersen")
    assert code == 0
    assert rep["results"]["params"] == [10, 3, 0, 1]


def test_construct_triangular(capsys):
    code, rep = run_cli(capsys, "construct", "triangular", "-m", "6")
    assert code == 0
    assert rep["results"]["rank"] == 15


def test_construct_boxpower(capsys):
    code, rep = run_cli(capsys, "construct", "boxpower", "--rank", "9")
    assert code == 0
    assert rep["results"]["rank"] == 9 and rep["results"]["vertices"] == 256


def test_usage_errors(capsys, tmp_path):
    assert main(["graph", "clique", str(tmp_path / "missing.g6")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_budget_exit_code(capsys):
    code = main(
        ["--budget", "0.05", "graph", "endos", "--catalog", "k4_box_k4", "--count-only"]
    )
    out = capsys.readouterr().out
    if code == 3:
        rep = json.loads(out)
        assert rep["partial"] is True
    else:
        assert code == 0  # fast machines may finish inside the budget


def test_determinism(capsys):
    _, rep1 = run_cli(capsys, "--seed", "3", "latin", "spectrum", "-k", "4")
    _, rep2 = run_cli(capsys, "--seed", "3", "latin", "spectrum", "-k", "4")
    assert strip_timing(rep1) == strip_timing(rep2)


def test_transformation_output_round_trip(capsys, tmp_path):
    path = tmp_path / "g.g6"
    path.write_text(to_graph6(Graph.path(3)))
    code, rep = run_cli(capsys, "graph", "endos", str(path), "--proper")
    assert code == 0
    from synchro.transforms import parse_transformation

    for text in rep["results"]["endomorphisms"]:
        t = parse_transformation(text)
        assert t.degree == 3

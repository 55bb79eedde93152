import json

import pytest

from nofbench.cli import main


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["gen", "latin", "--n", "2", "--out", "f.noffn"]) == 0
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stars_example(workdir, capsys):
    capsys.readouterr()
    code, out, _ = run(capsys, "stars", "--in", "f.noffn")
    assert code == 0 and out.splitlines()[0] == "stars: 4"


def test_disc_example(workdir, capsys):
    code, out, _ = run(capsys, "disc", "--in", "f.noffn", "--exact")
    assert code == 0 and out.splitlines()[0] == "disc = 1/8"


def test_verify_example(workdir, capsys):
    code, out, _ = run(capsys, "verify", "--in", "f.noffn", "--out", "r.json")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert all(line.startswith("[PASS]") for line in lines)
    doc = json.loads((workdir / "r.json").read_text())
    assert doc["format_version"] == 1 and doc["kind"] == "complexity"
    assert doc["results"]["disc"] == {"num": 1, "den": 8}


def test_gen_prints_function_without_out(capsys):
    code, out, _ = run(capsys, "gen", "trace", "--q", "2", "--d", "1", "--k", "2")
    assert code == 0 and out == "noffn 1\n2 2 2\n0 0 0 1\n"


def test_color_exact_save_and_peel(workdir, capsys):
    code, out, _ = run(capsys, "color", "exact", "--in", "f.noffn", "--save", "c.nofcol")
    assert code == 0 and out.startswith("chi_star = 2\n")
    code, out, _ = run(capsys, "peel", "--in", "f.noffn", "--coloring", "c.nofcol")
    assert code == 0 and out.startswith("iterations: ")


def test_cover_and_partition(workdir, capsys):
    code, out, _ = run(capsys, "cover", "--in", "f.noffn", "--save", "c.nofcover")
    assert code == 0 and "chi = 4" in out and "cover_cc = 2" in out
    assert (workdir / "c.nofcover").read_bytes().startswith(b"nofcover 1\n2 4\n")
    code, out, _ = run(capsys, "partition", "--in", "f.noffn", "--b", "1", "--mode", "nondet")
    assert code == 0 and out.startswith("cost = 1 (exhaustive)")


def test_bound_commands(capsys):
    assert run(capsys, "bound", "bhk", "--disc", "1/8", "--b", "0", "--N", "2")[1] == "bhk = 2.0\n"
    assert run(capsys, "bound", "detsim", "--k", "3", "--cn", "2")[1] == "detsim = 10\n"
    code, out, _ = run(capsys, "bound", "evaluators", "--dh", "12", "--k", "3", "--N", "4", "--b", "1")
    assert code == 0 and "det_graph_lower = 1\n" in out


def test_report_show(workdir, capsys):
    run(capsys, "verify", "--in", "f.noffn", "--out", "r.json")
    code, out, _ = run(capsys, "report", "show", "--in", "r.json")
    assert code == 0 and out.startswith("kind: complexity")


def test_domain_errors_exit_1(workdir, capsys):
    (workdir / "bad.noffn").write_text("noffx 1\n")
    code, _, err = run(capsys, "stars", "--in", "bad.noffn")
    assert code == 1 and err.startswith("error:")
    assert run(capsys, "stars", "--in", "missing.noffn")[0] == 1
    code, _, err = run(capsys, "color", "exact", "--in", "f.noffn", "--max-colors", "1")
    assert code == 1 and "[limit: --max-colors]" in err


def test_exact_disc_limit_names_flag(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    main(["gen", "random", "--n", "21", "--N", "2", "--out", "big.noffn"])
    code, _, err = run(capsys, "disc", "--in", "big.noffn", "--exact")
    assert code == 1 and "[limit: --exact]" in err


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["stars"], ["gen", "latin", "--n", "0"],
    ["disc", "--in", "x", "--exact", "--samples", "3"], ["stars", "--in", "x", "--threads", "0"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(capsys, *argv)[0] == 2

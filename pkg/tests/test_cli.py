import json

import pytest

from oddsecant.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def conic13(tmp_path, capsys):
    path = tmp_path / "s13.txt"
    assert main(["construct", "conic-external", "--q", "13", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_construct_to_stdout(capsys):
    code, out, _ = run(["construct", "arc", "--q", "5", "--size", "4"], capsys)
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert lines[0].startswith("q 5") and len(lines) == 5


def test_analyze(conic13, capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = run(["analyze", str(conic13), "--json", str(rep)], capsys)
    assert code == 0 and "odd secants=24" in out
    data = json.loads(rep.read_text())
    assert data["report"]["odd_count"] == 24
    assert data["manifest"]["timestamp"] is None
    assert len(data["manifest"]["inputs"][str(conic13)]) == 64


def test_json_is_reproducible(conic13, capsys, tmp_path):
    b = tmp_path / "b.json"
    main(["analyze", str(conic13), "--json", str(b)])
    first = b.read_bytes()
    main(["analyze", str(conic13), "--json", str(b)])
    assert b.read_bytes() == first
    main(["analyze", str(conic13), "--json", str(b), "--stamp"])
    assert json.loads(b.read_text())["manifest"]["timestamp"]


def test_verify_pass_and_even_q(capsys):
    code, out, _ = run(["verify", "--q", "11", "--suite", "segre,psi,double,gsconcur"], capsys)
    assert code == 0 and out.count("PASS") == 4
    code, _, err = run(["verify", "--q", "4", "--suite", "segre"], capsys)
    assert code == 2 and "q odd" in err
    code, _, err = run(["verify", "--q", "11", "--suite", "bogus"], capsys)
    assert code == 2


def test_verify_segret_t2(capsys):
    code, out, _ = run(["verify", "--q", "11", "--suite", "segret", "--t", "2", "--json", "-"], capsys)
    assert code == 0
    data = json.loads(out[out.index("{"):])
    assert data["suites"][0]["sign"] == 1 and data["passed"]


def test_search_exhaustive(capsys, tmp_path):
    wit, table = tmp_path / "w.txt", tmp_path / "m.csv"
    code, out, _ = run(["search", "--q", "3", "--size", "5", "--symmetry",
                        "--out", str(wit), "--csv", str(table)], capsys)
    assert code == 0
    header, row = out.strip().splitlines()[-2:]
    assert header.startswith("q,size,mode,min_o")
    assert row.startswith("3,5,exhaustive,4,1,")
    assert wit.exists() and table.read_text().startswith("q,size")


def test_search_budget_exit_code(capsys):
    code, _, err = run(["search", "--q", "7", "--size", "9", "--symmetry", "--budget", "0.2"], capsys)
    assert code == 1 and "budget" in err


def test_search_local_seeded(capsys):
    code, out, _ = run(["search", "--q", "11", "--size", "13", "--mode", "local", "--trials", "1",
                        "--moves", "500", "--seed-construction"], capsys)
    assert code == 0
    assert int(out.strip().splitlines()[-1].split(",")[3]) <= 20


def test_gamma(tmp_path, capsys):
    path = tmp_path / "s29.txt"
    main(["construct", "conic-external", "--q", "29", "--out", str(path)])
    capsys.readouterr()
    code, out, _ = run(["gamma", str(path), "--trials", "10"], capsys)
    assert code == 0 and "deg Gamma=2" in out and "conic divides=True" in out


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("q 5\n1 2\n")
    code, _, err = run(["analyze", str(bad)], capsys)
    assert code == 2 and "line 2" in err
    good = tmp_path / "good.txt"
    good.write_text("q 5\n1 2 3\n")
    code, _, err = run(["analyze", str(good), "--q", "7"], capsys)
    assert code == 2
    code, _, _ = run(["analyze", str(tmp_path / "missing.txt")], capsys)
    assert code == 2


def test_empty_set(tmp_path, capsys):
    path = tmp_path / "e.txt"
    path.write_text("q 5\n")
    code, out, _ = run(["analyze", str(path)], capsys)
    assert code == 0 and "odd secants=0" in out

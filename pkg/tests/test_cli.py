import io
import json
import shutil
import subprocess

import pytest

from permsimple.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_classify_running_example():
    code, text = run("classify", "4 1 6 2 5 3")
    assert code == 0
    assert "s=true,c=false,g=false,b=false,t=true" in text
    assert "D(3,1)D(4,4)D(5,3)" in text


def test_classify_input_formats():
    _, a = run("classify", "(4 2 1)(6 3)", "--format", "json")
    _, b = run("classify", "D(3,1)D(4)D(5,3)", "--format", "json")
    _, c = run("classify", "4 1 6 2 5 3", "--input-format", "one-line", "--format", "json")
    assert json.loads(a) == json.loads(b) == json.loads(c)


def test_count_row():
    code, text = run("count", "--n", "6", "--class", "all", "--method", "both")
    assert code == 0
    assert text.splitlines() == ["n,s,c,g,b,t,total", "6,46,410,300,89,272,720"]


def test_count_formula_and_triangle():
    _, text = run("count", "--n", "9", "--class", "b", "--method", "formula")
    assert text.splitlines()[-1] == "9,1597"
    _, text = run("count", "--n", "3", "--triangle")
    assert text.splitlines()[1:] == ["1,0,1", "2,0,1", "2,1,1", "3,0,1", "3,1,2", "3,2,2"]


def test_graph_components():
    code, text = run("graph", "--n", "5", "--class", "c", "--components")
    assert code == 0 and "3 components" in text
    assert "(5 2 4 1 3) (5 3 1 4 2)" in text


def test_graph_planarity():
    _, text = run("graph", "--n", "6", "--class", "b", "--planarity")
    assert "planar: true" in text
    _, text = run("graph", "--n", "7", "--class", "b", "--planarity")
    assert "planar: false (K3,3" in text


def test_graph_dot_is_deterministic(tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    run("graph", "--n", "5", "--class", "b", "--marks", "cgst", "--dot", str(a), "--components")
    run("graph", "--n", "5", "--class", "b", "--marks", "cgst", "--dot", str(b), "--components")
    assert a.read_bytes() == b.read_bytes()
    _, text = run("graph", "--n", "4", "--class", "b", "--json", "-")
    assert len(json.loads(text)["vertices"]) == 13


def test_polygon():
    _, text = run("polygon", "(7 3 6 1 5 2)", "--n", "8", "--format", "json")
    data = json.loads(text)
    assert data["reductions"] == []
    assert data["neighboring_intervals"]["3"] == {"minus": [], "plus": [4]}
    _, text = run("polygon", "6 1 4 2 5")
    assert "triangle class" in text


def test_complex():
    code, text = run("complex", "--n", "4", "--space", "P", "--class", "b",
                     "--euler", "--homology", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["counts"] == [13, 14, 2] and data["euler_characteristic"] == 1
    code, text = run("complex", "--n", "3", "--filtration")
    assert "collapsed" in text


def test_selftest_reports_published_discrepancies():
    code, text = run("selftest")
    assert code == 1
    assert text.count("FAIL") == 2
    code, text = run("selftest", "--known-errata")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("classify", "1 1 2"),
    ("graph", "--n", "10"),
    ("complex", "--n", "7"),
    ("polygon", "(2 1)"),
    ("count", "--n", "11", "--method", "census"),
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2
    assert "permsimple: error" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run("graph")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("count", "--n", "0")
    assert exc.value.code == 2


def test_unsafe_bounds_lifts_caps():
    code, _ = run("--unsafe-bounds", "complex", "--n", "3")
    assert code == 0


def test_invariant_failure_exits_1(monkeypatch, capsys):
    from permsimple import cli
    from permsimple.errors import InvariantViolation

    def boom(*a, **k):
        raise InvariantViolation("census |bS_3| = 4 but formula gives 5")

    monkeypatch.setattr(cli, "census", boom)
    assert run("count", "--n", "3")[0] == 1
    assert "invariant violated" in capsys.readouterr().err


@pytest.mark.skipif(shutil.which("permsimple") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["permsimple", "classify", "(5 3 1 4 2)"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "s=false,c=true,g=true,b=false,t=true" in res.stdout

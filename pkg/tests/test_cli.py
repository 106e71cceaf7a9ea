import io
import json

import pytest

from leafine.cli import run


@pytest.fixture
def stdin(monkeypatch):
    def feed(text):
        monkeypatch.setattr("sys.stdin", io.StringIO(text))

    return feed


def out_lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_seq(capsys):
    assert run(["seq", "8"]) == 0
    assert out_lines(capsys) == ["1", "2", "3", "6", "16", "82", "1193", "94506", "112034631"]


def test_seq_prints_huge_values(capsys):
    assert run(["seq", "24"]) == 0
    lines = out_lines(capsys)
    assert len(lines) == 25 and len(lines[-1]) > 10_000


def test_seq_digits_cap(capsys):
    assert run(["seq", "30", "--digits-cap", "1000"]) == 3
    err = capsys.readouterr().err
    assert err.startswith("error:DigitsCapExceeded:")


def test_count_stdin_leaf(capsys, stdin):
    stdin("L\n")
    assert run(["count", "-"]) == 0
    assert out_lines(capsys) == ["1"]


def test_count_methods_agree(capsys, stdin):
    tree = "(((L,L),L),((L,L),(L,L,L)),(L,(L,L)))\n"
    results = {}
    for method in ("brute", "dp", "auto"):
        stdin(tree)
        assert run(["count", "--method", method]) == 0
        results[method] = out_lines(capsys)
    assert results["brute"] == results["dp"] == results["auto"]


def test_count_multi_line_file(tmp_path, capsys):
    f = tmp_path / "trees.txt"
    f.write_text("# corpus\n((L,L),L)\n\n(L,L,(L,L))\n", encoding="utf-8")
    assert run(["count", str(f)]) == 0
    assert out_lines(capsys) == ["2: 3", "4: 5"]


def test_count_json(capsys, stdin):
    stdin("((L,L),L)\n(L,L)\n")
    assert run(["count", "--json", "--method", "dp"]) == 0
    rows = [json.loads(line) for line in out_lines(capsys)]
    assert [r["input_index"] for r in rows] == [0, 1]
    assert [r["count"] for r in rows] == [3, 2]
    assert rows[0]["leaf_count"] == 3 and rows[0]["method"] == "dp"
    assert set(rows[0]) == {"input_index", "line", "leaf_count", "method", "count", "elapsed_ms"}


def test_count_auto_switches_to_dp(capsys, stdin):
    stdin("((L,L),L,(L,L))\n")
    assert run(["count", "--json", "--budget", "10"]) == 0
    assert json.loads(out_lines(capsys)[0])["method"] == "dp"


def test_count_budget_exceeded(capsys, stdin):
    stdin("((L,L),L,(L,L))\n")
    assert run(["count", "--method", "brute", "--budget", "10"]) == 3
    assert capsys.readouterr().err.startswith("error:BudgetExceeded:")


def test_count_cap_overflow(capsys, stdin):
    stdin("((L,L),L,(L,L))\n")
    assert run(["count", "--method", "dp", "--cap", "3"]) == 3
    assert capsys.readouterr().err.startswith("error:DistinctSetOverflow:")


def test_enumerate_format(capsys, stdin):
    for method in ("brute", "dp"):
        stdin("((L,L),L)")
        assert run(["enumerate", "--method", method, "-"]) == 0
        assert out_lines(capsys) == ["count=3", "(L,(L,L))", "(L,L)", "L"]


def test_gen(capsys):
    assert run(["gen", "fib-leaf", "2"]) == 0
    assert run(["gen", "fib-leaf", "2", "--canonical"]) == 0
    assert run(["gen", "fib-knuth", "3"]) == 0
    assert out_lines(capsys) == ["((L,L),L)", "(L,(L,L))", "((L,L),L)"]


def test_gen_then_count_round_trip(capsys, stdin):
    run(["gen", "fib-leaf", "5"])
    text = capsys.readouterr().out
    stdin(text)
    assert run(["count"]) == 0
    assert out_lines(capsys) == ["82"]


def test_verify_6(capsys):
    assert run(["verify", "6"]) == 0
    lines = out_lines(capsys)
    assert lines[0].startswith("bounds") and lines[0].endswith("pass")
    row6 = [line for line in lines if line.startswith("n=6 ")][0]
    assert "recurrence=1193" in row6 and "brute=1193" in row6 and "dp=1193" in row6
    assert "rootset=pass" in row6 and row6.endswith("PASS")
    assert lines[-1] == "verify: PASS (7 rows)"


def test_constants_output(capsys):
    assert run(["constants", "--precision", "128", "--terms", "20", "--table-n", "12..14"]) == 0
    lines = out_lines(capsys)
    k2 = [line for line in lines if line.startswith("K2=")][0]
    assert k2.startswith("K2=1.48369689570172")
    assert any(line.startswith("K1_published=1.00001887227319") for line in lines)
    table = lines[lines.index(next(line for line in lines if line.startswith("n\t"))) + 1:]
    assert [row.split("\t")[0] for row in table] == ["12", "13", "14"]


def test_constants_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("LEAFINE_PRECISION_BITS", "96")
    assert run(["constants", "--table-n", "2..3"]) == 0
    assert "precision_bits=96" in out_lines(capsys)
    assert run(["constants", "--precision", "128", "--table-n", "2..3"]) == 0
    assert "precision_bits=128" in out_lines(capsys)


def test_predict(capsys):
    assert run(["predict", "8"]) == 0
    lines = dict(line.split("=", 1) for line in out_lines(capsys))
    assert lines["exact"] == "112034631"
    assert abs(float(lines["relative_error"])) < 1e-3
    assert run(["predict", "8", "--k1", "unity", "--by-leaves"]) == 0
    lines = dict(line.split("=", 1) for line in out_lines(capsys))
    assert lines["k1"] == "unity" and lines["exponent"] == "leaf-count"


def test_predict_large_n_skips_exact(capsys):
    assert run(["predict", "60"]) == 0
    lines = out_lines(capsys)
    assert not any(line.startswith("exact=") for line in lines)


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["seq"], ["seq", "-1"], ["gen", "other", "3"], ["constants", "--table-n", "5..2"],
     ["constants", "--precision", "32"], ["predict", "5", "--terms", "1"]],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    captured = capsys.readouterr()
    assert captured.err.startswith("error:UsageError:")
    assert captured.out == ""


def test_bad_tree_input(capsys, stdin):
    stdin("((L),L)\n")
    assert run(["count"]) == 2
    assert capsys.readouterr().err.startswith("error:UnaryVertexError:")
    stdin("(L,\n")
    assert run(["count"]) == 2
    assert capsys.readouterr().err.startswith("error:TreeSyntaxError:")


def test_missing_file(capsys, tmp_path):
    assert run(["count", str(tmp_path / "nope.txt")]) == 2
    assert capsys.readouterr().err.startswith("error:FileNotFoundError:")

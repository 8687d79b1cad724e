import json

from dlspringer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_weyr_and_jordan(tmp_path, capsys):
    code, out = run(capsys, "weyr", "--partition", "2,2", "--field", "2,1,1")
    assert code == 0
    path = tmp_path / "w.mat"
    path.write_text(out)
    assert run(capsys, "jordan", "--matrix", str(path)) == (0, "2,2\n")
    assert run(capsys, "beta", "--matrix", str(path)) == (0, "2,1,4,3\n")


def test_rs(capsys):
    assert run(capsys, "rs", "--P", "1,3;2,4", "--Q", "1,3;2,4") == (0, "2,1,4,3\n")
    assert run(capsys, "rs", "--perm", "3412") == (0, "1,2;3,4 1,2;3,4\n")


def test_count(capsys):
    assert run(capsys, "count", "--kind", "dl", "--w", "2,1,4,3", "--n", "4", "--q", "2", "--k", "2") == (0, "140\n")
    assert run(capsys, "count", "--kind", "intersection", "--partition", "2,2", "--n", "4", "--q", "2", "--k", "2") == (0, "4\n")
    code, out = run(capsys, "count", "--kind", "steinberg", "--partition", "2,1", "--tableau", "1,2;3",
                    "--n", "3", "--q", "2", "--k", "2")
    assert code == 0 and int(out) > 0


def test_enumerate_emits_json_lines(tmp_path, capsys):
    path = tmp_path / "flags.jsonl"
    code, _ = run(capsys, "enumerate", "--kind", "intersection", "--partition", "2,1", "--w", "1,3,2",
                  "--n", "3", "--q", "2", "--k", "2", "--emit", str(path))
    lines = path.read_text().splitlines()
    assert code == 0 and len(lines) == 2
    assert json.loads(lines[0])["field"] == [2, 1, 2]


def test_lefschetz(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("0 1\n1 0\n\n0 0\n0 0\n")
    assert run(capsys, "lefschetz", "--d", "2", "--r", "2", "--q", "2", "--w", "2,1,4,3", "--g", str(g), "--k", "1") == (0, "4\n")


def test_verify_json_and_exit_code(capsys):
    code, out = run(capsys, "verify", "thm-a", "--partition", "2,1", "--kmax", "1", "--json")
    assert code == 0
    rows = [json.loads(x) for x in out.splitlines()]
    assert rows and all(r["pass"] for r in rows)


def test_examples_command(capsys):
    code, out = run(capsys, "examples", "--q", "2", "--kmax", "1", "--text")
    assert code == 0 and out.count("PASS") == len(out.splitlines())


def test_reports_default_to_json(capsys):
    code, out = run(capsys, "verify", "dims", "--n-max", "3")
    assert code == 0 and all(json.loads(x)["pass"] for x in out.splitlines())


def test_bad_input_exit_code(capsys):
    assert main(["count", "--kind", "dl", "--n", "3", "--q", "6"]) == 2

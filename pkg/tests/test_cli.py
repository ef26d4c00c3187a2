import json

from prismcalc.main import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_help_without_command(capsys):
    code, out = invoke(capsys)
    assert code == 0
    assert "prism" in out


def test_usage_error_exit_code(capsys):
    code, _ = invoke(capsys, "witt", "arith")
    assert code == 2


def test_witt_arith(capsys):
    code, out = invoke(capsys, "witt", "arith", "--p", "2", "--r", "2", "--x", "1,0", "--y", "1,0")
    assert code == 0
    document = json.loads(out)
    assert document["command"] == "witt arith"
    assert document["result"]["op"] == "add"
    assert len(document["result"]["ghost"]) == 2
    assert document["warnings"] == []


def test_tc_groups_with_negative_degrees(capsys):
    code, out = invoke(capsys, "tc", "--model", "fp:p=2", "--r", "1", "--degrees", "-1..2")
    assert code == 0
    groups = {g["degree"]: g["module"] for g in json.loads(out)["result"]["groups"]}
    assert groups == {-1: "Z/2", 0: "Z/4", 1: "0", 2: "Z/2"}


def test_filtration_error_document(capsys):
    code, out = invoke(capsys, "nygaard", "divfrob", "--scalar", "--x", "2", "--i", "1", "--r", "2")
    assert code == 2
    assert json.loads(out)["error"]["code"] == "NOT_IN_FILTRATION"


def test_markdown_table(capsys):
    code, out = invoke(
        capsys, "--format", "markdown", "tr-table", "--model", "fp:p=2", "--r", "2", "--degrees", "0..2"
    )
    assert code == 0
    assert out.startswith("# prism tr-table")
    assert "| 2 | Z/4 | u_2 | 0 |" in out


def test_decalage_from_json(capsys):
    complex_text = json.dumps({"lo": 0, "ranks": [1, 1], "differentials": [[[4]]]})
    code, out = invoke(capsys, "decalage", "cohomology", "--complex", complex_text)
    assert code == 0
    cohomology = json.loads(out)["result"]["cohomology"]["cohomology"]
    assert cohomology["1"]["factors"] == ["4"]


def test_bad_complex_is_config_error(capsys):
    code, out = invoke(capsys, "decalage", "cohomology", "--complex", "{\"ranks\": [1]")
    assert code == 2
    assert json.loads(out)["error"]["code"] == "CONFIG_ERROR"


def test_seed_makes_runs_reproducible(capsys):
    argv = ("--seed", "3", "decalage", "cohomology", "--random", "2,2")
    first = invoke(capsys, *argv)
    second = invoke(capsys, *argv)
    assert first == second
    assert json.loads(first[1])["config"]["seed"] == 3


def test_drw_strategies(capsys):
    code, out = invoke(capsys, "drw", "normalize", "--p", "2", "--r", "2", "--expr", "F(V([x]))", "--check")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["strategies_agree"] is True
    assert result["normal_form"]["text"] == "2*[x]"


def test_output_file(capsys, tmp_path):
    path = tmp_path / "table.json"
    code, out = invoke(capsys, "--output", str(path), "witt", "table", "--p", "2", "--r", "2", "--counts-only")
    assert code == 0
    assert out == ""
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["result"]["term_counts"]["add"] == [2, 3]


def test_config_file_sets_model(capsys, tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("[model]\nkind = charp\np = 2\nN = 4\nK = 2\nM = 64\n", encoding="utf-8")
    code, out = invoke(capsys, "--config", str(path), "ainf", "xi", "--r", "2")
    assert code == 0
    assert json.loads(out)["result"]["model"]["kind"]


def test_witt_table_rejects_composite_prime(capsys):
    code, out = invoke(capsys, "witt", "table", "--p", "4", "--r", "2")
    assert code == 2
    assert json.loads(out)["error"]["code"] == "INVALID_PRIME"

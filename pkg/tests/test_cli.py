import json
from pathlib import Path

import pytest

from limcone.cli import main

GOLDEN = Path(__file__).parent / "golden"

BINARY_CHAIN = json.dumps(
    {
        "system": {"dynkin": "C", "ranks": {"prefix": [1], "rule": "step1"}},
        "levels": [[{"w": [2], "parent": None}], [{"w": [2, 2], "parent": 0}, {"w": [2, 4], "parent": 0}]],
        "tail": "chain",
    }
)
FULL_BINARY = BINARY_CHAIN.replace('"chain"', '{"kary": 2}')


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize(
    "name,argv",
    [
        ("roots_C3.json", ["roots", "--type", "C", "--rank", "3"]),
        ("smooth_C_11.json", ["smooth", "--type", "C", "--ranks", "1", "--rule", "step1", "--coeffs", "1,1"]),
        ("tree_smooth_binary_chain.json", ["tree", "smooth", "--tree", BINARY_CHAIN]),
        ("admissible_5_2.json", ["admissible", "--row", "5_2", "--k", "2", "--m", "3"]),
    ],
)
def test_golden_outputs(capsys, name, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_output_is_deterministic(capsys):
    first = run(capsys, "measure", "atoms", "--tree", FULL_BINARY, "--measure", '{"kind":"point","path":[0,1]}')
    second = run(capsys, "measure", "atoms", "--tree", FULL_BINARY, "--measure", '{"kind":"point","path":[0,1]}')
    assert first == second and first[0] == 0


def test_roots_content(capsys):
    code, data = run_json(capsys, "roots", "--type", "C", "--rank", "3")
    assert data["fundamental_weights"] == [["2", "2", "2"], ["0", "2", "2"], ["0", "0", "2"]]
    assert len(data["positive_roots"]) == 9


def test_weights_and_restrict(capsys):
    code, data = run_json(capsys, "weights", "--type", "C", "--rank", "3", "--coeffs", "1,0,2")
    assert data["weight"] == ["2", "2", "6"] and data["dominant_integral"]
    code, data = run_json(capsys, "weights", "--type", "C", "--rank", "3", "--weight", "2,2,6")
    assert data["fundamental_coords"] == ["1", "0", "2"]
    code, out, _ = run(capsys, "restrict", "--type", "C", "--rank", "4", "--weight", "0,2,2,2", "--to", "2")
    assert code == 0 and "(0, 2)" in out
    code, out, err = run(capsys, "restrict", "--type", "C", "--rank", "2", "--weight", "0,2", "--to", "3")
    assert code == 1 and "RankError" in err


def test_smooth_verdicts(capsys):
    code, data = run_json(capsys, "smooth", "--type", "C", "--ranks", "1", "--rule", "step1", "--coeffs", "1,1")
    assert data["smooth"] and data["bound"] == "4"
    code, data = run_json(
        capsys, "smooth", "--type", "C", "--ranks", "1", "--rule", "step1", "--coeffs", "", "--tail", "constant:1"
    )
    assert code == 0 and not data["smooth"]
    system = '{"dynkin":"C","ranks":{"prefix":[2],"rule":"constant"},"table_row":"5_1"}'
    code, data = run_json(capsys, "smooth", "--system", system, "--coeffs", "1")
    assert data["smooth"] and data["limit_rank"] == 2


def test_toml_system(capsys, tmp_path):
    f = tmp_path / "sys.toml"
    f.write_text('dynkin = "C"\ntable_row = "11"\n[ranks]\nprefix = [1]\nrule = "step1"\n')
    code, data = run_json(capsys, "smooth", "--system", str(f), "--coeffs", "0,1")
    assert code == 0 and data["bound"] == "2"


def test_tree_commands(capsys):
    code, out, _ = run(capsys, "tree", "validate", "--tree", BINARY_CHAIN)
    assert code == 0
    code, data = run_json(capsys, "tree", "smooth", "--tree", FULL_BINARY)
    assert code == 0 and not data["smooth"]
    code, data = run_json(capsys, "tree", "cylinder", "--tree", BINARY_CHAIN, "--node", "2:1")
    assert code == 0
    code, out, _ = run(capsys, "tree", "cylinder", "--tree", BINARY_CHAIN)
    assert code == 2


def test_measure_and_rep_commands(capsys):
    code, data = run_json(capsys, "measure", "atoms", "--tree", BINARY_CHAIN, "--measure", '{"kind":"rec"}')
    assert [a["mass"] for a in data["atoms"]] == ["1/2", "1/2"]
    code, out, _ = run(
        capsys, "measure", "norm", "--tree", BINARY_CHAIN, "--measure", '{"kind":"rec"}', "--level", "2", "--values", "2,0"
    )
    assert code == 0 and "2" in out
    bad = '{"kind":"explicit","mass":{"1:0":1,"2:0":"1/2","2:1":"1/3"}}'
    code, out, _ = run(capsys, "measure", "validate", "--tree", BINARY_CHAIN, "--measure", bad)
    assert code == 1
    code, out, _ = run(
        capsys, "rep", "same", "--tree", FULL_BINARY, "--measure", '{"kind":"rec"}', "--other", '{"kind":"point","path":[0,1]}'
    )
    assert code == 0 and "inequivalent" in out
    code, data = run_json(capsys, "rep", "restrict", "--tree", BINARY_CHAIN, "--measure", '{"kind":"rec"}', "--level", "2")
    assert code == 0


def test_admissible_full_reports_failed_checks(capsys):
    code, data = run_json(capsys, "admissible", "--row", "8", "--full")
    assert code == 0
    assert all(a["verdict"] == "admissible" for a in data["admissibility"])
    assert [e["form"] for e in data["embedding"]] == ["FormThree"]


def test_error_exit_codes(capsys):
    code, out, err = run(capsys, "tree", "validate", "--tree", '{"system": {"dynkin": "C",\n "ranks": [1]}, "levels": [[{"w": [2] "parent": null}]]}')
    assert code == 1 and "line 2" in err
    code, data = run_json(
        capsys,
        "tree",
        "validate",
        "--tree",
        BINARY_CHAIN.replace("[2, 4]", "[4, 2]"),
    )
    assert code == 1 and data["error"] == "InvalidTree" and data["violations"][0]["level"] == 2
    code, out, err = run(capsys, "bogus")
    assert code == 2
    code, out, err = run(capsys, "admissible", "--row", "12", "--k", "1", "--m", "2")
    assert code == 1
    code, out, err = run(capsys, "tree", "validate", "--tree", "/nonexistent/file.json")
    assert code == 1

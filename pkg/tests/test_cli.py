import json

import pytest

from fa2re.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_convert(capsys):
    code, out, _ = run(capsys, "convert", "--canonical", "12312312", "--finals", "3", "--variant", "seawn", "--json")
    assert code == 0
    result = json.loads(out)
    assert result["size"] == 12 and result["order"] == [1, 2]
    code, out, _ = run(capsys, "convert", "--canonical", "12312312", "--finals", "3")
    assert code == 0 and "size=29" in out


def test_convert_every_heuristic(capsys):
    for h in ("s", "random", "dm", "cs", "cd", "cc", "hw", "bf"):
        code, out, _ = run(capsys, "convert", "--canonical", "1232004232", "--finals", "3,4", "--heuristic", h, "--json")
        assert code == 0 and json.loads(out)["size"] >= 16


def test_oracle_bf(capsys):
    code, out, _ = run(capsys, "oracle", "bf", "--canonical", "1232004232", "--finals", "3,4")
    assert code == 0
    result = json.loads(out)
    assert (result["best_size"], result["worst_size"]) == (16, 126)


@pytest.mark.parametrize(
    "argv",
    [
        ["convert", "--canonical", "2112", "--finals", "1"],
        ["convert", "--canonical", "12312312", "--finals", "9"],
        ["oracle", "bf", "--canonical", "1232004232", "--finals", "3,4", "--max-states", "3"],
        ["bench", "ratio", "--n", "0", "--k", "2"],
    ],
)
def test_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code != 0
    assert err.startswith("fa2re: error:")


def test_sample(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "--n", "5", "--k", "2", "--count", "4", "--seed", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# n=5 k=2") and len(lines) == 5
    path = tmp_path / "s.txt"
    run(capsys, "sample", "--n", "5", "--k", "2", "--count", "4", "--seed", "8", "--out", str(path))
    assert path.read_text() == out


@pytest.mark.parametrize("experiment", ["bridge", "ratio", "compare"])
def test_bench(capsys, tmp_path, experiment):
    out_csv = tmp_path / f"{experiment}.csv"
    code, out, _ = run(
        capsys, "bench", experiment, "--n", "6", "--k", "2", "--count", "10", "--seed", "1", "--out", str(out_csv)
    )
    assert code == 0
    assert json.loads(out)
    meta = json.loads(out_csv.with_suffix(".json").read_text())
    assert meta["experiment"] == experiment and meta["count"] == 10
    assert 0 < meta["acceptance_rate"] <= 1
    assert len(out_csv.read_text().splitlines()) > 1

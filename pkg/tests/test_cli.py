import json
import subprocess
import sys

import pytest

from quadlie.cli import main
from quadlie.dblext import partition_map
from quadlie.serialize import dumps, skew_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def build(tmp_path, capsys, flag, value, name):
    path = tmp_path / name
    code, _ = run(capsys, "build", flag, value, "-o", str(path))
    assert code == 0
    return str(path)


class TestBuild:
    @pytest.mark.parametrize(
        "flag,value",
        [
            ("--name", "g3:2"),
            ("--name", "g4"),
            ("--name", "g4:3/5"),
            ("--name", "g5"),
            ("--name", "g6"),
            ("--name", "g:1:2"),
            ("--jordan", "even:2"),
            ("--jordan", "odd:2"),
            ("--jordan", "scaled:2:i"),
            ("--partition", "3,2,2"),
        ],
    )
    def test_outputs_pass_check(self, tmp_path, capsys, flag, value):
        path = build(tmp_path, capsys, flag, value, "g.json")
        code, out = run(capsys, "check", path)
        report = json.loads(out)
        assert code == 0 and report["invariant_form"] and report["jacobi"]

    def test_stdout(self, capsys):
        code, out = run(capsys, "build", "--name", "g5")
        assert code == 0 and json.loads(out)["dim"] == 5

    def test_skew_file(self, tmp_path, capsys):
        skew = tmp_path / "c.json"
        skew.write_text(dumps(skew_to_json(partition_map([3]))))
        code, out = run(capsys, "build", "--skew", str(skew))
        assert code == 0 and json.loads(out)["dim"] == 5

    @pytest.mark.parametrize("args", [["--name", "g7"], ["--jordan", "even:x"], ["--partition", "a,b"]])
    def test_bad_flags(self, capsys, args):
        code, out = run(capsys, "build", *args)
        assert code == 2 and json.loads(out)["error"] == "parse"

    @pytest.mark.parametrize("args", [["--partition", "2"], ["--jordan", "even:1"], ["--name", "g4:0"]])
    def test_domain_flags(self, capsys, args):
        code, out = run(capsys, "build", *args)
        assert code == 1 and json.loads(out)["error"] == "domain"


class TestCommands:
    def test_dup_g4(self, tmp_path, capsys):
        path = build(tmp_path, capsys, "--name", "g4", "g4.json")
        code, out = run(capsys, "dup", path)
        assert code == 0
        assert json.loads(out) == {"dup": 3, "class": "S3", "dim_V_I": 3, "dim_W_I": 3}

    def test_enumerate(self, capsys):
        code, out = run(capsys, "enumerate-partitions", "4")
        assert code == 0
        assert json.loads(out)["partitions"] == [[1, 1, 1, 1], [2, 2], [3, 1]]

    def test_iso_lambda_mu_family(self, tmp_path, capsys):
        a = build(tmp_path, capsys, "--name", "g:1:2", "a.json")
        b = build(tmp_path, capsys, "--name", "g:1:1", "b.json")
        code, out = run(capsys, "iso", a, b)
        assert code == 0 and json.loads(out)["isomorphic"] is False
        c = build(tmp_path, capsys, "--name", "g:1:-1", "c.json")
        code, out = run(capsys, "iso", c, b)
        assert json.loads(out)["isomorphic"] is True

    def test_invariant(self, tmp_path, capsys):
        path = build(tmp_path, capsys, "--partition", "3,2,2", "p.json")
        code, out = run(capsys, "invariant", path)
        assert code == 0 and json.loads(out) == {"nilpotent": [3, 2, 2], "invertible": []}

    def test_qdim(self, tmp_path, capsys):
        path = build(tmp_path, capsys, "--name", "g6", "g6.json")
        code, out = run(capsys, "qdim", path)
        report = json.loads(out)
        assert code == 0 and report["quadratic_dimension"] == 7 and report["formula_holds"] is True

    def test_extract(self, tmp_path, capsys):
        path = build(tmp_path, capsys, "--name", "g5", "g5.json")
        code, out = run(capsys, "extract", path)
        report = json.loads(out)
        assert code == 0 and report["core_dim"] == 3 and report["cbar_rank"] == 2


class TestErrors:
    def test_missing_file(self, capsys):
        code, out = run(capsys, "check", "/nonexistent/file.json")
        assert code == 2
        assert out.count("\n") == 1 and json.loads(out)["error"] == "parse"

    def test_bad_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, out = run(capsys, "dup", str(p))
        assert code == 2

    def test_degenerate_gram(self, tmp_path, capsys):
        p = tmp_path / "deg.json"
        p.write_text(json.dumps({"dim": 2, "gram": [["1", "1"], ["1", "1"]], "brackets": []}))
        code, _ = run(capsys, "check", str(p))
        assert code == 2

    def test_domain_error_abelian(self, tmp_path, capsys):
        p = tmp_path / "ab.json"
        p.write_text(json.dumps({"dim": 2, "gram": [["1", "0"], ["0", "1"]], "brackets": []}))
        code, out = run(capsys, "dup", str(p))
        assert code == 1 and json.loads(out)["type"] == "AbelianError"

    def test_invalid_algebra_is_domain_error(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({
            "dim": 3,
            "gram": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            "brackets": [{"i": 0, "j": 1, "c": ["1", "0", "0"]}],
        }))
        code, out = run(capsys, "dup", str(p))
        assert code == 1

    def test_usage_error(self, capsys):
        code, out = run(capsys, "frobnicate")
        assert code == 2 and json.loads(out)["error"] == "parse"
        code, out = run(capsys)
        assert code == 2


def test_deterministic_subprocess(tmp_path):
    """Byte-identical reports across separate interpreter runs."""
    out = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "quadlie.cli", "build", "--jordan", "scaled:2:1+i"],
            capture_output=True,
            check=True,
        )
        path = tmp_path / "j.json"
        path.write_bytes(proc.stdout)
        proc = subprocess.run(
            [sys.executable, "-m", "quadlie.cli", "invariant", str(path)],
            capture_output=True,
            check=True,
        )
        out.append(proc.stdout)
    assert out[0] == out[1]
    assert json.loads(out[0])["invertible"][0]["lambda"] == "-1-1i"

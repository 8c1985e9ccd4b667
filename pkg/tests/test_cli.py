import json
import subprocess
import sys

import pytest

from monogenic.cli import main
from monogenic.config import ENV_VAR


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


EXAMPLE = ["--q0", "3", "--q1", "5", "--d", "2", "--m", "11", "--q2", "13"]


class TestExitCodes:
    def test_construct(self, capsys):
        code, data = run_json(capsys, "construct", *EXAMPLE, "--p", "19")
        assert code == 0
        assert data["F"][6] == "452760" and data["F"][0] == "27797"
        assert data["eisenstein_primes"] == ["7", "11"]

    def test_construct_violation(self, capsys):
        code, data = run_json(capsys, "construct", "--q0", "3", "--q1", "5", "--d", "2", "--m", "5", "--q2", "13")
        assert code == 2
        assert any("11 ∤ m" in v["message"] for v in data["violations"])

    def test_help(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["construct", "--help"])
        assert exc.value.code == 0
        assert "usage" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["construct", "--q0", "x"],
        ["construct"],
        ["no-such-command"],
        [],
        ["stirling"],
        ["newton", "[1, 0, 1]"],
    ])
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 64

    def test_malformed_polynomial_names_position(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["discriminant", '[1, "x2"]'])
        assert exc.value.code == 64
        assert "position 4" in capsys.readouterr().err

    def test_verify_example(self, capsys):
        code, data = run_json(capsys, "verify-monogenic", *EXAMPLE)
        assert code == 0 and data["verdict"] == "monogenic" and data["params"]["p"] == "19"

    def test_verify_non_squarefree_m(self, capsys):
        code, data = run_json(capsys, "verify-monogenic", "--q0", "3", "--q1", "5", "--d", "2", "--m", "121",
                              "--q2", "13")
        assert code == 2 and any(v["condition"] == "m-squarefree" for v in data["violations"])

    def test_verify_oversize_is_inconclusive(self, capsys):
        code, data = run_json(capsys, "verify-monogenic", "--q0", "3", "--q1", "5", "--d", "3", "--m", "2431",
                              "--q2", "13", "--trial-bound", "50", "--rho-iterations", "1")
        assert code == 3
        assert data["squarefree_status"] == "true-up-to-bound(50)"
        assert data["failing_link"] == "variable-part-squarefree"

    def test_non_monogenic(self, capsys):
        code, data = run_json(capsys, "non-monogenic", "--p", "7", "--s", "2")
        assert code == 0 and data["verdict"] == "non-monogenic"
        assert data["jk"]["total_lower_bound"] == "3" and data["ore"]["total_lower_bound"] == "3"

    def test_non_monogenic_irregular(self, capsys):
        code, data = run_json(capsys, "non-monogenic", "--p", "37", "--s", "2")
        assert code == 2 and data["error"] == "hypothesis-violation"

    def test_non_monogenic_without_witness(self, capsys):
        code, data = run_json(capsys, "non-monogenic", "--p", "13", "--s", "2", "--witness-prime-bound", "7")
        assert code == 3 and data["verdict"] == "inconclusive"


class TestCommands:
    def test_discriminant(self, capsys):
        code, data = run_json(capsys, "discriminant", "[-5,0,1]")
        assert code == 0 and data["discriminant"] == "20"
        assert data["factored"] == {"sign": "1", "factors": {"2": "2", "5": "1"}, "cofactor": "1",
                                    "sf_bound": "1000000"}

    def test_discriminant_constant(self, capsys):
        code, _ = run_json(capsys, "discriminant", "[4]")
        assert code == 2

    def test_stirling_row(self, capsys):
        code, data = run_json(capsys, "stirling", "--row", "4")
        assert code == 0 and data["row"] == ["0", "6", "11", "6", "1"]

    def test_stirling_table_and_cap(self, capsys):
        code, data = run_json(capsys, "stirling", "--table", "3")
        assert data["rows"] == [["1"], ["0", "1"], ["0", "1", "1"], ["0", "2", "3", "1"]]
        code, _, err = run(capsys, "stirling", "--row", "500")
        assert code == 64 and "cap" in err
        code, data = run_json(capsys, "stirling", "--row", "250", "--table-cap", "300")
        assert code == 0 and len(data["row"]) == 251

    def test_stirling_valuations(self, capsys):
        code, data = run_json(capsys, "stirling", "--valuations", "7")
        assert code == 0 and data["mismatches"] == []
        code, _ = run_json(capsys, "stirling", "--valuations", "37")
        assert code == 2

    def test_bernoulli(self, capsys):
        code, data = run_json(capsys, "bernoulli", "12")
        assert data["values"][:3] == ["1/1", "-1/2", "1/6"] and data["values"][12] == "-691/2730"

    def test_newton_ascii_and_svg(self, capsys, tmp_path):
        svg = tmp_path / "poly.svg"
        code, data = run_json(capsys, "newton", "[49, 0, 1764, 1624, 735, 175, 21, 1]", "--p", "7",
                              "--svg", str(svg))
        assert code == 0
        assert data["polygon"]["vertices"] == [["0", "2"], ["3", "1"], ["7", "0"]]
        assert data["phi_index"] == "3"
        assert "o" in data["ascii"] and "+" in data["ascii"]
        text = svg.read_text()
        assert text.startswith("<svg") and "<polyline" in text

    def test_newton_bad_phi(self, capsys):
        code, _ = run_json(capsys, "newton", "[1, 0, 1]", "--p", "7", "--phi", "[1, 2]")
        assert code == 2
        code, _ = run_json(capsys, "newton", "[1, 0, 1]", "--p", "8")
        assert code == 2

    def test_index_bound(self, capsys):
        code, data = run_json(capsys, "index-bound", "[49, 0, 1764, 1624, 735, 175, 21, 1]", "--p", "7")
        assert code == 0
        assert data["ore"]["total_lower_bound"] == "3" and data["jk"]["total_lower_bound"] == "3"
        code, data = run_json(capsys, "index-bound", "[7, 0, 1]", "--p", "7", "--method", "jk")
        assert data["jk"]["total_lower_bound"] == "0" and "ore" not in data
        code, _ = run_json(capsys, "index-bound", "[1, 0, 2]", "--p", "7")
        assert code == 2

    def test_density(self, capsys):
        code, data = run_json(capsys, "density", *EXAMPLE, "--bound", "50")
        assert code == 0 and 0 < float(data["approx"]) <= 1
        assert all(w["predicted_ok"] for w in data["solubility_witnesses"])

    def test_search_primes(self, capsys):
        code, data = run_json(capsys, "search-primes", *EXAMPLE, "--limit", "40", "--max-results", "2")
        assert code == 0 and [h["p"] for h in data["admissible"]] == ["19", "23"]
        code, data = run_json(capsys, "search-primes", *EXAMPLE, "--limit", "18")
        assert code == 3 and data["admissible"] == []


class TestOutput:
    def test_byte_identical(self, capsys):
        first = run(capsys, "verify-monogenic", *EXAMPLE, "--p", "19")[1]
        second = run(capsys, "verify-monogenic", *EXAMPLE, "--p", "19")[1]
        assert first == second

    def test_keys_sorted_and_integers_strings(self, capsys):
        out = run(capsys, "non-monogenic", "--p", "11", "--s", "3")[1]
        data = json.loads(out)
        assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"

        def walk(v):
            assert not isinstance(v, (int, float)) or isinstance(v, bool)
            if isinstance(v, dict):
                assert list(v) == sorted(v)
                for x in v.values():
                    walk(x)
            elif isinstance(v, list):
                for x in v:
                    walk(x)

        walk(data)

    def test_text_format_derived_from_json(self, capsys):
        code, out, _ = run(capsys, "stirling", "--row", "4", "--format", "text")
        assert code == 0 and out == "n: 4\nrow:\n  [0, 6, 11, 6, 1]\n"


class TestConfig:
    def test_config_flag(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"output_format": "text"}))
        code, out, _ = run(capsys, "stirling", "--row", "2", "--config", str(cfg))
        assert out.startswith("n: 2")

    def test_env_var(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"table_cap": 3}))
        monkeypatch.setenv(ENV_VAR, str(cfg))
        code, _, err = run(capsys, "stirling", "--row", "4")
        assert code == 64

    def test_flag_overrides_env(self, capsys, tmp_path, monkeypatch):
        env_cfg = tmp_path / "env.json"
        env_cfg.write_text(json.dumps({"table_cap": 3}))
        flag_cfg = tmp_path / "flag.json"
        flag_cfg.write_text(json.dumps({"table_cap": 10}))
        monkeypatch.setenv(ENV_VAR, str(env_cfg))
        code, _, _ = run(capsys, "stirling", "--row", "4", "--config", str(flag_cfg))
        assert code == 0

    @pytest.mark.parametrize("content", ["{", "[]", '{"bogus": 1}', '{"trial_bound": 0}', '{"output_format": "xml"}'])
    def test_bad_config(self, capsys, tmp_path, content):
        cfg = tmp_path / "c.json"
        cfg.write_text(content)
        code, _, err = run(capsys, "stirling", "--row", "2", "--config", str(cfg))
        assert code == 64 and "error" in err

    def test_missing_config(self, capsys, tmp_path):
        code, _, _ = run(capsys, "stirling", "--row", "2", "--config", str(tmp_path / "none.json"))
        assert code == 64


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "monogenic", "discriminant", "[1, 1, 1]"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["discriminant"] == "-3"

"""Integration tests for the command-line interface

Each test invokes run() with argv and checks the exit code and the output
captured from stdout and stderr.
"""
import json

import pytest
import yaml

from src import __version__
from src.cli.commands import EXIT_ERROR, EXIT_FALSE, EXIT_TRUE, run
from src.cli.mspace_file import parse_mspace
from src.core.schema import SUITE_JSON_KEYS
from src.linalg.matrix import Matrix
from src.spaces.construct import affine_translate, companion_line, nt_space, p_alt
from tests.fixtures.sample_data import (
    AFFINE_2ALT2_F3_TEXT,
    AFFINE_ALT2_F3_TEXT,
    AFFINE_NT2_F3_TEXT,
    LINE_F3_TEXT,
    NON_PRIME_FIELD_TEXT,
    NT2_F3_TEXT,
    NT3_F3_TEXT,
    write_mspace,
)

IDENTITY_LINE_F3_TEXT = "field 3\nn 2\nspace 1\n1 0\n0 1\n"


@pytest.fixture
def invoke(config_file, capsys):
    """Run the CLI with the test config; returns (exit code, stdout, stderr)"""
    def _invoke(*args):
        code = run(list(args) + ["--config", config_file])
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return _invoke


@pytest.fixture
def files(tmp_path):
    texts = {
        "line": LINE_F3_TEXT,
        "nt2": NT2_F3_TEXT,
        "nt3": NT3_F3_TEXT,
        "identity": IDENTITY_LINE_F3_TEXT,
        "affine_nt2": AFFINE_NT2_F3_TEXT,
        "affine_alt2": AFFINE_ALT2_F3_TEXT,
        "affine_2alt2": AFFINE_2ALT2_F3_TEXT,
        "non_prime": NON_PRIME_FIELD_TEXT,
    }
    return {name: write_mspace(tmp_path, f"{name}.mspace", text) for name, text in texts.items()}


@pytest.mark.integration
class TestClassifyCommand:

    def test_json(self, invoke, files):
        code, out, _ = invoke("classify", files["nt3"], "--json")
        assert code == EXIT_TRUE
        data = json.loads(out)
        assert set(data) == {"field", "n", "blocks", "block_lines", "basis_change", "verified"}
        assert [b["size"] for b in data["blocks"]] == [1, 1, 1]
        assert data["block_lines"] == []
        assert data["verified"] is True
        assert data["basis_change"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_global_flags_before_subcommand(self, config_file, files, capsys):
        code = run(["--json", "--config", config_file, "classify", files["line"]])
        data = json.loads(capsys.readouterr().out)
        assert code == EXIT_TRUE
        assert data["blocks"] == [{"size": 2, "gram": [[1, 0], [0, 1]]}]
        assert data["block_lines"] == [[[0, 1], [2, 0]]]

    def test_text(self, invoke, files):
        code, out, _ = invoke("classify", files["nt3"])
        assert code == EXIT_TRUE
        assert "blocks: [1, 1, 1]" in out
        assert "verified: True" in out

    def test_text_shows_block_line(self, invoke, files):
        code, out, _ = invoke("classify", files["line"])
        assert code == EXIT_TRUE
        assert "block line 1" in out

    def test_affine_input_is_normalized(self, invoke, files):
        code, out, _ = invoke("classify", files["affine_nt2"], "--json")
        assert code == EXIT_TRUE
        assert [b["size"] for b in json.loads(out)["blocks"]] == [1, 1]

    def test_isotropic_gram(self, invoke, files):
        code, out, err = invoke("classify", files["identity"])
        assert code == EXIT_ERROR
        assert out == ""
        assert err.startswith("ClassificationFailedError: ")

    def test_non_prime_field(self, invoke, files):
        code, _, err = invoke("classify", files["non_prime"])
        assert code == EXIT_ERROR
        assert "ParseError" in err and "line 1" in err

    def test_missing_file(self, invoke, tmp_path):
        code, _, err = invoke("classify", str(tmp_path / "absent.mspace"))
        assert code == EXIT_ERROR
        assert "does not exist" in err


@pytest.mark.integration
class TestCheckCommand:

    def test_trivial(self, invoke, files):
        code, out, _ = invoke("check", files["line"], "--json")
        data = json.loads(out)
        assert code == EXIT_TRUE
        assert data["trivial_spectrum"] is True
        assert data["witness"] is None
        assert data["maximal"] is True
        assert data["irreducible"] is True

    def test_witness(self, invoke, files):
        code, out, _ = invoke("check", files["identity"], "--json", "--no-irreducibility")
        data = json.loads(out)
        assert code == EXIT_FALSE
        assert data["trivial_spectrum"] is False
        assert data["witness"]["matrix"] == [[1, 0], [0, 1]]
        assert data["irreducible"] is None

    def test_text(self, invoke, files):
        code, out, _ = invoke("check", files["nt2"])
        assert code == EXIT_TRUE
        assert "trivial spectrum:      True" in out
        assert "irreducible:           False" in out


@pytest.mark.integration
class TestSimilarAndEquiv:

    def test_nt_vs_companion_line(self, invoke, files):
        code, out, _ = invoke("similar", files["nt2"], files["line"])
        assert code == EXIT_FALSE
        assert "not similar" in out

    def test_similar_to_itself(self, invoke, files):
        code, out, _ = invoke("similar", files["nt3"], files["nt3"], "--json")
        assert code == EXIT_TRUE
        assert json.loads(out) == {"similar": True}

    def test_similar_rejects_affine(self, invoke, files):
        code, _, err = invoke("similar", files["affine_nt2"], files["nt2"])
        assert code == EXIT_ERROR
        assert err.startswith("UsageError: ")

    def test_equivalent(self, invoke, files):
        code, out, _ = invoke("equiv", files["affine_alt2"], files["affine_2alt2"], "--json")
        assert code == EXIT_TRUE
        assert json.loads(out) == {"equivalent": True}

    def test_not_equivalent(self, invoke, files):
        code, out, _ = invoke("equiv", files["affine_alt2"], files["affine_nt2"])
        assert code == EXIT_FALSE
        assert "not equivalent" in out

    def test_equiv_rejects_linear(self, invoke, files):
        code, _, err = invoke("equiv", files["nt2"], files["affine_nt2"])
        assert code == EXIT_ERROR
        assert "UsageError" in err


@pytest.mark.integration
class TestConstructCommand:

    def test_nt_to_stdout(self, invoke, f3):
        code, out, _ = invoke("construct", "nt", "--field", "3", "-n", "3")
        assert code == EXIT_TRUE
        assert out.startswith("# nt over F_3\n")
        assert parse_mspace(out) == nt_space(3, f3)

    def test_palt(self, invoke, f3):
        code, out, _ = invoke("construct", "palt", "--field", "3", "--gram", "1 1; 2 1")
        assert code == EXIT_TRUE
        assert parse_mspace(out) == p_alt(Matrix.from_rows(f3, [[1, 1], [2, 1]]))

    def test_affine_to_file(self, invoke, tmp_path, f3):
        target = tmp_path / "i_nt2.mspace"
        code, out, _ = invoke("construct", "nt", "--field", "3", "-n", "2", "--affine", "-o", str(target), "--json")
        assert code == EXIT_TRUE
        assert json.loads(out) == {
            "kind": "nt",
            "field": "F_3",
            "n": 2,
            "dim": 1,
            "affine": True,
            "output": str(target),
        }
        assert parse_mspace(target.read_text(encoding="utf-8")) == affine_translate(nt_space(2, f3))

    def test_vee_sizes_then_classify(self, invoke, tmp_path):
        target = str(tmp_path / "vee.mspace")
        assert invoke("construct", "vee", "--field", "3", "--sizes", "1,2", "-o", target)[0] == EXIT_TRUE
        code, out, _ = invoke("classify", target, "--json")
        assert code == EXIT_TRUE
        assert [b["size"] for b in json.loads(out)["blocks"]] == [1, 2]

    def test_vee_grams(self, invoke):
        code, out, _ = invoke("construct", "vee", "--field", "5", "--gram", "1", "--gram", "1 0; 0 2", "--json")
        assert code == EXIT_TRUE
        assert json.loads(out)["dim"] == 3

    def test_companion(self, invoke, f3):
        code, out, _ = invoke("construct", "companion", "--field", "3", "--a", "0", "--b", "2")
        assert code == EXIT_TRUE
        assert parse_mspace(out) == companion_line(0, 2, f3)

    @pytest.mark.parametrize("args, error", [
        (["alt", "--field", "4", "-n", "2"], "ParseError"),
        (["alt", "--field", "3"], "UsageError"),
        (["palt", "--field", "3", "--gram", "1 0; 0"], "ParseError"),
        (["palt", "--field", "3", "--gram", "1 1; 1 1"], "SingularMatrixError"),
        (["vee", "--field", "3", "--sizes", "1,x"], "ParseError"),
        (["companion", "--field", "3", "--a", "1"], "UsageError"),
    ])
    def test_errors(self, invoke, args, error):
        code, _, err = invoke("construct", *args)
        assert code == EXIT_ERROR
        assert err.startswith(f"{error}: ")


@pytest.mark.integration
class TestVerifyCommand:

    def test_f2_counterexample(self, invoke):
        code, out, _ = invoke("verify", "f2-counterexample")
        assert code == EXIT_TRUE
        assert "f2-counterexample" in out
        assert "passed" in out

    def test_single_suite_json(self, invoke):
        code, out, _ = invoke("verify", "f2-counterexample", "--json")
        data = json.loads(out)
        assert code == EXIT_TRUE
        assert tuple(sorted(data)) == tuple(sorted(SUITE_JSON_KEYS))
        assert data["suite"] == "f2-counterexample"
        assert data["failures"] == []

    def test_json_is_reproducible(self, invoke):
        first = invoke("verify", "anisotropy", "--json", "--seed", "5")[1]
        second = invoke("verify", "anisotropy", "--json", "--seed", "5")[1]
        assert first == second
        assert json.loads(first)["seed"] == 5

    def test_several_suites(self, invoke):
        code, out, _ = invoke("verify", "action1,centralizer", "--json", "--samples", "2")
        data = json.loads(out)
        assert code == EXIT_TRUE
        assert [r["suite"] for r in data] == ["action1", "centralizer"]
        assert data[1]["params"]["samples"] == 2

    def test_list(self, invoke):
        code, out, _ = invoke("verify", "--list")
        assert code == EXIT_TRUE
        assert "classification-roundtrip" in out
        assert "meta" in out

    def test_unknown_suite(self, invoke):
        code, _, err = invoke("verify", "bogus")
        assert code == EXIT_ERROR
        assert "Unknown suite: bogus" in err

    def test_no_suites(self, invoke):
        code, _, err = invoke("verify")
        assert code == EXIT_ERROR
        assert "No suites specified" in err

    def test_export(self, tmp_path, test_config, capsys):
        export_dir = tmp_path / "exports"
        test_config["export"] = {"enabled": True, "format": "both", "directory": str(export_dir),
                                 "include_summary": True}
        config_path = tmp_path / "export.yaml"
        config_path.write_text(yaml.safe_dump(test_config), encoding="utf-8")
        assert run(["verify", "f2-counterexample", "--config", str(config_path)]) == EXIT_TRUE
        capsys.readouterr()
        assert len(list(export_dir.glob("reports_*.json"))) == 1
        assert len(list(export_dir.glob("reports_*.csv"))) == 1
        assert len(list(export_dir.glob("summary_*.json"))) == 1


@pytest.mark.integration
class TestInputErrors:
    """Unreadable inputs and settings exit 2 with the error class on stderr"""

    def test_invalid_utf8_file(self, invoke, tmp_path):
        path = tmp_path / "latin1.mspace"
        path.write_bytes(b"field 3\nn 1\nspace 1\n\xff\n")
        code, out, err = invoke("check", str(path))
        assert code == EXIT_ERROR
        assert out == ""
        assert err.startswith("ParseError: ")

    def test_malformed_config(self, tmp_path, capsys):
        config_path = tmp_path / "broken.yaml"
        config_path.write_text("enumeration: {jobs: 1\n", encoding="utf-8")
        assert run(["verify", "f2-counterexample", "--config", str(config_path)]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("ConfigError: ")

    def test_non_integer_jobs_env(self, invoke, files, monkeypatch):
        monkeypatch.setenv("MSPACE_JOBS", "abc")
        code, _, err = invoke("classify", files["line"])
        assert code == EXIT_ERROR
        assert err.startswith("ConfigError: ")
        assert "MSPACE_JOBS" in err

    def test_missing_config(self, tmp_path, capsys):
        assert run(["verify", "f2-counterexample", "--config", str(tmp_path / "none.yaml")]) == EXIT_ERROR
        capsys.readouterr()


@pytest.mark.integration
def test_version(capsys):
    assert run(["--version"]) == EXIT_TRUE
    assert __version__ in capsys.readouterr().out

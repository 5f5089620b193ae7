import json
import subprocess
import sys

import pytest

from unilcalc.cli import main
from unilcalc.linking import (
    LinkingForm,
    Submodule,
    witt_four_term_instance,
)
from unilcalc.polynomials import Polynomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def hyperbolic_json(q1=(0, 0), q2=(0, 0)):
    return LinkingForm(2, ((0, 1), (1, 0)), (q1, q2)).to_json_dict()


class TestReduce:
    def test_versch_example(self, capsys):
        code, out, _ = run(capsys, "reduce", "versch", "2*t^2")
        assert code == 0 and out == "2*t\n"

    def test_idem_examples(self, capsys):
        assert run(capsys, "reduce", "idem", "t^2")[1] == "t\n"
        assert run(capsys, "reduce", "idem", "t^4+t^1")[1] == "0\n"

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "reduce", "idem", "t^2", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc == {"status": "value", "kind": "idem", "input": "t^2", "canonical": "t"}

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "reduce", "idem", "t^^2")
        assert code == 1 and "position" in err

    def test_elapsed_on_stderr_only(self, capsys):
        _, out, err = run(capsys, "reduce", "idem", "t")
        assert "elapsed" not in out and "elapsed" in err


class TestSw:
    @pytest.mark.parametrize(
        "literal,expected",
        [
            ("j1[t]", "j1[t] + j2[t]"),
            ("j2[t]", "j2[t]"),
            ("j1[2*t]", "j1[2*t]"),
            ("0", "0"),
        ],
    )
    def test_examples(self, capsys, literal, expected):
        code, out, _ = run(capsys, "sw", literal)
        assert code == 0 and out == expected + "\n"

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "sw", "q9[t]")
        assert code == 1 and "position" in err


class TestArf:
    def test_nonzero_class(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        path.write_text(json.dumps(hyperbolic_json((0, 0b10), (0, 1))))
        code, out, _ = run(capsys, "arf", str(path))
        assert code == 0 and out == "1*t^1\n"

    def test_zero_class_json(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        path.write_text(json.dumps(hyperbolic_json()))
        code, out, _ = run(capsys, "arf", str(path), "--format", "json")
        doc = json.loads(out)
        assert doc["zero"] is True and doc["arf"] == "0"

    def test_odd_form_rejected(self, capsys, tmp_path):
        t, one = Polynomial.t("Z"), Polynomial.one("Z")
        from unilcalc.linking import make_N

        path = tmp_path / "f.json"
        path.write_text(json.dumps(make_N(t, one).to_json_dict()))
        code, _, err = run(capsys, "arf", str(path))
        assert code == 1 and "even" in err


class TestWittCheck:
    def test_hyperbolic_has_witness(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        path.write_text(json.dumps(hyperbolic_json()))
        code, out, _ = run(capsys, "witt-check", str(path), "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["witt_trivial_witness"] is True
        assert doc["lagrangian"] == [["1*t^0", "0"]]

    def test_nontrivial_class_has_none(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        path.write_text(json.dumps(hyperbolic_json((0, 0b10), (0, 1))))
        code, out, _ = run(capsys, "witt-check", str(path), "--bound", "3", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["witt_trivial_witness"] is False and doc["lagrangian"] is None

    def test_sublagrangian_pipeline(self, capsys, tmp_path):
        G, S = witt_four_term_instance(Polynomial.t("Z"))
        path = tmp_path / "f.json"
        path.write_text(
            json.dumps({"form": G.to_json_dict(), "sublagrangian": S.to_json_dict()})
        )
        for jobs in ("1", "2"):
            code, out, _ = run(
                capsys, "witt-check", str(path), "--bound", "2", "--jobs", jobs, "--format", "json"
            )
            doc = json.loads(out)
            assert code == 0
            assert doc["rank"] == 8 and doc["reduced_rank"] == 4
            assert doc["even"] is True and doc["arf"] == "0"
            assert doc["witt_trivial_witness"] is True

    def test_bad_sublagrangian_fails(self, capsys, tmp_path):
        form = hyperbolic_json()
        path = tmp_path / "f.json"
        path.write_text(
            json.dumps({"form": form, "sublagrangian": {"generators": [["1*t^0", "1*t^0"]]}})
        )
        code, out, _ = run(capsys, "witt-check", str(path))
        assert code == 1 and "failed" in out


class TestVerifyPaper:
    def test_quick_pass_with_report(self, capsys, tmp_path):
        report = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify-paper", "--degree", "1", "--report", str(report))
        assert code == 0
        assert "all fixtures passed" in out
        doc = json.loads(report.read_text())
        assert doc["status"] == "pass"
        assert len(doc["fixtures"]) == 7
        assert all(f["status"] == "pass" for f in doc["fixtures"])

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--degree", "1", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["status"] == "pass"
        assert doc["degree"] == 1 and doc["negative_control"] is False

    def test_negative_control_fails_with_location(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--degree", "1", "--negative-control")
        assert code == 1
        assert "FAIL at" in out and "entry" in out

    def test_seed_changes_nothing(self, capsys):
        a = run(capsys, "verify-paper", "--degree", "1", "--seed", "0", "--format", "json")[1]
        b = run(capsys, "verify-paper", "--degree", "1", "--seed", "5", "--format", "json")[1]
        da, db = json.loads(a), json.loads(b)
        assert da["status"] == db["status"] == "pass"


class TestClassify:
    def test_n4_row_count(self, capsys):
        code, out, _ = run(capsys, "classify", "4", "--degree-cutoff", "1")
        assert code == 0
        assert len(out.strip().split("\n")) == 19

    def test_n6_row_count(self, capsys):
        code, out, _ = run(capsys, "classify", "6")
        assert code == 0
        assert len(out.strip().split("\n")) == 11

    def test_small_n_rejected(self, capsys):
        code, _, err = run(capsys, "classify", "3")
        assert code == 1 and "n > 3 required" in err

    def test_byte_identical(self, capsys):
        a = run(capsys, "classify", "4", "--degree-cutoff", "1")[1]
        b = run(capsys, "classify", "4", "--degree-cutoff", "1")[1]
        assert a == b

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "classify", "4", "--degree-cutoff", "1", "--format", "json")
        doc = json.loads(out)
        assert len(doc["rows"]) == 18 and doc["epsilon"] == -1

    def test_bar_folds(self, capsys):
        plain = run(capsys, "classify", "7", "--z-bound", "1")[1]
        folded = run(capsys, "classify", "7", "--z-bound", "1", "--bar")[1]
        assert len(folded.split("\n")) < len(plain.split("\n"))

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "table.csv"
        code, out, _ = run(capsys, "classify", "6", "--output", str(target))
        assert code == 0 and out == ""
        assert len(target.read_text().strip().split("\n")) == 11

    def test_cache_round_trip(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("UNILCALC_CACHE_DIR", str(tmp_path))
        first = run(capsys, "classify", "4", "--degree-cutoff", "1")[1]
        files = list(tmp_path.glob("classify-*.csv"))
        assert len(files) == 1
        assert files[0].read_text() == first
        second = run(capsys, "classify", "4", "--degree-cutoff", "1")[1]
        assert second == first
        # a hit must short-circuit recomputation: served bytes come from the file
        files[0].write_text("sentinel\n")
        third = run(capsys, "classify", "4", "--degree-cutoff", "1")[1]
        assert third == "sentinel\n"

    def test_cache_key_varies_with_parameters(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("UNILCALC_CACHE_DIR", str(tmp_path))
        run(capsys, "classify", "4", "--degree-cutoff", "1")
        run(capsys, "classify", "4", "--degree-cutoff", "1", "--format", "json")
        run(capsys, "classify", "6")
        assert len(list(tmp_path.glob("classify-*"))) == 3


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "unilcalc", "--version"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "unilcalc 0.1.0"

    def test_missing_subcommand_exits_nonzero(self):
        proc = subprocess.run(
            [sys.executable, "-m", "unilcalc"], capture_output=True, text=True
        )
        assert proc.returncode == 2

import csv
import json

import pytest

from expfunctor import parse_functor
from su2 import k_groups_su2
from su3 import k_groups_su3
from twk_cli import (EXIT_BAD_DSL, EXIT_FAILED, EXIT_HYPOTHESIS, EXIT_OK, EXIT_UNWRITABLE, BATCH_HEADERS, emit_json,
                     emit_tex, main, report_from_json)


def test_su2_json_report(capsys):
    assert main(["--group", "su2", "--functor", "ext_full^5", "--emit", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["schema_version"] == "1.0"
    assert data["group"] == "su2"
    assert data["rank"] == 2
    assert data["inverted_integer"] == 1
    assert data["relation"] == "x^2 = x + 1"


def test_json_output_is_deterministic(capsys):
    main(["--group", "su3", "--functor", "ext_full^3", "--emit", "json"])
    first = capsys.readouterr().out
    main(["--group", "su3", "--functor", "ext_full^3", "--emit", "json"])
    assert capsys.readouterr().out == first


def test_su3_text_report(capsys):
    assert main(["--group", "su3", "--functor", "ext_top^3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "chi1 = s1" in out
    assert "dim K0 (x) Q = 1" in out
    assert "✗" not in out


def test_reports_survive_json():
    for report in (k_groups_su2(parse_functor("ext_full^4")), k_groups_su3(parse_functor("ext_top^4"))):
        assert report_from_json(emit_json(report)) == report
    with pytest.raises(ValueError):
        report_from_json('{"schema_version": "0.9"}')


def test_tex_table():
    tex = emit_tex(k_groups_su2(parse_functor("ext_full^3")))
    assert tex.startswith(r"\begin{tabular}")
    assert r"\rho + 2" in tex
    tex = emit_tex(k_groups_su3(parse_functor("ext_full^3")))
    assert r"\mathrm{Sym}^{1}(\rho)" in tex


@pytest.mark.parametrize("group", ["su2", "su3"])
def test_hypothesis_failure_exit_code(group, capsys):
    assert main(["--group", group, "--functor", "poly:2"]) == EXIT_HYPOTHESIS
    assert "⚠" in capsys.readouterr().err


def test_bad_functor_exit_code(capsys):
    assert main(["--group", "su2", "--functor", "ext_full^"]) == EXIT_BAD_DSL
    err = capsys.readouterr().err
    assert "ext_full^" in err
    assert "         ^" in err


def test_unwritable_output(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    code = main(["--group", "su2", "--functor", "ext_top^2", "--output", str(blocker / "report.txt")])
    assert code == EXIT_UNWRITABLE


def test_output_file(tmp_path):
    target = tmp_path / "reports" / "yang_lee.json"
    assert main(["--group", "su2", "--functor", "ext_full^5", "--emit", "json", "--output", str(target)]) == EXIT_OK
    assert json.loads(target.read_text())["g2_saturated"] == "rho^2 + rho - 1"


def test_verify_su2(capsys):
    assert main(["--group", "su2", "--functor", "ext_full^3", "--mode", "verify", "--oracle-points", "30"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "VERIFICATION: ext_full^3 (su2)" in out
    assert "✗" not in out


def test_verify_with_the_scaled_oracle(capsys):
    assert main(["--group", "su2", "--functor", "poly:(2*t)", "--mode", "verify", "--scaled-oracle",
                 "--oracle-points", "30"]) == EXIT_OK
    assert "✗" not in capsys.readouterr().out


def test_su2_content_inverted_by_f_rho(capsys):
    assert main(["--group", "su2", "--functor", "poly:(2 + 2*t)", "--emit", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["k1"] == "0"
    assert data["content"] == 1
    assert data["removed_factor"] == "2"


def test_verify_needs_the_hypothesis():
    assert main(["--group", "su2", "--functor", "poly:2", "--mode", "verify"]) == EXIT_HYPOTHESIS


def test_export_is_su3_only():
    assert main(["--group", "su2", "--functor", "ext_full", "--mode", "export-matrices"]) == EXIT_FAILED


def test_configuration_error(monkeypatch, capsys):
    monkeypatch.setenv("TWK_STEP_LIMIT", "many")
    assert main(["--group", "su2", "--functor", "ext_full"]) == EXIT_FAILED
    assert "TWK_STEP_LIMIT" in capsys.readouterr().err


def test_missing_functor():
    with pytest.raises(SystemExit):
        main(["--group", "su2"])


def test_batch_sweep(tmp_path, capsys):
    batch = tmp_path / "functors.txt"
    batch.write_text("ext_full^3\n# comment\n\npoly:2\next_fool\n")
    target = tmp_path / "sweep.csv"
    assert main(["--group", "su2", "--batch", str(batch), "--output", str(target)]) == EXIT_FAILED
    assert "BATCH COMPLETE" in capsys.readouterr().out

    with open(target, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        assert reader.fieldnames == BATCH_HEADERS
        rows = list(reader)
    assert [row["line"] for row in rows] == ["1", "4", "5"]
    assert [row["status"] for row in rows] == ["ok", "hypothesis_failed", "bad_dsl"]
    assert rows[0]["generators"] == "rho + 1"
    assert rows[0]["rank_or_dim"] == "1"
    assert rows[0]["inverted_integer"] == "1"


def test_batch_uses_the_output_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("TWK_OUTPUT_DIR", str(tmp_path / "runs"))
    batch = tmp_path / "functors.txt"
    batch.write_text("ext_top\next_top^2\next_top^3\n")
    assert main(["--group", "su3", "--batch", str(batch)]) == EXIT_OK
    written = list((tmp_path / "runs").glob("twk_batch_su3_*.csv"))
    assert len(written) == 1


@pytest.mark.slow
def test_export_matrices(capsys):
    assert main(["--group", "su3", "--functor", "ext_full", "--mode", "export-matrices"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["A"]) == 9
    assert len(data["B"]) == 6


@pytest.mark.slow
def test_verify_su3(capsys):
    assert main(["--group", "su3", "--functor", "ext_top^2", "--mode", "verify", "--oracle-points", "20"]) == EXIT_OK
    assert "✗" not in capsys.readouterr().out

import json

import pytest

from weildec.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def test_gauss_json(capsys):
    assert main(["gauss", "1", "0", "5", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["level"] == 5
    assert doc["norm_sq"] == "5/1"


def test_decompose_reports_factors(capsys):
    assert main(["decompose", "--level", "9", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["factors"]) == 3


def test_charsum(capsys):
    assert main(["charsum", "--level", "4", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["match"] is True


def test_census(capsys):
    assert main(["census", "--n", "2", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) > 1


def test_orbits(capsys):
    assert main(["orbits", "--level", "6"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "delta,size"
    assert len(lines) == 5


def test_semiclassical_csv(capsys):
    assert main(["semiclassical", "--level", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("level")


def test_verify_suite_ok(capsys):
    assert main(["verify", "crt", "--max-level", "6"]) == EXIT_OK


def test_verify_unknown_suite():
    assert main(["verify", "nonsense"]) == EXIT_USAGE


def test_oversized_level_is_usage_error():
    assert main(["charsum", "--level", "100"]) == EXIT_USAGE


def test_out_file_writes(tmp_path, capsys):
    target = tmp_path / "result.json"
    code = main(["gauss", "1", "0", "3", "--format", "json", "--out", str(target)])
    assert code == EXIT_OK
    doc = json.loads(target.read_text())
    assert doc["level"] == 3


def test_output_is_deterministic(capsys):
    main(["decompose", "--level", "12", "--format", "json"])
    first = capsys.readouterr().out
    main(["decompose", "--level", "12", "--format", "json"])
    assert capsys.readouterr().out == first


def test_exit_codes_are_distinct():
    assert {EXIT_OK, EXIT_MISMATCH, EXIT_USAGE} == {0, 1, 2}

"""Tests for the ``spk`` command line."""

import json

import pytest

from spk.cli import build_parser, main
from spk.test_structure_io import WEAKENING_NET


def test_prove_text_output(capsys):
    assert main(["prove", "--logic", "classical", "~A, B->A => ~B"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("sequent: ~A, B->A => ~B  [classical]")
    assert "verdict: provable (agreement)" in out


def test_prove_structured_output(capsys):
    assert main(["prove", "--logic", "nl", "--format", "structured", "((A , (A\\B)/C) , C) => B"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["logic"] == "nl"
    assert payload["verdicts"]["net"]["failure"] == "boundary"
    assert payload["verdicts"]["sequent"]["provable"] is False


def test_prove_reports_syntax_errors(capsys):
    assert main(["prove", "--logic", "mill", "A @ B => A"]) == 2
    assert "error:" in capsys.readouterr().out


def test_export_to_file(tmp_path):
    out = tmp_path / "matrix.txt"
    assert main(["export", "--logic", "classical", "--kind", "matrix", "--out", str(out), "~A, B->A => ~B"]) == 0
    assert out.read_text(encoding="utf-8") == "[[A+] [B+ ; A-]] [B-]\n"


def test_export_unprovable_net_fails(capsys):
    assert main(["export", "--logic", "l", "--kind", "net", "A.B => B.A"]) == 2
    assert capsys.readouterr().out == ""


def test_check_structure_file(tmp_path, capsys):
    path = tmp_path / "net.txt"
    path.write_text(WEAKENING_NET, encoding="utf-8")
    assert main(["check", "--format", "structured", str(path)]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["is_net"] is True
    assert result["contracts_to_vertex"] is True
    assert result["edges"] == 10


def test_check_missing_file(tmp_path):
    assert main(["check", str(tmp_path / "missing.txt")]) == 2


def test_crosscheck_sample(capsys):
    code = main(
        ["crosscheck", "--logic", "mll", "--atoms", "2", "--depth", "1", "--connectives", "1", "--sample", "15", "--seed", "3"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "sequents: 15" in out
    assert "disagreements: 0" in out


def test_crosscheck_structured(capsys):
    code = main(["crosscheck", "--logic", "l", "--depth", "1", "--connectives", "1", "--format", "structured"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["summary"]["disagreements"] == 0
    assert len(payload["reports"]) == payload["summary"]["total"]


def test_parser_rejects_unknown_logic():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["prove", "--logic", "modal", "A => A"])

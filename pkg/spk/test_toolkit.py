"""Tests for the method runner behind the CLI."""

import pytest

from spk.errors import NotProvable
from spk.families import enumerate_sequents
from spk.logic import LogicId
from spk.syntax import parse_sequent
from spk.toolkit import MATRIX, NET, NET_CONTRACTION, SEQUENT, MethodVerdict, ProofToolkit, RunReport


@pytest.fixture
def toolkit():
    return ProofToolkit()


def test_classical_example_all_methods_agree(toolkit):
    report = toolkit.prove_text("~A, B->A => ~B", LogicId.CLASSICAL)
    assert list(report.verdicts) == [SEQUENT, MATRIX, NET]
    assert all(v.provable for v in report.verdicts.values())
    assert report.agreement
    assert report.provable is True
    assert report.exit_code() == 0
    assert report.verdicts[MATRIX].detail == "{<A+, A->, <B+, B->}"
    assert report.counters["paths"] == 2
    assert set(report.timings) == {SEQUENT, MATRIX, NET}


def test_lambek_runs_without_matrix(toolkit):
    report = toolkit.prove_text("A.B => B.A", "l")
    assert list(report.verdicts) == [SEQUENT, NET]
    assert report.verdicts[NET].failure == "nonplanar"
    assert report.provable is False
    assert report.exit_code() == 1


def test_single_method(toolkit):
    report = toolkit.prove_text("X => Y-o(X*Y)", "mill", method=NET)
    assert list(report.verdicts) == [NET]
    assert report.exit_code() == 0


def test_parse_errors_land_in_the_report(toolkit):
    report = toolkit.prove_text("A * B => C", "classical")
    assert report.error is not None
    assert "'*'" in report.error
    assert report.exit_code() == 2


def test_disagreement_is_an_error():
    report = RunReport(
        sequent="A => A",
        logic=LogicId.MLL,
        verdicts={SEQUENT: MethodVerdict(provable=True), NET: MethodVerdict(provable=False)},
        agreement=False,
    )
    assert report.provable is None
    assert report.exit_code() == 2


def test_resource_limit_is_inconclusive():
    report = ProofToolkit(budget=1).prove_text("(A->B)->A => A", "classical", method=SEQUENT)
    assert report.verdicts[SEQUENT].failure == "resource-limit"
    assert report.inconclusive
    assert report.exit_code() == 2


def test_classical_net_bound_is_not_a_refutation(monkeypatch, toolkit):
    monkeypatch.setenv("SPK_MAX_WEAKENINGS", "0")
    monkeypatch.setenv("SPK_MAX_CONTRACTIONS", "0")
    report = toolkit.prove_text("A|B => A&B", "classical")
    net = report.verdicts[NET]
    assert net.provable is None
    assert net.failure == "bounded"
    assert net.detail.startswith("no net within 0 weakening and 0 contraction links")
    assert report.verdicts[SEQUENT].provable is False
    assert report.agreement
    assert report.exit_code() == 1


def test_audit_counts_structures(toolkit):
    report = toolkit.run(parse_sequent("A@B, (B*C)^ => C-oA", "mll"), audit=True)
    assert list(report.verdicts) == [SEQUENT, MATRIX, NET, NET_CONTRACTION]
    assert report.counters["structures"] == 1
    assert report.counters["dr_contraction_mismatches"] == 0
    assert 0 < report.step_ratio <= 1
    assert report.agreement


def test_exports(toolkit):
    assert toolkit.export("A@B, (B*C)^ => C-oA", "mll", "matrix") == "[A- ; B-] [B+ ; C+] [C- A+]\n"
    derivation = toolkit.export("A => B/(A\\B)", "l", "derivation")
    assert derivation.splitlines()[0] == "/R: A => B/(A\\B)"
    assert toolkit.export("X => Y-o(X*Y)", "mill", "net").startswith("logic mill\n")
    assert toolkit.export("X => Y-o(X*Y)", "mill", "dot").startswith("graph ")
    with pytest.raises(NotProvable):
        toolkit.export("X => (Y-oX)*Y", "mill", "net")
    with pytest.raises(NotProvable):
        toolkit.export("A.B => B.A", "l", "derivation")


def test_crosscheck_summary(toolkit):
    sequents = list(enumerate_sequents(LogicId.MILL, atoms=2, depth=1, width=2, connectives=1))
    summary, reports = toolkit.crosscheck(sequents, LogicId.MILL)
    assert summary.total == len(sequents) == len(reports)
    assert summary.disagreements == 0
    assert summary.errors == 0
    assert summary.dr_contraction_mismatches == 0
    assert summary.max_step_ratio <= 1
    assert summary.exit_code() == 0
    assert [r.sequent for r in reports] == [str(s) for s in sequents]


def test_parallel_crosscheck_keeps_order(toolkit):
    sequents = list(enumerate_sequents(LogicId.NL, atoms=2, depth=1, width=2, connectives=1))[:12]
    serial, serial_reports = toolkit.crosscheck(sequents, LogicId.NL)
    parallel, parallel_reports = toolkit.crosscheck(sequents, LogicId.NL, jobs=2)
    assert [r.sequent for r in parallel_reports] == [r.sequent for r in serial_reports]
    assert [r.provable for r in parallel_reports] == [r.provable for r in serial_reports]
    assert parallel.agreements == serial.agreements


def test_classical_crosscheck_skips_net_synthesis(toolkit):
    assert toolkit.methods_for(LogicId.CLASSICAL, audit=True) == [SEQUENT, MATRIX]
    assert toolkit.methods_for(LogicId.CLASSICAL) == [SEQUENT, MATRIX, NET]
    assert toolkit.methods_for(LogicId.NL, audit=True) == [SEQUENT, NET]


def test_export_net_and_axiom_derivation(toolkit):
    net = toolkit.export("A@B, (B*C)^ => C-oA", "mll", "net")
    assert sum(line.startswith("axlink ") for line in net.splitlines()) == 3
    assert toolkit.export("A => A", "mll", "derivation").splitlines() == ["Axiom: A => A"]


def test_empty_family_passes(toolkit):
    summary, reports = toolkit.crosscheck([], LogicId.MLL)
    assert summary.total == 0
    assert reports == []
    assert summary.exit_code() == 0


def test_structured_report_round_trips(toolkit):
    report = toolkit.prove_text("A@B, (B*C)^ => C-oA", "mll")
    assert RunReport.model_validate_json(report.model_dump_json()) == report

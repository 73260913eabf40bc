"""Runs the proof methods side by side and reports on their agreement.

Every CLI command goes through ``ProofToolkit``: it parses the sequent, runs
the sequent prover, the matrix method and the proof-net search as far as the
logic supports them, and collects verdicts, timings and counters in a
``RunReport``. Method failures are caught here and recorded in the report.
"""

from __future__ import annotations

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from pydantic import BaseModel, Field

from spk import config
from spk.errors import NotProvable, ResourceLimit, SpkError, SynthesisBound
from spk.logic import LogicId, Sequent, decompose
from spk.matrix import build_matrix, linear_spanning_set, path_count, render_matrix, spanning_set
from spk.proofnet import (
    build_skeleton,
    contraction_check,
    dr_check,
    enumerate_linkings,
    find_proof_net,
)
from spk.sequent_prover import format_derivation, prove
from spk.structure_io import to_dot, write_structure
from spk.syntax import parse_sequent, print_sequent

logger = logging.getLogger(__name__)

SEQUENT, MATRIX, NET, NET_CONTRACTION = "sequent", "matrix", "net", "net-contraction"
METHODS = (SEQUENT, MATRIX, NET)
EXPORT_KINDS = ("matrix", "net", "dot", "derivation")


class MethodVerdict(BaseModel):
    provable: Optional[bool] = None
    failure: Optional[str] = None
    detail: Optional[str] = None


class RunReport(BaseModel):
    sequent: str
    logic: LogicId
    verdicts: dict[str, MethodVerdict] = Field(default_factory=dict)
    agreement: bool = True
    timings: dict[str, float] = Field(default_factory=dict)
    counters: dict[str, int] = Field(default_factory=dict)
    step_ratio: float = 0.0
    error: Optional[str] = None

    def conclusive(self) -> list[bool]:
        return [v.provable for v in self.verdicts.values() if v.provable is not None]

    @property
    def provable(self) -> Optional[bool]:
        found = self.conclusive()
        if not found or not self.agreement:
            return None
        return found[0]

    @property
    def inconclusive(self) -> bool:
        return self.error is None and not self.conclusive()

    def exit_code(self) -> int:
        """0 provable, 1 not provable, 2 for errors, disagreement or no verdict."""
        if self.error is not None or self.provable is None:
            return 2
        return 0 if self.provable else 1


class CrosscheckSummary(BaseModel):
    logic: LogicId
    total: int = 0
    agreements: int = 0
    disagreements: int = 0
    resource_limits: int = 0
    errors: int = 0
    provable: int = 0
    structures: int = 0
    dr_contraction_mismatches: int = 0
    step_bound_violations: int = 0
    max_step_ratio: float = 0.0
    disagreeing: list[str] = Field(default_factory=list)

    def add(self, report: RunReport) -> None:
        self.total += 1
        self.structures += report.counters.get("structures", 0)
        self.dr_contraction_mismatches += report.counters.get("dr_contraction_mismatches", 0)
        self.step_bound_violations += report.counters.get("step_bound_violations", 0)
        self.max_step_ratio = max(self.max_step_ratio, report.step_ratio)
        if report.error is not None:
            self.errors += 1
            self.disagreeing.append(f"{report.sequent}: {report.error}")
        elif not report.agreement:
            self.disagreements += 1
            self.disagreeing.append(report.sequent)
        else:
            self.agreements += 1
            if report.provable:
                self.provable += 1
        if any(v.failure == "resource-limit" for v in report.verdicts.values()):
            self.resource_limits += 1

    def exit_code(self) -> int:
        return 0 if self.disagreements == 0 and self.errors == 0 else 2


class ProofToolkit:
    """Class to run and compare the proof methods on sequents."""

    def __init__(self, budget: Optional[int] = None, planar_only: Optional[bool] = None):
        self.budget = budget
        self.planar_only = planar_only

    def methods_for(self, logic: LogicId, method: str = "all", audit: bool = False) -> list[str]:
        if method != "all":
            return [method]
        methods = [SEQUENT]
        if not logic.lambek:
            methods.append(MATRIX)
        # classical net synthesis is bounded, so families are judged by the matrix
        if not (audit and logic is LogicId.CLASSICAL):
            methods.append(NET)
        if audit and logic in (LogicId.MLL, LogicId.MILL):
            methods.append(NET_CONTRACTION)
        return methods

    def run_sequent(self, sequent: Sequent, report: RunReport) -> MethodVerdict:
        verdict = prove(sequent, self.budget if self.budget is not None else config.node_budget())
        report.counters["nodes"] = verdict.stats.nodes
        report.counters["max_depth"] = verdict.stats.max_depth
        detail = f"derivation of height {verdict.witness.height}" if verdict.witness else None
        return MethodVerdict(provable=verdict.provable, detail=detail)

    def run_matrix(self, sequent: Sequent, report: RunReport) -> MethodVerdict:
        matrix = build_matrix(decompose(sequent))
        report.counters["paths"] = path_count(matrix)
        if sequent.logic is LogicId.CLASSICAL:
            found = spanning_set(matrix)
        else:
            found = linear_spanning_set(matrix)
        if found is None:
            return MethodVerdict(provable=False, failure="no spanning set")
        return MethodVerdict(provable=True, detail=str(found))

    def run_net(self, sequent: Sequent, report: RunReport) -> MethodVerdict:
        try:
            search = find_proof_net(sequent, self.planar_only)
        except SynthesisBound as e:
            # a larger bound might still find a net, so this is no refutation
            logger.info(f"classical net search stopped at its bounds for {report.sequent}")
            return MethodVerdict(failure="bounded", detail=f"{e}; bounded synthesis never refutes")
        report.counters["linkings"] = search.linkings
        report.counters["switchings"] = search.switchings
        if search.found:
            return MethodVerdict(provable=True, detail=f"{len(search.structure.matching)} axiom links")
        verdict = search.verdict
        return MethodVerdict(provable=False, failure=verdict.failure.value, detail=repr(verdict.witness))

    def run_net_contraction(self, sequent: Sequent, report: RunReport) -> MethodVerdict:
        """Net existence decided by the contraction criterion alone (MLL and MILL)."""
        for structure in enumerate_linkings(build_skeleton(decompose(sequent))):
            if contraction_check(structure).is_net:
                return MethodVerdict(provable=True)
        return MethodVerdict(provable=False, failure="no linking contracts to a vertex")

    def audit_structures(self, sequent: Sequent, report: RunReport) -> None:
        """Run both net criteria on every linking and record where they part."""
        if sequent.logic is LogicId.CLASSICAL:
            return
        structures = mismatches = violations = 0
        ratio = 0.0
        for structure in enumerate_linkings(build_skeleton(decompose(sequent))):
            structures += 1
            by_switching = dr_check(structure)
            by_contraction = contraction_check(structure)
            if by_switching.is_net != by_contraction.is_net:
                mismatches += 1
                logger.warning(f"❌ DR and contraction disagree on {report.sequent}: {structure.matching}")
            if by_contraction.steps > by_contraction.edges:
                violations += 1
            if by_contraction.edges:
                ratio = max(ratio, by_contraction.steps / by_contraction.edges)
        report.counters["structures"] = structures
        report.counters["dr_contraction_mismatches"] = mismatches
        report.counters["step_bound_violations"] = violations
        report.step_ratio = ratio
        if mismatches or violations:
            report.agreement = False

    def run(self, sequent: Sequent, method: str = "all", audit: bool = False) -> RunReport:
        report = RunReport(sequent=print_sequent(sequent), logic=sequent.logic)
        runners = {
            SEQUENT: self.run_sequent,
            MATRIX: self.run_matrix,
            NET: self.run_net,
            NET_CONTRACTION: self.run_net_contraction,
        }
        for name in self.methods_for(sequent.logic, method, audit):
            started = time.perf_counter()
            try:
                report.verdicts[name] = runners[name](sequent, report)
            except ResourceLimit as e:
                logger.warning(f"❌ {name} gave up on {report.sequent}: {e}")
                report.verdicts[name] = MethodVerdict(failure="resource-limit", detail=str(e))
            except SpkError as e:
                logger.error(f"❌ {name} failed on {report.sequent}: {e}")
                report.error = f"{name}: {e}"
            report.timings[name] = round(time.perf_counter() - started, 6)
        if audit:
            self.audit_structures(sequent, report)
        report.agreement = report.agreement and len(set(report.conclusive())) <= 1
        return report

    def prove_text(self, text: str, logic: LogicId, method: str = "all") -> RunReport:
        """Parse ``text`` and run the requested methods on it.

        Args:
            text: Sequent in the ASCII grammar of ``logic``.
            logic: Logic to read and prove the sequent in.
            method: One of ``sequent``, ``matrix``, ``net`` or ``all``.

        Returns:
            A RunReport; parse errors land in its ``error`` field.
        """
        logic = LogicId(logic)
        try:
            sequent = parse_sequent(text, logic)
        except SpkError as e:
            logger.error(f"❌ Cannot read {text!r}: {e}")
            return RunReport(sequent=text, logic=logic, agreement=False, error=str(e))
        return self.run(sequent, method)

    def export(self, text: str, logic: LogicId, kind: str) -> str:
        """Render the requested artifact for a sequent.

        Raises:
            NotProvable: a net or derivation is requested for an unprovable sequent.
        """
        sequent = parse_sequent(text, logic)
        if kind == "matrix":
            return render_matrix(build_matrix(decompose(sequent))) + "\n"
        if kind == "derivation":
            verdict = prove(sequent, self.budget if self.budget is not None else config.node_budget())
            if not verdict.provable:
                raise NotProvable(text, "a derivation")
            return format_derivation(verdict.witness) + "\n"
        if kind in ("net", "dot"):
            search = find_proof_net(sequent, self.planar_only)
            if not search.found:
                raise NotProvable(text, "a proof net")
            return write_structure(search.structure) if kind == "net" else to_dot(search.structure)
        raise ValueError(f"unknown export kind {kind!r}")

    def crosscheck(self, sequents: Iterable[Sequent], logic: LogicId, jobs: int = 1) -> tuple[CrosscheckSummary, list[RunReport]]:
        """Run every applicable method on each sequent, in family order."""
        texts = [print_sequent(s) for s in sequents]
        logger.info(f"--- 🛠️ Crosscheck of {len(texts)} {LogicId(logic).value} sequents with {jobs} job(s) ---")
        if jobs > 1:
            reports = asyncio.run(self._crosscheck_parallel(texts, logic, jobs))
        else:
            reports = [_crosscheck_one(t, logic, self.budget) for t in texts]
        summary = CrosscheckSummary(logic=logic)
        for report in reports:
            summary.add(report)
        logger.info(f"✅ {summary.agreements} agreements, {summary.disagreements} disagreements")
        return summary, reports

    async def _crosscheck_parallel(self, texts: list[str], logic: LogicId, jobs: int) -> list[RunReport]:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [loop.run_in_executor(pool, _crosscheck_one, t, logic, self.budget) for t in texts]
            # gather keeps input order regardless of completion order
            return list(await asyncio.gather(*futures))


def _crosscheck_one(text: str, logic: LogicId, budget: Optional[int]) -> RunReport:
    toolkit = ProofToolkit(budget)
    sequent = parse_sequent(text, logic)
    return toolkit.run(sequent, "all", audit=True)


toolkit = ProofToolkit()

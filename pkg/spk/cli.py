#!/usr/bin/env python3
"""
Command-line front end for the proof toolkit.

    spk prove --logic classical --method all "~A, B->A => ~B"
    spk export --logic mll --kind net "A@B, (B*C)^ => C-oA"
    spk crosscheck --logic nl --atoms 2 --depth 2
    spk check structure.txt
"""

import argparse
import json
import logging
import sys
from typing import Optional

from spk import config
from spk.errors import SpkError
from spk.families import enumerate_sequents, sample_sequents
from spk.logic import LogicId
from spk.proofnet import check_classical_structure, contraction_check, dr_check
from spk.structure_io import load_structure
from spk.toolkit import EXPORT_KINDS, METHODS, CrosscheckSummary, ProofToolkit, RunReport

logger = logging.getLogger(__name__)

LOGICS = [logic.value for logic in LogicId]


def _verdict_word(provable: Optional[bool]) -> str:
    if provable is None:
        return "inconclusive"
    return "provable" if provable else "not provable"


def format_report(report: RunReport) -> str:
    lines = [f"sequent: {report.sequent}  [{report.logic.value}]"]
    if report.error is not None:
        lines.append(f"error: {report.error}")
    for name, verdict in report.verdicts.items():
        line = f"  {name:<16}{_verdict_word(verdict.provable):<14}"
        if verdict.failure:
            line += f" failure={verdict.failure}"
        if verdict.detail:
            line += f" {verdict.detail}"
        if name in report.timings:
            line += f" ({report.timings[name]:.3f}s)"
        lines.append(line.rstrip())
    if report.counters:
        lines.append("  counters: " + ", ".join(f"{k}={v}" for k, v in report.counters.items()))
    agreement = "agreement" if report.agreement else "DISAGREEMENT"
    lines.append(f"verdict: {_verdict_word(report.provable)} ({agreement})")
    return "\n".join(lines)


def format_summary(summary: CrosscheckSummary) -> str:
    lines = [
        f"logic: {summary.logic.value}",
        f"sequents: {summary.total}",
        f"agreements: {summary.agreements}",
        f"disagreements: {summary.disagreements}",
        f"errors: {summary.errors}",
        f"resource limits: {summary.resource_limits}",
        f"provable: {summary.provable}",
        f"structures audited: {summary.structures}",
        f"DR/contraction mismatches: {summary.dr_contraction_mismatches}",
        f"max contraction steps per edge: {summary.max_step_ratio:.3f}",
    ]
    lines.extend(f"  ✗ {item}" for item in summary.disagreeing)
    return "\n".join(lines)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
        logger.info(f"✅ Wrote {out}")
    else:
        print(text.rstrip("\n"))


def cmd_prove(args: argparse.Namespace) -> int:
    logger.info(f"--- 🛠️ Command: prove called for {args.sequent!r} ({args.logic}, {args.method}) ---")
    toolkit = ProofToolkit(args.budget, args.planar_only or None)
    report = toolkit.prove_text(args.sequent, LogicId(args.logic), args.method)
    if args.format == "structured":
        _emit(report.model_dump_json(indent=2), args.out)
    else:
        _emit(format_report(report), args.out)
    return report.exit_code()


def cmd_export(args: argparse.Namespace) -> int:
    logger.info(f"--- 🛠️ Command: export called for {args.sequent!r} ({args.kind}) ---")
    toolkit = ProofToolkit(args.budget, args.planar_only or None)
    try:
        text = toolkit.export(args.sequent, LogicId(args.logic), args.kind)
    except SpkError as e:
        logger.error(f"❌ {e}")
        return 2
    _emit(text, args.out)
    return 0


def cmd_crosscheck(args: argparse.Namespace) -> int:
    logic = LogicId(args.logic)
    logger.info(
        f"--- 🛠️ Command: crosscheck called for {logic.value} "
        f"(atoms={args.atoms}, depth={args.depth}, width={args.width}, connectives={args.connectives}) ---"
    )
    bounds = dict(atoms=args.atoms, depth=args.depth, width=args.width, connectives=args.connectives)
    if args.sample is not None:
        sequents = sample_sequents(logic, **bounds, size=args.sample, seed=args.seed)
    else:
        sequents = list(enumerate_sequents(logic, **bounds))
    summary, reports = ProofToolkit(args.budget).crosscheck(sequents, logic, args.jobs)
    if args.format == "structured":
        payload = {"summary": summary.model_dump(mode="json"), "reports": [r.model_dump(mode="json") for r in reports]}
        _emit(json.dumps(payload, indent=2, ensure_ascii=False), args.out)
    else:
        _emit(format_summary(summary), args.out)
    return summary.exit_code()


def cmd_check(args: argparse.Namespace) -> int:
    logger.info(f"--- 🛠️ Command: check called for {args.path} ---")
    try:
        structure = load_structure(args.path)
        if structure.logic is LogicId.CLASSICAL:
            verdict = check_classical_structure(structure)
        else:
            verdict = dr_check(structure)
    except (OSError, SpkError) as e:
        logger.error(f"❌ {e}")
        return 2
    contracted = contraction_check(structure)
    result = {
        "is_net": verdict.is_net,
        "failure": verdict.failure.value if verdict.failure else None,
        "witness": repr(verdict.witness) if verdict.witness is not None else None,
        "contracts_to_vertex": contracted.is_net,
        "contraction_steps": contracted.steps,
        "edges": contracted.edges,
    }
    if args.format == "structured":
        _emit(json.dumps(result, indent=2), args.out)
    else:
        _emit("\n".join(f"{k}: {v}" for k, v in result.items()), args.out)
    if verdict.is_net != contracted.is_net:
        logger.error("❌ switching and contraction criteria disagree")
        return 2
    return 0 if verdict.is_net else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv")
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--out", default=None, help="write the result to this file")
    common.add_argument("--budget", type=int, default=None, help="search node budget (default SPK_BUDGET)")

    parser = argparse.ArgumentParser(prog="spk", description="Substructural proof toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    prove_parser = sub.add_parser("prove", parents=[common], help="decide a sequent")
    prove_parser.add_argument("--logic", choices=LOGICS, default=LogicId.CLASSICAL.value)
    prove_parser.add_argument("--method", choices=[*METHODS, "all"], default="all")
    prove_parser.add_argument("--planar-only", action="store_true", help="only try non-crossing axiom linkings")
    prove_parser.add_argument("sequent")
    prove_parser.set_defaults(handler=cmd_prove)

    export_parser = sub.add_parser("export", parents=[common], help="write a matrix, net or derivation")
    export_parser.add_argument("--logic", choices=LOGICS, default=LogicId.CLASSICAL.value)
    export_parser.add_argument("--kind", choices=EXPORT_KINDS, required=True)
    export_parser.add_argument("--planar-only", action="store_true")
    export_parser.add_argument("sequent")
    export_parser.set_defaults(handler=cmd_export)

    cross_parser = sub.add_parser("crosscheck", parents=[common], help="compare methods over a sequent family")
    cross_parser.add_argument("--logic", choices=LOGICS, required=True)
    cross_parser.add_argument("--atoms", type=int, default=2)
    cross_parser.add_argument("--depth", type=int, default=2)
    cross_parser.add_argument("--width", type=int, default=2)
    cross_parser.add_argument("--connectives", type=int, default=3)
    cross_parser.add_argument("--sample", type=int, default=None, help="check a random sample of this size")
    cross_parser.add_argument("--seed", type=int, default=0)
    cross_parser.add_argument("--jobs", type=int, default=1)
    cross_parser.set_defaults(handler=cmd_crosscheck)

    check_parser = sub.add_parser("check", parents=[common], help="check a proof structure file")
    check_parser.add_argument("path")
    check_parser.set_defaults(handler=cmd_check)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = {0: config.log_level(), 1: "INFO"}.get(args.verbose, "DEBUG")
    logging.basicConfig(format="[%(levelname)s]: %(message)s", level=level)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())

"""Structure files and graph export for proof structures.

Structure files are line oriented::

    logic classical
    # id sign label
    0 - C
    1 - ~A
    dlink unary 1 2
    axlink 3 6
    clink 7 8 9          # conclusion, two premises
    wlink 2 0 3          # host, weakened formula, copy of the host

Node lines may appear in any order; the order of atomic nodes is taken as the
leaf order of the structure.
"""

from __future__ import annotations

import logging
import os
from typing import Union

from graphviz import Graph

from spk.errors import MalformedStructure, SpkError
from spk.logic import Atom, LogicId, Sign
from spk.proofnet import DECOMPOSITION_KINDS, Link, LinkKind, Node, ProofStructure, check_well_formed
from spk.syntax import parse_formula, print_formula

logger = logging.getLogger(__name__)

_STRUCTURAL = {"clink": LinkKind.CONTRACTION, "wlink": LinkKind.WEAKENING}


def _ints(fields: list[str], lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(f) for f in fields)
    except ValueError:
        raise MalformedStructure(f"line {lineno}: expected node ids, got {' '.join(fields)!r}") from None


def read_structure(text: str) -> ProofStructure:
    """Parse and validate a structure file.

    Raises:
        MalformedStructure: on unreadable lines or a structure that breaks the
            conclusion/premise conditions.
    """
    logic = None
    nodes: list[Node] = []
    links: list[Link] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "logic":
            if len(rest) != 1:
                raise MalformedStructure(f"line {lineno}: expected 'logic <name>'")
            try:
                logic = LogicId(rest[0])
            except ValueError:
                raise MalformedStructure(f"line {lineno}: unknown logic {rest[0]!r}") from None
        elif head == "dlink":
            if not rest or rest[0] not in {k.value for k in DECOMPOSITION_KINDS}:
                raise MalformedStructure(f"line {lineno}: dlink kind must be times, par or unary")
            ids = _ints(rest[1:], lineno)
            expected = 2 if rest[0] == LinkKind.UNARY.value else 3
            if len(ids) != expected:
                raise MalformedStructure(f"line {lineno}: {rest[0]} link takes {expected} ids")
            links.append(Link(LinkKind(rest[0]), ids[:1], ids[1:]))
        elif head == "axlink":
            ids = _ints(rest, lineno)
            if len(ids) != 2:
                raise MalformedStructure(f"line {lineno}: axlink takes two ids")
            links.append(Link(LinkKind.AXIOM, ids))
        elif head in _STRUCTURAL:
            ids = _ints(rest, lineno)
            if len(ids) != 3:
                raise MalformedStructure(f"line {lineno}: {head} takes three ids")
            split = 1 if head == "clink" else 2
            links.append(Link(_STRUCTURAL[head], ids[:split], ids[split:]))
        else:
            if logic is None:
                raise MalformedStructure(f"line {lineno}: 'logic' must come before the nodes")
            if len(rest) < 2 or rest[0] not in ("+", "-"):
                raise MalformedStructure(f"line {lineno}: expected '<id> <sign> <label>'")
            (node_id,) = _ints([head], lineno)
            try:
                label = parse_formula("".join(rest[1:]), logic)
            except SpkError as exc:
                raise MalformedStructure(f"line {lineno}: bad label: {exc}") from exc
            nodes.append(Node(node_id, label, Sign(rest[0])))
    if logic is None:
        raise MalformedStructure("missing 'logic' line")
    if len({n.id for n in nodes}) != len(nodes):
        raise MalformedStructure("duplicate node ids")
    leaf_order = tuple(n.id for n in nodes if isinstance(n.label, Atom))
    structure = ProofStructure(logic, tuple(nodes), tuple(links), None, leaf_order)
    check_well_formed(structure)
    logger.debug(f"read {len(nodes)} nodes and {len(links)} links")
    return structure


def write_structure(structure: ProofStructure) -> str:
    lines = [f"logic {structure.logic.value}"]
    for node in sorted(structure.nodes, key=lambda n: n.id):
        lines.append(f"{node.id} {node.sign.value} {print_formula(node.label)}")
    for link in structure.links:
        ids = " ".join(str(i) for i in link.conclusions + link.premises)
        if link.kind in DECOMPOSITION_KINDS:
            lines.append(f"dlink {link.kind.value} {ids}")
        elif link.kind is LinkKind.AXIOM:
            lines.append(f"axlink {ids}")
        elif link.kind is LinkKind.CONTRACTION:
            lines.append(f"clink {ids}")
        else:
            lines.append(f"wlink {ids}")
    return "\n".join(lines) + "\n"


def to_graph(structure: ProofStructure, name: str = "proof_structure") -> Graph:
    """Graphviz drawing: solid times edges, dotted par edges, curved axiom links."""
    graph = Graph(name=name, graph_attr={"splines": "curved"}, node_attr={"shape": "plaintext"})
    for node in sorted(structure.nodes, key=lambda n: n.id):
        graph.node(f"n{node.id}", str(node))
    for link in structure.links:
        attrs: dict[str, str] = {}
        if link.par_kind:
            attrs["style"] = "dotted"
        elif link.kind is LinkKind.AXIOM:
            attrs["constraint"] = "false"
        for a, b in link.edges():
            graph.edge(f"n{a}", f"n{b}", **attrs)
    return graph


def to_dot(structure: ProofStructure) -> str:
    return to_graph(structure).source


def load_structure(path: Union[str, os.PathLike]) -> ProofStructure:
    with open(path, encoding="utf-8") as handle:
        return read_structure(handle.read())

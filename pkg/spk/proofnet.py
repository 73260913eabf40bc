"""Proof structures, axiom linkings and proof-net correctness criteria.

A proof structure is a graph over signed formula occurrences. Decomposition
links come from the forest (β positions give times links, α positions par
links), axiom links pair dual atoms, and classical structures may add
contraction (par-kind) and weakening (times-kind) links over extra copy
nodes. Correctness is checked per logic by stacking criteria: every DR
switching gives a tree (equivalently the graph contracts to one vertex),
the matching is non-crossing for the Lambek logics, no single-conclusion
subnet exists for L and NL, and NL adds its parenthetical boundaries
and the nested scopes of its functors.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property, lru_cache
from typing import Any, Callable, Hashable, Iterable, Iterator, Optional, Union

import networkx as nx
from networkx.utils import UnionFind

from spk import config
from spk.errors import MalformedStructuralLink, MalformedStructure, ResourceLimit, SynthesisBound, UnsupportedLogic
from spk.logic import (
    Atom,
    Compound,
    Connective,
    DecompositionForest,
    Formula,
    Leaf,
    LogicId,
    NodeClass,
    Pair,
    Sequent,
    Sign,
    Tree,
    atom_balance,
    decompose,
)

logger = logging.getLogger(__name__)


class LinkKind(str, Enum):
    TIMES = "times"
    PAR = "par"
    UNARY = "unary"
    AXIOM = "axiom"
    CONTRACTION = "contraction"
    WEAKENING = "weakening"


DECOMPOSITION_KINDS = (LinkKind.TIMES, LinkKind.PAR, LinkKind.UNARY)


@dataclass(frozen=True)
class Link:
    kind: LinkKind
    conclusions: tuple[int, ...]
    premises: tuple[int, ...] = ()

    @property
    def par_kind(self) -> bool:
        return self.kind in (LinkKind.PAR, LinkKind.CONTRACTION)

    def edges(self) -> list[tuple[int, int]]:
        if self.kind is LinkKind.AXIOM:
            return [self.conclusions]
        if self.kind is LinkKind.WEAKENING:
            host, weakened = self.conclusions
            (copy,) = self.premises
            return [(host, copy), (weakened, copy)]
        (conclusion,) = self.conclusions
        return [(conclusion, premise) for premise in self.premises]


@dataclass(frozen=True)
class Node:
    id: int
    label: Formula
    sign: Sign

    def __str__(self) -> str:
        text = str(self.label)
        if isinstance(self.label, Compound):
            text = f"({text})"
        return f"{text}{self.sign.value}"


@dataclass(frozen=True)
class ProofStructure:
    logic: LogicId
    nodes: tuple[Node, ...]
    links: tuple[Link, ...]
    forest: Optional[DecompositionForest] = field(default=None, compare=False)
    leaf_order: tuple[int, ...] = ()

    @cached_property
    def by_id(self) -> dict[int, Node]:
        return {node.id: node for node in self.nodes}

    def __getitem__(self, node_id: int) -> Node:
        return self.by_id[node_id]

    @property
    def axiom_links(self) -> tuple[Link, ...]:
        return tuple(link for link in self.links if link.kind is LinkKind.AXIOM)

    @property
    def matching(self) -> tuple[tuple[int, int], ...]:
        return tuple(link.conclusions for link in self.axiom_links)

    def partner(self) -> dict[int, int]:
        found = {}
        for a, b in self.matching:
            found[a], found[b] = b, a
        return found

    def edge_count(self) -> int:
        return sum(len(link.edges()) for link in self.links)

    def free_atoms(self) -> tuple[int, ...]:
        """Atomic nodes still waiting for an axiom link, in leaf order."""
        concluded = {c for link in self.links for c in link.conclusions}
        free = [n.id for n in self.nodes if isinstance(n.label, Atom) and n.id not in concluded]
        order = {node_id: index for index, node_id in enumerate(self.leaf_order)}
        return tuple(sorted(free, key=lambda i: (order.get(i, len(order)), i)))

    def with_axioms(self, pairs: Iterable[tuple[int, int]]) -> "ProofStructure":
        axioms = tuple(Link(LinkKind.AXIOM, pair) for pair in pairs)
        return replace(self, links=self.links + axioms)

    def decomposition_children(self) -> dict[int, tuple[int, ...]]:
        return {
            link.conclusions[0]: link.premises for link in self.links if link.kind in DECOMPOSITION_KINDS
        }


class Failure(str, Enum):
    CYCLE = "cycle"
    DISCONNECTED = "disconnected"
    NONPLANAR = "nonplanar"
    SUBNET = "subnet"
    BOUNDARY = "boundary"
    UNMATCHED = "unmatched"


@dataclass(frozen=True)
class NetVerdict:
    is_net: bool
    failure: Optional[Failure] = None
    witness: Any = None
    switchings: int = 0
    steps: int = 0
    edges: int = 0


PASS = NetVerdict(True)


@dataclass(frozen=True)
class Boundary:
    owner: tuple[int, ...]
    members: frozenset[int]


def build_skeleton(forest: DecompositionForest) -> ProofStructure:
    """The proof structure of ``forest`` before any axiom link is drawn."""
    kinds = {NodeClass.BETA: LinkKind.TIMES, NodeClass.ALPHA: LinkKind.PAR, NodeClass.UNARY: LinkKind.UNARY}
    nodes = tuple(Node(p.id, p.label, p.sign) for p in forest.positions)
    links = tuple(
        Link(kinds[p.kind], (p.id,), p.children) for p in forest.positions if p.kind is not NodeClass.ATOM
    )
    leaf_order = tuple(p.id for p in forest.atoms)
    return ProofStructure(forest.logic, nodes, links, forest, leaf_order)


def _crosses(first: tuple[int, int], second: tuple[int, int]) -> bool:
    (a, b), (c, d) = sorted(first), sorted(second)
    return a < c < b < d or c < a < d < b


def enumerate_linkings(skeleton: ProofStructure, planar_only: bool = False) -> Iterator[ProofStructure]:
    """Every way to complete ``skeleton`` with axiom links between dual atoms.

    Atoms are matched in leaf order, the leftmost free atom first, so the
    stream order is fixed. With ``planar_only`` crossing matchings are pruned.
    """
    atoms = skeleton.free_atoms()
    index = {node_id: i for i, node_id in enumerate(atoms)}
    balance = {}
    for node_id in atoms:
        node = skeleton[node_id]
        balance[node.label] = balance.get(node.label, 0) + (1 if node.sign is Sign.PLUS else -1)
    if any(balance.values()):
        return

    def dual(a: int, b: int) -> bool:
        return skeleton[a].label == skeleton[b].label and skeleton[a].sign is not skeleton[b].sign

    def extend(remaining: tuple[int, ...], pairs: tuple[tuple[int, int], ...]):
        if not remaining:
            yield skeleton.with_axioms(pairs)
            return
        first, rest = remaining[0], remaining[1:]
        for k, other in enumerate(rest):
            if not dual(first, other):
                continue
            if planar_only:
                if k % 2:
                    continue
                span = (index[first], index[other])
                if any(_crosses(span, (index[a], index[b])) for a, b in pairs):
                    continue
            yield from extend(rest[:k] + rest[k + 1 :], pairs + ((first, other),))

    yield from extend(atoms, ())


def _switch_edges(structure: ProofStructure):
    fixed: list[tuple[int, int]] = []
    par_links: list[Link] = []
    for link in structure.links:
        if link.par_kind:
            par_links.append(link)
        else:
            fixed.extend(link.edges())
    par_links.sort(key=lambda link: link.conclusions)
    return fixed, par_links


def dr_check(structure: ProofStructure) -> NetVerdict:
    """Danos-Regnier: every switching must leave a connected acyclic graph.

    Switchings keep one premise edge per par-kind link and are enumerated in
    position order; the first bad one is returned as the witness.
    """
    fixed, par_links = _switch_edges(structure)
    node_ids = [node.id for node in structure.nodes]
    if not node_ids:
        return NetVerdict(False, Failure.DISCONNECTED, (), 0)
    checked = 0
    for choice in itertools.product(*(link.premises for link in par_links)):
        checked += 1
        switching = tuple((link.conclusions[0], kept) for link, kept in zip(par_links, choice))
        graph = nx.MultiGraph()
        graph.add_nodes_from(node_ids)
        graph.add_edges_from(fixed)
        graph.add_edges_from(switching)
        if not nx.is_forest(graph):
            logger.debug(f"switching {switching} leaves a cycle")
            return NetVerdict(False, Failure.CYCLE, switching, checked)
        if not nx.is_connected(graph):
            logger.debug(f"switching {switching} leaves the graph disconnected")
            return NetVerdict(False, Failure.DISCONNECTED, switching, checked)
    return NetVerdict(True, switchings=checked)


@dataclass(frozen=True)
class ContractionTrace:
    steps: tuple[tuple[str, Any], ...]
    edges: int
    vertices_left: int
    leftover: tuple[Any, ...]

    @property
    def single_vertex(self) -> bool:
        return self.vertices_left == 1 and not self.leftover


def contract_graph(
    vertices: Iterable[Hashable],
    times_edges: Iterable[tuple[Hashable, Hashable]],
    par_links: Iterable[tuple[Hashable, tuple[Hashable, Hashable]]],
) -> ContractionTrace:
    """Contract a graph with times edges and par links to a fixed point.

    A times edge between two distinct vertices merges them. A par link whose
    two premises have become the same vertex, distinct from its conclusion,
    turns into a single times edge. Edges left over are loops or par links
    that can never fire.
    """
    vertices = list(vertices)
    pending = list(times_edges)
    pars = list(par_links)
    edges = len(pending) + 2 * len(pars)
    classes = UnionFind(vertices)
    steps: list[tuple[str, Any]] = []
    changed = True
    while changed:
        changed = False
        still = []
        for a, b in pending:
            if classes[a] != classes[b]:
                classes.union(a, b)
                steps.append(("times", (a, b)))
                changed = True
            else:
                still.append((a, b))
        pending = still
        waiting = []
        for conclusion, (left, right) in pars:
            if classes[left] == classes[right] and classes[conclusion] != classes[left]:
                pending.append((conclusion, left))
                steps.append(("par", (conclusion, (left, right))))
                changed = True
            else:
                waiting.append((conclusion, (left, right)))
        pars = waiting
    vertices_left = len({classes[v] for v in vertices})
    return ContractionTrace(tuple(steps), edges, vertices_left, tuple(pending) + tuple(pars))


def contraction_check(structure: ProofStructure) -> NetVerdict:
    """Danos contraction criterion; agrees with ``dr_check`` on every structure."""
    fixed, par_links = _switch_edges(structure)
    for link in par_links:
        if len(link.premises) != 2:
            raise MalformedStructure(f"{link.kind.value} link at {link.conclusions[0]} needs two premises")
    trace = contract_graph(
        [node.id for node in structure.nodes],
        fixed,
        [(link.conclusions[0], link.premises) for link in par_links],
    )
    logger.debug(f"contraction: {len(trace.steps)} steps over {trace.edges} edges")
    if trace.single_vertex:
        return NetVerdict(True, steps=len(trace.steps), edges=trace.edges)
    failure = Failure.DISCONNECTED if trace.vertices_left > 1 else Failure.CYCLE
    return NetVerdict(False, failure, trace.leftover, steps=len(trace.steps), edges=trace.edges)


def planarity_check(structure: ProofStructure) -> NetVerdict:
    """Axiom links must not cross when atoms are laid out in leaf order."""
    if structure.logic.commutative:
        raise UnsupportedLogic(structure.logic, "planarity")
    order = structure.leaf_order or tuple(sorted(n.id for n in structure.nodes if isinstance(n.label, Atom)))
    index = {node_id: i for i, node_id in enumerate(order)}
    pairs = [(index[a], index[b]) for a, b in structure.matching]
    for (first, second), (third, fourth) in itertools.combinations(pairs, 2):
        if _crosses((first, second), (third, fourth)):
            witness = ((order[first], order[second]), (order[third], order[fourth]))
            return NetVerdict(False, Failure.NONPLANAR, witness)
    return PASS


def _subtree(children: dict[int, tuple[int, ...]], root: int) -> set[int]:
    found = {root}
    for child in children.get(root, ()):
        found |= _subtree(children, child)
    return found


def subnet_check(structure: ProofStructure) -> NetVerdict:
    """Reject subnets with a single conclusion.

    A down-closed substructure with one conclusion is the whole subtree of
    that conclusion, so it suffices to look for a subtree whose atoms are all
    axiom-linked inside it.
    """
    if structure.logic not in (LogicId.LAMBEK_L, LogicId.NL):
        raise UnsupportedLogic(structure.logic, "the subnet condition")
    children = structure.decomposition_children()
    partner = structure.partner()
    for node in structure.nodes:
        members = _subtree(children, node.id)
        atoms = [m for m in members if m in partner]
        if atoms and all(partner[a] in members for a in atoms):
            return NetVerdict(False, Failure.SUBNET, tuple(sorted(members)))
    return PASS


def _close(forest: DecompositionForest, members: set[int]) -> set[int]:
    # dual occurrences of the same compound pull in both decompositions
    members = set(members)
    changed = True
    while changed:
        changed = False
        compounds = [forest[m] for m in members if isinstance(forest[m].label, Compound)]
        for p, q in itertools.combinations(compounds, 2):
            if p.label == q.label and p.sign is not q.sign:
                grown = members | set(forest.subtree(p.id)) | set(forest.subtree(q.id))
                if grown != members:
                    members = grown
                    changed = True
    return members


def nl_boundaries(sequent: Sequent, structure: ProofStructure) -> tuple[Boundary, ...]:
    """One boundary per internal node of an NL antecedent tree, outermost first.

    A boundary holds the roots of the leaves below its node, the premises of
    the first decomposition link of every compound leaf directly below it or
    below a nested node, and is closed under dual occurrences of a compound.
    """
    if sequent.logic is not LogicId.NL:
        raise UnsupportedLogic(sequent.logic, "parenthetical boundaries")
    forest = structure.forest if structure.forest is not None else decompose(sequent)
    leaf_roots = iter(forest.antecedent_roots())
    found: list[Boundary] = []

    def visit(tree: Tree, path: tuple[int, ...]) -> tuple[set[int], set[int]]:
        if isinstance(tree, Leaf):
            return {next(leaf_roots)}, set()
        left_roots, left_ext = visit(tree.left, path + (0,))
        right_roots, right_ext = visit(tree.right, path + (1,))
        extension = left_ext | right_ext
        for child, roots in ((tree.left, left_roots), (tree.right, right_roots)):
            if isinstance(child, Leaf) and isinstance(child.formula, Compound):
                (root,) = roots
                extension |= set(forest[root].children)
        roots = left_roots | right_roots
        found.append(Boundary(path, frozenset(_close(forest, roots | extension))))
        return roots, extension

    if isinstance(sequent.antecedent, Pair):
        visit(sequent.antecedent, ())
    return tuple(sorted(found, key=lambda b: (len(b.owner), b.owner)))


def nl_boundary_check(structure: ProofStructure, boundaries: Iterable[Boundary]) -> NetVerdict:
    """No axiom link may leave a boundary from a positive atom inside it."""
    partner = structure.partner()
    for boundary in boundaries:
        for member in sorted(boundary.members):
            node = structure[member]
            if member in partner and node.sign is Sign.PLUS and partner[member] not in boundary.members:
                return NetVerdict(False, Failure.BOUNDARY, (boundary.owner, member))
    return PASS


# Antecedent trees over node ids: a leaf is a node id, a bracket a (left, right) pair.
IdTree = Union[int, tuple]


def _id_tree(forest: DecompositionForest, antecedent: Tree) -> tuple[IdTree, dict[int, tuple[int, ...]]]:
    roots = iter(forest.antecedent_roots())
    paths: dict[int, tuple[int, ...]] = {}

    def build(tree: Tree, path: tuple[int, ...]) -> IdTree:
        if isinstance(tree, Leaf):
            root = next(roots)
            paths[root] = path
            return root
        return (build(tree.left, path + (0,)), build(tree.right, path + (1,)))

    return build(antecedent, ()), paths


def _slash_parts(forest: DecompositionForest, pid: int) -> tuple[int, int]:
    """(result, argument) children of a slash; the argument carries the flipped sign."""
    result, argument = forest[pid].children
    if forest[argument].sign is forest[pid].sign:
        result, argument = argument, result
    return result, argument


def _plugs(tree: IdTree) -> Iterator[tuple[IdTree, Callable[[IdTree], IdTree]]]:
    """Every subtree of ``tree`` with a function that puts a replacement in its place."""
    yield tree, lambda new: new
    if isinstance(tree, tuple):
        left, right = tree
        for sub, plug in _plugs(left):
            yield sub, lambda new, plug=plug: (plug(new), right)
        for sub, plug in _plugs(right):
            yield sub, lambda new, plug=plug: (left, plug(new))


def _atoms_under(forest: DecompositionForest, tree: IdTree) -> set[int]:
    if isinstance(tree, tuple):
        return _atoms_under(forest, tree[0]) | _atoms_under(forest, tree[1])
    return {pid for pid in forest.subtree(tree) if forest[pid].is_atom}


def _subtree_at(tree: IdTree, path: tuple[int, ...]) -> IdTree:
    for step in path:
        tree = tree[step]
    return tree


def _closed(partner: dict[int, int], atoms: set[int]) -> bool:
    return all(partner.get(a) in atoms for a in atoms)


def nl_scope_check(sequent: Sequent, structure: ProofStructure) -> NetVerdict:
    """Unfold the antecedent bracket by bracket along the axiom links.

    A functor leaf ``A/B`` applies to the subtree on its right (``B\\A`` to
    the one on its left) only when the atoms of that subtree and of ``B``
    link among themselves; the subtree must then resolve into ``B`` and the
    bracket folds into ``A``. Nested brackets resolve the same way, inside
    the argument as well as around it. A positive slash in the goal adds its
    argument as a new leaf. The structure passes when every bracket resolves
    into its axiom links.

    The failure witness is ``(bracket path, functor id)`` for the first
    functor whose argument does not link into its sibling subtree, or
    ``((), goal id)`` when every functor does but the unfolding still sticks.
    """
    if sequent.logic is not LogicId.NL:
        raise UnsupportedLogic(sequent.logic, "parenthetical scopes")
    forest = structure.forest if structure.forest is not None else decompose(sequent)
    partner = structure.partner()
    tree, paths = _id_tree(forest, sequent.antecedent)
    (goal,) = forest.succedent_roots()

    @lru_cache(maxsize=None)
    def resolves(tree: IdTree, goal: int) -> bool:
        position = forest[goal]
        if not position.is_atom:
            result, argument = _slash_parts(forest, goal)
            grown = (tree, argument) if position.label.connective is Connective.OVER else (argument, tree)
            return resolves(grown, result)
        if not isinstance(tree, tuple):
            return partner.get(tree) == goal
        for sub, plug in _plugs(tree):
            if not isinstance(sub, tuple):
                continue
            left, right = sub
            for functor, argument_tree, connective in ((left, right, Connective.OVER), (right, left, Connective.UNDER)):
                if isinstance(functor, tuple) or forest[functor].is_atom:
                    continue
                if forest[functor].label.connective is not connective:
                    continue
                result, argument = _slash_parts(forest, functor)
                if not _closed(partner, _atoms_under(forest, argument_tree) | _atoms_under(forest, argument)):
                    continue
                if resolves(argument_tree, argument) and resolves(plug(result), goal):
                    return True
        return False

    if resolves(tree, goal):
        return PASS
    for leaf, path in sorted(paths.items()):
        if forest[leaf].is_atom or not path:
            continue
        sibling = _subtree_at(tree, path[:-1] + (1 - path[-1],))
        _, argument = _slash_parts(forest, leaf)
        if not _closed(partner, _atoms_under(forest, sibling) | _atoms_under(forest, argument)):
            return NetVerdict(False, Failure.BOUNDARY, (path[:-1], leaf))
    return NetVerdict(False, Failure.BOUNDARY, ((), goal))


def nl_bracket_check(sequent: Sequent, structure: ProofStructure) -> NetVerdict:
    """Boundaries and scopes together; a boundary crossing is the preferred witness."""
    scope = nl_scope_check(sequent, structure)
    if scope.is_net:
        return scope
    crossing = nl_boundary_check(structure, nl_boundaries(sequent, structure))
    return scope if crossing.is_net else crossing


def check_well_formed(structure: ProofStructure) -> None:
    """Every node is the conclusion of exactly one link and the premise of at most one.

    Raises:
        MalformedStructure: with the first offending node or link.
    """
    concluded: dict[int, int] = {}
    premised: dict[int, int] = {}
    for link in structure.links:
        for node_id in link.conclusions + link.premises:
            if node_id not in structure.by_id:
                raise MalformedStructure(f"{link.kind.value} link mentions unknown node {node_id}")
        for node_id in link.conclusions:
            concluded[node_id] = concluded.get(node_id, 0) + 1
        for node_id in link.premises:
            premised[node_id] = premised.get(node_id, 0) + 1
        if link.kind is LinkKind.AXIOM:
            a, b = (structure[i] for i in link.conclusions)
            if not isinstance(a.label, Atom) or a.label != b.label or a.sign is b.sign:
                raise MalformedStructure(f"axiom link {link.conclusions} does not join dual atoms")
    for node in structure.nodes:
        if concluded.get(node.id, 0) != 1:
            raise MalformedStructure(f"node {node.id} ({node}) is the conclusion of {concluded.get(node.id, 0)} links")
        if premised.get(node.id, 0) > 1:
            raise MalformedStructure(f"node {node.id} ({node}) is the premise of {premised[node.id]} links")


def _check_structural_links(structure: ProofStructure) -> None:
    for link in structure.links:
        if link.kind is LinkKind.CONTRACTION:
            if len(link.conclusions) != 1 or len(link.premises) != 2:
                raise MalformedStructuralLink(
                    f"contraction needs one conclusion and two premises, got {link.conclusions} / {link.premises}"
                )
            labels = {(structure[i].label, structure[i].sign) for i in link.conclusions + link.premises}
            if len(labels) != 1:
                raise MalformedStructuralLink(f"contraction at {link.conclusions[0]} mixes formulae")
        elif link.kind is LinkKind.WEAKENING:
            if len(link.conclusions) != 2 or len(link.premises) != 1:
                raise MalformedStructuralLink(
                    f"weakening needs two conclusions and one premise, got {link.conclusions} / {link.premises}"
                )
            host, copy = structure[link.conclusions[0]], structure[link.premises[0]]
            if (host.label, host.sign) != (copy.label, copy.sign):
                raise MalformedStructuralLink(f"weakening premise {copy.id} is not a copy of host {host.id}")


def check_classical_structure(structure: ProofStructure) -> NetVerdict:
    """Correctness of a classical structure with contraction and weakening links."""
    if structure.logic is not LogicId.CLASSICAL:
        raise UnsupportedLogic(structure.logic, "classical structure checking")
    _check_structural_links(structure)
    return dr_check(structure)


# Search


def net_criteria(logic: LogicId) -> list[Callable[[Sequent, ProofStructure], NetVerdict]]:
    """The stack of criteria a structure of ``logic`` must pass, in order."""
    stack = [lambda s, p: dr_check(p)]
    if logic.lambek:
        stack.append(lambda s, p: planarity_check(p))
    if logic in (LogicId.LAMBEK_L, LogicId.NL):
        stack.append(lambda s, p: subnet_check(p))
    if logic is LogicId.NL:
        stack.append(nl_bracket_check)
    return stack


def check_net(sequent: Sequent, structure: ProofStructure) -> NetVerdict:
    switchings = 0
    for criterion in net_criteria(sequent.logic):
        verdict = criterion(sequent, structure)
        switchings += verdict.switchings
        if not verdict.is_net:
            return replace(verdict, switchings=switchings)
    return NetVerdict(True, switchings=switchings)


@dataclass(frozen=True)
class NetSearch:
    structure: Optional[ProofStructure]
    verdict: NetVerdict
    linkings: int = 0
    switchings: int = 0

    @property
    def found(self) -> bool:
        return self.structure is not None


def _unmatched(forest: DecompositionForest) -> NetVerdict:
    return NetVerdict(False, Failure.UNMATCHED, tuple(sorted(atom_balance(forest))))


def find_proof_net(sequent: Sequent, planar_only: Optional[bool] = None) -> NetSearch:
    """Search the linkings of ``sequent`` for one passing its logic's criteria.

    Args:
        sequent: A well-formed sequent of any logic.
        planar_only: Prune crossing linkings; defaults to on for the Lambek
            logics, where crossing linkings can never pass.

    Returns:
        The first passing structure with its verdict, or no structure and the
        failure of the first linking tried.

    Raises:
        ResourceLimit: classical synthesis ran past its candidate cap.
        SynthesisBound: classical synthesis tried every structure within its
            weakening and contraction bounds; this is never a refutation.
    """
    forest = decompose(sequent)
    if sequent.logic is LogicId.CLASSICAL:
        return _find_classical_net(sequent, forest)
    if planar_only is None:
        planar_only = sequent.logic.lambek
    skeleton = build_skeleton(forest)
    first_failure: Optional[NetVerdict] = None
    linkings = switchings = 0
    for structure in enumerate_linkings(skeleton, planar_only):
        linkings += 1
        verdict = check_net(sequent, structure)
        switchings += verdict.switchings
        if verdict.is_net:
            logger.debug(f"net found after {linkings} linkings")
            return NetSearch(structure, verdict, linkings, switchings)
        first_failure = first_failure or verdict
    if first_failure is None and planar_only:
        # no planar linking at all: report why the first crossing one fails
        for structure in enumerate_linkings(skeleton, planar_only=False):
            linkings += 1
            first_failure = check_net(sequent, structure)
            break
    if first_failure is None:
        first_failure = _unmatched(forest)
    return NetSearch(None, first_failure, linkings, switchings)


def _classical_candidates(forest: DecompositionForest, max_weak: int, max_contract: int) -> Iterator[ProofStructure]:
    """Skeletons with a bounded number of weakening and contraction links.

    Weakened positions lose their subtree and hang off a copy of a host atom;
    contracted atoms get two copies that take their place in the linking.
    Candidates come in order of the number of structural links added.
    """
    skeleton = build_skeleton(forest)
    all_ids = [p.id for p in forest.positions]
    for total in range(max_weak + max_contract + 1):
        for n_weak in range(min(total, max_weak) + 1):
            n_contract = total - n_weak
            if n_contract > max_contract:
                continue
            for weakened in itertools.combinations(all_ids, n_weak):
                below = [set(forest.subtree(w)) - {w} for w in weakened]
                if any(w in b for w in weakened for b in below):
                    continue
                dropped = set().union(*below) if below else set()
                atoms = [a.id for a in forest.atoms if a.id not in dropped and a.id not in weakened]
                for hosts in itertools.product(atoms, repeat=n_weak):
                    for contracted in itertools.combinations(atoms, n_contract):
                        yield _classical_candidate(skeleton, dropped, weakened, hosts, contracted)


def _classical_candidate(skeleton, dropped, weakened, hosts, contracted) -> ProofStructure:
    nodes = [n for n in skeleton.nodes if n.id not in dropped]
    links = [
        link
        for link in skeleton.links
        if link.conclusions[0] not in dropped and link.conclusions[0] not in weakened
    ]
    next_id = max((n.id for n in skeleton.nodes), default=-1) + 1
    current = {n.id: n.id for n in nodes}

    def copy_of(node_id: int) -> int:
        nonlocal next_id
        original = skeleton[node_id]
        nodes.append(Node(next_id, original.label, original.sign))
        next_id += 1
        return next_id - 1

    for w, host in zip(weakened, hosts):
        copy = copy_of(host)
        links.append(Link(LinkKind.WEAKENING, (current[host], w), (copy,)))
        current[host] = copy
    for atom in contracted:
        left, right = copy_of(atom), copy_of(atom)
        links.append(Link(LinkKind.CONTRACTION, (current[atom],), (left, right)))
    return ProofStructure(LogicId.CLASSICAL, tuple(nodes), tuple(links), skeleton.forest, ())


def _find_classical_net(sequent: Sequent, forest: DecompositionForest) -> NetSearch:
    positives = {a.label for a in forest.atoms if a.sign is Sign.PLUS}
    negatives = {a.label for a in forest.atoms if a.sign is Sign.MINUS}
    if not positives & negatives:
        return NetSearch(None, NetVerdict(False, Failure.UNMATCHED, tuple(sorted(a.name for a in positives ^ negatives))))
    cap = config.net_candidates()
    max_weak, max_contract = config.max_weakenings(), config.max_contractions()
    examined = switchings = 0
    for candidate in _classical_candidates(forest, max_weak, max_contract):
        for structure in enumerate_linkings(candidate):
            examined += 1
            if examined > cap:
                raise ResourceLimit(cap, "classical candidate structures")
            verdict = dr_check(structure)
            switchings += verdict.switchings
            if verdict.is_net:
                logger.debug(f"classical net found after {examined} candidate structures")
                return NetSearch(structure, verdict, examined, switchings)
    logger.debug(f"no classical net within {max_weak} weakenings and {max_contract} contractions")
    raise SynthesisBound(max_weak, max_contract)

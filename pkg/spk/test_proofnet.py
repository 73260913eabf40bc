"""Tests for proof structures, linkings and the net criteria."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spk.errors import MalformedStructuralLink, MalformedStructure, UnsupportedLogic
from spk.families import enumerate_sequents, sample_sequents
from spk.logic import LogicId, Sign, decompose
from spk.proofnet import (
    Failure,
    Link,
    LinkKind,
    Node,
    ProofStructure,
    build_skeleton,
    check_classical_structure,
    check_net,
    check_well_formed,
    contract_graph,
    contraction_check,
    dr_check,
    enumerate_linkings,
    find_proof_net,
    nl_boundaries,
    nl_boundary_check,
    nl_scope_check,
    planarity_check,
    subnet_check,
)
from spk.sequent_prover import prove
from spk.syntax import parse_formula, parse_sequent

NL_EXAMPLE_1 = "(A , ((A\\B)/C , C)) => B"
NL_EXAMPLE_2 = "((A , (A\\B)/C) , C) => B"
NL_EXAMPLE_3 = "((D , D\\A) , ((A\\B)/C , C)) => B"
NL_EXAMPLE_4 = "(A , ((A\\B)/(C/D) , C/D)) => B"


def _skeleton(text, logic):
    return build_skeleton(decompose(parse_sequent(text, logic)))


def _linkings(text, logic, planar_only=False):
    return list(enumerate_linkings(_skeleton(text, logic), planar_only))


def test_mll_example_net():
    search = find_proof_net(parse_sequent("A@B, (B*C)^ => C-oA", "mll"))
    assert search.found
    assert sorted(search.structure.matching) == [(1, 9), (2, 5), (6, 8)]
    assert dr_check(search.structure).is_net
    verdict = contraction_check(search.structure)
    assert verdict.is_net
    assert verdict.steps <= verdict.edges


def test_contraction_sequence_reaches_one_vertex():
    trace = contract_graph(
        "abcdefghij",
        [("a", "b"), ("a", "c"), ("e", "f"), ("e", "g"), ("d", "e"), ("c", "f"), ("i", "g"), ("b", "j")],
        [("h", ("i", "j"))],
    )
    assert trace.single_vertex
    assert len(trace.steps) == 10
    assert trace.edges == 10
    assert trace.steps[-2] == ("par", ("h", ("i", "j")))
    assert trace.steps[-1] == ("times", ("h", "i"))


def test_contraction_leaves_a_loop_on_a_cycle():
    trace = contract_graph("abc", [("a", "b"), ("b", "c"), ("c", "a")], [])
    assert trace.vertices_left == 1
    assert trace.leftover == (("c", "a"),)
    assert not trace.single_vertex


def test_mill_golden_nets():
    assert find_proof_net(parse_sequent("X => Y-o(X*Y)", "mill")).found

    (structure,) = _linkings("X => (Y-oX)*Y", "mill")
    verdict = dr_check(structure)
    assert verdict.failure is Failure.CYCLE
    assert verdict.witness == ((2, 3),)
    assert verdict.switchings == 1
    assert not contraction_check(structure).is_net
    search = find_proof_net(parse_sequent("X => (Y-oX)*Y", "mill"))
    assert not search.found
    assert search.verdict.failure is Failure.CYCLE


def test_lambek_product_swap_is_nonplanar():
    (structure,) = _linkings("A.B => B.A", "l")
    assert structure.matching == ((1, 4), (2, 5))
    assert dr_check(structure).is_net
    assert planarity_check(structure).failure is Failure.NONPLANAR
    assert _linkings("A.B => B.A", "l", planar_only=True) == []
    search = find_proof_net(parse_sequent("A.B => B.A", "l"))
    assert not search.found
    assert search.verdict.failure is Failure.NONPLANAR


def test_lambek_golden_net():
    search = find_proof_net(parse_sequent("C.(C\\A)/B, B => A", "l"))
    assert search.found
    order = search.structure.leaf_order
    pairs = sorted(tuple(sorted(order.index(i) for i in pair)) for pair in search.structure.matching)
    assert pairs == [(0, 1), (2, 5), (3, 4)]
    assert planarity_check(search.structure).is_net
    assert subnet_check(search.structure).is_net


def test_subnet_condition_separates_l_from_leps():
    (structure,) = _linkings("B/(A/A) => B", "l")
    verdict = subnet_check(structure)
    assert verdict.failure is Failure.SUBNET
    assert verdict.witness == (2, 3, 4)
    assert not find_proof_net(parse_sequent("B/(A/A) => B", "l")).found
    assert find_proof_net(parse_sequent("B/(A/A) => B", "leps")).found
    with pytest.raises(UnsupportedLogic):
        subnet_check(_linkings("B/(A/A) => B", "leps")[0])


def test_nl_boundaries_example_one():
    sequent = parse_sequent(NL_EXAMPLE_1, "nl")
    (structure,) = enumerate_linkings(build_skeleton(decompose(sequent)), planar_only=True)
    boundaries = nl_boundaries(sequent, structure)
    assert [b.owner for b in boundaries] == [(), (1,)]
    assert boundaries[0].members == {0, 1, 2, 5, 6}
    assert boundaries[1].members == {1, 2, 5, 6}
    assert nl_boundary_check(structure, boundaries).is_net
    assert check_net(sequent, structure).is_net


def test_nl_example_two_crosses_a_boundary():
    sequent = parse_sequent(NL_EXAMPLE_2, "nl")
    search = find_proof_net(sequent)
    assert not search.found
    assert search.verdict.failure is Failure.BOUNDARY
    owner, atom = search.verdict.witness
    assert owner == (0,)
    assert str(decompose(sequent)[atom]) == "C+"


def test_nl_example_four_needs_the_closure():
    sequent = parse_sequent(NL_EXAMPLE_4, "nl")
    search = find_proof_net(sequent)
    assert search.found
    inner = [b for b in nl_boundaries(sequent, search.structure) if b.owner == (1,)][0]
    assert {6, 7} <= inner.members
    assert {1, 2, 5, 8, 9, 10} <= inner.members


@pytest.mark.parametrize(
    "text,expected",
    [(NL_EXAMPLE_1, True), (NL_EXAMPLE_2, False), (NL_EXAMPLE_3, True), (NL_EXAMPLE_4, True)],
)
def test_nl_examples_match_prover(text, expected):
    sequent = parse_sequent(text, "nl")
    assert find_proof_net(sequent).found is expected
    assert prove(sequent).provable is expected


def test_unbalanced_sequent_is_unmatched():
    search = find_proof_net(parse_sequent("A, A => A", "mll"))
    assert search.verdict.failure is Failure.UNMATCHED
    assert search.verdict.witness == ("A",)
    assert search.linkings == 0


def test_planarity_is_undefined_for_commutative_logics():
    (structure,) = _linkings("A => A", "mll")
    with pytest.raises(UnsupportedLogic):
        planarity_check(structure)


def test_linkings_stream_is_fixed():
    first = [s.matching for s in _linkings("A, A, A^, A^ =>", "mll")]
    second = [s.matching for s in _linkings("A, A, A^, A^ =>", "mll")]
    assert first == second
    assert first[0] == ((0, 3), (1, 5))
    assert len(first) == 2


def test_classical_net_for_example():
    search = find_proof_net(parse_sequent("~A, B->A => ~B", "classical"))
    assert search.found
    assert sorted(search.structure.matching) == [(1, 4), (3, 6)]
    assert check_classical_structure(search.structure).is_net


def _classical_weakening_net(drop_axiom=None):
    def node(node_id, sign, label):
        return Node(node_id, parse_formula(label, LogicId.CLASSICAL), Sign(sign))

    nodes = (
        node(0, "-", "C"),
        node(1, "-", "~A"),
        node(2, "+", "A"),
        node(3, "-", "B->A"),
        node(4, "+", "B"),
        node(5, "-", "A"),
        node(6, "+", "~B"),
        node(7, "-", "B"),
        node(8, "+", "D"),
        node(9, "+", "A"),
        node(10, "-", "B"),
    )
    links = [
        Link(LinkKind.UNARY, (1,), (2,)),
        Link(LinkKind.TIMES, (3,), (4, 5)),
        Link(LinkKind.UNARY, (6,), (7,)),
        Link(LinkKind.WEAKENING, (2, 0), (9,)),
        Link(LinkKind.WEAKENING, (7, 8), (10,)),
        Link(LinkKind.AXIOM, (9, 5)),
        Link(LinkKind.AXIOM, (4, 10)),
    ]
    if drop_axiom is not None:
        links.remove(drop_axiom)
    return ProofStructure(LogicId.CLASSICAL, nodes, tuple(links))


def test_classical_weakening_net():
    structure = _classical_weakening_net()
    check_well_formed(structure)
    assert structure.edge_count() == 10
    assert check_classical_structure(structure).is_net
    assert contraction_check(structure).is_net


@pytest.mark.parametrize("axiom", [Link(LinkKind.AXIOM, (9, 5)), Link(LinkKind.AXIOM, (4, 10))])
def test_dropping_an_axiom_breaks_the_classical_net(axiom):
    structure = _classical_weakening_net(drop_axiom=axiom)
    assert check_classical_structure(structure).failure is Failure.DISCONNECTED
    with pytest.raises(MalformedStructure):
        check_well_formed(structure)


def test_structural_links_are_validated():
    structure = _classical_weakening_net()
    bad = ProofStructure(
        LogicId.CLASSICAL,
        structure.nodes,
        structure.links[:3] + (Link(LinkKind.WEAKENING, (2, 0), (10,)),) + structure.links[4:],
    )
    with pytest.raises(MalformedStructuralLink):
        check_classical_structure(bad)
    with pytest.raises(MalformedStructuralLink):
        check_classical_structure(
            ProofStructure(LogicId.CLASSICAL, structure.nodes, (Link(LinkKind.CONTRACTION, (2,), (9,)),))
        )


def test_classical_contraction_is_synthesized():
    search = find_proof_net(parse_sequent("A->(A->B), A => B", "classical"))
    assert search.found
    kinds = {link.kind for link in search.structure.links}
    assert LinkKind.CONTRACTION in kinds
    assert check_classical_structure(search.structure).is_net


def test_check_well_formed_rejects_doubly_linked_atom():
    (structure,) = _linkings("A => A", "mll")
    broken = ProofStructure(structure.logic, structure.nodes, structure.links + (Link(LinkKind.AXIOM, (0, 1)),))
    with pytest.raises(MalformedStructure):
        check_well_formed(broken)


@pytest.mark.parametrize("logic", [LogicId.MLL, LogicId.MILL])
def test_net_existence_agrees_with_prover(logic):
    for sequent in enumerate_sequents(logic, atoms=2, depth=1, width=2, connectives=1):
        assert find_proof_net(sequent).found == prove(sequent).provable, str(sequent)


_LAMBEK_FAMILY = [
    sequent
    for logic in (LogicId.LAMBEK_L, LogicId.LAMBEK_L_EPS, LogicId.NL)
    for sequent in enumerate_sequents(logic, atoms=2, depth=2, width=2, connectives=2)
]

_LINEAR_FAMILY = [
    sequent
    for logic in (LogicId.MLL, LogicId.MILL)
    for sequent in enumerate_sequents(logic, atoms=2, depth=2, width=2, connectives=2)
]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(_LAMBEK_FAMILY))
def test_lambek_net_stack_agrees_with_prover(sequent):
    assert find_proof_net(sequent).found == prove(sequent).provable


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(_LINEAR_FAMILY + _LAMBEK_FAMILY))
def test_switching_and_contraction_agree(sequent):
    """Both criteria give the same answer on every linking, within the step bound."""
    for structure in enumerate_linkings(build_skeleton(decompose(sequent))):
        by_switching = dr_check(structure)
        by_contraction = contraction_check(structure)
        assert by_switching.is_net == by_contraction.is_net
        assert by_contraction.steps <= by_contraction.edges


_SPLIT_FUNCTORS = [
    "((A/A)/A , (A , A)) => A",
    "((A , A) , A\\(A\\B)) => B",
    "((B/B)/B , (B , B)) => B",
]


@pytest.mark.parametrize("text", _SPLIT_FUNCTORS)
def test_nl_functor_cannot_reach_split_arguments(text):
    sequent = parse_sequent(text, "nl")
    assert not prove(sequent).provable
    assert not find_proof_net(sequent).found


def test_nl_scope_witness_names_the_functor():
    sequent = parse_sequent("((A/A)/A , (A , A)) => A", "nl")
    linkings = list(enumerate_linkings(build_skeleton(decompose(sequent)), planar_only=True))
    assert linkings
    for structure in linkings:
        verdict = nl_scope_check(sequent, structure)
        assert verdict.failure is Failure.BOUNDARY
        assert verdict.witness == ((), 0)


def test_nl_scope_accepts_the_provable_examples():
    for text in (NL_EXAMPLE_1, NL_EXAMPLE_3, NL_EXAMPLE_4):
        sequent = parse_sequent(text, "nl")
        search = find_proof_net(sequent)
        assert nl_scope_check(sequent, search.structure).is_net


_NL_WIDE_FAMILY = sample_sequents(LogicId.NL, atoms=2, depth=2, width=3, connectives=3, size=400, seed=11)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(_NL_WIDE_FAMILY))
def test_nl_net_stack_agrees_with_prover_on_three_leaves(sequent):
    assert find_proof_net(sequent).found == prove(sequent).provable

"""Tests for matrices, atomic paths and connection sets."""

import pytest

from spk.errors import ForeignPosition, UnsupportedLogic
from spk.families import enumerate_sequents
from spk.logic import LogicId, decompose
from spk.matrix import (
    LINEAR_MODE,
    Connection,
    ConnectionSet,
    atomic_paths,
    build_matrix,
    linear_matchings,
    linear_spanning_set,
    matrix_atoms,
    path_count,
    render_matrix,
    spanning_set,
    verify_connections,
)
from spk.sequent_prover import prove
from spk.syntax import parse_sequent


def _forest(text, logic):
    return decompose(parse_sequent(text, logic))


def test_classical_example_matrix():
    forest = _forest("~A, B->A => ~B", LogicId.CLASSICAL)
    matrix = build_matrix(forest)
    assert render_matrix(matrix) == "[[A+] [B+ ; A-]] [B-]"
    paths = [[str(p) for p in path] for path in atomic_paths(matrix)]
    assert paths == [["A+", "B+", "B-"], ["A+", "A-", "B-"]]
    assert path_count(matrix) == 2

    found = spanning_set(matrix)
    assert found is not None
    assert {str(c) for c in found.connections} == {"<A+, A->", "<B+, B->"}
    assert str(found) == "{<A+, A->, <B+, B->}"
    assert verify_connections(matrix, found)


def test_mll_example_matrix():
    forest = _forest("A@B, (B*C)^ => C-oA", LogicId.MLL)
    matrix = build_matrix(forest)
    assert render_matrix(matrix) == "[A- ; B-] [B+ ; C+] [C- A+]"
    assert path_count(matrix) == 4

    found = linear_spanning_set(matrix)
    assert found is not None and found.linear
    assert {str(c) for c in found.connections} == {"<A+, A->", "<B+, B->", "<C+, C->"}
    assert verify_connections(matrix, found, LINEAR_MODE)


def test_non_minimal_set_is_not_linear():
    forest = _forest("A*B => A, B", LogicId.MLL)
    matrix = build_matrix(forest)
    matchings = list(linear_matchings(matrix))
    assert len(matchings) == 1
    only = ConnectionSet(matchings[0], spans=True, linear=True)
    assert verify_connections(matrix, only)
    assert not verify_connections(matrix, only, LINEAR_MODE)
    assert linear_spanning_set(matrix) is None


def test_unspanned_matrix():
    matrix = build_matrix(_forest("A->B => B->A", LogicId.CLASSICAL))
    assert spanning_set(matrix) is None


def test_connection_requires_dual_atoms():
    forest = _forest("A, B => A", LogicId.CLASSICAL)
    a_minus, b_minus, a_plus = forest.positions
    assert Connection.between(a_minus, a_plus).ids == (2, 0)
    with pytest.raises(ValueError):
        Connection.between(a_minus, b_minus)


def test_foreign_position_is_reported():
    matrix = build_matrix(_forest("A => A", LogicId.CLASSICAL))
    other = _forest("B, A => A", LogicId.CLASSICAL)
    foreign = ConnectionSet(frozenset({Connection.between(other[1], other[2])}), spans=True, linear=False)
    with pytest.raises(ForeignPosition):
        verify_connections(matrix, foreign)


def test_lambek_logics_have_no_matrix():
    with pytest.raises(UnsupportedLogic):
        build_matrix(_forest("A => A", LogicId.LAMBEK_L))


def test_matrix_atoms_cover_forest_atoms():
    forest = _forest("A@B, (B*C)^ => C-oA", LogicId.MLL)
    assert set(matrix_atoms(build_matrix(forest))) == set(forest.atoms)


@pytest.mark.parametrize("logic", [LogicId.CLASSICAL, LogicId.MLL, LogicId.MILL])
def test_matrix_agrees_with_prover(logic):
    for sequent in enumerate_sequents(logic, atoms=2, depth=1, width=2, connectives=1):
        matrix = build_matrix(decompose(sequent))
        if logic is LogicId.CLASSICAL:
            found = spanning_set(matrix)
        else:
            found = linear_spanning_set(matrix)
        assert (found is not None) == prove(sequent).provable, str(sequent)


def test_row_matrix_has_one_path():
    matrix = build_matrix(_forest("A, B => A", LogicId.CLASSICAL))
    paths = list(atomic_paths(matrix))
    assert len(paths) == 1
    assert [str(p) for p in paths[0]] == ["A-", "B-", "A+"]


@pytest.mark.parametrize(
    ("text", "logic"),
    [("A => B", LogicId.CLASSICAL), ("A => A*A", LogicId.MLL)],
)
def test_no_spanning_set(text, logic):
    matrix = build_matrix(_forest(text, logic))
    found = spanning_set(matrix) if logic is LogicId.CLASSICAL else linear_spanning_set(matrix)
    assert found is None


def test_identity_connection():
    found = spanning_set(build_matrix(_forest("A => A", LogicId.CLASSICAL)))
    assert str(found) == "{<A+, A->}"


def test_equal_position_of_another_forest_is_foreign():
    matrix = build_matrix(_forest("A => A", LogicId.CLASSICAL))
    twin = _forest("A => A", LogicId.CLASSICAL)
    assert twin[0] == matrix_atoms(matrix)[0]
    borrowed = ConnectionSet(frozenset({Connection.between(twin[0], twin[1])}), spans=True, linear=True)
    with pytest.raises(ForeignPosition):
        verify_connections(matrix, borrowed)

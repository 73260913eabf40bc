"""Matrices of signed formulae, atomic paths and spanning connection sets.

A sequent's matrix is a row of its formulae's matrices: α and unary positions
become rows, β positions become columns and atoms are the entries. Classical
provability is the existence of a spanning set of connections; for MLL and
MILL the set must also pair every atom exactly once and be minimal.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from spk.errors import ForeignPosition, UnsupportedLogic
from spk.logic import DecompositionForest, LogicId, NodeClass, Position, Sign

logger = logging.getLogger(__name__)

CLASSICAL_MODE = "classical"
LINEAR_MODE = "linear"


@dataclass(frozen=True)
class MatrixAtom:
    position: Position


@dataclass(frozen=True)
class Row:
    elements: tuple["Matrix", ...]
    # formulae per side; only set on a classical sequent-level row
    sides: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class Col:
    elements: tuple["Matrix", ...]


Matrix = Union[MatrixAtom, Row, Col]
AtomicPath = tuple[Position, ...]


@dataclass(frozen=True)
class Connection:
    positive: Position
    negative: Position

    @classmethod
    def between(cls, a: Position, b: Position) -> "Connection":
        if a.label != b.label or a.sign is b.sign or not a.is_atom:
            raise ValueError(f"{a} and {b} are not a dual pair of atoms")
        return cls(a, b) if a.sign is Sign.PLUS else cls(b, a)

    @property
    def ids(self) -> tuple[int, int]:
        return self.positive.id, self.negative.id

    def __str__(self) -> str:
        return f"<{self.positive}, {self.negative}>"


@dataclass(frozen=True)
class ConnectionSet:
    connections: frozenset[Connection]
    spans: bool
    linear: bool

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in sorted(self.connections, key=lambda c: c.ids)) + "}"


def build_matrix(forest: DecompositionForest) -> Row:
    """Matrix of a classical, MLL or MILL decomposition forest."""
    logic = forest.logic
    if logic.lambek:
        raise UnsupportedLogic(logic, "the matrix method")

    def build(pid: int) -> Matrix:
        position = forest[pid]
        if position.kind is NodeClass.ATOM:
            return MatrixAtom(position)
        children = tuple(build(child) for child in position.children)
        if position.kind is NodeClass.BETA:
            return Col(children)
        return Row(children)

    sides = None
    if logic is LogicId.CLASSICAL:
        sides = (len(forest.antecedent_roots()), len(forest.succedent_roots()))
    return Row(tuple(build(root) for root in forest.roots), sides)


def matrix_atoms(matrix: Matrix) -> tuple[Position, ...]:
    if isinstance(matrix, MatrixAtom):
        return (matrix.position,)
    return tuple(itertools.chain.from_iterable(matrix_atoms(e) for e in matrix.elements))


def atomic_paths(matrix: Matrix) -> Iterator[AtomicPath]:
    """Every atomic path: rows contribute all elements, columns exactly one."""
    if isinstance(matrix, MatrixAtom):
        yield (matrix.position,)
    elif isinstance(matrix, Col):
        for element in matrix.elements:
            yield from atomic_paths(element)
    else:
        choices = [list(atomic_paths(element)) for element in matrix.elements]
        for combination in itertools.product(*choices):
            yield tuple(itertools.chain.from_iterable(combination))


def path_count(matrix: Matrix) -> int:
    if isinstance(matrix, MatrixAtom):
        return 1
    if isinstance(matrix, Col):
        return sum(path_count(e) for e in matrix.elements)
    count = 1
    for element in matrix.elements:
        count *= path_count(element)
    return count


def render_matrix(matrix: Matrix) -> str:
    """Canonical text: the sequent row by juxtaposition, nested rows and
    columns in brackets, column entries separated by ``;``."""

    def nested(m: Matrix) -> str:
        if isinstance(m, MatrixAtom):
            return f"{m.position.label}{m.position.sign.value}"
        if isinstance(m, Col):
            return "[" + " ; ".join(nested(e) for e in m.elements) + "]"
        if len(m.elements) == 1 and not isinstance(m.elements[0], MatrixAtom):
            return nested(m.elements[0])
        return "[" + " ".join(nested(e) for e in m.elements) + "]"

    if not isinstance(matrix, Row):
        return nested(matrix)
    groups: list[tuple[Matrix, ...]] = [(e,) for e in matrix.elements]
    if matrix.sides is not None:
        antecedent, _ = matrix.sides
        groups = [g for g in (matrix.elements[:antecedent], matrix.elements[antecedent:]) if g]
    parts = []
    for group in groups:
        if len(group) == 1:
            parts.append(nested(group[0]))
        else:
            parts.append("[" + " ".join(nested(e) for e in group) + "]")
    return " ".join(parts)


def _path_connections(path: AtomicPath) -> list[Connection]:
    found = []
    for a, b in itertools.combinations(path, 2):
        if a.label == b.label and a.sign is not b.sign:
            found.append(Connection.between(a, b))
    return sorted(set(found), key=lambda c: c.ids)


def _covers(path: AtomicPath, connection: Connection) -> bool:
    return connection.positive in path and connection.negative in path


def _spans(paths: list[AtomicPath], connections) -> bool:
    return all(any(_covers(path, c) for c in connections) for path in paths)


def spanning_set(matrix: Matrix) -> Optional[ConnectionSet]:
    """Some spanning set of connections of a classical matrix, if one exists."""
    paths = list(atomic_paths(matrix))
    logger.debug(f"spanning search over {len(paths)} atomic paths")
    failed: set[frozenset] = set()

    def search(chosen: frozenset) -> Optional[frozenset]:
        if chosen in failed:
            return None
        open_path = next((p for p in paths if not any(_covers(p, c) for c in chosen)), None)
        if open_path is None:
            return chosen
        for candidate in _path_connections(open_path):
            found = search(chosen | {candidate})
            if found is not None:
                return found
        failed.add(chosen)
        return None

    found = search(frozenset())
    if found is None:
        return None
    return ConnectionSet(found, spans=True, linear=False)


def _cooccurring(paths: list[AtomicPath]) -> set[Connection]:
    candidates: set[Connection] = set()
    for path in paths:
        candidates.update(_path_connections(path))
    return candidates


def _is_minimal(paths: list[AtomicPath], connections: frozenset) -> bool:
    return all(not _spans(paths, connections - {c}) for c in connections)


def _is_partition(atoms: tuple[Position, ...], connections) -> bool:
    used = [p for c in connections for p in (c.positive, c.negative)]
    return len(used) == len(set(used)) and set(used) == set(atoms)


def linear_matchings(matrix: Matrix) -> Iterator[frozenset[Connection]]:
    """Perfect pairings of the matrix atoms by co-occurring dual connections."""
    atoms = matrix_atoms(matrix)
    paths = list(atomic_paths(matrix))
    allowed = _cooccurring(paths)
    positives = sorted((a for a in atoms if a.sign is Sign.PLUS), key=lambda a: a.id)
    negatives = sorted((a for a in atoms if a.sign is Sign.MINUS), key=lambda a: a.id)
    if len(positives) != len(negatives):
        return

    def extend(index: int, used: frozenset, chosen: tuple) -> Iterator[frozenset[Connection]]:
        if index == len(positives):
            yield frozenset(chosen)
            return
        positive = positives[index]
        for negative in negatives:
            if negative.id in used or negative.label != positive.label:
                continue
            connection = Connection(positive, negative)
            if connection in allowed:
                yield from extend(index + 1, used | {negative.id}, chosen + (connection,))

    yield from extend(0, frozenset(), ())


def linear_spanning_set(matrix: Matrix) -> Optional[ConnectionSet]:
    """A set of connections that linearly spans an MLL or MILL matrix.

    Every atom is used by exactly one connection, the set spans every atomic
    path, and no connection can be dropped without losing the spanning.
    """
    paths = list(atomic_paths(matrix))
    tried = 0
    for matching in linear_matchings(matrix):
        tried += 1
        if _spans(paths, matching) and _is_minimal(paths, matching):
            logger.debug(f"linear spanning set found after {tried} matchings")
            return ConnectionSet(matching, spans=True, linear=True)
    logger.debug(f"no linear spanning set among {tried} matchings")
    return None


def verify_connections(matrix: Matrix, connection_set: ConnectionSet, mode: str = CLASSICAL_MODE) -> bool:
    """Independently re-check a supplied connection set against ``matrix``.

    Args:
        matrix: The matrix the set claims to span.
        connection_set: Connections to check.
        mode: ``"classical"`` checks spanning only; ``"linear"`` also checks
            that the set pairs every atom once and is minimal.

    Raises:
        ForeignPosition: a connection names a position outside ``matrix``.
    """
    atoms = matrix_atoms(matrix)
    # positions of another forest can compare equal, so ownership goes by identity
    known = {id(a) for a in atoms}
    for connection in connection_set.connections:
        for end in (connection.positive, connection.negative):
            if id(end) not in known:
                raise ForeignPosition(f"{end} (id {end.id}) is not an atom of this matrix")
    paths = list(atomic_paths(matrix))
    connections = frozenset(connection_set.connections)
    if not _spans(paths, connections):
        return False
    if mode == LINEAR_MODE:
        return _is_partition(atoms, connections) and _is_minimal(paths, connections)
    return True

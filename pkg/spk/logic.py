"""Formulae, sequents and signed decomposition forests.

Everything here is an immutable value. The decomposition forest is the common
input of the matrix engine and the proof-net engine: every occurrence of a
subformula becomes a ``Position`` carrying its label, sign and α/β class, and
children are stored in link order so that geometric checks (planarity, NL
boundaries) reduce to properties of the position order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Union

from spk.errors import EmptyAntecedent, IllegalConnective, MalformedFormula, MultipleSuccedents


class LogicId(str, Enum):
    CLASSICAL = "classical"
    MLL = "mll"
    MILL = "mill"
    LAMBEK_L = "l"
    LAMBEK_L_EPS = "leps"
    NL = "nl"

    @property
    def single_conclusion(self) -> bool:
        return self in (LogicId.MILL, LogicId.LAMBEK_L, LogicId.LAMBEK_L_EPS, LogicId.NL)

    @property
    def commutative(self) -> bool:
        return self in (LogicId.CLASSICAL, LogicId.MLL, LogicId.MILL)

    @property
    def lambek(self) -> bool:
        return self in (LogicId.LAMBEK_L, LogicId.LAMBEK_L_EPS, LogicId.NL)

    @property
    def linear(self) -> bool:
        """Occurrence-counting logics, where axiom links must pair every atom."""
        return self is not LogicId.CLASSICAL

    @property
    def needs_antecedent(self) -> bool:
        return self in (LogicId.LAMBEK_L, LogicId.NL)

    @property
    def tree_antecedent(self) -> bool:
        return self is LogicId.NL


class Connective(Enum):
    NOT = ("~", 1, "¬")
    AND = ("&", 2, "∧")
    OR = ("|", 2, "∨")
    IMPLIES = ("->", 2, "→")
    LNEG = ("^", 1, "⊥")
    TENSOR = ("*", 2, "⊗")
    PAR = ("@", 2, "⅋")
    LOLLI = ("-o", 2, "⊸")
    OVER = ("/", 2, "/")
    UNDER = ("\\", 2, "\\")
    PRODUCT = (".", 2, "•")

    def __init__(self, symbol: str, arity: int, glyph: str):
        self.symbol = symbol
        self.arity = arity
        self.glyph = glyph


CONNECTIVES: dict[LogicId, frozenset[Connective]] = {
    LogicId.CLASSICAL: frozenset({Connective.NOT, Connective.AND, Connective.OR, Connective.IMPLIES}),
    LogicId.MLL: frozenset({Connective.LNEG, Connective.TENSOR, Connective.PAR, Connective.LOLLI}),
    LogicId.MILL: frozenset({Connective.TENSOR, Connective.LOLLI}),
    LogicId.LAMBEK_L: frozenset({Connective.OVER, Connective.UNDER, Connective.PRODUCT}),
    LogicId.LAMBEK_L_EPS: frozenset({Connective.OVER, Connective.UNDER, Connective.PRODUCT}),
    LogicId.NL: frozenset({Connective.OVER, Connective.UNDER}),
}

# operand index that sits "under" the arrow or slash and flips sign
_UNDER_OPERAND = {
    Connective.IMPLIES: 0,
    Connective.LOLLI: 0,
    Connective.UNDER: 0,
    Connective.OVER: 1,
}


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    connective: Connective
    operands: tuple["Formula", ...]

    def __post_init__(self):
        if len(self.operands) != self.connective.arity:
            raise MalformedFormula(
                f"{self.connective.name} takes {self.connective.arity} operand(s), got {len(self.operands)}"
            )

    def __str__(self) -> str:
        from spk.syntax import print_formula

        return print_formula(self)


Formula = Union[Atom, Compound]


def compound(connective: Connective, *operands: Formula) -> Compound:
    return Compound(connective, tuple(operands))


def subformulas(formula: Formula) -> set[Formula]:
    found = {formula}
    if isinstance(formula, Compound):
        for operand in formula.operands:
            found |= subformulas(operand)
    return found


def connective_count(formula: Formula) -> int:
    if isinstance(formula, Atom):
        return 0
    return 1 + sum(connective_count(op) for op in formula.operands)


def nesting_depth(formula: Formula) -> int:
    if isinstance(formula, Atom):
        return 0
    return 1 + max(nesting_depth(op) for op in formula.operands)


def formula_connectives(formula: Formula) -> Iterator[Connective]:
    if isinstance(formula, Compound):
        yield formula.connective
        for operand in formula.operands:
            yield from formula_connectives(operand)


# NL antecedent structures


@dataclass(frozen=True)
class Leaf:
    formula: Formula


@dataclass(frozen=True)
class Pair:
    left: "Tree"
    right: "Tree"


Tree = Union[Leaf, Pair]


def tree_leaves(tree: Tree) -> tuple[Formula, ...]:
    if isinstance(tree, Leaf):
        return (tree.formula,)
    return tree_leaves(tree.left) + tree_leaves(tree.right)


@dataclass(frozen=True)
class Sequent:
    logic: LogicId
    antecedent: Union[tuple[Formula, ...], Tree, None]
    succedent: tuple[Formula, ...]

    def antecedent_formulas(self) -> tuple[Formula, ...]:
        if self.antecedent is None:
            return ()
        if isinstance(self.antecedent, (Leaf, Pair)):
            return tree_leaves(self.antecedent)
        return tuple(self.antecedent)

    def formulas(self) -> tuple[Formula, ...]:
        return self.antecedent_formulas() + tuple(self.succedent)

    def __str__(self) -> str:
        from spk.syntax import print_sequent

        return print_sequent(self)


def check_connectives(formula: Formula, logic: LogicId) -> None:
    allowed = CONNECTIVES[logic]
    for connective in formula_connectives(formula):
        if connective not in allowed:
            raise IllegalConnective(logic, connective.symbol)


def check_sequent(sequent: Sequent) -> None:
    """Raise if ``sequent`` is not well formed for its logic."""
    logic = sequent.logic
    if logic.tree_antecedent:
        if not isinstance(sequent.antecedent, (Leaf, Pair)):
            raise EmptyAntecedent(logic)
    elif isinstance(sequent.antecedent, (Leaf, Pair)):
        raise MalformedFormula(f"{logic.value} antecedents are lists, not trees")
    if logic.needs_antecedent and not sequent.antecedent_formulas():
        raise EmptyAntecedent(logic)
    if logic.single_conclusion and len(sequent.succedent) != 1:
        raise MultipleSuccedents(logic, len(sequent.succedent))
    for formula in sequent.formulas():
        check_connectives(formula, logic)


# Signed decomposition


class Sign(str, Enum):
    PLUS = "+"
    MINUS = "-"

    def flip(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class NodeClass(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    UNARY = "unary"
    ATOM = "atom"


class Side(str, Enum):
    ANTECEDENT = "antecedent"
    SUCCEDENT = "succedent"


_ALPHA = {
    (Connective.AND, Sign.MINUS),
    (Connective.OR, Sign.PLUS),
    (Connective.IMPLIES, Sign.PLUS),
    (Connective.TENSOR, Sign.MINUS),
    (Connective.PAR, Sign.PLUS),
    (Connective.LOLLI, Sign.PLUS),
    (Connective.PRODUCT, Sign.MINUS),
    (Connective.OVER, Sign.PLUS),
    (Connective.UNDER, Sign.PLUS),
}


def classify_signed(label: Formula, sign: Sign) -> NodeClass:
    if isinstance(label, Atom):
        return NodeClass.ATOM
    if label.connective.arity == 1:
        return NodeClass.UNARY
    return NodeClass.ALPHA if (label.connective, sign) in _ALPHA else NodeClass.BETA


@dataclass(frozen=True)
class Origin:
    side: Side
    index: int


@dataclass(frozen=True)
class Position:
    id: int
    label: Formula
    sign: Sign
    kind: NodeClass
    parent: Optional[int]
    children: tuple[int, ...]
    origin: Origin

    @property
    def is_atom(self) -> bool:
        return self.kind is NodeClass.ATOM

    def __str__(self) -> str:
        if self.is_atom:
            return f"{self.label}{self.sign.value}"
        return f"({self.label}){self.sign.value}"


def classify(position: Position) -> NodeClass:
    return classify_signed(position.label, position.sign)


def signed_operands(label: Compound, sign: Sign, lambek: bool) -> list[tuple[Formula, Sign]]:
    """Children of a signed compound, in link order.

    Operands under a negation, arrow or slash flip sign; in the Lambek logics
    the positive links list their operands in reverse of the written order.
    """
    if label.connective.arity == 1:
        return [(label.operands[0], sign.flip())]
    under = _UNDER_OPERAND.get(label.connective)
    children = [
        (operand, sign.flip() if index == under else sign)
        for index, operand in enumerate(label.operands)
    ]
    if lambek and sign is Sign.PLUS:
        children.reverse()
    return children


@dataclass(frozen=True)
class DecompositionForest:
    sequent: Sequent
    positions: tuple[Position, ...]
    roots: tuple[int, ...]
    _atoms: tuple[Position, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_atoms", tuple(p for p in self.positions if p.is_atom))

    @property
    def logic(self) -> LogicId:
        return self.sequent.logic

    @property
    def atoms(self) -> tuple[Position, ...]:
        return self._atoms

    def __getitem__(self, pid: int) -> Position:
        return self.positions[pid]

    def __len__(self) -> int:
        return len(self.positions)

    def subtree(self, pid: int) -> tuple[int, ...]:
        """Ids of ``pid`` and all its descendants, in preorder."""
        out = [pid]
        for child in self.positions[pid].children:
            out.extend(self.subtree(child))
        return tuple(out)

    def root_of(self, pid: int) -> int:
        while self.positions[pid].parent is not None:
            pid = self.positions[pid].parent
        return pid

    def antecedent_roots(self) -> tuple[int, ...]:
        return tuple(r for r in self.roots if self.positions[r].origin.side is Side.ANTECEDENT)

    def succedent_roots(self) -> tuple[int, ...]:
        return tuple(r for r in self.roots if self.positions[r].origin.side is Side.SUCCEDENT)


def decompose(sequent: Sequent) -> DecompositionForest:
    """Signed decomposition of every formula of ``sequent``.

    Antecedent roots are signed -, succedent roots +. Ids are handed out in
    preorder (antecedent left to right, then succedent) with children in link
    order, so the id order of the atoms is also their leaf order.
    """
    logic = sequent.logic
    for formula in sequent.formulas():
        check_connectives(formula, logic)

    built: list[Position] = []
    counter = 0

    def visit(label: Formula, sign: Sign, parent: Optional[int], origin: Origin) -> int:
        nonlocal counter
        pid = counter
        counter += 1
        built.append(None)  # placeholder until the children are known
        children: tuple[int, ...] = ()
        if isinstance(label, Compound):
            children = tuple(
                visit(operand, child_sign, pid, origin)
                for operand, child_sign in signed_operands(label, sign, logic.lambek)
            )
        built[pid] = Position(pid, label, sign, classify_signed(label, sign), parent, children, origin)
        return pid

    roots = []
    for index, formula in enumerate(sequent.antecedent_formulas()):
        roots.append(visit(formula, Sign.MINUS, None, Origin(Side.ANTECEDENT, index)))
    for index, formula in enumerate(sequent.succedent):
        roots.append(visit(formula, Sign.PLUS, None, Origin(Side.SUCCEDENT, index)))
    return DecompositionForest(sequent, tuple(built), tuple(roots))


def leaf_order(forest: DecompositionForest) -> tuple[Position, ...]:
    """Atoms by in-order traversal of each root, antecedent roots first."""
    ordered: list[Position] = []

    def walk(pid: int) -> None:
        position = forest[pid]
        if position.is_atom:
            ordered.append(position)
        for child in position.children:
            walk(child)

    for root in forest.roots:
        walk(root)
    return tuple(ordered)


def atom_balance(forest: DecompositionForest) -> Counter:
    """Positive minus negative occurrences per atom name (zero entries dropped)."""
    balance: Counter = Counter()
    for position in forest.atoms:
        balance[position.label.name] += 1 if position.sign is Sign.PLUS else -1
    return Counter({name: value for name, value in balance.items() if value})


def is_balanced(forest: DecompositionForest) -> bool:
    """Necessary condition for provability in the occurrence-counting logics."""
    return not atom_balance(forest)

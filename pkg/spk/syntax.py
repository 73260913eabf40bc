"""ASCII grammar for formulae and sequents, scoped per logic.

Connectives: classical ``~ & | ->``; MLL postfix ``^`` with ``* @ -o``; MILL
``* -o``; Lambek ``/ \\ .``; NL ``/ \\`` with antecedents written as nested
pairs ``(X , Y)``. Binary connectives never associate, so nesting needs
parentheses. Unaries bind tightest, and in L the product binds looser than
the slashes, so ``C.(C\\A)/B`` reads as ``C.((C\\A)/B)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from spk.errors import EmptyAntecedent, IllegalConnective, SequentSyntaxError
from spk.logic import (
    CONNECTIVES,
    Atom,
    Compound,
    Connective,
    Formula,
    Leaf,
    LogicId,
    Pair,
    Sequent,
    Tree,
    check_sequent,
)

_BY_SYMBOL = {c.symbol: c for c in Connective}

_TOKEN = re.compile(
    r"\s*(?:(?P<turnstile>=>)|(?P<conn>->|-o|[~&|^*@/\\.])|(?P<punct>[(),])|(?P<atom>[A-Za-z][A-Za-z0-9_]*))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


def tokenize(text: str, logic: LogicId) -> list[Token]:
    """Split ``text`` into tokens, rejecting connectives foreign to ``logic``."""
    tokens: list[Token] = []
    allowed = CONNECTIVES[logic]
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise SequentSyntaxError(start, start + 1, "a formula, connective or '=>'", text)
        kind = match.lastgroup
        start, end = match.span(kind)
        lexeme = match.group(kind)
        if kind == "conn" and _BY_SYMBOL[lexeme] not in allowed:
            raise IllegalConnective(logic, lexeme, start)
        tokens.append(Token(kind, lexeme, start, end))
        pos = match.end()
    tokens.append(Token("eof", "", len(text), len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, logic: LogicId):
        self.text = text
        self.logic = logic
        self.tokens = tokenize(text, logic)
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expectation: str) -> SequentSyntaxError:
        token = self.peek
        return SequentSyntaxError(token.start, token.end, expectation, self.text)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.peek
        if token.kind != kind or (text is not None and token.text != text):
            raise self.fail(repr(text) if text else kind)
        self.pos += 1
        return token

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        token = self.peek
        return token.kind == kind and (text is None or token.text == text)

    # formulae

    def formula(self) -> Formula:
        if self.logic is LogicId.LAMBEK_L or self.logic is LogicId.LAMBEK_L_EPS:
            left = self.binary()
            if self.at("conn", "."):
                self.pos += 1
                return Compound(Connective.PRODUCT, (left, self.binary()))
            return left
        return self.binary()

    def binary(self) -> Formula:
        left = self.unary()
        token = self.peek
        if token.kind == "conn" and _BY_SYMBOL[token.text].arity == 2 and token.text != ".":
            self.pos += 1
            return Compound(_BY_SYMBOL[token.text], (left, self.unary()))
        return left

    def unary(self) -> Formula:
        if self.at("conn", "~"):
            self.pos += 1
            return Compound(Connective.NOT, (self.unary(),))
        operand = self.primary()
        while self.at("conn", "^"):
            self.pos += 1
            operand = Compound(Connective.LNEG, (operand,))
        return operand

    def primary(self) -> Formula:
        if self.at("atom"):
            return Atom(self.expect("atom").text)
        if self.at("punct", "("):
            self.pos += 1
            inner = self.formula()
            self.expect("punct", ")")
            return inner
        raise self.fail("an atom or '('")

    # structures

    def tree(self) -> Tree:
        """An NL antecedent: a pair ``(X , Y)`` or a single formula."""
        start = self.pos
        pair_error: Optional[SequentSyntaxError] = None
        if self.at("punct", "("):
            try:
                self.pos += 1
                left = self.tree()
                self.expect("punct", ",")
                right = self.tree()
                self.expect("punct", ")")
                return Pair(left, right)
            except SequentSyntaxError as exc:
                pair_error = exc
                self.pos = start
        try:
            return Leaf(self.formula())
        except SequentSyntaxError as exc:
            if pair_error is not None and pair_error.start > exc.start:
                raise pair_error
            raise

    def formula_list(self) -> tuple[Formula, ...]:
        if self.at("turnstile") or self.at("eof"):
            return ()
        items = [self.formula()]
        while self.at("punct", ","):
            self.pos += 1
            items.append(self.formula())
        return tuple(items)

    def sequent(self) -> Sequent:
        antecedent: Union[tuple[Formula, ...], Tree]
        if self.logic.tree_antecedent:
            if self.at("turnstile"):
                raise EmptyAntecedent(self.logic)
            antecedent = self.tree()
        else:
            antecedent = self.formula_list()
        self.expect("turnstile")
        succedent = self.formula_list()
        if not self.at("eof"):
            raise self.fail("',' or end of input")
        return Sequent(self.logic, antecedent, succedent)


def parse_formula(text: str, logic: LogicId) -> Formula:
    parser = _Parser(text, logic)
    formula = parser.formula()
    if not parser.at("eof"):
        raise parser.fail("end of input")
    return formula


def parse_sequent(text: str, logic: Union[LogicId, str]) -> Sequent:
    """Parse ``text`` as a sequent of ``logic``.

    Args:
        text: Sequent in the ASCII grammar, e.g. ``~A, B->A => ~B``.
        logic: Logic identifier; plain strings such as ``"nl"`` are accepted.

    Returns:
        The validated sequent.
    """
    logic = LogicId(logic)
    sequent = _Parser(text, logic).sequent()
    check_sequent(sequent)
    return sequent


def print_formula(formula: Formula) -> str:
    if isinstance(formula, Atom):
        return formula.name

    def operand(inner: Formula) -> str:
        printed = print_formula(inner)
        if isinstance(inner, Compound) and inner.connective.arity == 2:
            return f"({printed})"
        return printed

    connective = formula.connective
    if connective is Connective.NOT:
        return "~" + operand(formula.operands[0])
    if connective is Connective.LNEG:
        return operand(formula.operands[0]) + "^"
    left, right = formula.operands
    return f"{operand(left)}{connective.symbol}{operand(right)}"


def print_tree(tree: Tree) -> str:
    if isinstance(tree, Leaf):
        return print_formula(tree.formula)
    return f"({print_tree(tree.left)} , {print_tree(tree.right)})"


def print_sequent(sequent: Sequent) -> str:
    """Canonical text: minimal spaces, every nested compound parenthesized."""
    if isinstance(sequent.antecedent, (Leaf, Pair)):
        left = print_tree(sequent.antecedent)
    else:
        left = ", ".join(print_formula(f) for f in sequent.antecedent_formulas())
    right = ", ".join(print_formula(f) for f in sequent.succedent)
    return " ".join(part for part in (left, "=>", right) if part)

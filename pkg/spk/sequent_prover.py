"""Cut-free backward proof search, one calculus per logic.

The prover is the reference verdict for every other method in the toolkit.
Classical sequents are searched as sets (G3 style, every rule invertible, so
no backtracking); MLL and MILL as multisets with exhaustive context splits;
L over sequences with contiguous splits; NL over binary antecedent trees with
rules applied at any subtree.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Iterator, Optional, Union

from spk import config
from spk.errors import ResourceLimit
from spk.logic import (
    Atom,
    Compound,
    Connective,
    Formula,
    Leaf,
    LogicId,
    Pair,
    Sequent,
    Sign,
    Tree,
    check_sequent,
    signed_operands,
)

logger = logging.getLogger(__name__)

AXIOM = "Axiom"

_LEFT, _RIGHT = "L", "R"

_RULE_CONNECTIVE = {c.glyph: c for c in Connective}


@dataclass(frozen=True)
class Derivation:
    sequent: Sequent
    rule: str
    premises: tuple["Derivation", ...] = ()

    def nodes(self) -> Iterator["Derivation"]:
        yield self
        for premise in self.premises:
            yield from premise.nodes()

    @property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)


@dataclass(frozen=True)
class SearchStats:
    nodes: int = 0
    max_depth: int = 0


@dataclass(frozen=True)
class Verdict:
    provable: bool
    witness: Optional[Derivation] = None
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass(frozen=True)
class DerivationCheck:
    """Result of ``check_derivation``; falsy when some node is not a rule instance.

    ``path`` lists premise indices from the root down to the first bad node.
    """

    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _rule_name(connective: Connective, side: str) -> str:
    return f"{connective.glyph}{side}"


def _premise_shapes(formula: Compound, side: str) -> list[tuple[tuple[Formula, ...], tuple[Formula, ...]]]:
    """Formulae each premise adds to the (left, right) context.

    Shared by the classical and the multiplicative calculi; they differ only in
    how the remaining context is handed to the premises.
    """
    connective = formula.connective
    if connective.arity == 1:
        (a,) = formula.operands
        return [((), (a,))] if side == _LEFT else [((a,), ())]
    a, b = formula.operands
    if connective in (Connective.AND, Connective.TENSOR):
        return [((a, b), ())] if side == _LEFT else [((), (a,)), ((), (b,))]
    if connective in (Connective.OR, Connective.PAR):
        return [((a,), ()), ((b,), ())] if side == _LEFT else [((), (a, b))]
    if connective in (Connective.IMPLIES, Connective.LOLLI):
        return [((), (a,)), ((b,), ())] if side == _LEFT else [((a,), (b,))]
    raise ValueError(f"no two-sided rule for {connective.name}")


@lru_cache(maxsize=None)
def _charge(formula: Formula, sign: Sign) -> tuple[tuple[str, int], ...]:
    if isinstance(formula, Atom):
        return ((formula.name, 1 if sign is Sign.PLUS else -1),)
    total: Counter = Counter()
    for operand, child_sign in signed_operands(formula, sign, lambek=False):
        for name, value in _charge(operand, child_sign):
            total[name] += value
    return tuple(total.items())


def _balanced(antecedent, succedent) -> bool:
    total: Counter = Counter()
    for formula in antecedent:
        for name, value in _charge(formula, Sign.MINUS):
            total[name] += value
    for formula in succedent:
        for name, value in _charge(formula, Sign.PLUS):
            total[name] += value
    return not any(total.values())


def _without(items: tuple, index: int) -> tuple:
    return items[:index] + items[index + 1 :]


def _dedupe(items) -> tuple:
    return tuple(dict.fromkeys(items))


def _multiset(items) -> frozenset:
    return frozenset(Counter(items).items())


def _contains(big: Counter, small: Counter) -> bool:
    return all(big[key] >= count for key, count in small.items())


# Lambek and NL rule instances, shared by search and checking.


def lambek_steps(antecedent: tuple[Formula, ...], goal: Formula, allow_empty: bool):
    """Every backward rule instance with conclusion ``antecedent => goal`` in L.

    Yields ``(rule, premises, invertible)`` where premises are
    ``(antecedent, goal)`` pairs. Invertible instances come first.
    """

    def ok(segment: tuple) -> bool:
        return allow_empty or len(segment) > 0

    if antecedent == (goal,):
        yield AXIOM, (), True
    if isinstance(goal, Compound):
        if goal.connective is Connective.OVER:
            result, argument = goal.operands
            yield "/R", ((antecedent + (argument,), result),), True
        elif goal.connective is Connective.UNDER:
            argument, result = goal.operands
            yield "\\R", (((argument,) + antecedent, result),), True
    for i, formula in enumerate(antecedent):
        if isinstance(formula, Compound) and formula.connective is Connective.PRODUCT:
            left, right = formula.operands
            yield "•L", ((antecedent[:i] + (left, right) + antecedent[i + 1 :], goal),), True
    for i, formula in enumerate(antecedent):
        if not isinstance(formula, Compound):
            continue
        if formula.connective is Connective.OVER:
            result, argument = formula.operands
            for j in range(i + 1, len(antecedent) + 1):
                delta = antecedent[i + 1 : j]
                if ok(delta):
                    rest = antecedent[:i] + (result,) + antecedent[j:]
                    yield "/L", ((delta, argument), (rest, goal)), False
        elif formula.connective is Connective.UNDER:
            argument, result = formula.operands
            for k in range(i, -1, -1):
                delta = antecedent[k:i]
                if ok(delta):
                    rest = antecedent[:k] + (result,) + antecedent[i + 1 :]
                    yield "\\L", ((delta, argument), (rest, goal)), False
    if isinstance(goal, Compound) and goal.connective is Connective.PRODUCT:
        left, right = goal.operands
        for k in range(len(antecedent) + 1):
            first, second = antecedent[:k], antecedent[k:]
            if ok(first) and ok(second):
                yield "•R", ((first, left), (second, right)), False


def _subtrees(tree: Tree, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Tree]]:
    yield path, tree
    if isinstance(tree, Pair):
        yield from _subtrees(tree.left, path + (0,))
        yield from _subtrees(tree.right, path + (1,))


def _plug(tree: Tree, path: tuple[int, ...], filler: Tree) -> Tree:
    if not path:
        return filler
    if path[0] == 0:
        return Pair(_plug(tree.left, path[1:], filler), tree.right)
    return Pair(tree.left, _plug(tree.right, path[1:], filler))


def nl_steps(antecedent: Tree, goal: Formula):
    """Backward rule instances of NL; left rules act on any subtree context."""
    if antecedent == Leaf(goal):
        yield AXIOM, (), True
    if isinstance(goal, Compound):
        if goal.connective is Connective.OVER:
            result, argument = goal.operands
            yield "/R", ((Pair(antecedent, Leaf(argument)), result),), True
        elif goal.connective is Connective.UNDER:
            argument, result = goal.operands
            yield "\\R", ((Pair(Leaf(argument), antecedent), result),), True
    for path, sub in _subtrees(antecedent):
        if not isinstance(sub, Pair):
            continue
        functor = sub.left.formula if isinstance(sub.left, Leaf) else None
        if isinstance(functor, Compound) and functor.connective is Connective.OVER:
            result, argument = functor.operands
            yield "/L", ((sub.right, argument), (_plug(antecedent, path, Leaf(result)), goal)), False
        functor = sub.right.formula if isinstance(sub.right, Leaf) else None
        if isinstance(functor, Compound) and functor.connective is Connective.UNDER:
            argument, result = functor.operands
            yield "\\L", ((sub.left, argument), (_plug(antecedent, path, Leaf(result)), goal)), False


def _leaves(antecedent) -> tuple[Formula, ...]:
    if isinstance(antecedent, (Leaf, Pair)):
        return Sequent(LogicId.NL, antecedent, ()).antecedent_formulas()
    return antecedent


class _Search:
    def __init__(self, logic: LogicId, budget: int):
        self.logic = logic
        self.budget = budget
        self.nodes = 0
        self.max_depth = 0
        self.memo: dict[Any, Optional[Derivation]] = {}

    def tick(self, depth: int) -> None:
        self.nodes += 1
        self.max_depth = max(self.max_depth, depth)
        if self.nodes > self.budget:
            raise ResourceLimit(self.budget)

    def sequent(self, antecedent, succedent) -> Sequent:
        return Sequent(self.logic, antecedent, tuple(succedent))

    # classical

    def classical(self, antecedent: tuple, succedent: tuple, depth: int) -> Optional[Derivation]:
        self.tick(depth)
        here = self.sequent(antecedent, succedent)
        if set(antecedent) & set(succedent):
            return Derivation(here, AXIOM)
        for side, items in ((_LEFT, antecedent), (_RIGHT, succedent)):
            for i, formula in enumerate(items):
                if not isinstance(formula, Compound):
                    continue
                rest_left = _without(antecedent, i) if side == _LEFT else antecedent
                rest_right = _without(succedent, i) if side == _RIGHT else succedent
                premises = []
                for add_left, add_right in _premise_shapes(formula, side):
                    premise = self.classical(
                        _dedupe(rest_left + add_left), _dedupe(rest_right + add_right), depth + 1
                    )
                    if premise is None:
                        return None
                    premises.append(premise)
                return Derivation(here, _rule_name(formula.connective, side), tuple(premises))
        return None

    # multiplicative

    def linear(self, antecedent: tuple, succedent: tuple, depth: int) -> Optional[Derivation]:
        self.tick(depth)
        here = self.sequent(antecedent, succedent)
        key = (_multiset(antecedent), _multiset(succedent))
        if key in self.memo:
            cached = self.memo[key]
            return None if cached is None else replace(cached, sequent=here)
        result = self._linear(here, antecedent, succedent, depth)
        self.memo[key] = result
        return result

    def _fits(self, succedent: tuple) -> bool:
        return not self.logic.single_conclusion or len(succedent) == 1

    def _linear(self, here: Sequent, antecedent: tuple, succedent: tuple, depth: int) -> Optional[Derivation]:
        if len(antecedent) == 1 and antecedent == succedent:
            return Derivation(here, AXIOM)
        sides = ((_LEFT, antecedent), (_RIGHT, succedent))
        for side, items in sides:
            for i, formula in enumerate(items):
                if not isinstance(formula, Compound):
                    continue
                shapes = _premise_shapes(formula, side)
                if len(shapes) != 1:
                    continue
                (add_left, add_right), = shapes
                left = (antecedent[:i] + add_left + antecedent[i + 1 :]) if side == _LEFT else antecedent + add_left
                right = (succedent[:i] + add_right + succedent[i + 1 :]) if side == _RIGHT else succedent + add_right
                if not self._fits(right):
                    return None
                premise = self.linear(left, right, depth + 1)
                if premise is None:
                    return None
                return Derivation(here, _rule_name(formula.connective, side), (premise,))
        for side, items in sides:
            for i, formula in enumerate(items):
                if not isinstance(formula, Compound):
                    continue
                shapes = _premise_shapes(formula, side)
                if len(shapes) != 2:
                    continue
                found = self._split(here, formula, side, i, shapes, depth)
                if found is not None:
                    return found
        return None

    def _split(self, here: Sequent, formula: Compound, side: str, index: int, shapes, depth: int):
        rest_left = _without(here.antecedent, index) if side == _LEFT else here.antecedent
        rest_right = _without(here.succedent, index) if side == _RIGHT else here.succedent
        (first_left, first_right), (second_left, second_right) = shapes
        seen = set()
        for mask_left in range(1 << len(rest_left)):
            for mask_right in range(1 << len(rest_right)):
                part_left = tuple(f for k, f in enumerate(rest_left) if mask_left >> k & 1)
                part_right = tuple(f for k, f in enumerate(rest_right) if mask_right >> k & 1)
                key = (_multiset(part_left), _multiset(part_right))
                if key in seen:
                    continue
                seen.add(key)
                other_left = tuple(f for k, f in enumerate(rest_left) if not mask_left >> k & 1)
                other_right = tuple(f for k, f in enumerate(rest_right) if not mask_right >> k & 1)
                one = (part_left + first_left, part_right + first_right)
                two = (other_left + second_left, other_right + second_right)
                if not (self._fits(one[1]) and self._fits(two[1])):
                    continue
                if not (_balanced(*one) and _balanced(*two)):
                    continue
                left_proof = self.linear(*one, depth + 1)
                if left_proof is None:
                    continue
                right_proof = self.linear(*two, depth + 1)
                if right_proof is None:
                    continue
                return Derivation(here, _rule_name(formula.connective, side), (left_proof, right_proof))
        return None

    # Lambek

    def lambek(self, antecedent, goal: Formula, depth: int) -> Optional[Derivation]:
        self.tick(depth)
        key = (antecedent, goal)
        if key in self.memo:
            return self.memo[key]
        if self.logic is LogicId.NL:
            steps = nl_steps(antecedent, goal)
        else:
            steps = lambek_steps(antecedent, goal, self.logic is LogicId.LAMBEK_L_EPS)
        result = None
        for rule, premises, invertible in steps:
            if all(_balanced(_leaves(a), (g,)) for a, g in premises):
                proofs = []
                for premise_antecedent, premise_goal in premises:
                    proof = self.lambek(premise_antecedent, premise_goal, depth + 1)
                    if proof is None:
                        break
                    proofs.append(proof)
                else:
                    result = Derivation(self.sequent(antecedent, (goal,)), rule, tuple(proofs))
                    break
            if invertible:
                break
        self.memo[key] = result
        return result


def prove(sequent: Sequent, budget: Optional[int] = None) -> Verdict:
    """Decide ``sequent`` by backward search in its logic's calculus.

    Args:
        sequent: A well-formed sequent.
        budget: Maximum number of search nodes; defaults to ``SPK_BUDGET``.

    Returns:
        A Verdict whose witness, when provable, passes ``check_derivation``.

    Raises:
        ResourceLimit: the node budget ran out before the search finished.
    """
    check_sequent(sequent)
    budget = budget if budget is not None else config.node_budget()
    search = _Search(sequent.logic, budget)
    logic = sequent.logic
    logger.debug(f"--- 🔍 sequent search for {sequent} ({logic.value}, budget {budget}) ---")
    antecedent = sequent.antecedent
    if logic is LogicId.CLASSICAL:
        witness = search.classical(tuple(antecedent), sequent.succedent, 0)
        if witness is not None:
            witness = replace(witness, sequent=sequent)
    elif logic in (LogicId.MLL, LogicId.MILL):
        witness = None
        if _balanced(antecedent, sequent.succedent):
            witness = search.linear(tuple(antecedent), sequent.succedent, 0)
        else:
            search.tick(0)
    else:
        witness = None
        (goal,) = sequent.succedent
        if _balanced(_leaves(antecedent), sequent.succedent):
            witness = search.lambek(antecedent, goal, 0)
        else:
            search.tick(0)
    stats = SearchStats(search.nodes, search.max_depth)
    logger.debug(f"search finished: provable={witness is not None}, {stats.nodes} nodes")
    return Verdict(witness is not None, witness, stats)


# Checking


def _check_table_rule(node: Derivation) -> Optional[str]:
    """Rule check for the two-sided calculi (classical, MLL, MILL)."""
    sequent = node.sequent
    logic = sequent.logic
    antecedent = sequent.antecedent_formulas()
    succedent = sequent.succedent
    premises = [p.sequent for p in node.premises]
    if node.rule == AXIOM:
        if premises:
            return "an axiom has no premises"
        if logic is LogicId.CLASSICAL:
            return None if set(antecedent) & set(succedent) else "axiom sides share no formula"
        return None if len(antecedent) == 1 and antecedent == succedent else "not of the form D => D"
    connective = _RULE_CONNECTIVE.get(node.rule[:-1])
    side = node.rule[-1:]
    if connective is None or side not in (_LEFT, _RIGHT):
        return f"unknown rule {node.rule}"
    items = antecedent if side == _LEFT else succedent
    for i, formula in enumerate(items):
        if not isinstance(formula, Compound) or formula.connective is not connective:
            continue
        shapes = _premise_shapes(formula, side)
        if len(shapes) != len(premises):
            continue
        rest_left = _without(antecedent, i) if side == _LEFT else antecedent
        rest_right = _without(succedent, i) if side == _RIGHT else succedent
        if logic is LogicId.CLASSICAL:
            if _classical_instance(antecedent, succedent, rest_left, rest_right, shapes, premises):
                return None
        elif _linear_instance(rest_left, rest_right, shapes, premises):
            return None
    return f"no principal formula makes this a {node.rule} instance"


def _classical_instance(antecedent, succedent, rest_left, rest_right, shapes, premises) -> bool:
    # premises may drop the principal formula or keep it (implicit contraction)
    for base_left, base_right in ((set(rest_left), set(rest_right)), (set(antecedent), set(succedent))):
        if all(
            set(p.antecedent_formulas()) == base_left | set(add_left)
            and set(p.succedent) == base_right | set(add_right)
            for p, (add_left, add_right) in zip(premises, shapes)
        ):
            return True
    return False


def _linear_instance(rest_left, rest_right, shapes, premises) -> bool:
    total_left: Counter = Counter()
    total_right: Counter = Counter()
    for premise, (add_left, add_right) in zip(premises, shapes):
        have_left = Counter(premise.antecedent_formulas())
        have_right = Counter(premise.succedent)
        if not (_contains(have_left, Counter(add_left)) and _contains(have_right, Counter(add_right))):
            return False
        total_left += have_left - Counter(add_left)
        total_right += have_right - Counter(add_right)
    return total_left == Counter(rest_left) and total_right == Counter(rest_right)


def _check_lambek_rule(node: Derivation) -> Optional[str]:
    sequent = node.sequent
    if len(sequent.succedent) != 1:
        return "expects exactly one succedent formula"
    (goal,) = sequent.succedent
    if sequent.logic is LogicId.NL:
        if not isinstance(sequent.antecedent, (Leaf, Pair)):
            return "NL antecedents are trees"
        steps = nl_steps(sequent.antecedent, goal)
    else:
        antecedent = tuple(sequent.antecedent or ())
        if sequent.logic is LogicId.LAMBEK_L and not antecedent:
            return "empty antecedent"
        steps = lambek_steps(antecedent, goal, sequent.logic is LogicId.LAMBEK_L_EPS)
    given = tuple(
        (
            p.sequent.antecedent if sequent.logic is LogicId.NL else tuple(p.sequent.antecedent or ()),
            p.sequent.succedent[0] if len(p.sequent.succedent) == 1 else None,
        )
        for p in node.premises
    )
    for rule, premises, _ in steps:
        if rule == node.rule and premises == given:
            return None
    return f"not a {node.rule} instance"


def check_derivation(derivation: Derivation) -> DerivationCheck:
    """Check every node of ``derivation`` against its logic's rules.

    Returns:
        A truthy DerivationCheck, or a falsy one locating the first bad node.
    """
    logic = derivation.sequent.logic

    def walk(node: Derivation, path: tuple[int, ...]) -> DerivationCheck:
        if node.sequent.logic is not logic:
            return DerivationCheck(False, path, f"node belongs to {node.sequent.logic.value}")
        if logic.lambek:
            problem = _check_lambek_rule(node)
        else:
            if logic.single_conclusion and len(node.sequent.succedent) != 1:
                problem = "expects exactly one succedent formula"
            else:
                problem = _check_table_rule(node)
        if problem is not None:
            return DerivationCheck(False, path, problem)
        for index, premise in enumerate(node.premises):
            result = walk(premise, path + (index,))
            if not result:
                return result
        return DerivationCheck(True, path)

    result = walk(derivation, ())
    return DerivationCheck(True) if result else result


# Rendering


def format_derivation(derivation: Derivation) -> str:
    """Indented text, one ``rule: sequent`` line per node, premises below."""
    lines = []

    def walk(node: Derivation, depth: int) -> None:
        lines.append(f"{'  ' * depth}{node.rule}: {node.sequent}")
        for premise in node.premises:
            walk(premise, depth + 1)

    walk(derivation, 0)
    return "\n".join(lines)


def derivation_to_dict(derivation: Derivation) -> dict:
    return {
        "rule": derivation.rule,
        "sequent": str(derivation.sequent),
        "premises": [derivation_to_dict(p) for p in derivation.premises],
    }


def derivation_from_dict(data: dict, logic: Union[LogicId, str]) -> Derivation:
    from spk.syntax import parse_sequent

    return Derivation(
        parse_sequent(data["sequent"], logic),
        data["rule"],
        tuple(derivation_from_dict(p, logic) for p in data.get("premises", ())),
    )

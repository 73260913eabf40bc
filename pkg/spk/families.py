"""Bounded families of sequents used to cross-check the proof methods."""

from __future__ import annotations

import itertools
import logging
import random
import string
from functools import lru_cache
from typing import Iterator

from spk.logic import CONNECTIVES, Atom, Compound, Formula, Leaf, LogicId, Pair, Sequent, Tree

logger = logging.getLogger(__name__)


def atom_names(count: int) -> tuple[str, ...]:
    return tuple(string.ascii_uppercase[:count])


@lru_cache(maxsize=None)
def _formulas(logic: LogicId, names: tuple[str, ...], size: int, depth: int) -> tuple[Formula, ...]:
    """Formulae with exactly ``size`` connectives and nesting at most ``depth``."""
    if size == 0:
        return tuple(Atom(n) for n in names)
    if depth == 0:
        return ()
    connectives = sorted(CONNECTIVES[logic], key=lambda c: c.symbol)
    found: list[Formula] = []
    for connective in connectives:
        if connective.arity == 1:
            for operand in _formulas(logic, names, size - 1, depth - 1):
                found.append(Compound(connective, (operand,)))
            continue
        for left_size in range(size):
            for left in _formulas(logic, names, left_size, depth - 1):
                for right in _formulas(logic, names, size - 1 - left_size, depth - 1):
                    found.append(Compound(connective, (left, right)))
    return tuple(found)


def _cost_pools(logic: LogicId, atoms: int, depth: int, connectives: int) -> dict[int, tuple[Formula, ...]]:
    names = atom_names(atoms)
    return {cost: _formulas(logic, names, cost, depth) for cost in range(connectives + 1)}


def formulas(logic: LogicId, atoms: int, depth: int, connectives: int) -> tuple[Formula, ...]:
    return tuple(itertools.chain.from_iterable(_cost_pools(logic, atoms, depth, connectives).values()))


def bracketings(items: tuple[Formula, ...]) -> Iterator[Tree]:
    """Every binary tree with ``items`` as its leaves, left to right."""
    if len(items) == 1:
        yield Leaf(items[0])
        return
    for cut in range(1, len(items)):
        for left in bracketings(items[:cut]):
            for right in bracketings(items[cut:]):
                yield Pair(left, right)


def _cost_splits(total: int, parts: int, nondecreasing: bool, least: int = 0) -> Iterator[tuple[int, ...]]:
    """Connective counts per slot summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(least, total + 1):
        for rest in _cost_splits(total - first, parts - 1, nondecreasing, first if nondecreasing else 0):
            yield (first,) + rest


def _sides(logic: LogicId, pools: dict[int, tuple[Formula, ...]], sizes, total: int) -> Iterator[tuple[Formula, ...]]:
    """Sides of the given sizes whose formulae carry ``total`` connectives in all.

    Commutative sides are multisets: slots sorted by cost, repeats of a cost
    drawn with replacement, so each multiset comes out once.
    """
    for size in sizes:
        for split in _cost_splits(total, size, logic.commutative):
            if not logic.commutative:
                yield from itertools.product(*(pools[cost] for cost in split))
                continue
            runs = [
                tuple(itertools.combinations_with_replacement(pools[cost], len(tuple(group))))
                for cost, group in itertools.groupby(split)
            ]
            for parts in itertools.product(*runs):
                yield tuple(itertools.chain.from_iterable(parts))


def enumerate_sequents(
    logic: LogicId, atoms: int = 2, depth: int = 2, width: int = 2, connectives: int = 3
) -> Iterator[Sequent]:
    """Every sequent of ``logic`` inside the given bounds, in a fixed order.

    Args:
        logic: Logic whose connectives and sequent shape are used.
        atoms: Number of atom names, ``A``, ``B``, ...
        depth: Maximum nesting depth of each formula.
        width: Maximum number of formulae on each side.
        connectives: Maximum number of connectives in the whole sequent.
    """
    logic = LogicId(logic)
    pools = _cost_pools(logic, atoms, depth, connectives)
    if not any(pools.values()):
        return
    min_left = 1 if logic.needs_antecedent else 0
    left_sizes = range(min_left, width + 1)
    right_sizes = [1] if logic.single_conclusion else range(width + 1)
    for right_cost in range(connectives + 1):
        for right in _sides(logic, pools, right_sizes, right_cost):
            for left_cost in range(connectives - right_cost + 1):
                for left in _sides(logic, pools, left_sizes, left_cost):
                    if not left and not right:
                        continue
                    if logic.tree_antecedent:
                        for tree in bracketings(tuple(left)):
                            yield Sequent(logic, tree, tuple(right))
                    else:
                        yield Sequent(logic, tuple(left), tuple(right))


def sample_sequents(
    logic: LogicId,
    atoms: int = 2,
    depth: int = 2,
    width: int = 2,
    connectives: int = 3,
    size: int = 100,
    seed: int = 0,
) -> list[Sequent]:
    """A reproducible random sample of ``enumerate_sequents``, kept in family order.

    The family is streamed through a reservoir, so only ``size`` sequents are
    held at once.
    """
    rng = random.Random(seed)
    picked: list[tuple[int, Sequent]] = []
    seen = 0
    for seen, sequent in enumerate(enumerate_sequents(logic, atoms, depth, width, connectives), start=1):
        if len(picked) < size:
            picked.append((seen, sequent))
            continue
        slot = rng.randrange(seen)
        if slot < size:
            picked[slot] = (seen, sequent)
    picked.sort(key=lambda item: item[0])
    logger.debug(f"sampled {len(picked)} of {seen} sequents with seed {seed}")
    return [sequent for _, sequent in picked]

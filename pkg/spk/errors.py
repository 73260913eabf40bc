"""Exception hierarchy shared by every engine of the toolkit."""

from __future__ import annotations

from typing import Optional


class SpkError(Exception):
    """Base class for every error raised by the toolkit."""


class SequentSyntaxError(SpkError):
    """Input text does not follow the grammar of the requested logic."""

    def __init__(self, start: int, end: int, expectation: str, text: str = ""):
        self.start = start
        self.end = end
        self.expectation = expectation
        self.text = text
        super().__init__(f"expected {expectation} at offset {start}")

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end


class MalformedFormula(SpkError):
    """A formula or sequent value was built with the wrong shape."""


class IllegalConnective(SpkError):
    def __init__(self, logic, connective: str, start: Optional[int] = None):
        self.logic = logic
        self.connective = connective
        self.start = start
        where = f" at offset {start}" if start is not None else ""
        super().__init__(f"connective '{connective}' is not part of {logic.value}{where}")


class EmptyAntecedent(SpkError):
    def __init__(self, logic):
        self.logic = logic
        super().__init__(f"{logic.value} sequents need a nonempty antecedent")


class MultipleSuccedents(SpkError):
    def __init__(self, logic, count: int):
        self.logic = logic
        self.count = count
        super().__init__(f"{logic.value} expects exactly one succedent formula, got {count}")


class ResourceLimit(SpkError):
    def __init__(self, budget: int, what: str = "search nodes"):
        self.budget = budget
        self.what = what
        super().__init__(f"budget of {budget} {what} exhausted")


class SynthesisBound(ResourceLimit):
    """Classical net synthesis tried every structure within its link bounds."""

    def __init__(self, weakenings: int, contractions: int):
        self.weakenings = weakenings
        self.contractions = contractions
        super().__init__(weakenings + contractions, "structural links")

    def __str__(self) -> str:
        return f"no net within {self.weakenings} weakening and {self.contractions} contraction links"


class UnsupportedLogic(SpkError):
    def __init__(self, logic, operation: str):
        self.logic = logic
        self.operation = operation
        super().__init__(f"{operation} is not defined for {logic.value}")


class ForeignPosition(SpkError):
    """A connection names a position that does not belong to the matrix."""


class MalformedStructuralLink(SpkError):
    """A contraction or weakening link has the wrong arity or labels."""


class MalformedStructure(SpkError):
    """A proof structure violates the link conditions or cannot be read."""


class NotProvable(SpkError):
    def __init__(self, sequent_text: str, what: str):
        self.sequent_text = sequent_text
        super().__init__(f"cannot export {what}: {sequent_text} is not provable")

"""Exception types shared across the package."""
from __future__ import annotations


class LatticeError(Exception):
    """Base class for all domain errors raised by this package."""


class DuplicateLabel(LatticeError):
    def __init__(self, label: str):
        super().__init__(f"duplicate label {label!r}")
        self.label = label


class CycleDetected(LatticeError):
    def __init__(self, witness: tuple):
        super().__init__(f"cover relation contains a cycle through {witness}")
        self.witness = witness


class NotALattice(LatticeError):
    """A pair of elements has no least upper bound or no greatest lower bound."""

    def __init__(self, witness: tuple, bound: str, reason: str):
        super().__init__(f"not a lattice: pair {witness} has {reason} ({bound})")
        self.witness = witness
        self.bound = bound  # "join" or "meet"


class InvalidElement(LatticeError):
    def __init__(self, element, n: int):
        super().__init__(f"element {element!r} not a valid id in [0, {n})")
        self.element = element


class EmptySet(LatticeError):
    def __init__(self, what: str):
        super().__init__(f"{what} of the empty set is undefined here")


class SizeLimit(LatticeError):
    def __init__(self, what: str, size, limit):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.size = size
        self.limit = limit


class DomainMismatch(LatticeError):
    def __init__(self, detail: str):
        super().__init__(f"maps do not share the required spaces: {detail}")


class NotDistributive(LatticeError):
    def __init__(self, which: str, witness: tuple | None = None):
        msg = f"{which} lattice is not distributive"
        if witness is not None:
            msg += f" (witness triple {witness})"
        super().__init__(msg)
        self.which = which
        self.witness = witness


class HypothesisViolated(LatticeError):
    """A stated precondition of a construction fails; carries a witness."""

    def __init__(self, which: str, witness: tuple | None):
        super().__init__(f"hypothesis {which!r} violated at {witness}")
        self.which = which
        self.witness = witness


class ConditionViolated(LatticeError):
    """An error-function / approximation condition fails; carries a witness."""

    def __init__(self, which: str, witness: tuple | None):
        super().__init__(f"condition {which!r} violated at {witness}")
        self.which = which
        self.witness = witness


class AxiomViolated(LatticeError):
    """A neighborhood-system axiom fails; carries the axiom tag and a witness."""

    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"neighborhood axiom {axiom} violated at {witness}")
        self.axiom = axiom
        self.witness = witness


class NotACongruence(LatticeError):
    def __init__(self, witness: tuple, op: str):
        super().__init__(f"partition is not a congruence: {op} incompatible at {witness}")
        self.witness = witness
        self.op = op


class NoBottom(LatticeError):
    def __init__(self):
        super().__init__("lattice has no bottom element")


class NotBooleanCodomain(LatticeError):
    def __init__(self, detail: str):
        super().__init__(f"codomain is not a Boolean algebra: {detail}")


class NotInjective(LatticeError):
    def __init__(self, witness: tuple):
        super().__init__(f"map is not injective: {witness[0]} and {witness[1]} share an image")
        self.witness = witness


class SearchBudgetExceeded(LatticeError):
    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} candidates exceeded")
        self.budget = budget


class NoRepairFound(LatticeError):
    """Neither directional repair hypothesis holds for the given function."""

    def __init__(self, increasing_witness: tuple, decreasing_witness: tuple):
        super().__init__(
            "no monotone repair found: the increasing hypothesis fails at "
            f"{increasing_witness} and the decreasing hypothesis fails at {decreasing_witness}"
        )
        self.increasing_witness = increasing_witness
        self.decreasing_witness = decreasing_witness


class FileFormatError(LatticeError):
    """Malformed input file; message carries position information."""

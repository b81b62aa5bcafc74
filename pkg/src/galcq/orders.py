"""Order structure and order concepts.

Per domain element, the classical target ontology talks about a finite set
of comparable quantities: the relevant truth constants, the value of each
subconcept here, the value of each subconcept at the tree parent (the
"shifted" copies), and the degree of the incoming role edge.  Atomic
classical concepts `Leq(a, b)` assert "value of a <= value of b"; every
other comparison is a Boolean macro over such atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import ONE, ValueSet
from .concepts import And, Concept, Implies, Not, Or, negate
from .ontology import FuzzyOntology, roles, sub_closure, value_closure


@dataclass(frozen=True, slots=True)
class ValueElement:
    value: Fraction


@dataclass(frozen=True, slots=True)
class ConceptElement:
    """Value of a subconcept at the current element."""

    concept: Concept


@dataclass(frozen=True, slots=True)
class ShiftedElement:
    """Value of a subconcept at the tree parent of the current element."""

    concept: Concept


@dataclass(frozen=True, slots=True)
class EdgeElement:
    """Degree of the role edge from the tree parent (or its complement)."""

    positive: bool


EDGE = EdgeElement(True)
EDGE_INV = EdgeElement(False)

OrderElement = Union[ValueElement, ConceptElement, ShiftedElement, EdgeElement]


@dataclass(frozen=True, slots=True)
class Leq:
    """Atomic classical concept: value of lhs <= value of rhs."""

    lhs: OrderElement
    rhs: OrderElement


def invert(e: OrderElement) -> OrderElement:
    """The involutive complement of an element (value 1-x)."""
    match e:
        case ValueElement(value):
            return ValueElement(ONE - value)
        case ConceptElement(concept):
            return ConceptElement(negate(concept))
        case ShiftedElement(concept):
            return ShiftedElement(negate(concept))
        case EdgeElement(positive):
            return EdgeElement(not positive)
    raise TypeError(f"not an order element: {e!r}")


def shift(e: OrderElement) -> OrderElement:
    """Move an element's reference one tree level up; constants are fixed."""
    match e:
        case ValueElement():
            return e
        case ConceptElement(concept):
            return ShiftedElement(concept)
    raise TypeError(f"cannot shift {e!r}")


@dataclass(frozen=True, slots=True)
class MinExpr:
    """min of two element values, usable on the right of a comparison."""

    a: OrderElement
    b: OrderElement


@dataclass(frozen=True, slots=True)
class ResExpr:
    """a => b (residuum of min), usable on the right of a comparison."""

    a: OrderElement
    b: OrderElement


OrderOperand = Union[OrderElement, MinExpr, ResExpr]


def _le(alpha: OrderElement, e: OrderOperand) -> Concept:
    if isinstance(e, MinExpr):
        return And(_le(alpha, e.a), _le(alpha, e.b))
    if isinstance(e, ResExpr):
        return Or(Leq(e.a, e.b), Leq(alpha, e.b))
    return Leq(alpha, e)


def _ge(alpha: OrderElement, e: OrderOperand) -> Concept:
    if isinstance(e, MinExpr):
        return Or(Leq(e.a, alpha), Leq(e.b, alpha))
    if isinstance(e, ResExpr):
        return And(
            Implies(Leq(e.a, e.b), Leq(ValueElement(ONE), alpha)),
            Implies(Not(Leq(e.a, e.b)), Leq(e.b, alpha)),
        )
    return Leq(e, alpha)


def order_concept(lhs: OrderElement, rel: str, rhs: OrderOperand) -> Concept:
    """Classical concept expressing `lhs rel rhs` over Leq atoms.

    rel is one of < <= = >= >; strictness and equality are resolved by outer
    Boolean combination of the <= and >= expansions.
    """
    if rel == "<=":
        return _le(lhs, rhs)
    if rel == ">=":
        return _ge(lhs, rhs)
    if rel == "=":
        return And(_le(lhs, rhs), _ge(lhs, rhs))
    if rel == "<":
        return Not(_ge(lhs, rhs))
    if rel == ">":
        return Not(_le(lhs, rhs))
    raise ValueError(f"unknown relator {rel!r}")


@dataclass(frozen=True)
class OrderStructure:
    """The comparable quantities of an ontology, with their roles.

    `elements` enumerates, deterministically: one ValueElement per relevant
    constant, one ConceptElement and one ShiftedElement per closed
    subconcept, then the edge pair.  ShiftedElement never wraps a constant;
    shifting identifies shifted constants with the constants themselves.
    """

    values: ValueSet
    subconcepts: tuple[Concept, ...]
    roles: tuple[str, ...]
    elements: tuple[OrderElement, ...]

    @classmethod
    def from_ontology(cls, o: FuzzyOntology) -> "OrderStructure":
        values = value_closure(o)
        subs = sub_closure(o)
        elements = (
            tuple(ValueElement(q) for q in values)
            + tuple(ConceptElement(c) for c in subs)
            + tuple(ShiftedElement(c) for c in subs)
            + (EDGE, EDGE_INV)
        )
        return cls(values, subs, roles(o), elements)

    def base_elements(self) -> tuple[OrderElement, ...]:
        """Constants and current-level subconcepts (the shiftable part)."""
        return tuple(ValueElement(q) for q in self.values) + tuple(
            ConceptElement(c) for c in self.subconcepts
        )

    def __len__(self) -> int:
        return len(self.elements)

"""Ontology types and their syntactic closures.

An ontology couples an ordered ABox (assertions comparing truth degrees of
concept memberships) with a TBox of graded concept inclusions.  Only local
ABoxes are supported: no role assertions and a single individual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .algebra import ValueSet
from .concepts import Concept, negate, normalize, roles_in, subconcepts, concept_size

RELATIONS = ("<", "<=", "=", ">=", ">")


@dataclass(frozen=True, slots=True)
class ConceptAssertion:
    individual: str
    concept: Concept


@dataclass(frozen=True, slots=True)
class RoleAssertion:
    subject: str
    object: str
    role: str


ClassicalAssertion = Union[ConceptAssertion, RoleAssertion]


@dataclass(frozen=True, slots=True)
class OrderAssertion:
    """left <rel> right, where right is a degree or a second assertion."""

    left: ClassicalAssertion
    rel: str
    right: Union[Fraction, ClassicalAssertion]


@dataclass(frozen=True, slots=True)
class FuzzyGCI:
    """lhs is included in rhs to at least `degree`."""

    lhs: Concept
    rhs: Concept
    degree: Fraction


@dataclass(frozen=True, slots=True)
class FuzzyOntology:
    abox: tuple[OrderAssertion, ...]
    tbox: tuple[FuzzyGCI, ...]
    individual: str = "a"


def is_local(abox: Iterable[OrderAssertion]) -> bool:
    """True iff the ABox has no role assertions and at most one individual."""
    individuals = set()
    for assertion in abox:
        for side in (assertion.left, assertion.right):
            if isinstance(side, RoleAssertion):
                return False
            if isinstance(side, ConceptAssertion):
                individuals.add(side.individual)
    return len(individuals) <= 1


def _assertion_concepts(o: FuzzyOntology):
    for assertion in o.abox:
        for side in (assertion.left, assertion.right):
            if isinstance(side, ConceptAssertion):
                yield side.concept


def close_under_negation(concepts: Iterable[Concept]) -> tuple[Concept, ...]:
    """Append the negation of each concept, collapsing double negations."""
    out = []
    seen = set()
    for c in concepts:
        if c not in seen:
            seen.add(c)
            out.append(c)
    for c in list(out):
        n = negate(c)
        if n not in seen:
            seen.add(n)
            out.append(n)
    return tuple(out)


def sub_closure(o: FuzzyOntology) -> tuple[Concept, ...]:
    """Subconcepts of the ontology, closed under single negation.

    Order is deterministic: post-order traversal of the ABox then TBox
    concepts, duplicates dropped, negations appended afterwards.  Expects a
    normalized ontology.
    """
    base = []
    seen = set()

    def visit(c):
        for s in subconcepts(c):
            if s not in seen:
                seen.add(s)
                base.append(s)

    for c in _assertion_concepts(o):
        visit(c)
    for gci in o.tbox:
        visit(gci.lhs)
        visit(gci.rhs)
    return close_under_negation(base)


def value_closure(o: FuzzyOntology) -> ValueSet:
    """Degrees of the ontology closed under 1-x, plus {0, 1/2, 1}."""
    degrees = [a.right for a in o.abox if isinstance(a.right, Fraction)]
    degrees.extend(gci.degree for gci in o.tbox)
    return ValueSet(degrees)


def roles(o: FuzzyOntology) -> tuple[str, ...]:
    """Role names in order of first occurrence."""
    out = []
    seen = set()
    for c in _assertion_concepts(o):
        for r in roles_in(c):
            if r not in seen:
                seen.add(r)
                out.append(r)
    for gci in o.tbox:
        for c in (gci.lhs, gci.rhs):
            for r in roles_in(c):
                if r not in seen:
                    seen.add(r)
                    out.append(r)
    return tuple(out)


def normalize_ontology(o: FuzzyOntology, at_most: str = "involutive") -> FuzzyOntology:
    """Normalize every concept; drops nothing else."""

    def norm_side(side):
        if isinstance(side, ConceptAssertion):
            return ConceptAssertion(side.individual, normalize(side.concept, at_most))
        return side

    abox = tuple(
        OrderAssertion(norm_side(a.left), a.rel, norm_side(a.right)) for a in o.abox
    )
    tbox = tuple(
        FuzzyGCI(normalize(g.lhs, at_most), normalize(g.rhs, at_most), g.degree)
        for g in o.tbox
    )
    return FuzzyOntology(abox, tbox, o.individual)


def ontology_size(o: FuzzyOntology) -> int:
    """Crude input-size measure: total AST nodes plus one per axiom."""
    total = len(o.abox) + len(o.tbox)
    for c in _assertion_concepts(o):
        total += concept_size(c)
    for gci in o.tbox:
        total += concept_size(gci.lhs) + concept_size(gci.rhs)
    return total

"""Compilation of a fuzzy ontology into a classical ALCQ ontology.

Each domain element of a tree-shaped classical model carries a total
preorder over the order structure (constants, subconcept values here and at
the parent, and the incoming edge degree), encoded by the Leq atoms.  The
emitted axiom families force those preorders to be well-formed, tie each
complex subconcept's position to its parts, and propagate order facts along
role edges.  Consistency is preserved in both directions.
"""

from __future__ import annotations

from .algebra import ONE, ValueSet
from .concepts import And, AtLeast, Concept, Forall, Implies, Not, Or, Top
from .classical_model import ClassicalOntology, Inclusion
from .errors import LocalityError
from .ontology import ConceptAssertion, FuzzyOntology, is_local
from .orders import (
    EDGE,
    ConceptElement,
    Leq,
    MinExpr,
    OrderStructure,
    ResExpr,
    ValueElement,
    invert,
    order_concept,
    shift,
)

TOP = Top()


def build_order_structure(o: FuzzyOntology) -> OrderStructure:
    """Order structure of a normalized ontology."""
    return OrderStructure.from_ontology(o)


def semantics_axioms(c: Concept) -> tuple[Inclusion, ...]:
    """Axioms tying the order position of `c` to those of its parts.

    Concept names and negations contribute nothing: names are unconstrained
    and negation is handled by the antitonicity of element inversion.
    """
    here = ConceptElement(c)
    match c:
        case Top():
            return (Inclusion(TOP, order_concept(ValueElement(ONE), "<=", here)),)
        case And(left, right):
            rhs = MinExpr(ConceptElement(left), ConceptElement(right))
            return (Inclusion(TOP, order_concept(here, "=", rhs)),)
        case Implies(left, right):
            rhs = ResExpr(ConceptElement(left), ConceptElement(right))
            return (Inclusion(TOP, order_concept(here, "=", rhs)),)
        case Forall(role, sub):
            up = shift(here)
            bound = ResExpr(EDGE, ConceptElement(sub))
            witness = AtLeast(1, role, order_concept(up, ">=", bound))
            ceiling = Forall(role, order_concept(up, "<=", bound))
            return (Inclusion(TOP, And(witness, ceiling)),)
        case AtLeast(count, role, sub):
            up = shift(here)
            bound = MinExpr(EDGE, ConceptElement(sub))
            floor = AtLeast(count, role, order_concept(up, "<=", bound))
            cap = Not(AtLeast(count, role, order_concept(up, "<", bound)))
            return (Inclusion(TOP, And(floor, cap)),)
    return ()


def transitivity_axioms(u: OrderStructure) -> tuple[Inclusion, ...]:
    elems = u.elements
    return tuple(
        Inclusion(And(Leq(a, b), Leq(b, c)), Leq(a, c))
        for a in elems
        for b in elems
        for c in elems
    )


def transitivity_axioms_reduced(u: OrderStructure) -> tuple[Inclusion, ...]:
    """Transitivity without instances where two vertices coincide.

    Those instances are tautologies once totality holds, so skipping them is
    sound; the faithful full set is the default elsewhere.
    """
    elems = u.elements
    return tuple(
        Inclusion(And(Leq(a, b), Leq(b, c)), Leq(a, c))
        for a in elems
        for b in elems
        for c in elems
        if a != b and b != c and a != c
    )


def totality_axioms(u: OrderStructure) -> tuple[Inclusion, ...]:
    elems = u.elements
    return tuple(
        Inclusion(TOP, Or(Leq(a, b), Leq(b, a))) for a in elems for b in elems
    )


def bounds_axioms(u: OrderStructure) -> tuple[Inclusion, ...]:
    zero = ValueElement(u.values.degrees[0])
    one = ValueElement(u.values.degrees[-1])
    return tuple(
        Inclusion(TOP, And(Leq(zero, a), Leq(a, one))) for a in u.elements
    )


def value_order_axioms(values: ValueSet) -> tuple[Inclusion, ...]:
    """Facts between constants: q <= q' for every ordered pair, and the
    negated converse for every strict pair."""
    out = []
    degrees = values.degrees
    for q in degrees:
        for p in degrees:
            if q <= p:
                out.append(Inclusion(TOP, Leq(ValueElement(q), ValueElement(p))))
            if q < p:
                out.append(Inclusion(TOP, Not(Leq(ValueElement(p), ValueElement(q)))))
    return tuple(out)


def antitonicity_axioms(u: OrderStructure) -> tuple[Inclusion, ...]:
    elems = u.elements
    return tuple(
        Inclusion(Leq(a, b), Leq(invert(b), invert(a))) for a in elems for b in elems
    )


def preorder_axioms(u: OrderStructure, skip_trivial_transitivity: bool = False) -> tuple[Inclusion, ...]:
    """All order-structure axioms: each element's atoms form a bounded total
    preorder compatible with the constants, with antitone inversion."""
    trans = (
        transitivity_axioms_reduced(u)
        if skip_trivial_transitivity
        else transitivity_axioms(u)
    )
    return (
        trans
        + totality_axioms(u)
        + bounds_axioms(u)
        + value_order_axioms(u.values)
        + antitonicity_axioms(u)
    )


def transfer_axioms(u: OrderStructure) -> tuple[Inclusion, ...]:
    """Propagate order facts between constants/subconcepts to successors.

    For the complementary relator pair {<=, >}, `a rel b` here forces
    `shift(a) rel shift(b)` at every role successor; the other relators are
    Boolean combinations of these.
    """
    base = u.base_elements()
    out = []
    for a in base:
        for b in base:
            atom = Leq(a, b)
            shifted = Leq(shift(a), shift(b))
            for r in u.roles:
                out.append(Inclusion(atom, Forall(r, shifted)))
                out.append(Inclusion(Not(atom), Forall(r, Not(shifted))))
    return tuple(out)


def abox_assertions(o: FuzzyOntology) -> tuple[tuple[str, Concept], ...]:
    out = []
    for a in o.abox:
        lhs = ConceptElement(a.left.concept)
        if isinstance(a.right, ConceptAssertion):
            rhs = ConceptElement(a.right.concept)
        else:
            rhs = ValueElement(a.right)
        out.append((o.individual, order_concept(lhs, a.rel, rhs)))
    return tuple(out)


def tbox_axioms(o: FuzzyOntology, u: OrderStructure) -> tuple[Inclusion, ...]:
    """Graded inclusions as lower bounds on the residuum, plus the semantics
    axioms of every closed subconcept."""
    out = []
    for g in o.tbox:
        rhs = ResExpr(ConceptElement(g.lhs), ConceptElement(g.rhs))
        out.append(Inclusion(TOP, order_concept(ValueElement(g.degree), "<=", rhs)))
    for c in u.subconcepts:
        out.extend(semantics_axioms(c))
    return tuple(out)


def reduce_ontology(
    o: FuzzyOntology, skip_trivial_transitivity: bool = False
) -> ClassicalOntology:
    """Full reduction; expects a normalized ontology with a local ABox."""
    if not is_local(o.abox):
        raise LocalityError("unsupported: non-local ABox")
    u = build_order_structure(o)
    inclusions = (
        preorder_axioms(u, skip_trivial_transitivity)
        + transfer_axioms(u)
        + tbox_axioms(o, u)
    )
    return ClassicalOntology(inclusions, abox_assertions(o), o.individual)

"""Negation normal form for classical concepts.

Negation is pushed onto atoms; at-most restrictions are first-class and keep
their qualifier positive (the tableau's choose rule decides the qualifier
per neighbor).  And/Or are n-ary, flattened, deduplicated and sorted, so
structurally equal formulas are representationally equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .concepts import (
    And,
    AtLeast,
    AtMost,
    Bot,
    Concept,
    Exists,
    Forall,
    Implies,
    Name,
    Not,
    Or,
    Top,
)
from .orders import (
    ConceptElement,
    EdgeElement,
    Leq,
    ShiftedElement,
    ValueElement,
)


@dataclass(frozen=True, slots=True)
class NAtom:
    atom: object  # Name or Leq


@dataclass(frozen=True, slots=True)
class NNegAtom:
    atom: object


@dataclass(frozen=True, slots=True)
class NAnd:
    args: tuple


@dataclass(frozen=True, slots=True)
class NOr:
    args: tuple


@dataclass(frozen=True, slots=True)
class NForall:
    role: str
    sub: "NNFConcept"


@dataclass(frozen=True, slots=True)
class NAtLeast:
    count: int
    role: str
    sub: "NNFConcept"


@dataclass(frozen=True, slots=True)
class NAtMost:
    count: int
    role: str
    sub: "NNFConcept"


NNFConcept = Union[NAtom, NNegAtom, NAnd, NOr, NForall, NAtLeast, NAtMost]

NTRUE = NAnd(())
NFALSE = NOr(())


def _element_key(e):
    match e:
        case ValueElement(value):
            return (0, str(value))
        case ConceptElement(concept):
            return (1, _concept_key(concept))
        case ShiftedElement(concept):
            return (2, _concept_key(concept))
        case EdgeElement(positive):
            return (3, positive)
    raise TypeError(f"not an order element: {e!r}")


def _concept_key(c):
    match c:
        case Top():
            return (0,)
        case Bot():
            return (1,)
        case Name(name):
            return (2, name)
        case Leq(lhs, rhs):
            return (3, _element_key(lhs), _element_key(rhs))
        case Not(sub):
            return (4, _concept_key(sub))
        case And(left, right):
            return (5, _concept_key(left), _concept_key(right))
        case Or(left, right):
            return (6, _concept_key(left), _concept_key(right))
        case Implies(left, right):
            return (7, _concept_key(left), _concept_key(right))
        case Exists(role, sub):
            return (8, role, _concept_key(sub))
        case Forall(role, sub):
            return (9, role, _concept_key(sub))
        case AtLeast(count, role, sub):
            return (10, count, role, _concept_key(sub))
        case AtMost(count, role, sub):
            return (11, count, role, _concept_key(sub))
    raise TypeError(f"not a concept: {c!r}")


def sort_key(n: NNFConcept):
    """Deterministic structural ordering key."""
    match n:
        case NAtom(atom):
            return (0, _concept_key(atom))
        case NNegAtom(atom):
            return (1, _concept_key(atom))
        case NAnd(args):
            return (2, tuple(sort_key(a) for a in args))
        case NOr(args):
            return (3, tuple(sort_key(a) for a in args))
        case NForall(role, sub):
            return (4, role, sort_key(sub))
        case NAtLeast(count, role, sub):
            return (5, count, role, sort_key(sub))
        case NAtMost(count, role, sub):
            return (6, count, role, sort_key(sub))
    raise TypeError(f"not an NNF concept: {n!r}")


def mk_and(args) -> NNFConcept:
    flat = []
    for a in args:
        if isinstance(a, NAnd):
            flat.extend(a.args)
        elif a == NFALSE:
            return NFALSE
        else:
            flat.append(a)
    unique = sorted(set(flat), key=sort_key)
    if not unique:
        return NTRUE
    if len(unique) == 1:
        return unique[0]
    return NAnd(tuple(unique))


def mk_or(args) -> NNFConcept:
    flat = []
    for a in args:
        if isinstance(a, NOr):
            flat.extend(a.args)
        elif a == NTRUE:
            return NTRUE
        else:
            flat.append(a)
    unique = sorted(set(flat), key=sort_key)
    if not unique:
        return NFALSE
    if len(unique) == 1:
        return unique[0]
    return NOr(tuple(unique))


def nnf(c: Concept) -> NNFConcept:
    match c:
        case Top():
            return NTRUE
        case Bot():
            return NFALSE
        case Name() | Leq():
            return NAtom(c)
        case Not(sub):
            return nnf_not(sub)
        case And(left, right):
            return mk_and((nnf(left), nnf(right)))
        case Or(left, right):
            return mk_or((nnf(left), nnf(right)))
        case Implies(left, right):
            return mk_or((nnf_not(left), nnf(right)))
        case Exists(role, sub):
            return NAtLeast(1, role, nnf(sub))
        case Forall(role, sub):
            return NForall(role, nnf(sub))
        case AtLeast(count, role, sub):
            if count == 0:
                return NTRUE
            return NAtLeast(count, role, nnf(sub))
        case AtMost(count, role, sub):
            return NAtMost(count, role, nnf(sub))
    raise TypeError(f"not a concept: {c!r}")


def nnf_not(c: Concept) -> NNFConcept:
    match c:
        case Top():
            return NFALSE
        case Bot():
            return NTRUE
        case Name() | Leq():
            return NNegAtom(c)
        case Not(sub):
            return nnf(sub)
        case And(left, right):
            return mk_or((nnf_not(left), nnf_not(right)))
        case Or(left, right):
            return mk_and((nnf_not(left), nnf_not(right)))
        case Implies(left, right):
            return mk_and((nnf(left), nnf_not(right)))
        case Exists(role, sub):
            return NAtMost(0, role, nnf(sub))
        case Forall(role, sub):
            return NAtLeast(1, role, nnf_not(sub))
        case AtLeast(count, role, sub):
            if count == 0:
                return NFALSE
            return NAtMost(count - 1, role, nnf(sub))
        case AtMost(count, role, sub):
            return NAtLeast(count + 1, role, nnf(sub))
    raise TypeError(f"not a concept: {c!r}")


def negate_nnf(n: NNFConcept) -> NNFConcept:
    """Semantic complement, staying in NNF."""
    match n:
        case NAtom(atom):
            return NNegAtom(atom)
        case NNegAtom(atom):
            return NAtom(atom)
        case NAnd(args):
            return mk_or(tuple(negate_nnf(a) for a in args))
        case NOr(args):
            return mk_and(tuple(negate_nnf(a) for a in args))
        case NForall(role, sub):
            return NAtLeast(1, role, negate_nnf(sub))
        case NAtLeast(count, role, sub):
            if count == 0:
                return NFALSE
            return NAtMost(count - 1, role, sub)
        case NAtMost(count, role, sub):
            return NAtLeast(count + 1, role, sub)
    raise TypeError(f"not an NNF concept: {n!r}")

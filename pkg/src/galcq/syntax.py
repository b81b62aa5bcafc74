"""Concrete s-expression syntax: parsing and printing.

Input ontologies are one axiom per form, UTF-8, with `;` comments:

    (set-option :atmost residual)            ; optional, per ontology
    (gci C D >= q)                           ; graded inclusion
    (assert (inst a C) >= q)                 ; degree assertion
    (assert-cmp (inst a C) < (inst a D))     ; comparison assertion

Concepts use `top bot not and or implies all some atleast atmost`; degrees
are decimals or p/q ratios; relators are `< <= = >= >`.  The classical
output dialect reuses the concept grammar with `(leq u v)` atoms whose
operands are degrees, concepts, `(up C)`, `edge` or `edge-inv`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .algebra import format_degree, parse_degree
from .concepts import (
    TOP,
    BOT,
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
    normalize,
)
from .classical_model import ClassicalOntology, Inclusion
from .errors import DegreeRangeError, LocalityError, ParseError
from .ontology import (
    RELATIONS,
    ConceptAssertion,
    FuzzyGCI,
    FuzzyOntology,
    OrderAssertion,
    is_local,
)
from .orders import (
    EDGE,
    EDGE_INV,
    ConceptElement,
    EdgeElement,
    Leq,
    OrderElement,
    ShiftedElement,
    ValueElement,
)

RESERVED = {
    "top", "bot", "not", "and", "or", "implies", "all", "some", "atleast",
    "atmost", "gci", "assert", "assert-cmp", "inst", "set-option", "leq",
    "up", "edge", "edge-inv", "model", "domain", "individual", "concept",
    "role",
} | set(RELATIONS)


# ---------------------------------------------------------------------------
# reader


@dataclass(slots=True)
class SAtom:
    text: str
    line: int
    column: int


@dataclass(slots=True)
class SList:
    items: list
    line: int
    column: int


def read_forms(text: str) -> list:
    """Tokenize and read all top-level forms, tracking positions."""
    forms = []
    stack = []
    line, col = 1, 1
    i, n = 0, len(text)

    def emit(node):
        if stack:
            stack[-1].items.append(node)
        else:
            forms.append(node)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch.isspace():
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "(":
            node = SList([], line, col)
            stack.append(node)
            col += 1
            i += 1
        elif ch == ")":
            if not stack:
                raise ParseError("unbalanced ')'", line, col)
            node = stack.pop()
            emit(node)
            col += 1
            i += 1
        else:
            start = i
            startcol = col
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
                col += 1
            emit(SAtom(text[start:i], line, startcol))
    if stack:
        raise ParseError("unclosed '('", stack[-1].line, stack[-1].column)
    return forms


def _expect_atom(node, what):
    if not isinstance(node, SAtom):
        raise ParseError(f"expected {what}", node.line, node.column)
    return node.text


def _is_numeric(token: str) -> bool:
    return token[:1].isdigit()


# ---------------------------------------------------------------------------
# concepts


def parse_concept(node, allow_order_atoms: bool = False) -> Concept:
    if isinstance(node, SAtom):
        token = node.text
        if token == "top":
            return TOP
        if token == "bot":
            return BOT
        if token in RESERVED or _is_numeric(token):
            raise ParseError(f"expected concept, got {token!r}", node.line, node.column)
        return Name(token)
    if not node.items:
        raise ParseError("empty concept form", node.line, node.column)
    head = _expect_atom(node.items[0], "concept constructor")
    args = node.items[1:]

    def arity(k):
        if len(args) != k:
            raise ParseError(f"{head} takes {k} argument(s)", node.line, node.column)

    if head == "not":
        arity(1)
        return Not(parse_concept(args[0], allow_order_atoms))
    if head in ("and", "or"):
        if len(args) < 2:
            raise ParseError(f"{head} takes at least 2 arguments", node.line, node.column)
        ctor = And if head == "and" else Or
        parsed = [parse_concept(a, allow_order_atoms) for a in args]
        out = parsed[-1]
        for c in reversed(parsed[:-1]):
            out = ctor(c, out)
        return out
    if head == "implies":
        arity(2)
        return Implies(
            parse_concept(args[0], allow_order_atoms),
            parse_concept(args[1], allow_order_atoms),
        )
    if head in ("all", "some"):
        arity(2)
        role = _parse_role(args[0])
        sub = parse_concept(args[1], allow_order_atoms)
        return Forall(role, sub) if head == "all" else Exists(role, sub)
    if head in ("atleast", "atmost"):
        arity(3)
        count_text = _expect_atom(args[0], "cardinality")
        if not count_text.isdigit():
            raise ParseError(f"bad cardinality {count_text!r}", node.line, node.column)
        count = int(count_text)
        role = _parse_role(args[1])
        sub = parse_concept(args[2], allow_order_atoms)
        return AtLeast(count, role, sub) if head == "atleast" else AtMost(count, role, sub)
    if head == "leq" and allow_order_atoms:
        arity(2)
        return Leq(_parse_element(args[0]), _parse_element(args[1]))
    raise ParseError(f"unknown concept constructor {head!r}", node.line, node.column)


def _parse_role(node) -> str:
    token = _expect_atom(node, "role name")
    if token in RESERVED or _is_numeric(token):
        raise ParseError(f"expected role name, got {token!r}", node.line, node.column)
    return token


def _parse_element(node) -> OrderElement:
    if isinstance(node, SAtom):
        token = node.text
        if token == "edge":
            return EDGE
        if token == "edge-inv":
            return EDGE_INV
        if _is_numeric(token):
            return ValueElement(_parse_degree_at(node))
        return ConceptElement(parse_concept(node))
    head = _expect_atom(node.items[0], "order element")
    if head == "up":
        if len(node.items) != 2:
            raise ParseError("up takes 1 argument", node.line, node.column)
        return ShiftedElement(parse_concept(node.items[1]))
    return ConceptElement(parse_concept(node))


def parse_concept_text(text: str, at_most: str = "involutive") -> Concept:
    """Parse a single concept from a string and normalize it."""
    forms = read_forms(text)
    if len(forms) != 1:
        raise ParseError("expected exactly one concept", 1, 1)
    return normalize(parse_concept(forms[0]), at_most)


# ---------------------------------------------------------------------------
# ontologies


def _parse_degree_at(node) -> Fraction:
    token = _expect_atom(node, "degree")
    try:
        return parse_degree(token)
    except DegreeRangeError as exc:
        raise ParseError(str(exc), node.line, node.column) from exc


def _parse_relator(node) -> str:
    token = _expect_atom(node, "relator")
    if token not in RELATIONS:
        raise ParseError(f"expected relator, got {token!r}", node.line, node.column)
    return token


def _parse_classical_assertion(node):
    if not isinstance(node, SList) or not node.items:
        raise ParseError("expected (inst ...) assertion", node.line, node.column)
    head = _expect_atom(node.items[0], "assertion head")
    if head != "inst":
        raise ParseError(f"expected inst, got {head!r}", node.line, node.column)
    if len(node.items) != 3:
        raise ParseError("inst takes 2 arguments", node.line, node.column)
    subject = node.items[1]
    if isinstance(subject, SList):
        # (inst (a b) r): a fuzzy role assertion; the local fragment has none
        raise LocalityError(
            "unsupported: non-local ABox (role assertion)", node.line, node.column
        )
    individual = _expect_atom(subject, "individual name")
    if individual in RESERVED or _is_numeric(individual):
        raise ParseError(f"bad individual name {individual!r}", node.line, node.column)
    concept = parse_concept(node.items[2])
    return ConceptAssertion(individual, concept)


def parse_ontology(text: str, at_most: str | None = None) -> FuzzyOntology:
    """Parse, expand abbreviations, normalize, and enforce locality.

    `at_most` overrides the file's `(set-option :atmost ...)` directive.
    """
    forms = read_forms(text)
    mode = None
    axiom_forms = []
    for form in forms:
        if isinstance(form, SList) and form.items and isinstance(form.items[0], SAtom) \
                and form.items[0].text == "set-option":
            if len(form.items) != 3:
                raise ParseError("set-option takes 2 arguments", form.line, form.column)
            key = _expect_atom(form.items[1], "option key")
            val = _expect_atom(form.items[2], "option value")
            if key != ":atmost" or val not in ("involutive", "residual"):
                raise ParseError(f"unknown option {key} {val}", form.line, form.column)
            if mode is not None and mode != val:
                raise ParseError("conflicting :atmost directives", form.line, form.column)
            mode = val
        else:
            axiom_forms.append(form)
    mode = at_most or mode or "involutive"

    abox = []
    tbox = []
    for form in axiom_forms:
        if not isinstance(form, SList) or not form.items:
            raise ParseError("expected an axiom form", form.line, form.column)
        head = _expect_atom(form.items[0], "axiom head")
        if head == "gci":
            if len(form.items) != 5:
                raise ParseError("gci takes 4 arguments", form.line, form.column)
            lhs = parse_concept(form.items[1])
            rhs = parse_concept(form.items[2])
            rel = _parse_relator(form.items[3])
            if rel != ">=":
                raise ParseError("gci supports only >=", form.items[3].line, form.items[3].column)
            degree = _parse_degree_at(form.items[4])
            if degree == 0:
                warnings.warn(
                    "dropping inclusion with degree 0: it constrains nothing",
                    stacklevel=2,
                )
                continue
            tbox.append(FuzzyGCI(normalize(lhs, mode), normalize(rhs, mode), degree))
        elif head == "assert":
            if len(form.items) != 4:
                raise ParseError("assert takes 3 arguments", form.line, form.column)
            left = _parse_classical_assertion(form.items[1])
            rel = _parse_relator(form.items[2])
            degree = _parse_degree_at(form.items[3])
            left = ConceptAssertion(left.individual, normalize(left.concept, mode))
            abox.append(OrderAssertion(left, rel, degree))
        elif head == "assert-cmp":
            if len(form.items) != 4:
                raise ParseError("assert-cmp takes 3 arguments", form.line, form.column)
            left = _parse_classical_assertion(form.items[1])
            rel = _parse_relator(form.items[2])
            right = _parse_classical_assertion(form.items[3])
            left = ConceptAssertion(left.individual, normalize(left.concept, mode))
            right = ConceptAssertion(right.individual, normalize(right.concept, mode))
            abox.append(OrderAssertion(left, rel, right))
        else:
            raise ParseError(f"unknown axiom form {head!r}", form.line, form.column)

    if not is_local(abox):
        raise LocalityError("unsupported: non-local ABox (multiple individuals)")
    individuals = {
        side.individual
        for a in abox
        for side in (a.left, a.right)
        if isinstance(side, ConceptAssertion)
    }
    individual = min(individuals) if individuals else "a"
    return FuzzyOntology(tuple(abox), tuple(tbox), individual)


# ---------------------------------------------------------------------------
# printing


def element_to_sexpr(e: OrderElement) -> str:
    match e:
        case ValueElement(value):
            return format_degree(value)
        case ConceptElement(concept):
            return concept_to_sexpr(concept)
        case ShiftedElement(concept):
            return f"(up {concept_to_sexpr(concept)})"
        case EdgeElement(positive):
            return "edge" if positive else "edge-inv"
    raise TypeError(f"not an order element: {e!r}")


def concept_to_sexpr(c: Concept) -> str:
    match c:
        case Top():
            return "top"
        case Bot():
            return "bot"
        case Name(name):
            return name
        case Not(sub):
            return f"(not {concept_to_sexpr(sub)})"
        case And(left, right):
            return f"(and {concept_to_sexpr(left)} {concept_to_sexpr(right)})"
        case Or(left, right):
            return f"(or {concept_to_sexpr(left)} {concept_to_sexpr(right)})"
        case Implies(left, right):
            return f"(implies {concept_to_sexpr(left)} {concept_to_sexpr(right)})"
        case Exists(role, sub):
            return f"(some {role} {concept_to_sexpr(sub)})"
        case Forall(role, sub):
            return f"(all {role} {concept_to_sexpr(sub)})"
        case AtLeast(count, role, sub):
            return f"(atleast {count} {role} {concept_to_sexpr(sub)})"
        case AtMost(count, role, sub):
            return f"(atmost {count} {role} {concept_to_sexpr(sub)})"
        case Leq(lhs, rhs):
            return f"(leq {element_to_sexpr(lhs)} {element_to_sexpr(rhs)})"
    raise TypeError(f"not a concept: {c!r}")


def ontology_to_sexpr(o: FuzzyOntology) -> str:
    lines = []
    for a in o.abox:
        left = f"(inst {a.left.individual} {concept_to_sexpr(a.left.concept)})"
        if isinstance(a.right, Fraction):
            lines.append(f"(assert {left} {a.rel} {format_degree(a.right)})")
        else:
            right = f"(inst {a.right.individual} {concept_to_sexpr(a.right.concept)})"
            lines.append(f"(assert-cmp {left} {a.rel} {right})")
    for g in o.tbox:
        lines.append(
            f"(gci {concept_to_sexpr(g.lhs)} {concept_to_sexpr(g.rhs)} >= {format_degree(g.degree)})"
        )
    return "\n".join(lines) + ("\n" if lines else "")


def classical_to_sexpr(o: ClassicalOntology) -> str:
    """Deterministic serialization: assertions then inclusions, each sorted."""
    assertion_lines = sorted(
        f"(assert (inst {ind} {concept_to_sexpr(c)}))" for ind, c in o.assertions
    )
    inclusion_lines = sorted(
        f"(gci {concept_to_sexpr(inc.lhs)} {concept_to_sexpr(inc.rhs)})"
        for inc in o.inclusions
    )
    return "\n".join(assertion_lines + inclusion_lines) + "\n"


def parse_classical(text: str) -> ClassicalOntology:
    """Parse the classical dialect emitted by `classical_to_sexpr`."""
    forms = read_forms(text)
    inclusions = []
    assertions = []
    individuals = set()
    for form in forms:
        if not isinstance(form, SList) or not form.items:
            raise ParseError("expected an axiom form", form.line, form.column)
        head = _expect_atom(form.items[0], "axiom head")
        if head == "gci":
            if len(form.items) != 3:
                raise ParseError("classical gci takes 2 arguments", form.line, form.column)
            inclusions.append(
                Inclusion(
                    parse_concept(form.items[1], allow_order_atoms=True),
                    parse_concept(form.items[2], allow_order_atoms=True),
                )
            )
        elif head == "assert":
            if len(form.items) != 2:
                raise ParseError("classical assert takes 1 argument", form.line, form.column)
            inst = form.items[1]
            if (
                not isinstance(inst, SList)
                or len(inst.items) != 3
                or _expect_atom(inst.items[0], "inst") != "inst"
            ):
                raise ParseError("expected (inst a C)", inst.line, inst.column)
            ind = _expect_atom(inst.items[1], "individual name")
            individuals.add(ind)
            assertions.append((ind, parse_concept(inst.items[2], allow_order_atoms=True)))
        else:
            raise ParseError(f"unknown classical form {head!r}", form.line, form.column)
    if len(individuals) > 1:
        raise ParseError("classical ontology must use a single individual")
    individual = min(individuals) if individuals else "a"
    return ClassicalOntology(tuple(inclusions), tuple(assertions), individual)


def model_to_sexpr(interp, names: tuple[str, ...], roles: tuple[str, ...],
                   individual: str = "a") -> str:
    """Emit a fuzzy interpretation as an s-expression with exact rationals."""
    lines = ["(model"]
    lines.append("  (domain " + " ".join(str(d) for d in interp.domain) + ")")
    lines.append(f"  (individual {individual} {interp.individuals[individual]})")
    for name in names:
        entries = " ".join(
            f"({d} {format_degree(interp.concept_value(name, d))})" for d in interp.domain
        )
        lines.append(f"  (concept {name} {entries})")
    for role in roles:
        entries = []
        for d in interp.domain:
            for e in interp.domain:
                v = interp.role_value(role, d, e)
                if v != 0:
                    entries.append(f"({d} {e} {format_degree(v)})")
        lines.append(f"  (role {role} {' '.join(entries)})")
    lines.append(")")
    return "\n".join(lines) + "\n"

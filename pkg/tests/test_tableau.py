import random

import pytest

from galcq import (
    And,
    AtLeast,
    AtMost,
    BudgetExceededError,
    ClassicalOntology,
    Exists,
    Forall,
    Implies,
    Inclusion,
    Leq,
    Name,
    Not,
    Or,
    brute_force_consistency,
    check_classical_model,
    check_consistency,
    extract_classical_model,
    parse_ontology,
    reduce_ontology,
)
from galcq.concepts import TOP, quantifier_depth
from galcq.orders import ValueElement
from fractions import Fraction

A = Name("A")
B = Name("B")


def test_direct_clash():
    o = ClassicalOntology((Inclusion(TOP, A),), (("a", Not(A)),), "a")
    assert not check_consistency(o).consistent


def test_counting_clash():
    # two A-successors are top-successors, so at-most-one-top clashes
    o = ClassicalOntology(
        (), (("a", And(AtLeast(2, "r", A), AtMost(1, "r", TOP))),), "a"
    )
    assert not check_consistency(o).consistent
    assert not brute_force_consistency(o, max_domain=3).consistent


def test_tautological_order_atom():
    atom = Leq(ValueElement(Fraction(0)), ValueElement(Fraction(1)))
    o = ClassicalOntology((Inclusion(TOP, atom),), (("a", atom),), "a")
    assert check_consistency(o).consistent


def test_merge_keeps_consistency():
    # three successors forced, at most two allowed: two of them merge
    o = ClassicalOntology(
        (),
        (("a", And(AtLeast(2, "r", A), And(Exists("r", B), AtMost(2, "r", TOP)))),),
        "a",
    )
    result = check_consistency(o)
    assert result.consistent
    graph = result.graph
    root = graph.nodes[graph.root]
    assert len(root.children) == 2


def test_blocking_terminates_infinite_chain():
    o = ClassicalOntology((Inclusion(TOP, Exists("r", TOP)),), (), "a")
    result = check_consistency(o, node_budget=50)
    assert result.consistent
    graph = result.graph
    assert any(node.blocked_by is not None for node in graph.nodes.values())


def test_budget_exhaustion_is_distinct():
    o = ClassicalOntology(
        (Inclusion(TOP, AtLeast(2, "r", TOP)), Inclusion(TOP, A)), (), "a"
    )
    with pytest.raises(BudgetExceededError):
        check_consistency(o, node_budget=3)


def test_choose_rule_completes_counting():
    # every r-successor must decide B: at most one B plus at least two tops
    o = ClassicalOntology(
        (Inclusion(TOP, Or(B, Not(B))),),
        (("a", And(AtLeast(2, "r", TOP), AtMost(0, "r", B))),),
        "a",
    )
    result = check_consistency(o)
    assert result.consistent
    for node in result.graph.nodes.values():
        assert B not in node.atoms or node.id == result.graph.root


def test_trace_emits_lines():
    lines = []
    o = ClassicalOntology((Inclusion(TOP, Or(A, B)),), (("a", Not(A)),), "a")
    assert check_consistency(o, trace=lines.append).consistent
    assert lines


def test_model_readback_from_completion():
    text = "(assert (inst a (some r A)) = 1/2)"
    o = parse_ontology(text)
    red = reduce_ontology(o)
    result = check_consistency(red)
    assert result.consistent
    depth = 4
    tree = extract_classical_model(result.graph, depth)
    margin = max(
        [quantifier_depth(c) for c in red.concepts()] + [0]
    )
    violations = check_classical_model(tree, red, elements=tree.interior(margin))
    assert violations == []


def test_extract_identity_without_blocking():
    o = ClassicalOntology((), (("a", Exists("r", A)),), "a")
    result = check_consistency(o)
    tree = extract_classical_model(result.graph, depth=4)
    assert len(tree.domain) == 2
    assert tree.cut == frozenset()


def test_extract_root_only():
    o = ClassicalOntology((), (("a", A),), "a")
    tree = extract_classical_model(check_consistency(o).graph, depth=4)
    assert tree.domain == (0,)


def test_extract_unravels_blocked_loop():
    o = ClassicalOntology((Inclusion(TOP, Exists("r", TOP)),), (), "a")
    tree = extract_classical_model(check_consistency(o, node_budget=50).graph, 4)
    depths = sorted(tree.depth.values())
    assert depths[-1] == 4
    assert tree.cut  # truncated at the requested depth
    assert check_classical_model(tree, o, elements=tree.interior(1)) == []


def test_extract_depth_validation():
    o = ClassicalOntology((), (("a", A),), "a")
    graph = check_consistency(o).graph
    with pytest.raises(ValueError):
        extract_classical_model(graph, 0)


def _random_concept(rng, depth):
    if depth == 0:
        return rng.choice((A, B))
    k = rng.randrange(8)
    left = _random_concept(rng, depth - 1)
    right = _random_concept(rng, depth - 1)
    if k == 0:
        return Not(left)
    if k == 1:
        return And(left, right)
    if k == 2:
        return Or(left, right)
    if k == 3:
        return Implies(left, right)
    if k == 4:
        return Forall("r", left)
    if k == 5:
        return AtLeast(rng.randint(1, 3), "r", left)
    if k == 6:
        return AtMost(rng.randint(0, 2), "r", left)
    return left


def test_agreement_with_brute_force_on_random_ontologies():
    rng = random.Random(2024)
    checked = 0
    for _ in range(120):
        inclusions = []
        for _ in range(rng.randint(1, 3)):
            lhs = TOP if rng.random() < 0.5 else _random_concept(rng, 1)
            inclusions.append(Inclusion(lhs, _random_concept(rng, 2)))
        assertions = (
            (("a", _random_concept(rng, 2)),) if rng.random() < 0.7 else ()
        )
        o = ClassicalOntology(tuple(inclusions), assertions, "a")
        try:
            brute = brute_force_consistency(o, max_domain=2, budget=60_000)
        except BudgetExceededError:
            continue
        try:
            tableau = check_consistency(o, node_budget=80, step_budget=400_000)
        except BudgetExceededError:
            continue
        checked += 1
        if brute.consistent:
            assert tableau.consistent, f"oracle found a model, tableau refused: {o}"
        if tableau.consistent:
            # blockers must be active: unblocked with unblocked ancestors
            graph = tableau.graph
            for node in graph.nodes.values():
                blocker = node.blocked_by
                if blocker is None:
                    continue
                x = blocker
                while x is not None:
                    assert graph.nodes[x].blocked_by is None
                    x = graph.nodes[x].parent
            # and the unraveled tree must satisfy the ontology away from cuts
            margin = max((quantifier_depth(c) for c in o.concepts()), default=0)
            tree = extract_classical_model(graph, depth=margin + 2)
            violations = check_classical_model(
                tree, o, elements=tree.interior(margin)
            )
            assert violations == [], f"{o}: {violations[:2]}"
    assert checked >= 60

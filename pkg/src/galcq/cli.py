"""Command-line front end.

Subcommands: `check` (local consistency), `sat` (graded concept
satisfiability), `subsumes` (graded subsumption), `reduce` (emit the
classical compilation).  Exit codes: 0 for the positive verdict, 1 for the
negative one, 2 for any error (parse, locality, budget, oracle
disagreement).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebra import ValueSet, parse_degree
from .bruteforce import brute_force_consistency
from .errors import BudgetExceededError, ReasonerError
from .extraction import extract_fuzzy_model
from .ontology import (
    ConceptAssertion,
    FuzzyOntology,
    OrderAssertion,
    value_closure,
)
from .orders import OrderStructure
from .reduction import reduce_ontology
from .semantics import check_fuzzy_model, concept_names, grid_search_fuzzy_model
from .syntax import (
    classical_to_sexpr,
    model_to_sexpr,
    parse_concept_text,
    parse_ontology,
)
from .tableau import check_consistency, extract_classical_model
from .ontology import roles as ontology_roles
from .concepts import quantifier_depth


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galcq",
        description="Reasoner for fuzzy ALCQ ontologies under min-based semantics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("ontology", help="input ontology file")
        p.add_argument("--atmost", choices=("involutive", "residual"), default=None,
                       help="override the file's at-most expansion")
        p.add_argument("--emit-reduction", metavar="PATH",
                       help="write the classical compilation here")
        p.add_argument("--emit-model", metavar="PATH",
                       help="on a positive verdict, write an extracted fuzzy model here")
        p.add_argument("--oracle", choices=("off", "grid", "brute"), default="off",
                       help="cross-check the verdict with an independent oracle")
        p.add_argument("--grid-step", metavar="P/Q", default=None,
                       help="grid oracle step (default: ontology constants plus midpoints)")
        p.add_argument("--max-domain", type=int, default=2,
                       help="domain bound for the oracles")
        p.add_argument("--budget", type=int, default=5000,
                       help="tableau node budget")
        p.add_argument("--depth", type=int, default=4,
                       help="unraveling depth for model extraction")
        p.add_argument("--reduce-opt", action="store_true",
                       help="skip reflexive-trivial transitivity instances")
        p.add_argument("--trace", action="store_true",
                       help="print one line per tableau rule application to stderr")

    p_check = sub.add_parser("check", help="decide local consistency")
    common(p_check)

    p_sat = sub.add_parser("sat", help="decide satisfiability of C to degree q")
    common(p_sat)
    p_sat.add_argument("--concept", "-c", required=True, help="concept (s-expression)")
    p_sat.add_argument("--degree", "-d", required=True, help="degree in [0,1]")

    p_sub = sub.add_parser("subsumes", help="decide subsumption of C in D to degree q")
    common(p_sub)
    p_sub.add_argument("--lhs", required=True, help="subsumee concept (s-expression)")
    p_sub.add_argument("--rhs", required=True, help="subsumer concept (s-expression)")
    p_sub.add_argument("--degree", "-d", required=True, help="degree in (0,1]")

    p_red = sub.add_parser("reduce", help="emit the classical compilation")
    common(p_red)
    p_red.add_argument("--output", "-o", metavar="PATH", default=None,
                       help="output file (default: stdout)")
    return parser


def _load(args) -> FuzzyOntology:
    with open(args.ontology, encoding="utf-8") as handle:
        return parse_ontology(handle.read(), at_most=args.atmost)


def _grid(args, ontology):
    if args.grid_step is None:
        return None
    step = parse_degree(args.grid_step)
    if step == 0:
        raise ReasonerError("grid step must be positive")
    points = []
    q = Fraction(0)
    while q < 1:
        points.append(q)
        q += step
    points.append(Fraction(1))
    return ValueSet(tuple(points) + value_closure(ontology).degrees)


def _decide(ontology: FuzzyOntology, args) -> bool:
    """Run the pipeline on a prepared ontology; returns consistency."""
    trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    reduced = reduce_ontology(ontology, skip_trivial_transitivity=args.reduce_opt)
    if args.emit_reduction:
        with open(args.emit_reduction, "w", encoding="utf-8") as handle:
            handle.write(classical_to_sexpr(reduced))
    result = check_consistency(reduced, node_budget=args.budget, trace=trace)

    if args.oracle == "grid":
        try:
            found = grid_search_fuzzy_model(
                ontology, max_domain=args.max_domain, grid=_grid(args, ontology)
            )
        except BudgetExceededError as exc:
            print(f"oracle: grid search skipped ({exc})", file=sys.stderr)
            found = None
        if found is not None and not result.consistent:
            raise ReasonerError(
                "oracle disagreement: grid search found a model but the "
                "tableau reports inconsistency"
            )
        if found is None and result.consistent:
            print("oracle: grid search found no model (one-sided; not a "
                  "contradiction)", file=sys.stderr)
    elif args.oracle == "brute":
        try:
            brute = brute_force_consistency(reduced, max_domain=args.max_domain)
        except BudgetExceededError as exc:
            print(f"oracle: brute force skipped ({exc})", file=sys.stderr)
            brute = None
        if brute is not None:
            if brute.consistent and not result.consistent:
                raise ReasonerError(
                    "oracle disagreement: brute force found a classical model "
                    "but the tableau reports inconsistency"
                )
            if not brute.consistent and result.consistent:
                print(
                    f"oracle: no classical model up to domain size "
                    f"{brute.completed_domain} (not a contradiction)",
                    file=sys.stderr,
                )

    if args.emit_model and result.consistent:
        structure = OrderStructure.from_ontology(ontology)
        tree = extract_classical_model(result.graph, depth=args.depth)
        interp, _ = extract_fuzzy_model(tree, structure, ontology.individual)
        margin = max(
            [quantifier_depth(c) for g in ontology.tbox for c in (g.lhs, g.rhs)]
            + [quantifier_depth(a.left.concept) for a in ontology.abox]
            + [0]
        )
        report = check_fuzzy_model(interp, ontology, elements=tree.interior(margin))
        if not report.satisfied:
            raise ReasonerError(f"extracted model failed verification: {report.violation}")
        with open(args.emit_model, "w", encoding="utf-8") as handle:
            handle.write(
                model_to_sexpr(
                    interp,
                    concept_names(ontology),
                    ontology_roles(ontology),
                    ontology.individual,
                )
            )
    return result.consistent


def run_consistency(args) -> int:
    ontology = _load(args)
    consistent = _decide(ontology, args)
    print("CONSISTENT" if consistent else "INCONSISTENT")
    return 0 if consistent else 1


def run_satisfiability(args) -> int:
    ontology = _load(args)
    if ontology.abox:
        print(
            "warning: input assertions are ignored by sat (only the TBox is used)",
            file=sys.stderr,
        )
    degree = parse_degree(args.degree)
    concept = parse_concept_text(args.concept, args.atmost or "involutive")
    assertion = OrderAssertion(
        ConceptAssertion(ontology.individual, concept), ">=", degree
    )
    task = FuzzyOntology((assertion,), ontology.tbox, ontology.individual)
    satisfiable = _decide(task, args)
    print("SATISFIABLE" if satisfiable else "UNSATISFIABLE")
    return 0 if satisfiable else 1


def run_subsumption(args) -> int:
    ontology = _load(args)
    if ontology.abox:
        print(
            "warning: input assertions are ignored by subsumes (only the TBox is used)",
            file=sys.stderr,
        )
    degree = parse_degree(args.degree)
    if degree == 0:
        raise ReasonerError("subsumption degree must be in (0,1]")
    mode = args.atmost or "involutive"
    lhs = parse_concept_text(args.lhs, mode)
    rhs = parse_concept_text(args.rhs, mode)
    from .concepts import Implies

    assertion = OrderAssertion(
        ConceptAssertion(ontology.individual, Implies(lhs, rhs)), "<", degree
    )
    task = FuzzyOntology((assertion,), ontology.tbox, ontology.individual)
    consistent = _decide(task, args)
    subsumed = not consistent
    print("SUBSUMED" if subsumed else "NOT SUBSUMED")
    return 0 if subsumed else 1


def run_reduce(args) -> int:
    ontology = _load(args)
    reduced = reduce_ontology(ontology, skip_trivial_transitivity=args.reduce_opt)
    text = classical_to_sexpr(reduced)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": run_consistency,
        "sat": run_satisfiability,
        "subsumes": run_subsumption,
        "reduce": run_reduce,
    }
    try:
        return handlers[args.command](args)
    except (ReasonerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())

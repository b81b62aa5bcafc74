"""Shared corpus of small ontologies and cached pipeline results.

Every entry stays within: at most 3 concept names, 2 roles, cardinalities
up to 3, and 4 distinct degrees.  The mix covers both at-most expansions,
comparisons between assertions, graded inclusions, and both verdicts.
"""

import time
from dataclasses import dataclass
from typing import Optional

import pytest

import galcq

CORPUS = [
    # --- consistent -------------------------------------------------------
    ("empty", ""),
    ("assert-half", "(assert (inst a A) >= 0.5)"),
    ("godel-mid", "(assert (inst a (and A (not A))) >= 0.5)"),
    ("godel-above", "(assert (inst a (and A (not A))) > 0.3)"),
    ("cmp-lt", "(assert-cmp (inst a A) < (inst a B))"),
    ("cmp-eq-neg", "(assert-cmp (inst a A) = (inst a (not B)))"),
    ("implies-deg", "(assert (inst a (implies A B)) >= 0.6)"),
    ("gci-chain", "(gci A B >= 1/2)\n(assert (inst a A) >= 3/4)"),
    ("gci-top", "(gci top A >= 1/2)"),
    ("exists-half", "(assert (inst a (some r A)) = 1/2)"),
    ("forall-low", "(assert (inst a (all r B)) <= 1/2)"),
    ("atleast-two", "(assert (inst a (atleast 2 r A)) >= 1/2)"),
    ("atmost-inv", "(assert (inst a (atmost 1 r A)) >= 1/2)"),
    (
        "atmost-res",
        "(set-option :atmost residual)\n(assert (inst a (atmost 1 r A)) >= 1/2)",
    ),
    (
        "duality",
        "(assert-cmp (inst a (some r A)) < (inst a (not (all r (not A)))))",
    ),
    ("crisp-sat", "(assert (inst a A) >= 1)\n(gci A B >= 1)"),
    (
        "two-roles",
        "(assert (inst a (some r A)) >= 1/2)\n(assert (inst a (some s B)) >= 1/2)",
    ),
    ("loop-gci", "(gci A (some r A) >= 1/2)\n(assert (inst a A) >= 1/2)"),
    ("open-interval", "(assert (inst a A) > 0)\n(assert (inst a A) < 1)"),
    ("neg-forall", "(assert (inst a (not (all r A))) >= 1/2)"),
    # --- inconsistent -----------------------------------------------------
    ("godel-high", "(assert (inst a (and A (not A))) >= 0.6)"),
    ("squeeze", "(assert (inst a A) >= 3/4)\n(assert (inst a A) < 1/2)"),
    ("top-neg", "(gci top (not A) >= 1)\n(assert (inst a A) > 0)"),
    (
        "forall-clash",
        "(gci top (all r (not A)) >= 1)\n(assert (inst a (some r A)) >= 3/4)",
    ),
    (
        "count-clash",
        "(assert (inst a (and (atleast 2 r A) (atmost 1 r top))) >= 1)",
    ),
    ("self-implies", "(assert (inst a (implies A A)) < 1)"),
    ("top-low", "(assert (inst a top) < 1)"),
    ("below-zero", "(assert (inst a B) < 0)"),
    (
        "cmp-circle",
        "(assert-cmp (inst a A) < (inst a B))\n(assert-cmp (inst a B) < (inst a A))",
    ),
    (
        "res-atmost-midway",
        "(set-option :atmost residual)\n(assert (inst a (atmost 1 r top)) = 1/2)",
    ),
    ("gci-force", "(gci top A >= 1)\n(assert (inst a A) < 1)"),
    (
        "exists-zero",
        "(assert (inst a (some r top)) = 0)\n(assert (inst a (some r A)) >= 1/2)",
    ),
    (
        "chain-squeeze",
        "(gci A B >= 1)\n(gci B (not A) >= 1)\n(assert (inst a A) > 1/2)",
    ),
    (
        "count-squeeze",
        "(assert (inst a (atleast 3 r A)) >= 1/4)\n(assert (inst a (atmost 2 r A)) >= 1)",
    ),
]

NODE_BUDGET = 600
STEP_BUDGET = 40_000_000
GRID_BUDGET = 250_000
BRUTE_BUDGET = 25_000


@dataclass
class CorpusRun:
    name: str
    text: str
    ontology: object
    reduction: object
    consistent: bool
    graph: Optional[object]
    tableau_seconds: float
    grid_model: Optional[object] = None
    grid_skipped: bool = False
    brute: Optional[object] = None
    brute_skipped: bool = False


@pytest.fixture(scope="session")
def corpus_runs():
    runs = []
    for name, text in CORPUS:
        ontology = galcq.parse_ontology(text)
        reduction = galcq.reduce_ontology(ontology)
        start = time.monotonic()
        result = galcq.check_consistency(
            reduction, node_budget=NODE_BUDGET, step_budget=STEP_BUDGET
        )
        elapsed = time.monotonic() - start
        run = CorpusRun(
            name=name,
            text=text,
            ontology=ontology,
            reduction=reduction,
            consistent=result.consistent,
            graph=result.graph,
            tableau_seconds=elapsed,
        )
        try:
            run.grid_model = galcq.grid_search_fuzzy_model(
                ontology, max_domain=2, budget=GRID_BUDGET
            )
        except galcq.BudgetExceededError:
            run.grid_skipped = True
        try:
            run.brute = galcq.brute_force_consistency(
                reduction, max_domain=4, budget=BRUTE_BUDGET
            )
        except galcq.BudgetExceededError:
            run.brute_skipped = True
        runs.append(run)
    return runs

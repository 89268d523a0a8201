#!/usr/bin/env python3
"""
Demo script for the list Ramsey toolkit
Builds witness colorings from random lists, rechecks them and prints a few bounds
"""
import sys
import os

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.bounds.certificates import matching_ub_certificate, types_certificate
from src.bounds.formulas import closed_form, list_bound
from src.cli.io import random_list_assignment
from src.cli.verifier import lower_witness_certificate, verify_certificate
from src.core.hypergraph import clique, complete_hypergraph, star
from src.core.monochromatic import max_matching_per_color
from src.solver.budget import SearchBudget
from src.solver.ramsey import decide_list_ub, ramsey_exact
from src.witness.pipelines import matching_lower_witness, star_lower_witness


def print_header(text):
    """Print a formatted header"""
    print("\n" + "=" * 80)
    print(f"  {text}")
    print("=" * 80 + "\n")


def print_check(name, passed):
    """Print one check with a colored verdict"""
    color = "\033[92m" if passed else "\033[91m"
    reset = "\033[0m"
    print(f"    {color}{'PASS' if passed else 'FAIL'}{reset}  {name}")


def demo_star_witnesses():
    print_header("Star witnesses from random 2-lists")
    for r, n in ((4, 6), (5, 9), (3, 5)):
        host = complete_hypergraph(n, 2)
        lists = random_list_assignment(host, 2, 3, seed=r)
        result = star_lower_witness(r, 2, lists)
        print(f"K_{{1,{r}}} on K_{n} via {result.strategy.value}")
        print(f"    Max color degree: {result.coloring.max_color_degree()} (must stay below {r})")
        for check in verify_certificate(lower_witness_certificate(result)):
            print_check(check.name, check.passed)
        print()


def demo_matching_witness():
    print_header("Matching witness by type reduction")
    r, k = 3, 30
    host = complete_hypergraph(9, 2)
    result = matching_lower_witness(r, k, random_list_assignment(host, k, 2 * k, seed=7))
    reduction = result.reduction
    print(f"{r}K_2 with {k}-lists on K_{result.n}")
    print(f"    Initial potential: {reduction.initial_potential:.3e}")
    print(f"    Guaranteed by union bound: {reduction.guaranteed}")
    print(f"    Largest monochromatic matching: {max(max_matching_per_color(result.coloring).values())}")


def demo_search():
    print_header("Exact search")
    budget = SearchBudget.default()
    print(f"R(K_3, 2) = {ramsey_exact(clique(3), 2, 10, budget)}")
    decision = decide_list_ub(star(2), 2, 3, budget)
    print(f"Lists forcing K_{{1,2}} on K_3: {decision.status.value}")
    print(f"    Canonical patterns checked: {decision.patterns_checked}")


def demo_bounds():
    print_header("Bounds and certificates")
    for r, k in ((3, 2), (10, 5)):
        ordinary = closed_form("matching", r, k)
        listed = list_bound("matching", {"r": r, "k": k})
        print(f"r={r}, k={k}: R(rK_2, k) = {ordinary.lower}, list bounds [{listed.lower}, {listed.upper}] ({listed.regime})")
    print()
    for result in (types_certificate(5, 2, 2, 10), matching_ub_certificate(2, 100)):
        print(f"{result.kind} {result.params}")
        print(f"    log value: {result.log_value:.6g}")
        print_check("condition holds", result.passed)


def main():
    """Main demo function"""
    print_header("List Ramsey Toolkit - Demo")
    demo_star_witnesses()
    demo_matching_witness()
    demo_search()
    demo_bounds()
    print_header("Demo Complete")


if __name__ == "__main__":
    main()

"""Encoding of CNF formulas as sign consistency instances.

Each variable becomes an unobserved input vertex, each clause a non-input
vertex observed +, and each literal an edge from its variable to its clause,
signed + for a positive and - for a negative literal.
"""

import random

from signcons.model import ValidatedInstance


def random_cnf(rng: random.Random, max_vars=8, max_clauses=12):
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(1, min(3, n))
        # distinct variables per clause: one edge per (variable, clause) pair
        clauses.append([v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), width)])
    return n, clauses


def encode(n_vars, clauses) -> ValidatedInstance:
    names = [f"x{j}" for j in range(1, n_vars + 1)] + [f"C{i}" for i in range(len(clauses))]
    names_sorted = sorted(names)
    idx = {name: k for k, name in enumerate(names_sorted)}
    edges = []
    for i, clause in enumerate(clauses):
        for lit in clause:
            edges.append((idx[f"x{abs(lit)}"], idx[f"C{i}"], 1 if lit > 0 else -1))
    obs = [1 if name.startswith("C") else 0 for name in names_sorted]
    inputs = [name.startswith("x") for name in names_sorted]
    return ValidatedInstance.build(names_sorted, sorted(edges), obs, inputs)

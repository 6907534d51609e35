"""Shared helpers for the test suite."""

import random

from graphheat import WeightedVector


def random_vector(graph, seed, complex_values=False, density=0.7):
    """Seeded random finitely supported vector on a finite graph."""
    rng = random.Random(seed)
    values = {}
    for v in graph.vertices:
        if rng.random() < density:
            if complex_values:
                values[v] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            else:
                values[v] = rng.uniform(-1, 1)
    if not values:
        values[rng.randrange(graph.n)] = 1.0
    return WeightedVector(graph, values)


def random_unit_vector(graph, seed, complex_values=False):
    f = random_vector(graph, seed, complex_values=complex_values, density=1.0)
    return f * (1.0 / f.norm())

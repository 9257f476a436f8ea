"""Seeded random instances for the fundamental-lemma suite.

Generates (family, principal ultrafilter, formula, choices) tuples with
small assemblies and universes and bounded formula height.  Everything is
driven by one ``random.Random`` so a fixed seed reproduces the suite.
"""

from __future__ import annotations

import random
from typing import Hashable, Mapping

from ..filters import FiniteUltrafilter, principal
from .semantics import Structure, StructureFamily
from .syntax import Eq, Exists, Formula, Not, Or, Rel

#: relation symbols used by the random suite
SUITE_RELATIONS = {"P": 1, "R": 2}


def random_structure(rng: random.Random, max_universe: int = 3) -> Structure:
    size = rng.randint(1, max_universe)
    universe = tuple(range(size))
    relations = {}
    for name, arity in sorted(SUITE_RELATIONS.items()):
        tuples = []
        for combo in _tuples(universe, arity):
            if rng.random() < 0.5:
                tuples.append(combo)
        relations[name] = tuples
    return Structure(universe, relations)


def _tuples(universe, arity):
    if arity == 1:
        return [(e,) for e in universe]
    return [(a, b) for a in universe for b in universe]


def random_formula(
    rng: random.Random, variables: tuple[str, ...], depth: int
) -> Formula:
    """A formula of height <= depth whose free names lie in ``variables``."""
    if depth <= 1 or rng.random() < 0.25:
        if rng.random() < 0.4:
            return Eq(rng.choice(variables), rng.choice(variables))
        name = rng.choice(sorted(SUITE_RELATIONS))
        arity = SUITE_RELATIONS[name]
        return Rel(name, tuple(rng.choice(variables) for _ in range(arity)))
    kind = rng.choice(("not", "or", "exists"))
    if kind == "not":
        return Not(random_formula(rng, variables, depth - 1))
    if kind == "or":
        return Or(
            random_formula(rng, variables, depth - 1),
            random_formula(rng, variables, depth - 1),
        )
    var = "v%d" % depth
    return Exists(var, random_formula(rng, variables + (var,), depth - 1))


def random_instance(
    rng: random.Random,
    max_indices: int = 3,
    max_universe: int = 3,
    max_depth: int = 5,
) -> tuple[StructureFamily, FiniteUltrafilter, Formula, Mapping[str, Mapping[Hashable, Hashable]]]:
    """One random (family, ultrafilter, formula, choices) tuple."""
    n = rng.randint(1, max_indices)
    family = {i: random_structure(rng, max_universe) for i in range(n)}
    point = rng.randrange(n)
    u = principal(range(n), point)
    free = ("x", "y")
    f = random_formula(rng, free, rng.randint(1, max_depth))
    choices = {
        name: {i: rng.choice(family[i].universe) for i in range(n)} for name in free
    }
    return family, u, f, choices

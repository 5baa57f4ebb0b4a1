"""Shared helpers: seeded generators and independent reference oracles.

The oracles here are deliberately separate from the library (naive nested
loops, exhaustive enumeration) so expected values never come from the code
path under test.
"""

import random
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import pytest

from pfdkit.matroid import Arrangement
from pfdkit.poly import Polynomial
from pfdkit.ratio import qq


# ---------------------------------------------------------------------------
# independent reference arithmetic (Fraction-based, naive algorithms)
# ---------------------------------------------------------------------------


def ref_mul(a: Dict[tuple, Fraction], b: Dict[tuple, Fraction]) -> Dict[tuple, Fraction]:
    """Reference polynomial product over plain dicts of Fractions."""
    out: Dict[tuple, Fraction] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def ref_add(a: Dict[tuple, Fraction], b: Dict[tuple, Fraction]) -> Dict[tuple, Fraction]:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, Fraction(0)) + c
    return {k: v for k, v in out.items() if v != 0}


def as_ref(p: Polynomial) -> Dict[tuple, Fraction]:
    return {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in p.terms.items()}


def from_ref(variables, d: Dict[tuple, Fraction]) -> Polynomial:
    return Polynomial.from_terms(variables, [(e, qq(c.numerator, c.denominator)) for e, c in d.items()])


def set_partitions(items: Sequence[int]) -> List[List[List[int]]]:
    """Exhaustive set partitions (reference enumeration)."""
    items = list(items)
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            out.append(partition[:i] + [[first] + partition[i]] + partition[i + 1 :])
        out.append([[first]] + partition)
    return out


# ---------------------------------------------------------------------------
# seeded random generators
# ---------------------------------------------------------------------------

VARIABLE_POOL = ("x", "y", "z", "w")


def random_polynomial(rng: random.Random, variables, max_degree=3, max_terms=5, zero_ok=False) -> Polynomial:
    r = len(variables)
    while True:
        terms = []
        for _ in range(rng.randint(0 if zero_ok else 1, max_terms)):
            exps = [0] * r
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(r)] += 1
            coeff = rng.randint(-6, 6)
            terms.append((tuple(exps), qq(coeff)))
        p = Polynomial.from_terms(variables, terms)
        if zero_ok or not p.is_zero():
            return p


def random_linear_form(rng: random.Random, variables, affine=False) -> Polynomial:
    r = len(variables)
    while True:
        terms = {}
        for i in range(r):
            c = rng.randint(-4, 4)
            if c:
                exps = tuple(1 if j == i else 0 for j in range(r))
                terms[exps] = qq(c)
        if affine:
            c = rng.randint(-4, 4)
            if c:
                terms[(0,) * r] = qq(c)
        if terms and any(sum(e) == 1 for e in terms):
            return Polynomial(variables, terms)


def random_arrangement(rng: random.Random, n: int, r: int, mode="projective") -> Arrangement:
    variables = VARIABLE_POOL[:r]
    forms = tuple(
        random_linear_form(rng, variables, affine=(mode == "affine")) for _ in range(n)
    )
    return Arrangement(variables, forms, mode)


def random_generic_arrangement(rng: random.Random, n: int, r: int) -> Arrangement:
    """Projective arrangement with every r-subset independent."""
    from pfdkit.matroid import rank_of_subset

    while True:
        arrangement = random_arrangement(rng, n, r, "projective")
        if all(
            rank_of_subset(arrangement, subset) == r
            for subset in combinations(range(n), r)
        ):
            return arrangement


def random_in_ideal(
    rng: random.Random, arrangement: Arrangement, d: int, coeff_degree: int = 0
) -> Polynomial:
    """Nonzero combination of d-fold products with random coefficients."""
    from pfdkit.ideal import GeneratorSpec, dfold_generators

    gens = dfold_generators(arrangement, GeneratorSpec(d))
    variables = arrangement.variables
    while True:
        f = Polynomial.zero(variables)
        for _, g in gens:
            if rng.random() < 0.5:
                continue
            if coeff_degree == 0:
                c = Polynomial.constant(variables, rng.randint(-5, 5))
            else:
                c = random_polynomial(rng, variables, coeff_degree, 3, zero_ok=True)
            f = f + c * g
        if not f.is_zero():
            return f


@pytest.fixture
def rng():
    return random.Random(991)

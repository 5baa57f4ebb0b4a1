"""Fixture corpus: the worked examples and benchmark arrangements.

Problem files and PFD documents live in the fixtures/ package directory;
manifest.json records what each expectation is and where its value comes
from.  The wavefunction numerator is also assembled programmatically from
the tube-sum structure so the shipped file can be cross-checked against the
construction.
"""

import itertools
import random
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from ..matroid import Arrangement
from ..parse import ProblemFile, parse_polynomial, parse_problem
from ..pfd import PfdResult, RationalFunction, parse_pfd_document
from ..poly import Polynomial, product


def fixture_text(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def fixture_problem(name: str) -> ProblemFile:
    return parse_problem(fixture_text(name))


def fixture_pfd(name: str) -> PfdResult:
    return parse_pfd_document(fixture_text(name))


def rational_function(problem: ProblemFile) -> RationalFunction:
    return RationalFunction(problem.numerator, problem.denominators, problem.mode)


# ---------------------------------------------------------------------------
# wavefunction example: 11 facet forms and the tube-sum numerator
# ---------------------------------------------------------------------------

WAVEFUNCTION_VARS = ("X1", "X2", "X3", "X4", "Y14", "Y24", "Y34")

_WAVEFUNCTION_FORMS = (
    "X1 + Y14",
    "X2 + Y24",
    "X3 + Y34",
    "X4 + Y14 + Y24 + Y34",
    "X1 + X2 + X3 + X4",
    "X1 + X4 + Y24 + Y34",
    "X2 + X4 + Y14 + Y34",
    "X3 + X4 + Y14 + Y24",
    "X1 + X2 + X4 + Y34",
    "X1 + X3 + X4 + Y24",
    "X2 + X3 + X4 + Y14",
)

# The bracket structure pairs one of l9, l10, l11 with one of l6, l7, l8.
_WAVEFUNCTION_PAIRS = ((8, 5), (8, 6), (9, 5), (9, 7), (10, 6), (10, 7))


def wavefunction_forms() -> Tuple[Polynomial, ...]:
    return tuple(parse_polynomial(s, WAVEFUNCTION_VARS) for s in _WAVEFUNCTION_FORMS)


def wavefunction_numerator() -> Polynomial:
    """Collect the tube sum over the common denominator l1...l11."""
    forms = wavefunction_forms()
    prefactor = parse_polynomial("8*Y14*Y24*Y34", WAVEFUNCTION_VARS)
    bracket = Polynomial.zero(WAVEFUNCTION_VARS)
    for a, b in _WAVEFUNCTION_PAIRS:
        rest = [i for i in (5, 6, 7, 8, 9, 10) if i not in (a, b)]
        bracket = bracket + product((forms[i] for i in rest), WAVEFUNCTION_VARS)
    return prefactor * bracket


def wavefunction_function() -> RationalFunction:
    return RationalFunction(wavefunction_numerator(), wavefunction_forms(), "projective")


# ---------------------------------------------------------------------------
# Feynman benchmark arrangements (12 forms / 6 vars and 29 forms / 5 vars)
# ---------------------------------------------------------------------------

FEYNMAN12_VARS = ("s12", "s15", "s23", "s34", "s45", "eps")

_FEYNMAN12_FORMS = (
    "8*(1 + 4*eps)",
    "s12",
    "s23",
    "s12 + s15 - s34",
    "-s15 + s23 + s34",
    "s12 - s45",
    "s12 + s23 - s45",
    "-s15 + s23 - s45",
    "s12 - s34 - s45",
    "s45",
    "s45",
    "s34 + s45",
)

FEYNMAN29_VARS = ("s15", "s23", "s34", "s45", "eps")

# s12 = 1 throughout, as in the source; the 30th form s12 is suppressed.
_FEYNMAN29_FORMS = (
    "8*(-1 + eps)",
    "-1 + 2*eps",
    "-1 + 3*eps",
    "-1 + 4*eps",
    "s15",
    "s15 - s23",
    "s15 - s23",
    "s23",
    "1 + s23",
    "1 + s23",
    "1 + s15 - s34",
    "1 + s15 - s34",
    "s15 - s23 - s34",
    "s23 + s34",
    "s23 + s34",
    "1 - s45",
    "1 - s45",
    "s23 - s45",
    "s23 - s45",
    "1 + s23 - s45",
    "1 - s34 - s45",
    "1 - s34 - s45",
    "1 + s15 - s34 - s45",
    "1 + s15 - s34 - s45",
    "s45",
    "s15 - s23 + s45",
    "s15 - s23 + s45",
    "s34 + s45",
    "s34 + s45",
)


def feynman12_arrangement() -> Arrangement:
    forms = tuple(parse_polynomial(s, FEYNMAN12_VARS) for s in _FEYNMAN12_FORMS)
    return Arrangement(FEYNMAN12_VARS, forms, "affine")


def feynman29_arrangement() -> Arrangement:
    forms = tuple(parse_polynomial(s, FEYNMAN29_VARS) for s in _FEYNMAN29_FORMS)
    return Arrangement(FEYNMAN29_VARS, forms, "affine")


# ---------------------------------------------------------------------------
# synthetic numerators for the benchmark / surrogate suites
# ---------------------------------------------------------------------------


def _random_poly(rng: random.Random, variables: Tuple[str, ...], degree: int, terms: int) -> Polynomial:
    acc: Dict[Tuple[int, ...], int] = {}
    r = len(variables)
    for _ in range(terms):
        exps = [0] * r
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(r)] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + rng.randint(-5, 5)
    return Polynomial.from_terms(variables, [(k, v) for k, v in acc.items()])


def _covering_subsets(
    rng: random.Random, n: int, d: int, count: int
) -> Tuple[Tuple[int, ...], ...]:
    """count sorted d-subsets of [n] whose complements cover every index."""
    complement = n - d
    if count * complement < n:
        raise ValueError("complements cannot cover the ground set")
    order = list(range(n))
    rng.shuffle(order)
    holes: List[List[int]] = [[] for _ in range(count)]
    for pos, idx in enumerate(order):
        holes[pos % count].append(idx)
    subsets = []
    for k in range(count):
        hole = set(holes[k])
        pool = [i for i in range(n) if i not in hole]
        extra = rng.sample(pool, complement - len(hole))
        subset = sorted(set(range(n)) - hole - set(extra))
        subsets.append(tuple(subset))
    return tuple(sorted(set(subsets)))


def synthetic_member(
    arrangement: Arrangement,
    d: int,
    subset_count: int,
    coefficient_degree: int,
    seed: int,
    max_tries: int = 200,
) -> Tuple[Polynomial, Tuple[Tuple[int, ...], ...]]:
    """A fully reduced numerator built inside the restricted d-fold ideal.

    Returns (numerator, subsets used).  The subsets' complements cover the
    ground set, which is necessary for the combination to have no spurious
    pole; coefficients are redrawn until none of the forms divides the
    result and the degree is exactly d + coefficient_degree.
    """
    from ..ideal import GeneratorSpec, dfold_generators

    rng = random.Random(seed)
    n = arrangement.size
    variables = arrangement.variables
    target_degree = d + coefficient_degree
    for _ in range(max_tries):
        subsets = _covering_subsets(rng, n, d, subset_count)
        gens = dfold_generators(arrangement, GeneratorSpec(d, subsets))
        if len(gens) < subset_count:
            continue
        f = Polynomial.zero(variables)
        for _, g in gens:
            if coefficient_degree == 0:
                coeff = Polynomial.constant(variables, rng.randint(1, 9))
            else:
                coeff = _random_poly(rng, variables, coefficient_degree, 4)
            f = f + coeff * g
        if f.is_zero() or f.total_degree() != target_degree:
            continue
        if all(f.divide_by_linear(form) is None for form in arrangement.forms):
            return f, tuple(s for s, _ in gens)
    raise RuntimeError("failed to build a reduced synthetic member")


def synthetic_full_member(
    arrangement: Arrangement, d: int, seed: int
) -> Polynomial:
    """A degree-d combination of ALL d-fold generators (nonzero constants).

    Such a numerator may carry spurious poles forced by duplicate forms; the
    reduction pass of the pipeline is expected to strip them.
    """
    from ..ideal import GeneratorSpec, dfold_generators

    rng = random.Random(seed)
    f = Polynomial.zero(arrangement.variables)
    for _, g in dfold_generators(arrangement, GeneratorSpec(d)):
        f = f + g.scale(rng.randint(1, 9))
    return f

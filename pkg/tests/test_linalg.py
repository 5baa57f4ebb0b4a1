import random
from itertools import combinations

import pytest

from pfdkit.linalg import RationalMatrix, solve_augmented
from pfdkit.ratio import ONE, ZERO, qq


def rand_matrix(rng, rows, cols, lo=-5, hi=5):
    return RationalMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def test_rref_examples():
    ident = RationalMatrix.identity(3)
    red, pivots, rank = ident.rref()
    assert red == ident and rank == 3
    m = RationalMatrix([[1, 0], [0, 1], [1, 1]])
    assert m.rref()[2] == 2
    assert RationalMatrix.zero(2, 3).rref()[2] == 0


def test_rref_idempotent(rng):
    for _ in range(40):
        m = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        red, _, _ = m.rref()
        assert red.rref()[0] == red


def test_solve_examples(rng):
    ident = RationalMatrix.identity(3)
    assert ident.solve([1, 2, 3]) == [qq(1), qq(2), qq(3)]
    inconsistent = RationalMatrix([[1, 0], [1, 0]])
    assert inconsistent.solve([0, 1]) is None
    under = RationalMatrix([[1, 1]])
    x = under.solve([5])
    assert x == [qq(5), ZERO]  # free variable zeroed
    for _ in range(40):
        m = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = [rng.randint(-5, 5) for _ in range(m.rows)]
        x = m.solve(b)
        if x is not None:
            assert m.mul_vector(x) == [qq(v) for v in b]


def test_kernel_examples(rng):
    assert RationalMatrix.identity(2).kernel() == []
    k = RationalMatrix([[1, 1]]).kernel()
    assert k == [[qq(-1), ONE]]
    for _ in range(40):
        m = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        basis = m.kernel()
        assert len(basis) == m.cols - m.rank()
        for v in basis:
            assert all(x == ZERO for x in m.mul_vector(v))


def test_det_examples():
    assert RationalMatrix.identity(4).det() == 1
    assert RationalMatrix([[1, 0], [1, 1]]).minor([0, 1], [0, 1]) == 1
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2]]).det()


def test_det_multiplicative(rng):
    for _ in range(40):
        n = rng.randint(1, 4)
        a, b = rand_matrix(rng, n, n), rand_matrix(rng, n, n)
        assert a.mul(b).det() == a.det() * b.det()


def test_det_with_rational_entries(rng):
    m = RationalMatrix([[qq(1, 2), qq(1, 3)], [qq(1, 5), qq(1, 7)]])
    assert m.det() == qq(1, 14) - qq(1, 15)


def test_inverse(rng):
    for _ in range(30):
        n = rng.randint(1, 4)
        m = rand_matrix(rng, n, n)
        inv = m.inverse()
        if inv is None:
            assert m.rank() < n
        else:
            assert m.mul(inv) == RationalMatrix.identity(n)


def test_solve_augmented_matches_full_solver(rng):
    for _ in range(60):
        rows_n = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = rand_matrix(rng, rows_n, cols)
        b = [rng.randint(-4, 4) for _ in range(rows_n)]
        aug = [list(map(qq, row)) + [qq(v)] for row, v in zip(m.entries, b)]
        particular, kernel = solve_augmented(aug, cols)
        direct = m.solve(b)
        if direct is None:
            assert particular is None
        else:
            assert m.mul_vector(particular) == [qq(v) for v in b]
            assert len(kernel) == cols - m.rank()
            for v in kernel:
                assert all(x == ZERO for x in m.mul_vector(v))


# -- the determinant identity for d-fold products (small, see acceptance for the full sweep)


def product_matrix(arrangement, d):
    """Coefficient matrix of all d-fold products against degree-d monomials."""
    from pfdkit.ideal import GeneratorSpec, dfold_generators
    from pfdkit.orders import MonomialOrder

    gens = dfold_generators(arrangement, GeneratorSpec(d))
    order = MonomialOrder()
    monomials = sorted({e for _, g in gens for e in g.terms}, key=order.key, reverse=True)
    col = {e: i for i, e in enumerate(monomials)}
    rows = []
    for _, g in gens:
        row = [ZERO] * len(monomials)
        for e, c in g.terms.items():
            row[col[e]] = c
        rows.append(row)
    return RationalMatrix(rows)


def test_product_determinant_identity_small_case():
    # forms x, y, x+y: det of the 2-fold product matrix equals +- the product
    # of all 2-minors of the coefficient matrix (here -1), built by brute
    # expansion over the monomials x^2, xy, y^2.
    from pfdkit.matroid import Arrangement
    from pfdkit.parse import parse_polynomial as P

    variables = ("x", "y")
    arrangement = Arrangement(
        variables, tuple(P(s, variables) for s in ("x", "y", "x + y")), "projective"
    )
    m = product_matrix(arrangement, 2)
    coeff = RationalMatrix(arrangement.coefficient_rows())
    minors = [coeff.minor(list(rows), [0, 1]) for rows in combinations(range(3), 2)]
    prod = ONE
    for v in minors:
        prod = prod * v
    assert m.rows == m.cols == 3
    assert m.det() == -1
    assert m.det() in (prod, -prod)


@pytest.fixture
def rng():
    return random.Random(17)

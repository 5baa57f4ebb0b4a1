import random
from itertools import combinations

import pytest

from pfdkit.matroid import (
    Arrangement,
    FlatSet,
    InputError,
    Partition,
    braid_arrangement,
    closure,
    dominance_leq,
    flats_min_size,
    partition_flat_size,
    rank_of_subset,
)
from pfdkit.parse import parse_polynomial as P
from pfdkit.poly import Polynomial

from conftest import random_arrangement, set_partitions


def braid_flat_of_partition(r, blocks):
    """Edges (i<j in the same block) as 0-based indices into B_r's forms."""
    pairs = list(combinations(range(r), 2))
    index = {p: k for k, p in enumerate(pairs)}
    chosen = []
    for block in blocks:
        for a, b in combinations(sorted(block), 2):
            chosen.append(index[(a, b)])
    return tuple(sorted(chosen))


def test_braid_constructor():
    b3 = braid_arrangement(3)
    assert [str(fm.vars) for fm in b3.forms]  # same ring
    assert b3.forms[0] == P("x1 - x2", b3.variables)
    assert b3.forms[1] == P("x1 - x3", b3.variables)
    assert b3.forms[2] == P("x2 - x3", b3.variables)
    assert braid_arrangement(5).size == 10
    assert rank_of_subset(braid_arrangement(5), range(10)) == 4
    with pytest.raises(InputError):
        braid_arrangement(1)


def test_rank_examples():
    b3 = braid_arrangement(3)
    assert rank_of_subset(b3, range(3)) == 2
    assert rank_of_subset(b3, ()) == 0
    zero_arr = Arrangement(("x", "y"), (Polynomial.zero(("x", "y")), P("x", ("x", "y"))), "projective")
    assert rank_of_subset(zero_arr, (0,)) == 0  # a loop


def test_closure_examples():
    b3 = braid_arrangement(3)
    assert closure(b3, (0, 1)) == (0, 1, 2)
    assert closure(b3, (0,)) == (0,)
    with pytest.raises(InputError):
        closure(b3, (5,))


def test_closure_operator_axioms(rng):
    for _ in range(30):
        arrangement = random_arrangement(rng, rng.randint(2, 6), rng.randint(2, 3))
        n = arrangement.size
        s = tuple(sorted(rng.sample(range(n), rng.randint(0, n))))
        cl_s = closure(arrangement, s)
        assert set(s) <= set(cl_s)
        assert closure(arrangement, cl_s) == cl_s  # idempotent
        t = tuple(sorted(set(s) | {rng.randrange(n)}))
        assert set(cl_s) <= set(closure(arrangement, t))  # monotone


def test_loops_in_every_flat():
    variables = ("x", "y")
    arrangement = Arrangement(
        variables,
        (Polynomial.zero(variables), P("x", variables), P("y", variables)),
        "projective",
    )
    for flat in flats_min_size(arrangement, 0):
        assert 0 in flat.indices


def test_flats_of_b4_count_equals_set_partitions():
    b4 = braid_arrangement(4)
    flats = flats_min_size(b4, 0)
    assert len(flats) == len(set_partitions(range(4)))  # 15
    # and they are exactly the partition-induced edge sets
    expected = {braid_flat_of_partition(4, blocks) for blocks in set_partitions(range(4))}
    assert {f.indices for f in flats} == expected


def test_flats_are_closed_and_distinct(rng):
    for _ in range(20):
        arrangement = random_arrangement(rng, rng.randint(2, 6), rng.randint(2, 3))
        flats = flats_min_size(arrangement, 0)
        seen = set()
        for flat in flats:
            assert closure(arrangement, flat.indices) == flat.indices
            assert flat.indices not in seen
            seen.add(flat.indices)


def test_flats_min_size_threshold():
    b4 = braid_arrangement(4)
    for t in range(0, 7):
        flats = flats_min_size(b4, t)
        assert all(len(f) >= t for f in flats)
    with pytest.raises(InputError):
        flats_min_size(b4, 99)


def test_generic_small_subsets_are_flats(rng):
    from conftest import random_generic_arrangement

    arrangement = random_generic_arrangement(rng, 4, 3)
    for k in range(3):  # below the rank, closure adds nothing
        for subset in combinations(range(4), k):
            assert closure(arrangement, subset) == subset


def test_flatset_validation():
    b3 = braid_arrangement(3)
    with pytest.raises(InputError):
        FlatSet(b3, (0, 1))  # closure is the whole ground set
    flat = FlatSet(b3, (0, 1, 2))
    assert len(flat) == 3


def test_partition_flat_sizes_table():
    assert partition_flat_size(Partition((5,))) == 10
    assert partition_flat_size(Partition((4, 1))) == 6
    assert partition_flat_size(Partition((3, 2))) == 4
    assert partition_flat_size(Partition((3, 1, 1))) == 3
    assert partition_flat_size(Partition((2, 2, 1))) == 2
    assert partition_flat_size(Partition((2, 1, 1, 1))) == 1
    assert partition_flat_size(Partition((1, 1, 1, 1, 1))) == 0


def test_partition_validation():
    with pytest.raises(InputError):
        Partition((1, 2))
    with pytest.raises(InputError):
        Partition((2, 0))


def test_dominance_examples():
    assert dominance_leq(Partition((3, 2)), Partition((4, 1)))
    # incomparable pair: neither direction
    assert not dominance_leq(Partition((4, 1, 1)), Partition((3, 3)))
    assert not dominance_leq(Partition((3, 3)), Partition((4, 1, 1)))
    assert dominance_leq(Partition((3, 2)), Partition((3, 2)))
    with pytest.raises(InputError):
        dominance_leq(Partition((2,)), Partition((3,)))


def partitions_of(r):
    if r == 0:
        yield ()
        return
    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    yield from rec(r, r)


def test_dominance_implies_larger_flats_up_to_7():
    for r in range(2, 8):
        parts = [Partition(p) for p in partitions_of(r)]
        for mu in parts:
            for lam in parts:
                if dominance_leq(mu, lam):
                    assert partition_flat_size(lam) >= partition_flat_size(mu)


def test_affine_arrangement_needs_homogenization():
    variables = ("x", "y")
    arrangement = Arrangement(variables, (P("x - 1", variables),), "affine")
    with pytest.raises(InputError):
        rank_of_subset(arrangement, (0,))
    homog, zvar = arrangement.homogenize()
    assert homog.mode == "projective"
    assert zvar == "z"
    assert rank_of_subset(homog, (0,)) == 1


def test_projective_rejects_constant_terms():
    variables = ("x", "y")
    with pytest.raises(InputError):
        Arrangement(variables, (P("x - 1", variables),), "projective")
    with pytest.raises(InputError):
        Arrangement(variables, (P("3", variables),), "affine")
    with pytest.raises(InputError):
        Arrangement(variables, (Polynomial.zero(variables),), "affine")


@pytest.fixture
def rng():
    return random.Random(29)

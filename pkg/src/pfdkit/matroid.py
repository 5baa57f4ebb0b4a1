"""Linear matroid of a hyperplane arrangement.

The ground set is the index list [0..n) of the arrangement's forms; rank of a
subset is the rank of the corresponding coefficient vectors.  Zero forms are
loops (they lie in every flat), proportional forms are parallel.  Matroid
operations require a projective arrangement; affine callers homogenize first
(the decomposition layer does this).
"""

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .poly import Polynomial
from .ratio import ONE, QQ, ZERO

AFFINE = "affine"
PROJECTIVE = "projective"


class InputError(ValueError):
    """Invalid mathematical input (bad mode, malformed forms, range errors)."""


@dataclass(frozen=True)
class Arrangement:
    """Ordered list of linear forms over named variables."""

    variables: Tuple[str, ...]
    forms: Tuple[Polynomial, ...]
    mode: str = PROJECTIVE

    def __post_init__(self):
        if self.mode not in (AFFINE, PROJECTIVE):
            raise InputError(f"unknown mode {self.mode!r}")
        if not self.forms:
            raise InputError("arrangement needs at least one form")
        all_zero = True
        for k, f in enumerate(self.forms):
            if f.vars != self.variables:
                raise InputError(f"form {k + 1} lives in a different ring")
            deg = f.total_degree()
            if deg is None:
                continue  # zero form: a loop
            all_zero = False
            if deg > 1:
                raise InputError(f"form {k + 1} has total degree {deg}, expected 1")
            if deg == 0:
                raise InputError(f"form {k + 1} is a nonzero constant")
            if self.mode == PROJECTIVE and f.linear_coefficients()[1] != ZERO:
                raise InputError(f"form {k + 1} has a constant term in projective mode")
        if all_zero:
            raise InputError("all forms are zero")

    @property
    def size(self) -> int:
        return len(self.forms)

    def coefficient_rows(self) -> List[List[QQ]]:
        """n x r matrix of linear-part coefficients (projective data)."""
        return [f.linear_coefficients()[0] for f in self.forms]

    def homogenize(self, new_var: Optional[str] = None) -> Tuple["Arrangement", str]:
        """Projective arrangement of homogenized forms plus the new variable."""
        if self.mode == PROJECTIVE:
            return self, ""
        if new_var is None:
            new_var = "z"
            k = 0
            while new_var in self.variables:
                new_var = f"z{k}"
                k += 1
        elif new_var in self.variables:
            raise InputError(f"variable {new_var!r} already ambient")
        newvars = self.variables + (new_var,)
        forms = []
        for f in self.forms:
            if f.is_zero():
                forms.append(Polynomial.zero(newvars))
                continue
            coeffs, const = f.linear_coefficients()
            terms = {}
            for i, c in enumerate(coeffs):
                if c != ZERO:
                    terms[tuple(1 if j == i else 0 for j in range(len(newvars)))] = c
            if const != ZERO:
                terms[tuple(0 if j < len(self.variables) else 1 for j in range(len(newvars)))] = const
            forms.append(Polynomial(newvars, terms))
        return Arrangement(newvars, tuple(forms), PROJECTIVE), new_var


class _Span:
    """Incremental echelon basis over Q for rank/closure queries."""

    def __init__(self):
        self.rows: List[List[QQ]] = []  # sorted by leading index

    def _reduce(self, v: List[QQ]) -> List[QQ]:
        v = list(v)
        for row in self.rows:
            lead = next(i for i, x in enumerate(row) if x != ZERO)
            f = v[lead]
            if f != ZERO:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[QQ]) -> bool:
        return all(x == ZERO for x in self._reduce(list(v)))

    def add(self, v: Sequence[QQ]) -> bool:
        """Insert v; returns True when the rank grew."""
        red = self._reduce(list(v))
        lead = None
        for i, x in enumerate(red):
            if x != ZERO:
                lead = i
                break
        if lead is None:
            return False
        inv = ONE / red[lead]
        if inv != ONE:
            red = [x * inv for x in red]
        self.rows.append(red)
        self.rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x != ZERO))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def _require_projective(arrangement: Arrangement):
    if arrangement.mode != PROJECTIVE:
        raise InputError("matroid operations need a projective arrangement; homogenize first")


def _check_indices(arrangement: Arrangement, subset: Iterable[int]) -> Tuple[int, ...]:
    subset = tuple(sorted(set(subset)))
    for i in subset:
        if not 0 <= i < arrangement.size:
            raise InputError(f"index {i} out of range for {arrangement.size} forms")
    return subset


def rank_of_subset(arrangement: Arrangement, subset: Iterable[int]) -> int:
    """Rank of the coefficient vectors of the chosen forms."""
    _require_projective(arrangement)
    subset = _check_indices(arrangement, subset)
    rows = arrangement.coefficient_rows()
    span = _Span()
    for i in subset:
        span.add(rows[i])
    return span.rank


def closure(arrangement: Arrangement, subset: Iterable[int]) -> Tuple[int, ...]:
    """cl(S): indices whose forms do not raise the rank of S."""
    _require_projective(arrangement)
    subset = _check_indices(arrangement, subset)
    rows = arrangement.coefficient_rows()
    span = _Span()
    for i in subset:
        span.add(rows[i])
    return tuple(i for i in range(arrangement.size) if span.contains(rows[i]))


@dataclass(frozen=True)
class FlatSet:
    """A closure-closed subset of arrangement indices (sorted)."""

    arrangement: Arrangement
    indices: Tuple[int, ...]

    def __post_init__(self):
        arr = self.arrangement
        proj = arr if arr.mode == PROJECTIVE else arr.homogenize()[0]
        idx = _check_indices(proj, self.indices)
        object.__setattr__(self, "indices", idx)
        if closure(proj, idx) != idx:
            raise InputError(f"{idx} is not closed")

    def __len__(self):
        return len(self.indices)

    def forms(self) -> Tuple[Polynomial, ...]:
        return tuple(self.arrangement.forms[i] for i in self.indices)


def flats_min_size(arrangement: Arrangement, min_size: int) -> List[FlatSet]:
    """All distinct flats with at least min_size elements, sorted by indices.

    For n <= 20 this closes every independent-sized subset; beyond that it
    grows the lattice one element at a time from known flats.
    """
    _require_projective(arrangement)
    n = arrangement.size
    if not 0 <= min_size <= n:
        raise InputError(f"min_size {min_size} out of range [0, {n}]")
    rows = arrangement.coefficient_rows()
    total_rank = rank_of_subset(arrangement, range(n))

    found: set = set()
    if n <= 20:
        ground = range(n)
        for k in range(total_rank + 1):
            for subset in itertools.combinations(ground, k):
                found.add(closure(arrangement, subset))
    else:
        frontier = {closure(arrangement, ())}
        found |= frontier
        while frontier:
            nxt = set()
            for flat in frontier:
                present = set(flat)
                for i in range(n):
                    if i in present:
                        continue
                    bigger = closure(arrangement, flat + (i,))
                    if bigger not in found:
                        found.add(bigger)
                        nxt.add(bigger)
            frontier = nxt

    flats = [f for f in found if len(f) >= min_size]
    flats.sort()
    return [FlatSet(arrangement, f) for f in flats]


def braid_arrangement(r: int) -> Arrangement:
    """B_r: the forms x_i - x_j for 1 <= i < j <= r, in lex (i, j) order."""
    if r < 2:
        raise InputError("braid arrangement needs r >= 2")
    variables = tuple(f"x{i}" for i in range(1, r + 1))
    forms = []
    for i, j in itertools.combinations(range(r), 2):
        terms = {
            tuple(1 if k == i else 0 for k in range(r)): ONE,
            tuple(1 if k == j else 0 for k in range(r)): -ONE,
        }
        forms.append(Polynomial(variables, terms))
    return Arrangement(variables, tuple(forms), PROJECTIVE)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 1 for p in self.parts):
            raise InputError("partition parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise InputError("partition parts must be weakly decreasing")

    @property
    def total(self) -> int:
        return sum(self.parts)


def partition_flat_size(partition: Partition) -> int:
    """Number of braid hyperplanes inside a flat of this block type."""
    return sum(p * (p - 1) // 2 for p in partition.parts)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """True iff lam dominates mu (prefix sums of lam are >= those of mu)."""
    if mu.total != lam.total:
        raise InputError("partitions of different totals are incomparable")
    width = max(len(mu.parts), len(lam.parts))
    acc_mu = acc_lam = 0
    for i in range(width):
        acc_mu += mu.parts[i] if i < len(mu.parts) else 0
        acc_lam += lam.parts[i] if i < len(lam.parts) else 0
        if acc_lam < acc_mu:
            return False
    return True

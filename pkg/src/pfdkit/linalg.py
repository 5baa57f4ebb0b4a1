"""Exact dense linear algebra over the rationals.

Deterministic throughout: pivoting always takes the first nonzero entry in
column order, solutions zero their free variables in pivot order, and kernel
bases are the standard free-variable bases.  Determinants run fraction-free
(Bareiss) after clearing row denominators.
"""

from math import gcd
from typing import List, Optional, Sequence, Tuple

from .ratio import ONE, QQ, ZERO, qq

Vector = List[QQ]


class RationalMatrix:
    """Immutable row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        data = [[qq(x) for x in row] for row in entries]
        if data and any(len(row) != len(data[0]) for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", len(data[0]) if data else 0)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"RationalMatrix({self.entries!r})"

    def row(self, i: int) -> Vector:
        return list(self.entries[i])

    def column(self, j: int) -> Vector:
        return [row[j] for row in self.entries]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def mul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        bt = other.transpose().entries
        return RationalMatrix(
            [[_dot(row, col) for col in bt] for row in self.entries]
        )

    def mul_vector(self, v: Sequence) -> Vector:
        v = [qq(x) for x in v]
        if self.cols != len(v):
            raise ValueError("dimension mismatch")
        return [_dot(row, v) for row in self.entries]

    # -- elimination ---------------------------------------------------------

    def rref(self) -> Tuple["RationalMatrix", Tuple[int, ...], int]:
        """Unique reduced row echelon form, pivot columns, rank."""
        m = [list(row) for row in self.entries]
        pivots = []
        pr = 0
        for pc in range(self.cols):
            pivot_row = None
            for i in range(pr, self.rows):
                if m[i][pc] != ZERO:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            if pivot_row != pr:
                m[pr], m[pivot_row] = m[pivot_row], m[pr]
            inv = ONE / m[pr][pc]
            if inv != ONE:
                m[pr] = [x * inv for x in m[pr]]
            rp = m[pr]
            for i in range(self.rows):
                if i == pr:
                    continue
                f = m[i][pc]
                if f != ZERO:
                    ri = m[i]
                    m[i] = [a - f * b for a, b in zip(ri, rp)]
            pivots.append(pc)
            pr += 1
            if pr == self.rows:
                break
        return RationalMatrix(m), tuple(pivots), len(pivots)

    def rank(self) -> int:
        return self.rref()[2]

    def solve(self, b: Sequence) -> Optional[Vector]:
        """A particular solution of Ax=b with free variables zeroed, or None."""
        b = [qq(x) for x in b]
        if len(b) != self.rows:
            raise ValueError("dimension mismatch")
        aug = RationalMatrix([row + [bv] for row, bv in zip(self.entries, b)])
        red, pivots, _ = aug.rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.entries[r][self.cols]
        return x

    def kernel(self) -> List[Vector]:
        """Standard basis of the null space, one vector per free column."""
        red, pivots, _ = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [ZERO] * self.cols
            v[free] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -red.entries[r][free]
            basis.append(v)
        return basis

    def inverse(self) -> Optional["RationalMatrix"]:
        if self.rows != self.cols:
            raise ValueError("inverse needs a square matrix")
        n = self.rows
        aug = RationalMatrix([row + ident for row, ident in zip(self.entries, RationalMatrix.identity(n).entries)])
        red, pivots, rank = aug.rref()
        if rank < n or any(p >= n for p in pivots[:n]):
            return None
        return RationalMatrix([row[n:] for row in red.entries])

    # -- determinants --------------------------------------------------------

    def det(self) -> QQ:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        n = self.rows
        if n == 0:
            return ONE
        m: List[List[int]] = []
        scale = ONE
        for row in self.entries:
            den = 1
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
            scale = scale * qq(1, den)
            m.append([int(x.numerator) * (den // int(x.denominator)) for x in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = None
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        swap = i
                        break
                if swap is None:
                    return ZERO
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                ri, rk = m[i], m[k]
                f = ri[k]
                for j in range(k + 1, n):
                    ri[j] = (pivot * ri[j] - f * rk[j]) // prev
                ri[k] = 0
            prev = pivot
        return scale * qq(sign * m[n - 1][n - 1])

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> QQ:
        if len(rows) != len(cols):
            raise ValueError("minor needs equally many rows and columns")
        sub = [[self.entries[i][j] for j in cols] for i in rows]
        return RationalMatrix(sub).det()


def _dot(a: Sequence[QQ], b: Sequence[QQ]) -> QQ:
    total = ZERO
    for x, y in zip(a, b):
        if x != ZERO and y != ZERO:
            total = total + x * y
    return total


def solve_augmented(
    rows: List[Vector],
    ncols: int,
) -> Tuple[Optional[Vector], List[Vector]]:
    """Particular solution (free vars zeroed) and kernel basis for a system
    given as augmented rows [a_1 .. a_ncols | b].

    Forward elimination keeps rows in echelon form; this is the workhorse for
    the bounded-degree certificate solver, so rows can number in the
    thousands.  Returns (None, kernel) when inconsistent.
    """
    echelon: List[Tuple[int, Vector]] = []  # (pivot column, normalized row)
    for row in rows:
        row = list(row)
        for pc, erow in echelon:
            f = row[pc]
            if f != ZERO:
                row = [a - f * b for a, b in zip(row, erow)]
        lead = None
        for j, x in enumerate(row):
            if x != ZERO:
                lead = j
                break
        if lead is None:
            continue
        if lead == ncols:
            return None, []
        inv = ONE / row[lead]
        if inv != ONE:
            row = [x * inv for x in row]
        echelon.append((lead, row))
        if len(echelon) > 1 and echelon[-2][0] > lead:
            echelon.sort(key=lambda t: t[0])

    # Back-substitute to full reduction.
    echelon.sort(key=lambda t: t[0])
    for i in range(len(echelon) - 1, -1, -1):
        pc, row = echelon[i]
        for k in range(i):
            upc, urow = echelon[k]
            f = urow[pc]
            if f != ZERO:
                echelon[k] = (upc, [a - f * b for a, b in zip(urow, row)])

    pivots = [pc for pc, _ in echelon]
    pivot_set = set(pivots)
    x = [ZERO] * ncols
    for pc, row in echelon:
        x[pc] = row[ncols]
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for pc, row in echelon:
            v[pc] = -row[free]
        kernel.append(v)
    return x, kernel

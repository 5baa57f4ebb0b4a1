"""Sparse multivariate polynomials over exact rationals.

A Polynomial is an immutable map from exponent tuples to nonzero rational
coefficients, tagged with the ordered tuple of ambient variable names.  All
arithmetic is exact; the zero polynomial has an empty term map and its total
degree is the distinguished sentinel None (never -1).
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .orders import (
    Exponents,
    MonomialOrder,
    monomial_degree,
    monomial_mul,
)
from .ratio import ONE, QQ, ZERO, qq

DEFAULT_ORDER = MonomialOrder()


class Polynomial:
    """Immutable sparse polynomial; share freely across threads."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Dict[Exponents, QQ]):
        object.__setattr__(self, "vars", tuple(variables))
        object.__setattr__(self, "terms", dict(terms))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "Polynomial":
        value = qq(value)
        if value == ZERO:
            return cls.zero(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        try:
            i = variables.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {exps: ONE})

    @classmethod
    def from_terms(cls, variables: Sequence[str], items: Iterable[Tuple[Exponents, QQ]]) -> "Polynomial":
        """Build with canonicalization: like terms merged, zeros dropped."""
        variables = tuple(variables)
        n = len(variables)
        acc: Dict[Exponents, QQ] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {n} variables")
            coeff = qq(coeff)
            prev = acc.get(exps)
            s = coeff if prev is None else prev + coeff
            if s == ZERO:
                acc.pop(exps, None)
            else:
                acc[exps] = s
        return cls(variables, acc)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> Optional[int]:
        """Max total degree; None is the sentinel for the zero polynomial."""
        if not self.terms:
            return None
        return max(monomial_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {monomial_degree(e) for e in self.terms}
        return len(degs) == 1

    def is_constant(self) -> bool:
        return all(monomial_degree(e) == 0 for e in self.terms)

    def constant_value(self) -> QQ:
        return self.terms.get((0,) * len(self.vars), ZERO)

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER) -> List[Tuple[Exponents, QQ]]:
        """Terms in descending monomial order (deterministic iteration)."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = DEFAULT_ORDER) -> Tuple[Exponents, QQ]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def coefficient(self, exps: Exponents) -> QQ:
        return self.terms.get(tuple(exps), ZERO)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        from .parse import render_polynomial

        return f"Polynomial({render_polynomial(self)!r})"

    # -- arithmetic ----------------------------------------------------------

    def _check_same_ring(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise ValueError(f"mismatched ambient variables {self.vars} vs {other.vars}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        acc = dict(self.terms)
        for exps, coeff in other.terms.items():
            prev = acc.get(exps)
            if prev is None:
                acc[exps] = coeff
            else:
                s = prev + coeff
                if s == ZERO:
                    del acc[exps]
                else:
                    acc[exps] = s
        return Polynomial(self.vars, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        acc = dict(self.terms)
        for exps, coeff in other.terms.items():
            prev = acc.get(exps)
            if prev is None:
                acc[exps] = -coeff
            else:
                s = prev - coeff
                if s == ZERO:
                    del acc[exps]
                else:
                    acc[exps] = s
        return Polynomial(self.vars, acc)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.vars)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: Dict[Exponents, QQ] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                prev = acc.get(exps)
                if prev is None:
                    acc[exps] = prod
                else:
                    s = prev + prod
                    if s == ZERO:
                        del acc[exps]
                    else:
                        acc[exps] = s
        return Polynomial(self.vars, acc)

    def scale(self, value) -> "Polynomial":
        value = qq(value)
        if value == ZERO:
            return Polynomial.zero(self.vars)
        return Polynomial(self.vars, {e: c * value for e, c in self.terms.items()})

    def mul_term(self, exps: Exponents, coeff: QQ) -> "Polynomial":
        """Multiply by coeff * x^exps."""
        if coeff == ZERO:
            return Polynomial.zero(self.vars)
        exps = tuple(exps)
        return Polynomial(self.vars, {monomial_mul(e, exps): c * coeff for e, c in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k > 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    # -- structural operations ------------------------------------------------

    def homogeneous_components(self) -> List[Tuple[int, "Polynomial"]]:
        """Split into (degree, component) pairs, ascending degree; sum is self."""
        buckets: Dict[int, Dict[Exponents, QQ]] = {}
        for exps, coeff in self.terms.items():
            buckets.setdefault(monomial_degree(exps), {})[exps] = coeff
        return [(d, Polynomial(self.vars, buckets[d])) for d in sorted(buckets)]

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(
            self.vars,
            {e: c for e, c in self.terms.items() if monomial_degree(e) == degree},
        )

    def homogenize(self, new_var: str) -> "Polynomial":
        """Append new_var and pad every term up to the total degree."""
        if new_var in self.vars:
            raise ValueError(f"variable {new_var!r} already ambient")
        newvars = self.vars + (new_var,)
        deg = self.total_degree()
        if deg is None:
            return Polynomial.zero(newvars)
        acc = {e + (deg - monomial_degree(e),): c for e, c in self.terms.items()}
        return Polynomial(newvars, acc)

    def dehomogenize(self, var: str) -> "Polynomial":
        """Substitute var = 1 and drop it from the ambient ring."""
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        newvars = self.vars[:i] + self.vars[i + 1 :]
        out = Polynomial.zero(newvars)
        acc: Dict[Exponents, QQ] = {}
        for exps, coeff in self.terms.items():
            reduced = exps[:i] + exps[i + 1 :]
            prev = acc.get(reduced)
            s = coeff if prev is None else prev + coeff
            if s == ZERO:
                acc.pop(reduced, None)
            else:
                acc[reduced] = s
        return Polynomial(newvars, acc)

    def extend_ring(self, variables: Sequence[str]) -> "Polynomial":
        """Re-embed into a superset ring (same names, possibly new ones)."""
        variables = tuple(variables)
        idx = []
        for v in self.vars:
            try:
                idx.append(variables.index(v))
            except ValueError:
                raise ValueError(f"target ring lacks variable {v!r}") from None
        n = len(variables)
        acc = {}
        for exps, coeff in self.terms.items():
            out = [0] * n
            for j, e in zip(idx, exps):
                out[j] = e
            acc[tuple(out)] = coeff
        return Polynomial(variables, acc)

    def substitute_linear(self, matrix, shift=None) -> "Polynomial":
        """Return f(Mx + p) exactly; M must be square invertible.

        matrix is a row-major r x r list of rationals, shift a length-r vector
        (defaults to zero).
        """
        from . import linalg

        r = len(self.vars)
        if len(matrix) != r or any(len(row) != r for row in matrix):
            raise ValueError("matrix dimensions do not match ambient variable count")
        if shift is None:
            shift = [ZERO] * r
        if len(shift) != r:
            raise ValueError("shift dimension mismatch")
        if linalg.RationalMatrix(matrix).rank() != r:
            raise ValueError("singular substitution matrix")

        images = []
        for i in range(r):
            terms: Dict[Exponents, QQ] = {}
            for j in range(r):
                c = qq(matrix[i][j])
                if c != ZERO:
                    exps = tuple(1 if k == j else 0 for k in range(r))
                    terms[exps] = c
            p = qq(shift[i])
            if p != ZERO:
                terms[(0,) * r] = p
            images.append(Polynomial(self.vars, terms))

        return self.substitute(images)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate at polynomial images of the variables (ring morphism)."""
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        power_cache: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            if k == 0:
                return Polynomial.constant(self.vars, 1)
            got = power_cache.get((i, k))
            if got is None:
                got = power(i, k - 1) * images[i]
                power_cache[(i, k)] = got
            return got

        total = Polynomial.zero(self.vars)
        for exps, coeff in self.sorted_terms():
            part = Polynomial.constant(self.vars, coeff)
            for i, e in enumerate(exps):
                if e:
                    part = part * power(i, e)
            total = total + part
        return total

    def evaluate(self, point: Sequence) -> QQ:
        """Exact value at a rational point."""
        if len(point) != len(self.vars):
            raise ValueError("point dimension mismatch")
        point = [qq(x) for x in point]
        total = ZERO
        for exps, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, exps):
                if e:
                    v = v * x**e
            total = total + v
        return total

    # -- linear-form helpers ---------------------------------------------------

    def linear_coefficients(self) -> Tuple[List[QQ], QQ]:
        """(coefficients per variable, constant term) of a degree <= 1 poly."""
        deg = self.total_degree()
        if deg is not None and deg > 1:
            raise ValueError("not a linear polynomial")
        r = len(self.vars)
        coeffs = [ZERO] * r
        const = ZERO
        for exps, c in self.terms.items():
            d = monomial_degree(exps)
            if d == 0:
                const = c
            else:
                coeffs[exps.index(1)] = c
        return coeffs, const

    def divide_by_linear(self, ell: "Polynomial") -> Optional["Polynomial"]:
        """Exact quotient f / ell for ell of total degree 1, else None."""
        import heapq

        self._check_same_ring(ell)
        deg = ell.total_degree()
        if deg is None or deg == 0:
            raise ValueError("divisor must be nonzero of total degree 1")
        if deg != 1:
            raise ValueError("divisor must have total degree 1")
        order = DEFAULT_ORDER
        lt_exps, lt_coeff = ell.leading_term(order)
        quotient: Dict[Exponents, QQ] = {}
        work = dict(self.terms)
        heap = [(order.heap_key(e), e) for e in work]
        heapq.heapify(heap)
        while heap:
            _, exps = heapq.heappop(heap)
            coeff = work.get(exps)
            if coeff is None:
                continue  # stale entry
            del work[exps]
            if not all(x <= y for x, y in zip(lt_exps, exps)):
                return None
            q_exps = tuple(y - x for x, y in zip(lt_exps, exps))
            q_coeff = coeff / lt_coeff
            quotient[q_exps] = quotient.get(q_exps, ZERO) + q_coeff
            for e2, c2 in ell.terms.items():
                if e2 == lt_exps:
                    continue  # the lead cancels exactly
                key = monomial_mul(q_exps, e2)
                prev = work.get(key)
                if prev is None:
                    work[key] = -q_coeff * c2
                    heapq.heappush(heap, (order.heap_key(key), key))
                else:
                    s = prev - q_coeff * c2
                    if s == ZERO:
                        del work[key]
                    else:
                        work[key] = s
        return Polynomial(self.vars, {e: c for e, c in quotient.items() if c != ZERO})


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Dispatch add/sub/mul by name (the spec's operation surface)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def total_degree(f: Polynomial) -> Optional[int]:
    return f.total_degree()


def product(polys: Iterable[Polynomial], variables: Sequence[str]) -> Polynomial:
    result = Polynomial.constant(variables, 1)
    for p in polys:
        result = result * p
    return result

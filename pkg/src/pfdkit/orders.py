"""Monomial orders on exponent vectors.

A monomial is a tuple of non-negative integer exponents, one slot per ring
variable in declared order.  An order provides a sort key: larger key means
larger monomial.  Three kinds are supported:

* graded reverse lexicographic (the package default),
* lexicographic,
* block elimination: the first k variables are eliminated, i.e. any monomial
  containing one of them is larger than any monomial free of them; each block
  is compared by grevlex.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

Exponents = Tuple[int, ...]

GREVLEX = "grevlex"
LEX = "lex"
BLOCK = "block"


def _grevlex_key(exps: Exponents):
    # Ties in total degree break by the reversed negated exponents: the
    # monomial whose trailing variable exponents are smaller is larger.
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials; graded kinds refine total degree."""

    kind: str = GREVLEX
    block: int = 0
    precedence: Optional[Tuple[int, ...]] = None  # permutation of variable slots

    def __post_init__(self):
        if self.kind not in (GREVLEX, LEX, BLOCK):
            raise ValueError(f"unknown monomial order kind {self.kind!r}")
        if self.kind == BLOCK and self.block < 1:
            raise ValueError("block elimination order needs block >= 1")

    def key(self, exps: Exponents):
        """Sort key; sorting with reverse=True lists monomials descending."""
        if self.precedence is not None:
            exps = tuple(exps[i] for i in self.precedence)
        if self.kind == GREVLEX:
            return _grevlex_key(exps)
        if self.kind == LEX:
            return exps
        head, tail = exps[: self.block], exps[self.block :]
        return (_grevlex_key(head), _grevlex_key(tail))

    def greater(self, a: Exponents, b: Exponents) -> bool:
        return self.key(a) > self.key(b)

    def heap_key(self, exps: Exponents):
        """Exact negation of key(): min-heaps pop the largest monomial first."""
        if self.precedence is not None:
            exps = tuple(exps[i] for i in self.precedence)
        if self.kind == GREVLEX:
            return (-sum(exps), tuple(reversed(exps)))
        if self.kind == LEX:
            return tuple(-e for e in exps)
        head, tail = exps[: self.block], exps[self.block :]
        return ((-sum(head), tuple(reversed(head))), (-sum(tail), tuple(reversed(tail))))


def monomial_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Exponents, b: Exponents) -> bool:
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Exponents, b: Exponents) -> Exponents:
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a: Exponents) -> int:
    return sum(a)

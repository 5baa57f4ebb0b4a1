"""Ideals of d-fold products, Gröbner bases with cofactors, membership.

The d-fold product ideal of an arrangement (l_1, ..., l_n) is generated by
the products l_{i_1}...l_{i_d} over strictly increasing index tuples.  A PFD
of degree d exists exactly when the numerator lies in this ideal, and the
coefficients of a representation over the original generators become the PFD
numerators, so Buchberger runs with cofactor tracking: every basis element
carries its expression over the original generators, kept exact at all times.

Membership certificates with a degree cap come from an exact linear solve
over the coefficient space.  When the system is underdetermined the returned
certificate is the minimum-norm solution (particular solution projected
orthogonally to the kernel); that choice is deterministic, linear in the
numerator (so decomposition commutes with summation), and invariant under
relabeling of the generators.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import RationalMatrix, solve_augmented
from .matroid import AFFINE, PROJECTIVE, Arrangement, InputError, _Span
from .orders import (
    BLOCK,
    Exponents,
    MonomialOrder,
    monomial_degree,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from .poly import DEFAULT_ORDER, Polynomial, product
from .ratio import ONE, QQ, ZERO


class ResourceGuardError(RuntimeError):
    """Computation exceeded a configured cap; suggests the restricted workflow."""


DEFAULT_PAIR_CAP = 200_000
DEFAULT_GENERATOR_CAP = 512


@dataclass(frozen=True)
class GeneratorSpec:
    """Which d-fold products generate: all of them, or a chosen subset."""

    d: int
    restriction: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        if self.d < 1:
            raise InputError("d must be at least 1")
        if self.restriction is not None:
            canon = []
            for subset in self.restriction:
                subset = tuple(subset)
                if len(subset) != self.d or list(subset) != sorted(set(subset)):
                    raise InputError(f"restriction entry {subset} is not a sorted {self.d}-subset")
                canon.append(subset)
            object.__setattr__(self, "restriction", tuple(sorted(set(canon))))


def dfold_generators(
    arrangement: Arrangement, spec: GeneratorSpec
) -> List[Tuple[Tuple[int, ...], Polynomial]]:
    """(index set, product) pairs in lexicographic index order.

    Subsets containing a zero form produce the zero polynomial and are
    dropped.
    """
    n = arrangement.size
    if spec.d > n:
        raise InputError(f"d = {spec.d} exceeds the number of forms {n}")
    if spec.restriction is not None:
        subsets: Iterable[Tuple[int, ...]] = spec.restriction
        for subset in subsets:
            if subset[-1] >= n:
                raise InputError(f"restriction entry {subset} out of range")
    else:
        subsets = itertools.combinations(range(n), spec.d)
    out = []
    for subset in subsets:
        if any(arrangement.forms[i].is_zero() for i in subset):
            continue
        out.append((subset, product((arrangement.forms[i] for i in subset), arrangement.variables)))
    return out


# ---------------------------------------------------------------------------
# division and Buchberger
# ---------------------------------------------------------------------------


def _divide(
    f: Polynomial,
    divisors: Sequence[Polynomial],
    order: MonomialOrder,
    leads: Optional[Sequence[Tuple[Exponents, QQ]]] = None,
) -> Tuple[List[Polynomial], Polynomial]:
    """Multivariate division: f = sum(q_i * divisors[i]) + remainder.

    The leading term is always reduced first and the first dividing entry in
    list order wins, so the quotient map is deterministic and K-linear in f.
    No remainder term is divisible by any divisor's leading monomial.
    """
    import heapq

    variables = f.vars
    if leads is None:
        leads = [g.leading_term(order) for g in divisors]
    quotients: List[Dict[Exponents, QQ]] = [dict() for _ in divisors]
    remainder: Dict[Exponents, QQ] = {}
    work = dict(f.terms)
    heap = [(order.heap_key(e), e) for e in work]
    heapq.heapify(heap)
    while heap:
        _, exps = heapq.heappop(heap)
        coeff = work.get(exps)
        if coeff is None:
            continue  # stale entry
        del work[exps]
        hit = None
        for i, (lt_exps, lt_coeff) in enumerate(leads):
            if monomial_divides(lt_exps, exps):
                hit = (i, lt_exps, lt_coeff)
                break
        if hit is None:
            remainder[exps] = coeff
            continue
        i, lt_exps, lt_coeff = hit
        q_exps = monomial_div(exps, lt_exps)
        q_coeff = coeff / lt_coeff
        qi = quotients[i]
        qi[q_exps] = qi.get(q_exps, ZERO) + q_coeff
        for e2, c2 in divisors[i].terms.items():
            if e2 == lt_exps:
                continue  # the lead cancels exactly
            target = monomial_mul(q_exps, e2)
            prev = work.get(target)
            if prev is None:
                work[target] = -q_coeff * c2
                heapq.heappush(heap, (order.heap_key(target), target))
            else:
                s = prev - q_coeff * c2
                if s == ZERO:
                    del work[target]
                else:
                    work[target] = s
    return (
        [Polynomial(variables, {e: c for e, c in q.items() if c != ZERO}) for q in quotients],
        Polynomial(variables, remainder),
    )


def _cof_combine(rows: Sequence[Sequence[Polynomial]], weights: Sequence[Polynomial]) -> List[Polynomial]:
    ngens = len(rows[0])
    out = []
    for j in range(ngens):
        acc = None
        for row, w in zip(rows, weights):
            if w.is_zero() or row[j].is_zero():
                continue
            term = w * row[j]
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else Polynomial.zero(weights[0].vars))
    return out


def buchberger(
    generators: Sequence[Polynomial],
    order: MonomialOrder = DEFAULT_ORDER,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> Tuple[List[Polynomial], List[List[Polynomial]]]:
    """Reduced Gröbner basis plus cofactor rows over the input generators.

    Deterministic: normal (degree-of-lcm) pair selection with lexicographic
    tie-break, first-divisor reduction, final basis sorted by descending
    leading monomial and made monic.  Every returned basis element g with
    cofactor row (c_1, ..., c_m) satisfies g = sum(c_j * generators[j])
    exactly.
    """
    if not generators:
        raise InputError("empty generator list")
    variables = generators[0].vars
    m = len(generators)

    basis: List[Polynomial] = []
    cof: List[List[Polynomial]] = []
    leads: List[Tuple[Exponents, QQ]] = []

    def push(poly: Polynomial, row: List[Polynomial]):
        lt_exps, lt_coeff = poly.leading_term(order)
        if lt_coeff != ONE:
            inv = ONE / lt_coeff
            poly = poly.scale(inv)
            row = [c.scale(inv) for c in row]
        basis.append(poly)
        cof.append(row)
        leads.append(poly.leading_term(order))

    for j, g in enumerate(generators):
        if g.vars != variables:
            raise InputError("generators live in different rings")
        if g.is_zero():
            raise InputError("zero generator")
        row = [Polynomial.zero(variables) for _ in range(m)]
        row[j] = Polynomial.constant(variables, 1)
        push(g, row)

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0
    while pairs:
        processed += 1
        if processed > pair_cap:
            raise ResourceGuardError(
                f"Gröbner pair cap {pair_cap} exceeded; consider --restrict-generators "
                "or the bounded-degree linear method"
            )
        i, j = min(
            pairs,
            key=lambda p: (monomial_degree(monomial_lcm(leads[p[0]][0], leads[p[1]][0])), p),
        )
        pairs.discard((i, j))
        lt_i, lt_j = leads[i][0], leads[j][0]
        lcm = monomial_lcm(lt_i, lt_j)
        if lcm == monomial_mul(lt_i, lt_j):
            continue  # product criterion: coprime leading monomials
        ui = Polynomial(variables, {monomial_div(lcm, lt_i): ONE})
        uj = Polynomial(variables, {monomial_div(lcm, lt_j): ONE})
        s_poly = ui * basis[i] - uj * basis[j]
        if s_poly.is_zero():
            continue
        quotients, remainder = _divide(s_poly, basis, order, leads)
        if remainder.is_zero():
            continue
        row_s = _cof_combine([cof[i], cof[j]], [ui, -uj])
        correction = _cof_combine(cof, [-q for q in quotients])
        row = [a + b for a, b in zip(row_s, correction)]
        new_index = len(basis)
        push(remainder, row)
        for k in range(new_index):
            pairs.add((k, new_index))

    # Minimal basis: drop anything whose leading monomial another kept
    # element's leading monomial divides.
    order_idx = sorted(range(len(basis)), key=lambda i: (order.key(leads[i][0]), i))
    kept: List[int] = []
    for i in order_idx:
        if any(monomial_divides(leads[k][0], leads[i][0]) for k in kept):
            continue
        kept.append(i)

    gb = [basis[i] for i in kept]
    gb_cof = [cof[i] for i in kept]
    # Inter-reduce tails to the unique reduced basis, cofactors updated.
    changed = True
    while changed:
        changed = False
        for i in range(len(gb)):
            others = gb[:i] + gb[i + 1 :]
            if not others:
                continue
            quotients, remainder = _divide(gb[i], others, order)
            if remainder == gb[i]:
                continue
            changed = True
            rows = gb_cof[:i] + gb_cof[i + 1 :]
            correction = _cof_combine(rows, [-q for q in quotients])
            new_row = [a + b for a, b in zip(gb_cof[i], correction)]
            lt_exps, lt_coeff = remainder.leading_term(order)
            if lt_coeff != ONE:
                inv = ONE / lt_coeff
                remainder = remainder.scale(inv)
                new_row = [c.scale(inv) for c in new_row]
            gb[i] = remainder
            gb_cof[i] = new_row

    ranked = sorted(range(len(gb)), key=lambda i: order.key(gb[i].leading_term(order)[0]), reverse=True)
    return [gb[i] for i in ranked], [gb_cof[i] for i in ranked]


class IdealWithBasis:
    """Generator list with a lazily computed reduced Gröbner basis."""

    def __init__(
        self,
        generators: Sequence[Polynomial],
        order: MonomialOrder = DEFAULT_ORDER,
        pair_cap: int = DEFAULT_PAIR_CAP,
    ):
        generators = tuple(generators)
        if not generators:
            raise InputError("ideal needs at least one generator")
        self.generators = generators
        self.order = order
        self.pair_cap = pair_cap
        self._gb: Optional[List[Polynomial]] = None
        self._cofactors: Optional[List[List[Polynomial]]] = None

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.generators[0].vars

    def groebner_basis(self) -> List[Polynomial]:
        if self._gb is None:
            self._gb, self._cofactors = buchberger(self.generators, self.order, self.pair_cap)
        return self._gb

    def cofactors(self) -> List[List[Polynomial]]:
        self.groebner_basis()
        return self._cofactors

    def normal_form(self, f: Polynomial) -> Tuple[Polynomial, List[Polynomial]]:
        """(remainder, quotients over the reduced basis); f = sum q*gb + rem."""
        gb = self.groebner_basis()
        quotients, remainder = _divide(f, gb, self.order)
        return remainder, quotients

    def member(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return self.normal_form(f)[0].is_zero()

    def express_in_generators(self, f: Polynomial) -> Optional[List[Polynomial]]:
        """Coefficients over the ORIGINAL generators, or None if f not a member."""
        remainder, quotients = self.normal_form(f)
        if not remainder.is_zero():
            return None
        return _cof_combine(self.cofactors(), quotients)


# ---------------------------------------------------------------------------
# intersection and equality
# ---------------------------------------------------------------------------


def intersect(I: IdealWithBasis, J: IdealWithBasis) -> IdealWithBasis:
    """I ∩ J via the auxiliary variable: eliminate t from t*I + (1-t)*J."""
    if I.variables != J.variables:
        raise InputError("ideals live in different rings")
    variables = I.variables
    t_name = "_t"
    while t_name in variables:
        t_name += "_"
    extended = (t_name,) + variables
    t = Polynomial.variable(extended, t_name)
    one = Polynomial.constant(extended, 1)
    gens = [t * g.extend_ring(extended) for g in I.generators]
    gens += [(one - t) * h.extend_ring(extended) for h in J.generators]
    elim = IdealWithBasis(gens, MonomialOrder(BLOCK, block=1), pair_cap=max(I.pair_cap, J.pair_cap))
    kept = [g for g in elim.groebner_basis() if all(e[0] == 0 for e in g.terms)]
    if not kept:
        # The intersection of nonzero ideals is nonzero; this cannot happen
        # for valid inputs, but keep the zero ideal representable.
        kept = [Polynomial.zero(extended)]
        raise InputError("empty elimination result")
    projected = [g.dehomogenize(t_name) for g in kept]
    return IdealWithBasis(projected, I.order, pair_cap=max(I.pair_cap, J.pair_cap))


def _single_degree(generators: Sequence[Polynomial]) -> Optional[int]:
    degree = None
    for g in generators:
        if not g.is_homogeneous() or g.is_zero():
            return None
        d = g.total_degree()
        if degree is None:
            degree = d
        elif degree != d:
            return None
    return degree


def ideal_equal(I: IdealWithBasis, J: IdealWithBasis) -> bool:
    """Exact ideal equality.

    Ideals generated in a single common homogeneous degree compare by row
    span; everything else goes through mutual Gröbner membership.
    """
    if I.variables != J.variables:
        raise InputError("ideals live in different rings")
    di, dj = _single_degree(I.generators), _single_degree(J.generators)
    if di is not None and dj is not None:
        if di != dj:
            return False
        monomials = sorted(
            {e for g in I.generators for e in g.terms} | {e for g in J.generators for e in g.terms},
            key=I.order.key,
            reverse=True,
        )
        col = {e: k for k, e in enumerate(monomials)}

        def rows(gens):
            mat = []
            for g in gens:
                row = [ZERO] * len(monomials)
                for e, c in g.terms.items():
                    row[col[e]] = c
                mat.append(row)
            return RationalMatrix(mat).rref()[0]

        ra, rb = rows(I.generators), rows(J.generators)
        za = [row for row in ra.entries if any(x != ZERO for x in row)]
        zb = [row for row in rb.entries if any(x != ZERO for x in row)]
        return za == zb
    return all(J.member(g) for g in I.generators) and all(I.member(h) for h in J.generators)


# ---------------------------------------------------------------------------
# bounded-degree certificates
# ---------------------------------------------------------------------------


def _monomials_up_to(variables: Tuple[str, ...], bound: int) -> List[Exponents]:
    r = len(variables)
    out = []

    def rec(prefix, remaining, slot):
        if slot == r - 1:
            for e in range(remaining + 1):
                out.append(tuple(prefix + [e]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slot + 1)

    if r == 0:
        return [()]
    rec([], bound, 0)
    return out


def express_bounded_degree(
    f: Polynomial,
    arrangement: Arrangement,
    spec: GeneratorSpec,
    bound: int,
) -> Optional[List[Tuple[Tuple[int, ...], Polynomial]]]:
    """Coefficients c_T with deg(c_T) <= bound and f = sum c_T * prod_T.

    Returns (index set, coefficient) pairs aligned with dfold_generators
    order, or None when no such representation exists.  The certificate is
    the minimum-norm solution of the exact linear system over the coefficient
    space; see the module docstring for why.
    """
    if bound < 0:
        return None
    generators = dfold_generators(arrangement, spec)
    if not generators:
        return None
    variables = arrangement.variables
    order = DEFAULT_ORDER

    homogeneous = (
        arrangement.mode == PROJECTIVE
        and f.is_homogeneous()
        and not f.is_zero()
    )
    if homogeneous:
        coeff_degree = f.total_degree() - spec.d
        if coeff_degree < 0 or coeff_degree > bound:
            return None
        coeff_monomials = [e for e in _monomials_up_to(variables, coeff_degree) if sum(e) == coeff_degree]
    else:
        coeff_monomials = _monomials_up_to(variables, bound)
    coeff_monomials.sort(key=order.key, reverse=True)

    columns: List[Polynomial] = []
    unknown_index: List[Tuple[int, Exponents]] = []
    for gi, (_, g) in enumerate(generators):
        for m in coeff_monomials:
            columns.append(g.mul_term(m, ONE))
            unknown_index.append((gi, m))

    row_monomials = sorted(
        {e for c in columns for e in c.terms} | set(f.terms),
        key=order.key,
        reverse=True,
    )
    row_of = {e: k for k, e in enumerate(row_monomials)}
    ncols = len(columns)
    rows = [[ZERO] * (ncols + 1) for _ in row_monomials]
    for j, c in enumerate(columns):
        for e, v in c.terms.items():
            rows[row_of[e]][j] = v
    for e, v in f.terms.items():
        rows[row_of[e]][ncols] = v

    particular, kernel = solve_augmented(rows, ncols)
    if particular is None:
        return None
    solution = _project_min_norm(particular, kernel)

    per_gen: List[Dict[Exponents, QQ]] = [dict() for _ in generators]
    for (gi, m), value in zip(unknown_index, solution):
        if value != ZERO:
            per_gen[gi][m] = value
    return [
        (subset, Polynomial(variables, terms))
        for (subset, _), terms in zip(generators, per_gen)
    ]


def _project_min_norm(particular: List[QQ], kernel: List[List[QQ]]) -> List[QQ]:
    """Unique solution orthogonal to the kernel (exact over Q)."""
    if not kernel:
        return particular
    k = len(kernel)
    gram = [[_dot(kernel[i], kernel[j]) for j in range(k)] for i in range(k)]
    rhs = [_dot(kernel[i], particular) for i in range(k)]
    y = RationalMatrix(gram).solve(rhs)
    out = list(particular)
    for yi, basis_vec in zip(y, kernel):
        if yi == ZERO:
            continue
        out = [a - yi * b for a, b in zip(out, basis_vec)]
    return out


def _dot(a: Sequence[QQ], b: Sequence[QQ]) -> QQ:
    total = ZERO
    for x, y in zip(a, b):
        if x != ZERO and y != ZERO:
            total = total + x * y
    return total


# ---------------------------------------------------------------------------
# powers of linear-prime ideals: vanishing orders along flats
# ---------------------------------------------------------------------------


def flat_point(arrangement: Arrangement, indices: Sequence[int]) -> Optional[List[QQ]]:
    """An exact point where the chosen affine forms all vanish, or None."""
    rows = []
    rhs = []
    for i in indices:
        form = arrangement.forms[i]
        if form.is_zero():
            continue
        coeffs, const = form.linear_coefficients()
        rows.append(coeffs)
        rhs.append(-const)
    if not rows:
        return [ZERO] * len(arrangement.variables)
    return RationalMatrix(rows).solve(rhs)


def flat_vanishing_order(
    f: Polynomial,
    arrangement: Arrangement,
    indices: Sequence[int],
    mode: Optional[str] = None,
) -> int:
    """Largest k with f in (I_S)^k, where I_S = <l_i : i in S>.

    Change coordinates so the span of the flat's forms becomes the first m
    coordinates; the order is then the minimum degree of the rewritten f in
    those coordinates.  Affine flats are first translated to a point on the
    flat (which exists whenever the flat is not at infinity).
    """
    if f.is_zero():
        raise InputError("vanishing order of the zero polynomial is undefined")
    mode = mode or arrangement.mode
    r = len(arrangement.variables)

    shift = None
    if mode == AFFINE:
        shift = flat_point(arrangement, indices)
        if shift is None:
            raise InputError(
                "flat has no affine point (it lies at infinity); "
                "affine decompositions filter such flats out"
            )

    span = _Span()
    basis_rows: List[List[QQ]] = []
    for i in indices:
        form = arrangement.forms[i]
        if form.is_zero():
            continue
        vec = form.linear_coefficients()[0]
        if span.add(vec):
            basis_rows.append([*vec])
    m = len(basis_rows)
    if m == 0:
        return 0
    for j in range(r):
        unit = [ONE if k == j else ZERO for k in range(r)]
        if span.add(unit):
            basis_rows.append(unit)
    B = RationalMatrix(basis_rows)
    B_inv = B.inverse()
    # g(u) = f(B^-1 u + p) so that u_1..u_m generate I_S after the move.
    g = f.substitute_linear([list(row) for row in B_inv.entries], shift)
    return min(sum(e[:m]) for e in g.terms)


def power_linear_membership(
    f: Polynomial,
    arrangement: Arrangement,
    indices: Sequence[int],
    k: int,
    mode: Optional[str] = None,
) -> bool:
    """True iff f lies in the k-th power of the flat's linear-prime ideal."""
    if k < 0:
        raise InputError("power must be non-negative")
    if k == 0:
        return True
    if f.is_zero():
        return True
    return flat_vanishing_order(f, arrangement, indices, mode) >= k


def power_ideal(
    arrangement: Arrangement, indices: Sequence[int], exponent: int, pair_cap: int = DEFAULT_PAIR_CAP
) -> IdealWithBasis:
    """(I_S)^e generated by e-fold products of the flat's distinct forms."""
    if exponent < 1:
        raise InputError("exponent must be at least 1")
    forms = []
    seen = set()
    for i in indices:
        form = arrangement.forms[i]
        if form.is_zero():
            continue
        lt_exps, lt_coeff = form.leading_term(DEFAULT_ORDER)
        monic = form.scale(ONE / lt_coeff)
        key = tuple(sorted(monic.terms.items()))
        if key not in seen:
            seen.add(key)
            forms.append(monic)
    if not forms:
        raise InputError("flat consists only of zero forms")
    gens = [
        product(combo, arrangement.variables)
        for combo in itertools.combinations_with_replacement(forms, exponent)
    ]
    return IdealWithBasis(gens, pair_cap=pair_cap)

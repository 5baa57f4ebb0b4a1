"""Partial fraction decomposition of rational functions on arrangements.

The pipeline: strip spurious poles (numerator factors among the denominator
forms), find the largest d with the numerator in the d-fold product ideal,
extract coefficients over the d-fold generators, and emit one term per
generator: the coefficient of prod_{i in T} l_i becomes the numerator over
prod_{j not in T} l_j.  Everything is exact and deterministic; identical
inputs give byte-identical documents.
"""

import json
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from . import decomp
from .ideal import (
    DEFAULT_GENERATOR_CAP,
    DEFAULT_PAIR_CAP,
    GeneratorSpec,
    IdealWithBasis,
    ResourceGuardError,
    dfold_generators,
    express_bounded_degree,
)
from .matroid import AFFINE, PROJECTIVE, Arrangement, InputError
from .parse import ParseError, render_polynomial, parse_polynomial
from .poly import Polynomial, product
from .ratio import ZERO

AUTO = "auto"
GB = "gb"
LINEAR = "linear"


@dataclass(frozen=True)
class RationalFunction:
    """numerator / product of degree-1 forms (duplicates allowed by index)."""

    numerator: Polynomial
    forms: Tuple[Polynomial, ...]
    mode: str = PROJECTIVE

    def __post_init__(self):
        if self.numerator.is_zero():
            raise InputError("numerator must be nonzero")
        for k, form in enumerate(self.forms):
            if form.vars != self.numerator.vars:
                raise InputError(f"form {k + 1} lives in a different ring")
            if form.total_degree() != 1:
                raise InputError(f"form {k + 1} must be nonzero of total degree 1")

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.numerator.vars

    @property
    def size(self) -> int:
        return len(self.forms)

    def arrangement(self) -> Arrangement:
        return Arrangement(self.variables, self.forms, self.mode)


@dataclass(frozen=True)
class PfdTerm:
    numerator: Polynomial
    denominator: Tuple[int, ...]  # sorted 0-based indices into the input forms


@dataclass(frozen=True)
class PfdResult:
    degree: int
    terms: Tuple[PfdTerm, ...]
    method: str
    mode: str
    variables: Tuple[str, ...]
    n: int
    certified_maximal: bool = True


@dataclass(frozen=True)
class PfdOptions:
    degree: Optional[int] = None
    max_degree: Optional[int] = None
    method: str = AUTO
    restriction: Optional[Tuple[Tuple[int, ...], ...]] = None
    pair_cap: int = DEFAULT_PAIR_CAP
    generator_cap: int = DEFAULT_GENERATOR_CAP


def reduced_exp(rf: RationalFunction) -> Tuple[RationalFunction, Tuple[int, ...]]:
    """Algorithm-1 style spurious pole removal, one pass in index order.

    Whenever the current numerator is divisible by form i, the factor is
    divided out and the form dropped.  The surviving numerator is divisible
    by none of the surviving forms.
    """
    numerator = rf.numerator
    kept: List[int] = []
    removed: List[int] = []
    for i, form in enumerate(rf.forms):
        quotient = numerator.divide_by_linear(form)
        if quotient is not None:
            numerator = quotient
            removed.append(i)
        else:
            kept.append(i)
    reduced = RationalFunction(numerator, tuple(rf.forms[i] for i in kept), rf.mode)
    return reduced, tuple(removed)


def _require_reduced(rf: RationalFunction):
    for i, form in enumerate(rf.forms):
        if rf.numerator.divide_by_linear(form) is not None:
            raise InputError(
                f"input is not fully reduced: numerator divisible by form {i + 1}; "
                "run reduced_exp first"
            )


def _assemble(
    rf: RationalFunction,
    d: int,
    certificates: Sequence[Tuple[Tuple[int, ...], Polynomial]],
    method: str,
    certified_maximal: bool,
) -> PfdResult:
    n = rf.size
    merged: Dict[Tuple[int, ...], Polynomial] = {}
    for subset, coeff in certificates:
        if coeff.is_zero():
            continue
        denom = tuple(sorted(set(range(n)) - set(subset)))
        prev = merged.get(denom)
        merged[denom] = coeff if prev is None else prev + coeff
    terms = tuple(
        PfdTerm(coeff, denom)
        for denom, coeff in sorted(merged.items())
        if not coeff.is_zero()
    )
    return PfdResult(d, terms, method, rf.mode, rf.variables, n, certified_maximal)


def _membership_gb(rf: RationalFunction, d: int, options: PfdOptions) -> Optional[IdealWithBasis]:
    generators = dfold_generators(rf.arrangement(), GeneratorSpec(d))
    if not generators:
        return None
    if len(generators) > options.generator_cap:
        raise ResourceGuardError(
            f"{len(generators)} generators at d = {d} exceed the GB cap "
            f"{options.generator_cap}; use --restrict-generators or --method linear"
        )
    ideal = IdealWithBasis([g for _, g in generators], pair_cap=options.pair_cap)
    return ideal if ideal.member(rf.numerator) else None


def _extract_gb(
    rf: RationalFunction, d: int, ideal: IdealWithBasis, bound: int, options: PfdOptions
) -> Optional[List[Tuple[Tuple[int, ...], Polynomial]]]:
    """Cofactor route; falls back to the bounded solve on a degree violation."""
    generators = dfold_generators(rf.arrangement(), GeneratorSpec(d))
    coeffs = ideal.express_in_generators(rf.numerator)
    if coeffs is None:
        return None
    if all(c.is_zero() or c.total_degree() <= bound for c in coeffs):
        return [(subset, c) for (subset, _), c in zip(generators, coeffs)]
    return express_bounded_degree(rf.numerator, rf.arrangement(), GeneratorSpec(d), bound)


def pfd(rf: RationalFunction, options: PfdOptions = PfdOptions()) -> Optional[PfdResult]:
    """Maximal-degree PFD of a fully reduced rational function, or None.

    Strategy per options.method:

    * auto   -- maximal d in one pass over qualifying flats, then coefficient
                extraction (bounded solve when deg f == d, else the cofactor
                route with bounded-solve fallback);
    * gb     -- ascending membership loop with Gröbner normal forms
                (Algorithm-2 shape) and cofactor extraction;
    * linear -- descending membership probe by bounded solve.

    All three return the same maximal degree.  With options.degree the single
    degree is attempted and maximality is not claimed; restricted generator
    sets (options.restriction) require an explicit degree and produce a
    lower-bound certificate.
    """
    _require_reduced(rf)
    if rf.mode == PROJECTIVE and not rf.numerator.is_homogeneous():
        raise InputError("projective inputs need a homogeneous numerator")
    n = rf.size
    if n == 0:
        raise InputError("no denominator forms; the input is already a polynomial")
    deg_f = rf.numerator.total_degree()
    arrangement = rf.arrangement()

    if options.restriction is not None:
        if options.degree is None:
            raise InputError("--restrict-generators needs an explicit --degree")
        d = options.degree
        _check_degree(d, n)
        spec = GeneratorSpec(d, options.restriction)
        certificates = express_bounded_degree(rf.numerator, arrangement, spec, deg_f - d)
        if certificates is None:
            return None  # inconclusive for maximality; no PFD from this subset
        return _assemble(rf, d, certificates, f"{LINEAR}-restricted", certified_maximal=False)

    if options.degree is not None:
        d = options.degree
        _check_degree(d, n)
        if deg_f < d:
            return None
        certificates = _extract_at(rf, d, deg_f - d, options)
        if certificates is None:
            return None
        return _assemble(rf, d, certificates, options.method, certified_maximal=False)

    upper = min(n, deg_f)
    if options.max_degree is not None:
        upper = min(upper, options.max_degree)
    if upper < 1:
        return None

    if options.method == GB:
        best: Optional[Tuple[int, IdealWithBasis]] = None
        for D in range(1, upper + 1):
            ideal = _membership_gb(rf, D, options)
            if ideal is None:
                break
            best = (D, ideal)
        if best is None:
            return None
        d, ideal = best
        certificates = _extract_gb(rf, d, ideal, deg_f - d, options)
        certified = options.max_degree is None or d < upper
        return _assemble(rf, d, certificates, GB, certified_maximal=certified)

    if options.method == LINEAR:
        for D in range(upper, 0, -1):
            certificates = express_bounded_degree(
                rf.numerator, arrangement, GeneratorSpec(D), deg_f - D
            )
            if certificates is not None:
                certified = options.max_degree is None or D < upper
                return _assemble(rf, D, certificates, LINEAR, certified_maximal=certified)
        return None

    if options.method != AUTO:
        raise InputError(f"unknown method {options.method!r}")

    d_max = decomp.max_pfd_degree_via_flats(rf.numerator, arrangement)
    d = min(d_max, upper)
    if d < 1:
        return None
    certificates = _extract_at(rf, d, deg_f - d, options)
    if certificates is None:
        raise InputError(
            "flats criterion certified membership but extraction failed; "
            "this indicates an internal inconsistency"
        )
    certified = options.max_degree is None or d_max <= upper
    return _assemble(rf, d, certificates, AUTO, certified_maximal=certified)


def _check_degree(d: int, n: int):
    if not 1 <= d <= n:
        raise InputError(f"degree {d} out of range [1, {n}]")


def _extract_at(
    rf: RationalFunction, d: int, bound: int, options: PfdOptions
) -> Optional[List[Tuple[Tuple[int, ...], Polynomial]]]:
    arrangement = rf.arrangement()
    if options.method == LINEAR or bound == 0:
        return express_bounded_degree(rf.numerator, arrangement, GeneratorSpec(d), bound)
    if options.method == GB:
        ideal = _membership_gb(rf, d, options)
        if ideal is None:
            return None
        return _extract_gb(rf, d, ideal, bound, options)
    # auto with polynomial coefficients: prefer the cofactor route, fall back
    # to the bounded solve when caps bite.
    try:
        ideal = _membership_gb(rf, d, options)
    except ResourceGuardError:
        return express_bounded_degree(rf.numerator, arrangement, GeneratorSpec(d), bound)
    if ideal is None:
        return None
    return _extract_gb(rf, d, ideal, bound, options)


def full_pfd(
    rf: RationalFunction, options: PfdOptions = PfdOptions()
) -> Tuple[Optional[PfdResult], Tuple[int, ...]]:
    """reduced_exp then pfd, with term indices mapped back to the input.

    The reported degree counts the removed factors: a degree-d' PFD of the
    reduced function is a degree-(d' + #removed) PFD of the original, and
    options.degree / options.max_degree refer to the original input.
    """
    reduced, removed = reduced_exp(rf)
    if reduced.size == 0:
        # The function is the polynomial numerator itself.
        result = PfdResult(
            degree=rf.size,
            terms=(PfdTerm(reduced.numerator, ()),),
            method="reduce",
            mode=rf.mode,
            variables=rf.variables,
            n=rf.size,
            certified_maximal=True,
        )
        return result, removed
    surviving_all = [i for i in range(rf.size) if i not in set(removed)]
    if options.restriction is not None and removed:
        raise InputError(
            "restricted generator indices refer to the input forms; "
            "remove spurious factors before using a restriction"
        )
    if options.degree is not None:
        _check_degree(options.degree, rf.size)
        inner_degree = options.degree - len(removed)
        if inner_degree < 1:
            # Reduction alone certifies this degree: one term over the
            # surviving forms.
            result = PfdResult(
                options.degree,
                (PfdTerm(reduced.numerator, tuple(surviving_all)),),
                "reduce",
                rf.mode,
                rf.variables,
                rf.size,
                certified_maximal=False,
            )
            return result, removed
        options = replace(options, degree=inner_degree)
    elif options.max_degree is not None:
        options = replace(options, max_degree=max(options.max_degree - len(removed), 1))
    inner = pfd(reduced, options)
    if inner is None:
        return None, removed
    if not removed:
        return inner, removed
    terms = tuple(
        PfdTerm(t.numerator, tuple(surviving_all[j] for j in t.denominator))
        for t in inner.terms
    )
    return (
        PfdResult(
            inner.degree + len(removed),
            terms,
            inner.method,
            rf.mode,
            rf.variables,
            rf.size,
            inner.certified_maximal,
        ),
        removed,
    )


def pfd_generic(rf: RationalFunction) -> PfdResult:
    """Thm-5.1 path: generic forms, homogeneous numerator of degree n-r'+1.

    The d-fold products form a basis of the degree-d forms, so the PFD is the
    unique solution of one exact linear solve and is independent of the form
    labeling.  Reducedness is not required: spurious input factors surface as
    the unique certificate's own structure.
    """
    if rf.mode != PROJECTIVE:
        raise InputError("the generic fast path needs a projective arrangement")
    if not rf.numerator.is_homogeneous():
        raise InputError("the generic fast path needs a homogeneous numerator")
    arrangement = rf.arrangement()
    from .matroid import rank_of_subset
    import itertools

    n = rf.size
    rank = rank_of_subset(arrangement, range(n))
    d = n - rank + 1
    if rf.numerator.total_degree() != d:
        raise InputError(
            f"generic path needs deg(f) = n - rank + 1 = {d}, got {rf.numerator.total_degree()}"
        )
    for subset in itertools.combinations(range(n), rank):
        if rank_of_subset(arrangement, subset) != rank:
            raise InputError(f"forms {tuple(i + 1 for i in subset)} are dependent; not generic")
    certificates = express_bounded_degree(rf.numerator, arrangement, GeneratorSpec(d), 0)
    if certificates is None:
        raise InputError("degree-d form failed to decompose over a generic arrangement")
    return _assemble(rf, d, certificates, "generic", certified_maximal=True)


def verify_pfd(result: PfdResult, rf: RationalFunction) -> bool:
    """Exact recombination check of a PFD against the input function.

    Terms may carry denominators smaller than n-d (polynomial-like terms);
    each must satisfy the matching numerator degree bound, reference only
    input forms, and the sum over the common denominator must reproduce the
    numerator exactly.
    """
    n = rf.size
    d = result.degree
    if not 1 <= d <= n:
        return False
    deg_f = rf.numerator.total_degree()
    total = Polynomial.zero(rf.numerator.vars)
    for term in result.terms:
        indices = term.denominator
        if list(indices) != sorted(set(indices)):
            return False
        if any(not 0 <= i < n for i in indices):
            return False
        if len(indices) > n - d:
            return False
        if term.numerator.is_zero():
            return False
        if term.numerator.total_degree() > deg_f - (n - len(indices)):
            return False
        complement = [i for i in range(n) if i not in set(indices)]
        total = total + term.numerator * product(
            (rf.forms[i] for i in complement), rf.numerator.vars
        )
    return total == rf.numerator


def reducible_term_criterion(rf: RationalFunction, d: int) -> bool:
    """d = n-1 case: some degree-d PFD term is reducible iff some form
    divides the numerator (the forms must be pairwise coprime and the
    numerator a member of the d-fold ideal)."""
    n = rf.size
    if d != n - 1 or d < 1:
        raise InputError("criterion applies to d = n - 1 >= 1 only")
    for i in range(n):
        for j in range(i + 1, n):
            rows = []
            for k in (i, j):
                coeffs, const = rf.forms[k].linear_coefficients()
                rows.append(list(coeffs) + [const])
            from .linalg import RationalMatrix

            if RationalMatrix(rows).rank() != 2:
                raise InputError(f"forms {i + 1} and {j + 1} are not coprime")
    member, _ = decomp.exists_pfd_via_flats(rf.numerator, rf.arrangement(), d)
    if not member:
        raise InputError(f"numerator is not in the d-fold ideal at d = {d}")
    return any(rf.numerator.divide_by_linear(form) is not None for form in rf.forms)


def iterative_pfd(
    rf: RationalFunction, step_degree: int, options: PfdOptions = PfdOptions()
) -> Optional[PfdResult]:
    """Refinement mode: decompose at a small degree, then recurse on the term
    numerators over their own denominators, merging like denominators.

    The result is a valid PFD of degree n - max(|denominator|) of the input;
    soundness is checked by the caller via verify_pfd.
    """
    _require_reduced(rf)
    n = rf.size
    base = pfd(rf, replace(options, degree=min(step_degree, n), max_degree=None))
    if base is None:
        return None
    pending = list(base.terms)
    final: Dict[Tuple[int, ...], Polynomial] = {}
    while pending:
        term = pending.pop(0)
        indices = term.denominator
        if not indices:
            _merge_term(final, term)
            continue
        sub_rf = RationalFunction(
            term.numerator, tuple(rf.forms[i] for i in indices), rf.mode
        )
        sub_reduced, sub_removed = reduced_exp(sub_rf)
        survivors = [indices[k] for k in range(len(indices)) if k not in set(sub_removed)]
        if sub_reduced.size == 0:
            _merge_term(final, PfdTerm(sub_reduced.numerator, ()))
            continue
        deg_sub = sub_reduced.numerator.total_degree() or 0
        step = min(step_degree, sub_reduced.size, deg_sub)
        sub = pfd(sub_reduced, replace(options, degree=step, max_degree=None)) if step >= 1 else None
        if sub is None:
            if sub_removed:
                # Reduction alone made progress; keep the reduced term.
                pending.append(PfdTerm(sub_reduced.numerator, tuple(survivors)))
            else:
                _merge_term(final, PfdTerm(term.numerator, indices))
            continue
        for t in sub.terms:
            mapped = tuple(survivors[j] for j in t.denominator)
            pending.append(PfdTerm(t.numerator, mapped))
    terms = tuple(
        PfdTerm(c, denom) for denom, c in sorted(final.items()) if not c.is_zero()
    )
    degree = n - max((len(t.denominator) for t in terms), default=0)
    return PfdResult(degree, terms, "iterative", rf.mode, rf.variables, n, certified_maximal=False)


def _merge_term(acc: Dict[Tuple[int, ...], Polynomial], term: PfdTerm):
    prev = acc.get(term.denominator)
    acc[term.denominator] = term.numerator if prev is None else prev + term.numerator


# ---------------------------------------------------------------------------
# document formats
# ---------------------------------------------------------------------------


def render_pfd_document(result: PfdResult, forms: Optional[Sequence[Polynomial]] = None) -> str:
    """Structured text document; indices are 1-based in documents."""
    lines = [
        "# pfdkit pfd document",
        f"mode: {result.mode}",
        "vars: " + " ".join(result.variables),
        f"degree: {result.degree}",
        f"method: {result.method}",
        f"certified-maximal: {'yes' if result.certified_maximal else 'no'}",
        f"forms: {result.n}",
        f"terms: {len(result.terms)}",
    ]
    for term in result.terms:
        lines.append("term:")
        lines.append(
            "  denominator-indices: " + " ".join(str(i + 1) for i in term.denominator)
        )
        if forms is not None:
            rendered = " * ".join(f"({render_polynomial(forms[i])})" for i in term.denominator)
            lines.append("  denominator-forms: " + (rendered if rendered else "1"))
        lines.append("  numerator: " + render_polynomial(term.numerator))
    return "\n".join(lines) + "\n"


def pfd_document_json(result: PfdResult) -> str:
    payload = {
        "format": "pfdkit-pfd",
        "mode": result.mode,
        "vars": list(result.variables),
        "degree": result.degree,
        "method": result.method,
        "certified_maximal": result.certified_maximal,
        "forms": result.n,
        "terms": [
            {
                "denominator_indices": [i + 1 for i in term.denominator],
                "numerator": render_polynomial(term.numerator),
            }
            for term in result.terms
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_pfd_document(text: str) -> PfdResult:
    """Parse the text or JSON document shape back into a PfdResult."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        payload = json.loads(text)
        variables = tuple(payload["vars"])
        terms = tuple(
            PfdTerm(
                parse_polynomial(t["numerator"], variables),
                tuple(sorted(int(i) - 1 for i in t["denominator_indices"])),
            )
            for t in payload["terms"]
        )
        return PfdResult(
            int(payload["degree"]),
            terms,
            str(payload.get("method", "fixture")),
            str(payload["mode"]),
            variables,
            int(payload["forms"]),
            bool(payload.get("certified_maximal", False)),
        )

    mode = None
    variables: Optional[Tuple[str, ...]] = None
    degree = None
    method = "fixture"
    certified = False
    nforms = None
    terms: List[PfdTerm] = []
    current_indices: Optional[Tuple[int, ...]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        body = line.strip()
        if body == "term:":
            current_indices = None
            continue
        if ":" not in body:
            raise ParseError(f"unexpected line {body!r}", lineno, 1)
        key, rest = body.split(":", 1)
        key = key.strip()
        rest = rest.strip()
        if key == "mode":
            mode = rest
        elif key == "vars":
            variables = tuple(rest.split())
        elif key == "degree":
            degree = int(rest)
        elif key == "method":
            method = rest
        elif key == "certified-maximal":
            certified = rest == "yes"
        elif key == "forms":
            nforms = int(rest)
        elif key == "terms":
            continue
        elif key == "denominator-indices":
            current_indices = tuple(sorted(int(tok) - 1 for tok in rest.split()))
        elif key == "denominator-forms":
            continue
        elif key == "numerator":
            if variables is None or current_indices is None:
                raise ParseError("term numerator before vars/indices", lineno, 1)
            terms.append(PfdTerm(parse_polynomial(rest, variables), current_indices))
            current_indices = None
        else:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
    if mode is None or variables is None or degree is None or nforms is None:
        raise ParseError("document missing mode/vars/degree/forms", 1, 1)
    return PfdResult(degree, tuple(terms), method, mode, variables, nforms, certified)

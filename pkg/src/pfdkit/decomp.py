"""Combinatorial primary decomposition of d-fold product ideals.

Projective case: one component (I_S)^{d-n+|S|} per flat S of size at least
n-d+1.  Affine case: the same census on the homogenized arrangement with
flats containing the hyperplane at infinity discarded, then read back in the
affine ring.  The flats criterion for PFD existence falls out: the numerator
must vanish on each qualifying flat to order at least d-n+|S|.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ._threads import parallel_map
from .ideal import (
    GeneratorSpec,
    IdealWithBasis,
    dfold_generators,
    flat_vanishing_order,
    ideal_equal,
    intersect,
    power_ideal,
)
from .matroid import (
    AFFINE,
    PROJECTIVE,
    Arrangement,
    FlatSet,
    InputError,
    _Span,
    flats_min_size,
)
from .poly import Polynomial
from .ratio import ONE, ZERO


class ResourceGuard:
    """Caps for decomposition verification."""

    def __init__(self, max_components: int = 64, pair_cap: int = 200_000):
        self.max_components = max_components
        self.pair_cap = pair_cap


@dataclass(frozen=True)
class PrimaryComponent:
    """(I_S)^exponent attached to a flat of the arrangement."""

    flat: FlatSet
    exponent: int
    mode: str

    def forms(self) -> Tuple[Polynomial, ...]:
        return self.flat.forms()

    @property
    def indices(self) -> Tuple[int, ...]:
        return self.flat.indices


def _sorted_components(components: List[PrimaryComponent]) -> List[PrimaryComponent]:
    return sorted(components, key=lambda c: (-len(c.flat), c.flat.indices))


def primary_decomposition_projective(arrangement: Arrangement, d: int) -> List[PrimaryComponent]:
    """Components of I_{L,d} per the flats of the arrangement's matroid."""
    if arrangement.mode != PROJECTIVE:
        raise InputError("projective decomposition needs a projective arrangement")
    n = arrangement.size
    if not 1 <= d <= n:
        raise InputError(f"d = {d} out of range [1, {n}]")
    flats = flats_min_size(arrangement, n - d + 1)
    components = [
        PrimaryComponent(flat, d - n + len(flat), PROJECTIVE) for flat in flats
    ]
    return _sorted_components(components)


def _infinity_filter(homog: Arrangement, flat_indices: Tuple[int, ...], infinity_var: str) -> bool:
    """True when the flat avoids the hyperplane at infinity."""
    r = len(homog.variables)
    z_slot = homog.variables.index(infinity_var)
    unit = [ONE if k == z_slot else ZERO for k in range(r)]
    span = _Span()
    rows = homog.coefficient_rows()
    for i in flat_indices:
        span.add(rows[i])
    return not span.contains(unit)


def primary_decomposition_affine(arrangement: Arrangement, d: int) -> List[PrimaryComponent]:
    """Affine components: homogenize, enumerate, drop flats at infinity."""
    if arrangement.mode != AFFINE:
        raise InputError("affine decomposition needs an affine arrangement")
    n = arrangement.size
    if not 1 <= d <= n:
        raise InputError(f"d = {d} out of range [1, {n}]")
    homog, infinity_var = arrangement.homogenize()
    flats = flats_min_size(homog, n - d + 1)
    components = []
    for flat in flats:
        if not _infinity_filter(homog, flat.indices, infinity_var):
            continue
        components.append(
            PrimaryComponent(FlatSet(arrangement, flat.indices), d - n + len(flat.indices), AFFINE)
        )
    return _sorted_components(components)


def primary_decomposition(arrangement: Arrangement, d: int) -> List[PrimaryComponent]:
    if arrangement.mode == PROJECTIVE:
        return primary_decomposition_projective(arrangement, d)
    return primary_decomposition_affine(arrangement, d)


def vanishing_order(
    f: Polynomial, arrangement: Arrangement, flat: FlatSet, mode: Optional[str] = None
) -> int:
    """Exact vanishing order of f along the flat (max k with f in (I_S)^k)."""
    return flat_vanishing_order(f, arrangement, flat.indices, mode or arrangement.mode)


def qualifying_flats(arrangement: Arrangement, d: int) -> List[FlatSet]:
    """Flats that constrain degree-d PFDs (affine: those off infinity)."""
    n = arrangement.size
    if arrangement.mode == PROJECTIVE:
        return flats_min_size(arrangement, n - d + 1)
    homog, infinity_var = arrangement.homogenize()
    flats = flats_min_size(homog, n - d + 1)
    return [
        FlatSet(arrangement, flat.indices)
        for flat in flats
        if _infinity_filter(homog, flat.indices, infinity_var)
    ]


def _check_flats_preconditions(f: Polynomial, arrangement: Arrangement, d: int):
    if f.is_zero():
        raise InputError("numerator must be nonzero")
    if any(form.is_zero() for form in arrangement.forms):
        raise InputError("flats criterion needs nonzero forms")
    deg = f.total_degree()
    if deg < d:
        raise InputError(f"deg(f) = {deg} is below d = {d}")
    if arrangement.mode == PROJECTIVE and not f.is_homogeneous():
        raise InputError("projective criterion needs a homogeneous numerator")


def find_flat_violation(
    f: Polynomial, arrangement: Arrangement, d: int
) -> Optional[Tuple[FlatSet, int]]:
    """First qualifying flat (largest first) with a vanishing-order deficit.

    Membership in the d-fold ideal forces every order, so any violation is a
    sound non-membership witness regardless of deg(f).
    """
    n = arrangement.size
    flats = sorted(qualifying_flats(arrangement, d), key=lambda s: (-len(s), s.indices))
    orders = parallel_map(lambda s: vanishing_order(f, arrangement, s), flats)
    for flat, order in zip(flats, orders):
        required = d - n + len(flat)
        if order < required:
            return flat, required - order
    return None


def exists_pfd_via_flats(
    f: Polynomial, arrangement: Arrangement, d: int
) -> Tuple[bool, Optional[Tuple[FlatSet, int]]]:
    """Thm-style criterion: orders >= d-n+|S| on all qualifying flats.

    On failure the witness is the first violating flat (largest first) with
    its order deficit.
    """
    n = arrangement.size
    if not 1 <= d <= n:
        raise InputError(f"d = {d} out of range [1, {n}]")
    _check_flats_preconditions(f, arrangement, d)
    witness = find_flat_violation(f, arrangement, d)
    if witness is not None:
        return False, witness
    return True, None


def max_pfd_degree_via_flats(f: Polynomial, arrangement: Arrangement) -> int:
    """Largest d with a degree-d PFD, or 0 when even d=1 fails.

    One pass over flats: every flat S bounds d by order(S) + n - |S|, and
    membership is monotone in d, so the maximum is the minimum of the bounds
    capped by n and deg(f).
    """
    if not f.is_zero() and f.total_degree() < 1:
        return 0  # constants admit no degree bound deg(h) <= deg(f) - d
    _check_flats_preconditions(f, arrangement, 1)
    n = arrangement.size
    # Every nonempty flat constrains some d <= n, so sweep them all once.
    flats = [s for s in qualifying_flats(arrangement, n) if len(s) >= 1]
    bound = min(n, f.total_degree())
    flats = [s for s in flats if n - len(s) < bound]  # others cannot lower it
    orders = parallel_map(lambda s: vanishing_order(f, arrangement, s), flats)
    for flat, order in zip(flats, orders):
        bound = min(bound, order + n - len(flat))
        if bound < 1:
            return 0
    return max(bound, 0)


def component_ideal(component: PrimaryComponent, pair_cap: int = 200_000) -> IdealWithBasis:
    return power_ideal(
        component.flat.arrangement, component.indices, component.exponent, pair_cap=pair_cap
    )


def verify_decomposition(
    arrangement: Arrangement,
    d: int,
    components: Sequence[PrimaryComponent],
    guard: Optional[ResourceGuard] = None,
) -> bool:
    """Intersect the components and compare with I_{L,d} exactly."""
    guard = guard or ResourceGuard()
    components = list(components)
    if not components:
        raise InputError("nothing to verify: empty component list")
    if len(components) > guard.max_components:
        raise_from_guard(len(components), guard.max_components)
    ideals = parallel_map(lambda c: component_ideal(c, guard.pair_cap), components)
    meet = ideals[0]
    for other in ideals[1:]:
        meet = intersect(meet, other)
    target = IdealWithBasis(
        [g for _, g in dfold_generators(arrangement, GeneratorSpec(d))],
        pair_cap=guard.pair_cap,
    )
    return ideal_equal(meet, target)


def raise_from_guard(count: int, cap: int):
    from .ideal import ResourceGuardError

    raise ResourceGuardError(
        f"{count} components exceed the verification cap {cap}; raise --max-components "
        "or verify a pruned decomposition"
    )


def minimize_decomposition(
    arrangement: Arrangement,
    d: int,
    components: Sequence[PrimaryComponent],
    guard: Optional[ResourceGuard] = None,
) -> List[PrimaryComponent]:
    """Greedy pruning: drop a component when equality with I_{L,d} survives.

    Deterministic: candidates are tried largest flat first (the paper's own
    example drops the maximal-ideal component).
    """
    guard = guard or ResourceGuard()
    kept = _sorted_components(list(components))
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1 :]
        if trial and verify_decomposition(arrangement, d, trial, guard):
            kept = trial
        else:
            i += 1
    return kept

"""Command-line front end.

Subcommands: reduce, pfd, decompose, flats, braid, check, verify, bench.
Exit codes: 0 success, 1 mathematical negative (no PFD / check false /
invalid document), 2 input error, 3 resource-guard abort.

Identical inputs and flags produce byte-identical stdout; wall-clock timings
(bench) go to stderr so they never perturb golden files.
"""

import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path
from typing import List, Optional, Tuple

from . import decomp, fixtures
from .ideal import GeneratorSpec, ResourceGuardError, dfold_generators
from .matroid import (
    AFFINE,
    PROJECTIVE,
    Arrangement,
    InputError,
    Partition,
    braid_arrangement,
    flats_min_size,
    partition_flat_size,
    rank_of_subset,
)
from .parse import ParseError, parse_problem, render_polynomial, render_problem
from .pfd import (
    PfdOptions,
    RationalFunction,
    full_pfd,
    iterative_pfd,
    parse_pfd_document,
    pfd_document_json,
    reduced_exp,
    render_pfd_document,
    verify_pfd,
)
from .ratio import BACKEND

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_GUARD = 3


def _load_problem(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_problem(text)


def _function(problem) -> RationalFunction:
    return RationalFunction(problem.numerator, problem.denominators, problem.mode)


def _load_restriction(path: str, d: int) -> Tuple[Tuple[int, ...], ...]:
    subsets = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            subset = tuple(sorted(int(tok) - 1 for tok in line.split()))
        except ValueError:
            raise InputError(f"{path}:{lineno}: subsets are space-separated 1-based indices")
        if len(subset) != d:
            raise InputError(f"{path}:{lineno}: subset has {len(subset)} indices, expected d = {d}")
        subsets.append(subset)
    if not subsets:
        raise InputError(f"{path}: no generator subsets found")
    return tuple(sorted(set(subsets)))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_reduce(args) -> int:
    problem = _load_problem(args.file)
    rf = _function(problem)
    reduced, removed = reduced_exp(rf)
    if removed:
        print("removed-factors: " + " ".join(str(i + 1) for i in removed))
    else:
        print("removed-factors: none")
    print("numerator: " + render_polynomial(reduced.numerator))
    print("denominators: " + str(reduced.size))
    for i, form in enumerate(reduced.forms):
        print(f"  {render_polynomial(form)}")
    return EXIT_OK


def cmd_pfd(args) -> int:
    problem = _load_problem(args.file)
    rf = _function(problem)
    restriction = None
    if args.restrict_generators:
        if args.degree is None:
            raise InputError("--restrict-generators needs --degree")
        restriction = _load_restriction(args.restrict_generators, args.degree)
    options = PfdOptions(
        degree=args.degree,
        max_degree=args.max_degree,
        method=args.method,
        restriction=restriction,
        pair_cap=args.gb_pair_cap,
        generator_cap=args.gb_generator_cap,
    )
    if args.iterative:
        reduced, removed = reduced_exp(rf)
        if removed:
            print("# removed factors: " + " ".join(str(i + 1) for i in removed), file=sys.stderr)
        result = iterative_pfd(reduced, args.iterative, options) if reduced.size else None
        if result is not None and removed:
            surviving = [i for i in range(rf.size) if i not in set(removed)]
            from .pfd import PfdResult, PfdTerm

            result = PfdResult(
                result.degree + len(removed),
                tuple(
                    PfdTerm(t.numerator, tuple(surviving[j] for j in t.denominator))
                    for t in result.terms
                ),
                result.method,
                rf.mode,
                rf.variables,
                rf.size,
                certified_maximal=False,
            )
    else:
        result, removed = full_pfd(rf, options)
    if result is None:
        print("no PFD" + (f" of degree {args.degree}" if args.degree else " of any degree"))
        return EXIT_NEGATIVE
    if not verify_pfd(result, rf):
        raise RuntimeError("internal error: emitted PFD failed verification")
    document = render_pfd_document(result, rf.forms)
    sys.stdout.write(document)
    if args.json:
        Path(args.json).write_text(pfd_document_json(result), encoding="utf-8")
    return EXIT_OK


def cmd_decompose(args) -> int:
    problem = _load_problem(args.file)
    arrangement = problem.arrangement()
    components = decomp.primary_decomposition(arrangement, args.d)
    if not components:
        print("components: none (no qualifying flats; the ideal has no "
              "flat-supported constraints at this degree)")
        return EXIT_OK
    guard = decomp.ResourceGuard(max_components=args.max_components, pair_cap=args.gb_pair_cap)
    if args.minimal:
        components = decomp.minimize_decomposition(arrangement, args.d, components, guard)
    print(f"components: {len(components)}")
    for c in components:
        indices = " ".join(str(i + 1) for i in c.indices)
        forms = ", ".join(render_polynomial(f) for f in c.forms() if not f.is_zero())
        print(f"  flat [{indices}] exponent {c.exponent} forms <{forms}>")
    if args.verify:
        ok = decomp.verify_decomposition(arrangement, args.d, components, guard)
        print("verification: " + ("verified" if ok else "MISMATCH"))
        if not ok:
            return EXIT_NEGATIVE
    return EXIT_OK


def cmd_flats(args) -> int:
    problem = _load_problem(args.file)
    arrangement = problem.arrangement()
    if arrangement.mode == AFFINE:
        arrangement = arrangement.homogenize()[0]
    flats = flats_min_size(arrangement, args.min_size)
    by_size = Counter(len(f) for f in flats)
    representative = {}
    for f in flats:
        representative.setdefault(len(f), f.indices)
    print(f"flats: {len(flats)} (min size {args.min_size})")
    print("size,count,representative")
    rows = []
    for size in sorted(by_size):
        rep = " ".join(str(i + 1) for i in representative[size])
        rows.append(f"{size},{by_size[size]},{rep}")
        print(rows[-1])
    if args.csv:
        Path(args.csv).write_text(
            "size,count,representative\n" + "\n".join(rows) + "\n", encoding="utf-8"
        )
    if args.list:
        for f in flats:
            print("flat: " + " ".join(str(i + 1) for i in f.indices))
    return EXIT_OK


def cmd_braid(args) -> int:
    arrangement = braid_arrangement(args.r)
    n = arrangement.size
    print(f"braid arrangement: r = {args.r}, forms = {n}, rank = "
          f"{rank_of_subset(arrangement, range(n))}")
    for i, form in enumerate(arrangement.forms):
        print(f"  {i + 1}: {render_polynomial(form)}")
    if args.d is not None:
        components = decomp.primary_decomposition_projective(arrangement, args.d)
        census = Counter(c.exponent for c in components)
        print(f"components at d = {args.d}: {len(components)}")
        for exponent in sorted(census, reverse=True):
            print(f"  exponent {exponent}: {census[exponent]} flats")
    return EXIT_OK


def cmd_check(args) -> int:
    problem = _load_problem(args.file)
    rf = _function(problem)
    arrangement = rf.arrangement()
    d = args.degree
    if not 1 <= d <= rf.size:
        raise InputError(f"degree {d} out of range [1, {rf.size}]")
    deg_f = rf.numerator.total_degree()
    if args.method == "flats":
        witness = decomp.find_flat_violation(rf.numerator, arrangement, d)
        if witness is not None:
            flat, deficit = witness
            indices = " ".join(str(i + 1) for i in flat.indices)
            print(f"no: flat [{indices}] needs vanishing order {deficit} higher")
            return EXIT_NEGATIVE
        if deg_f < d:
            print(f"no: numerator degree {deg_f} is below d = {d}")
            return EXIT_NEGATIVE
        print("yes")
        return EXIT_OK
    if deg_f < d:
        print(f"no: numerator degree {deg_f} is below d = {d}")
        return EXIT_NEGATIVE
    if args.method == "gb":
        from .ideal import IdealWithBasis

        generators = dfold_generators(arrangement, GeneratorSpec(d))
        if len(generators) > args.gb_generator_cap:
            raise ResourceGuardError(
                f"{len(generators)} generators exceed the GB cap; use --method flats/linear "
                "or --restrict-generators via the pfd command"
            )
        ideal = IdealWithBasis([g for _, g in generators], pair_cap=args.gb_pair_cap)
        member = ideal.member(rf.numerator)
    else:
        from .ideal import express_bounded_degree

        deg_f = rf.numerator.total_degree()
        cert = (
            express_bounded_degree(rf.numerator, arrangement, GeneratorSpec(d), deg_f - d)
            if deg_f >= d
            else None
        )
        member = cert is not None
    print("yes" if member else "no")
    return EXIT_OK if member else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    document = parse_pfd_document(Path(args.pfd_document).read_text(encoding="utf-8"))
    problem = _load_problem(args.problem_file)
    rf = _function(problem)
    if document.n != rf.size or document.variables != rf.variables:
        raise InputError("document and problem disagree on variables or form count")
    ok = verify_pfd(document, rf)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _timed(label: str, fn):
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    print(f"[time] {label}: {elapsed:.2f}s", file=sys.stderr)
    return out


def _bench_wavefunction() -> List[str]:
    lines = ["suite: wavefunction"]
    rf = fixtures.wavefunction_function()
    arrangement = rf.arrangement()
    flats = _timed("wavefunction flats", lambda: flats_min_size(arrangement, 5))
    census = Counter(len(f) for f in flats)
    lines.append("flats: " + " ".join(f"{s}:{census[s]}" for s in sorted(census)))
    d_max = _timed(
        "wavefunction membership sweep",
        lambda: decomp.max_pfd_degree_via_flats(rf.numerator, arrangement),
    )
    lines.append(f"max-degree: {d_max}")
    result = _timed(
        "wavefunction extraction", lambda: full_pfd(rf, PfdOptions(method="linear"))[0]
    )
    lines.append(f"degree: {result.degree} terms: {len(result.terms)}")
    lines.append(f"verified: {verify_pfd(result, rf)}")
    return lines


def _bench_feynman12(seed: int, cases: int) -> List[str]:
    lines = ["suite: feynman12"]
    arrangement = fixtures.feynman12_arrangement()
    for case in range(cases):
        f = fixtures.synthetic_full_member(arrangement, 11, seed + case)
        rf = RationalFunction(f, arrangement.forms, AFFINE)
        result, removed = _timed(
            f"feynman12 full-combination case {case}",
            lambda: full_pfd(rf, PfdOptions(degree=11, method="linear")),
        )
        lines.append(
            f"case full-{case}: numerator-degree {f.total_degree()} removed {len(removed)} "
            f"degree {result.degree} terms {len(result.terms)} verified {verify_pfd(result, rf)}"
        )
    for case in range(cases):
        f, subsets = fixtures.synthetic_member(arrangement, 10, 8, 1, seed + 100 + case)
        rf = RationalFunction(f, arrangement.forms, AFFINE)
        result = _timed(
            f"feynman12 restricted case {case}",
            lambda: full_pfd(rf, PfdOptions(degree=10, restriction=subsets))[0],
        )
        lines.append(
            f"case restricted-{case}: numerator-degree {f.total_degree()} degree {result.degree} "
            f"terms {len(result.terms)} verified {verify_pfd(result, rf)}"
        )
    return lines


def _bench_feynman12_large(seed: int) -> List[str]:
    lines = ["suite: feynman12-large"]
    arrangement = fixtures.feynman12_arrangement()
    f, subsets = fixtures.synthetic_member(arrangement, 8, 4, 3, seed)
    rf = RationalFunction(f, arrangement.forms, AFFINE)
    result = _timed(
        "feynman12 d=8 degree-3 coefficients",
        lambda: full_pfd(rf, PfdOptions(degree=8, restriction=subsets))[0],
    )
    lines.append(
        f"case d8: numerator-degree {f.total_degree()} degree {result.degree} "
        f"terms {len(result.terms)} verified {verify_pfd(result, rf)}"
    )
    return lines


def _bench_feynman29(seed: int, cases: int) -> List[str]:
    lines = ["suite: feynman29"]
    arrangement = fixtures.feynman29_arrangement()
    for case in range(cases):
        f, subsets = fixtures.synthetic_member(arrangement, 17, 6, 0, seed + case)
        rf = RationalFunction(f, arrangement.forms, AFFINE)
        result = _timed(
            f"feynman29 restricted case {case}",
            lambda: full_pfd(rf, PfdOptions(degree=17, restriction=subsets))[0],
        )
        lines.append(
            f"case restricted-{case}: numerator-degree {f.total_degree()} degree {result.degree} "
            f"terms {len(result.terms)} verified {verify_pfd(result, rf)}"
        )
    return lines


def cmd_bench(args) -> int:
    print(f"# rational backend: {BACKEND}", file=sys.stderr)
    suites = {
        "wavefunction": lambda: _bench_wavefunction(),
        "feynman12": lambda: _bench_feynman12(args.seed, args.cases),
        "feynman12-large": lambda: _bench_feynman12_large(args.seed),
        "feynman29": lambda: _bench_feynman29(args.seed, args.cases),
    }
    if args.suite == "all":
        chosen = ["wavefunction", "feynman12", "feynman29"]
    elif args.suite in suites:
        chosen = [args.suite]
    else:
        raise InputError(
            f"unknown suite {args.suite!r}; pick from {sorted(suites) + ['all']}"
        )
    for name in chosen:
        for line in suites[name]():
            print(line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfdkit",
        description="Exact multivariate partial fraction decompositions on hyperplane arrangements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_caps(p):
        p.add_argument("--gb-pair-cap", type=int, default=200_000,
                       help="abort Gröbner runs after this many S-pairs")
        p.add_argument("--gb-generator-cap", type=int, default=512,
                       help="refuse Gröbner bases over more generators than this")

    p = sub.add_parser("reduce", help="strip spurious poles from a problem file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("pfd", help="compute a maximal-degree PFD")
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=None, help="attempt exactly this degree")
    p.add_argument("--max-degree", type=int, default=None, help="cap the degree search")
    p.add_argument("--method", choices=["auto", "gb", "linear"], default="auto")
    p.add_argument("--restrict-generators", default=None,
                   help="file of 1-based index subsets, one per line (needs --degree)")
    p.add_argument("--iterative", type=int, default=None, metavar="STEP",
                   help="iterative refinement with the given step degree")
    p.add_argument("--json", default=None, help="also write the JSON document here")
    add_caps(p)
    p.set_defaults(fn=cmd_pfd)

    p = sub.add_parser("decompose", help="primary decomposition of the d-fold product ideal")
    p.add_argument("file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--minimal", action="store_true", help="prune redundant components")
    p.add_argument("--verify", action="store_true", help="verify by exact ideal intersection")
    p.add_argument("--max-components", type=int, default=64)
    add_caps(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("flats", help="flat census of the arrangement's matroid")
    p.add_argument("file")
    p.add_argument("--min-size", type=int, default=0)
    p.add_argument("--csv", default=None, help="write the census as CSV here")
    p.add_argument("--list", action="store_true", help="also list every flat")
    p.set_defaults(fn=cmd_flats)

    p = sub.add_parser("braid", help="braid arrangement and its decomposition census")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.set_defaults(fn=cmd_braid)

    p = sub.add_parser("check", help="does a degree-d PFD exist?")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--method", choices=["flats", "gb", "linear"], default="flats")
    add_caps(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("verify", help="verify a PFD document against a problem file")
    p.add_argument("pfd_document")
    p.add_argument("problem_file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="benchmark suites (timings on stderr)")
    p.add_argument("suite", help="wavefunction | feynman12 | feynman12-large | feynman29 | all")
    p.add_argument("--seed", type=int, default=20240101)
    p.add_argument("--cases", type=int, default=1)
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, InputError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())

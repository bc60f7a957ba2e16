"""Exhaustive verification suites over small universes.

Each suite sweeps a finite search space and cross-checks two independent
routes to the same fact (a structural condition against a relation
analysis, a closure formula against brute enumeration, a constructed
universal arrow against the morphism-level definition).  Reports are
deterministic for fixed parameters; wall time is carried separately so the
serialized report stays byte-stable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Callable

from .categories import (
    COREFLECTION_ARROWS,
    REFLECTION_ARROWS,
    Cone,
    amnestic_representative,
    coreflect,
    fiber_compare,
    initial_structure,
    reflect,
    verify_coreflection,
    verify_initial,
    verify_reflection,
)
from .coincidence import (
    all_functions,
    analyze_relation,
    coincidence_set,
    filter_witness_triple,
    filterbase_witness_triple,
    weakly_related,
)
from .documents import function_to_doc, space_to_doc
from .families import (
    LimitError,
    SetFamily,
    Universe,
    classify_family,
    enumerate_families,
    finer,
    generated_filter,
    has_fip,
    intersection_closure,
    is_maximal_filter,
    is_ultrafilter,
    up_closure,
)
from .spaces import (
    CenteredSpace,
    EventuallyPeriodicSequence,
    SpaceClass,
    centered_at_functions,
    converges,
    discrete,
    discrete_pretopology,
    empty_structure,
    enumerate_spaces,
    germ_class,
    germ_partition,
    validate_space,
)

Failure = dict
SuiteBody = Callable[[int, int, "int | None"], "tuple[int, list[Failure]]"]


@dataclass
class SuiteReport:
    """Outcome of one suite run."""

    suite: str
    cases: int
    failures: list[Failure]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {"suite": self.suite, "cases": self.cases, "failures": self.failures}
        if include_timing:
            out["seconds"] = self.seconds
        return out


def _family_doc(family: SetFamily) -> list[list[int]]:
    return [list(points) for points in family.member_points()]


def _suite_filter_biconditional(points: int, colors: int, enum_limit: int | None):
    universe = Universe(points)
    codomain = Universe(colors)
    cases = 0
    failures: list[Failure] = []
    for family in enumerate_families(universe, max_points=enum_limit):
        cases += 1
        is_filter = classify_family(family).is_filter
        report = analyze_relation(family, universe, codomain, "exact")
        if is_filter != report.is_nontrivial_equivalence:
            failures.append(
                {
                    "points": points,
                    "family": _family_doc(family),
                    "is_filter": is_filter,
                    "nontrivial_equivalence": report.is_nontrivial_equivalence,
                }
            )
    return cases, failures


def _suite_filterbase_biconditional(points: int, colors: int, enum_limit: int | None):
    universe = Universe(points)
    codomain = Universe(colors)
    cases = 0
    failures: list[Failure] = []
    for family in enumerate_families(universe, max_points=enum_limit):
        cases += 1
        is_filterbase = classify_family(family).is_filterbase
        report = analyze_relation(family, universe, codomain, "weak")
        if is_filterbase != report.is_nontrivial_equivalence:
            failures.append(
                {
                    "points": points,
                    "family": _family_doc(family),
                    "is_filterbase": is_filterbase,
                    "nontrivial_equivalence": report.is_nontrivial_equivalence,
                }
            )
    return cases, failures


def _suite_sharpness(points: int, colors: int, enum_limit: int | None):
    # The fixed four-point instance where two colors already give a
    # nontrivial equivalence without a filterbase behind it.  The whole
    # universe must itself be a member: reflexivity of the exact relation
    # holds iff the full set belongs to the family, so the three pairs
    # alone do not suffice.
    universe = Universe(4)
    codomain = Universe(2)
    pairs_only = SetFamily.of(universe, [0b0011, 0b0101, 0b1001])
    family = SetFamily.of(universe, [0b0011, 0b0101, 0b1001, 0b1111])
    kind = classify_family(family)
    report = analyze_relation(family, universe, codomain, "exact")
    bare = analyze_relation(pairs_only, universe, codomain, "exact")
    failures: list[Failure] = []
    checks = (
        ("family must not be a filterbase", not kind.is_filterbase),
        ("family must not be a filter", not kind.is_filter),
        ("exact relation must be a nontrivial equivalence", report.is_nontrivial_equivalence),
        ("without the whole set the relation must fail reflexivity", not bare.reflexive),
    )
    for label, ok in checks:
        if not ok:
            failures.append({"family": _family_doc(family), "check": label})
    return len(checks), failures


def _suite_witnesses(points: int, colors: int, enum_limit: int | None):
    if points > 8:
        raise LimitError(f"witness sweeps above 8 points are refused, got {points}")
    if colors < 3:
        raise ValueError("the three-value witness construction needs at least 3 colors")
    domain = Universe(points)
    wide = Universe(colors)
    narrow = Universe(2)
    cases = 0
    failures: list[Failure] = []
    for a in domain.subsets():
        for b in domain.subsets():
            for y1, y2, y3 in permutations(range(wide.size), 3):
                f, g, h = filter_witness_triple(a, b, y1, y2, y3, domain, wide)
                cases += 1
                if not (
                    coincidence_set(f, h) == a
                    and coincidence_set(h, g) == b
                    and coincidence_set(f, g) == a & b
                ):
                    failures.append({"construction": "three-value", "a": a, "b": b, "colors": [y1, y2, y3]})
            for y1, y2 in permutations(range(narrow.size), 2):
                f, g, h = filterbase_witness_triple(a, b, y1, y2, domain, narrow)
                cases += 1
                if not (
                    coincidence_set(g, h) == a
                    and b & ~coincidence_set(f, g) == 0
                    and coincidence_set(f, h) == a & b
                ):
                    failures.append({"construction": "two-value", "a": a, "b": b, "colors": [y1, y2]})
    return cases, failures


def _suite_closure_laws(points: int, colors: int, enum_limit: int | None):
    cases = 0
    failures: list[Failure] = []
    for n in range(1, points + 1):
        universe = Universe(n)
        family_space = (1 << (1 << n)) - 1
        for family in enumerate_families(universe, max_points=enum_limit):
            if not has_fip(family):
                continue
            cases += 1
            up = up_closure(family)
            cap = intersection_closure(family)
            gen = generated_filter(family)
            kind = classify_family(family)
            problems = []
            if family.bits & ~up.bits:
                problems.append("family not contained in its up-closure")
            if family.bits & ~cap.bits:
                problems.append("family not contained in its intersection closure")
            if up_closure(up) != up:
                problems.append("up-closure is not idempotent")
            if intersection_closure(cap) != cap:
                problems.append("intersection closure is not idempotent")
            if up_closure(cap) != intersection_closure(up):
                problems.append("the two closures do not commute")
            if kind.is_raster != (family == up):
                problems.append("raster fixed-point characterization failed")
            if kind.is_filterbase != finer(family, cap):
                problems.append("filterbase refinement characterization failed")
            if kind.is_filter != (family == gen):
                problems.append("filter fixed-point characterization failed")
            if not classify_family(up).is_raster:
                problems.append("up-closure is not a raster")
            if not classify_family(cap).is_filterbase:
                problems.append("intersection closure is not a filterbase")
            if not classify_family(gen).is_filter:
                problems.append("generated family is not a filter")
            # least-ness against every family containing this one
            q = family.bits
            while True:
                other = SetFamily(universe, q)
                other_kind = classify_family(other)
                if other_kind.is_raster and up.bits & ~q:
                    problems.append(f"raster {_family_doc(other)} undercuts the up-closure")
                if other_kind.is_filterbase and cap.bits & ~q:
                    problems.append(f"filterbase {_family_doc(other)} undercuts the intersection closure")
                if other_kind.is_filter and gen.bits & ~q:
                    problems.append(f"filter {_family_doc(other)} undercuts the generated filter")
                if q == family_space:
                    break
                q = (q + 1) | family.bits
            if kind.is_raster and cap != gen:
                problems.append("intersection closure of a raster is not the least filter")
            if kind.is_filterbase and up != gen:
                problems.append("up-closure of a filterbase is not the least filter")
            if problems:
                failures.append({"points": n, "family": _family_doc(family), "problems": problems})
    return cases, failures


def _suite_ultrafilter(points: int, colors: int, enum_limit: int | None):
    cases = 0
    failures: list[Failure] = []
    for n in range(1, points + 1):
        universe = Universe(n)
        found = 0
        for family in enumerate_families(universe, max_points=enum_limit):
            cases += 1
            three = is_ultrafilter(family)
            standard = is_maximal_filter(family)
            if three != standard:
                failures.append(
                    {
                        "points": n,
                        "family": _family_doc(family),
                        "partition_test": three,
                        "maximality_test": standard,
                    }
                )
            if three:
                found += 1
        # on a finite set the ultrafilters are exactly the point filters
        if found != n:
            failures.append({"points": n, "ultrafilters_found": found, "expected": n})
    return cases, failures


def _class_spaces(cls: SpaceClass, max_size: int, require_nonempty: bool = False):
    out = []
    for n in range(1, max_size + 1):
        out.extend(enumerate_spaces(Universe(n), cls, require_nonempty=require_nonempty))
    return out


def _suite_reflections(points: int, colors: int, enum_limit: int | None):
    if points > 2:
        raise LimitError(f"the reflection suite is capped at 2 points, got {points}")
    cases = 0
    failures: list[Failure] = []
    probes = {cls: _class_spaces(cls, points) for cls in SpaceClass}

    for source_cls, target_cls in REFLECTION_ARROWS:
        nonempty = source_cls is SpaceClass.CENTERED
        for space in _class_spaces(source_cls, points, require_nonempty=nonempty):
            cases += 1
            reflected = reflect(space, source_cls, target_cls)
            if not verify_reflection(space, reflected, target_cls, probes[target_cls]):
                failures.append(
                    {
                        "arrow": f"reflection {source_cls.value}->{target_cls.value}",
                        "space": space_to_doc(space),
                    }
                )
    # spaces with a probe-free point must be refused by the raster reflection
    for n in range(1, points + 1):
        cases += 1
        try:
            reflect(empty_structure(Universe(n)), SpaceClass.CENTERED, SpaceClass.RASTER)
        except ValueError:
            pass
        else:
            failures.append({"arrow": "reflection Centered->Raster", "points": n, "check": "refusal expected"})

    for source_cls, target_cls in COREFLECTION_ARROWS:
        for space in _class_spaces(source_cls, points):
            cases += 1
            coreflected = coreflect(space, source_cls, target_cls)
            if not verify_coreflection(space, coreflected, target_cls, probes[target_cls]):
                failures.append(
                    {
                        "arrow": f"coreflection {source_cls.value}->{target_cls.value}",
                        "space": space_to_doc(space),
                    }
                )
    return cases, failures


def _finest_in_category(universe: Universe, category: SpaceClass) -> CenteredSpace:
    if category in (SpaceClass.CENTERED, SpaceClass.FILTERBASE):
        return discrete(universe)
    return discrete_pretopology(universe)


def _suite_initial(points: int, colors: int, enum_limit: int | None):
    if points > 2:
        raise LimitError(f"the initial-structure suite is capped at 2 points, got {points}")
    cases = 0
    failures: list[Failure] = []
    universes = [Universe(n) for n in range(1, points + 1)]
    for category in SpaceClass:
        probes = _class_spaces(category, points)
        leg_spaces = _class_spaces(category, points)
        for apex in universes:
            options = [
                (space, fn)
                for space in leg_spaces
                for fn in all_functions(apex, space.universe)
            ]
            leg_choices = [()]
            leg_choices.extend((o,) for o in options)
            leg_choices.extend(combinations_with_replacement(options, 2))
            for legs in leg_choices:
                cone = Cone(apex, tuple(legs))
                candidate = initial_structure(cone, category)
                cases += 1
                if not verify_initial(cone, candidate, category, probes):
                    failures.append(
                        {
                            "category": category.value,
                            "apex": apex.size,
                            "legs": [
                                {"space": space_to_doc(s), "map": function_to_doc(f)}
                                for s, f in legs
                            ],
                        }
                    )
                mutant = _finest_in_category(apex, category)
                comparison = fiber_compare(mutant, candidate)
                if comparison.leq and not comparison.geq:
                    cases += 1
                    if verify_initial(cone, mutant, category, probes):
                        failures.append(
                            {
                                "category": category.value,
                                "apex": apex.size,
                                "check": "strictly finer mutant was accepted",
                            }
                        )
    return cases, failures


def _suite_amnesticity(points: int, colors: int, enum_limit: int | None):
    if points > 3:
        raise LimitError(f"the amnesticity suite is capped at 3 points, got {points}")
    cases = 0
    failures: list[Failure] = []
    # mutual refinement forces equality for rasters and for filters
    for n in range(1, points + 1):
        universe = Universe(n)
        rasters = [
            f
            for f in enumerate_families(universe, max_points=enum_limit)
            if classify_family(f).is_raster
        ]
        filters = [f for f in rasters if classify_family(f).is_filter]
        for label, group in (("raster", rasters), ("filter", filters)):
            for p, q in combinations(group, 2):
                cases += 1
                if finer(p, q) and finer(q, p):
                    failures.append(
                        {
                            "points": n,
                            "kind": label,
                            "first": _family_doc(p),
                            "second": _family_doc(q),
                            "check": "mutually comparable but unequal",
                        }
                    )
    # the loose fibers really do carry distinct mutually comparable objects
    fiber = Universe(2)
    for cls in (SpaceClass.FILTERBASE, SpaceClass.CENTERED):
        spaces = list(enumerate_spaces(fiber, cls))
        cases += 1
        if not any(
            fiber_compare(s, t).equivalent for s, t in combinations(spaces, 2)
        ):
            failures.append({"class": cls.value, "check": "expected a mutually comparable unequal pair"})
    # the representative is idempotent and constant on comparability classes
    for source_cls, target_cls in (
        (SpaceClass.FILTERBASE, SpaceClass.PRETOP),
        (SpaceClass.CENTERED, SpaceClass.RASTER),
    ):
        for n in range(1, min(points, 2) + 1):
            spaces = list(
                enumerate_spaces(Universe(n), source_cls, require_nonempty=True)
            )
            reps = {}
            for s in spaces:
                rep = amnestic_representative(s, target_cls)
                reps[s] = rep
                cases += 1
                if amnestic_representative(rep, target_cls) != rep:
                    failures.append({"class": target_cls.value, "check": "representative not idempotent"})
            for s, t in combinations(spaces, 2):
                cases += 1
                if fiber_compare(s, t).equivalent and reps[s] != reps[t]:
                    failures.append(
                        {
                            "class": target_cls.value,
                            "check": "equivalent spaces got different representatives",
                            "first": space_to_doc(s),
                            "second": space_to_doc(t),
                        }
                    )
    return cases, failures


def _all_structures(universe: Universe):
    """Every per-point assignment of families, centered or not."""
    all_families = [SetFamily(universe, bits) for bits in range(1 << (1 << universe.size))]
    for nu in product(all_families, repeat=universe.size):
        yield CenteredSpace(universe, nu)


def _suite_convergence_germs(points: int, colors: int, enum_limit: int | None):
    if points > 2:
        raise LimitError(f"the convergence suite is capped at 2 points, got {points}")
    cases = 0
    failures: list[Failure] = []
    # centering is exactly what makes every constant sequence converge
    for n in range(1, points + 1):
        universe = Universe(n)
        for space in _all_structures(universe):
            cases += 1
            valid = validate_space(space)
            constants_converge = all(
                converges(space, EventuallyPeriodicSequence((), (x,)), x)
                for x in universe.points()
            )
            if valid != constants_converge:
                failures.append({"points": n, "space": space_to_doc(space)})

    # germ classes partition the point-centered functions on a filterbase space
    universe = Universe(3)
    space = CenteredSpace(
        universe,
        (
            SetFamily.of(universe, [0b011]),
            SetFamily.of(universe, [0b010]),
            SetFamily.of(universe, [0b100]),
        ),
    )
    target = Universe(2)
    ambient = centered_at_functions(space, 0, discrete(target))
    parts = germ_partition(space, 0, target)
    cases += 1
    flattened = [f for part in parts for f in part]
    partition_ok = sorted(f.values for f in flattened) == sorted(f.values for f in ambient) and len(
        flattened
    ) == len(set(f.values for f in flattened))
    for part in parts:
        for f, g in combinations(part, 2):
            partition_ok = partition_ok and weakly_related(space.nu[0], f, g)
    for first, second in combinations(parts, 2):
        for f in first:
            for g in second:
                partition_ok = partition_ok and not weakly_related(space.nu[0], f, g)
    if not partition_ok:
        failures.append({"check": "germ classes do not partition the centered functions"})
    for f in ambient:
        cases += 1
        cls = germ_class(space, 0, f, target)
        containing = next(part for part in parts if f in part)
        if f not in cls or set(cls) != set(containing):
            failures.append({"check": "germ class mismatch", "function": function_to_doc(f)})

    # a point without a filterbase must be refused
    bad = CenteredSpace(
        universe,
        (
            SetFamily.of(universe, [0b011, 0b101]),
            SetFamily.of(universe, [0b010]),
            SetFamily.of(universe, [0b100]),
        ),
    )
    cases += 1
    try:
        germ_class(bad, 0, ambient[0], target)
    except ValueError:
        pass
    else:
        failures.append({"check": "germ request on a non-filterbase point was not refused"})
    return cases, failures


@dataclass(frozen=True)
class SuiteSpec:
    run: SuiteBody
    points: int
    colors: int
    summary: str


SUITES: dict[str, SuiteSpec] = {
    "filter-biconditional": SuiteSpec(
        _suite_filter_biconditional,
        3,
        3,
        "exact relation is a nontrivial equivalence exactly for filters (runs at |X| = max points)",
    ),
    "filterbase-biconditional": SuiteSpec(
        _suite_filterbase_biconditional,
        3,
        2,
        "weak relation is a nontrivial equivalence exactly for filterbases (runs at |X| = max points)",
    ),
    "sharpness-card3": SuiteSpec(
        _suite_sharpness,
        4,
        2,
        "fixed four-point family: nontrivial equivalence with two colors, yet not a filterbase",
    ),
    "witness-identities": SuiteSpec(
        _suite_witnesses,
        4,
        3,
        "both witness constructions hit their coincidence-set equations for all subset pairs",
    ),
    "closure-laws": SuiteSpec(
        _suite_closure_laws,
        3,
        2,
        "closure formulas, fixed-point characterizations and least-ness, sizes 1..max points",
    ),
    "ultrafilter-partition": SuiteSpec(
        _suite_ultrafilter,
        4,
        2,
        "three-piece partition test agrees with filter maximality, sizes 1..max points",
    ),
    "reflections": SuiteSpec(
        _suite_reflections,
        2,
        2,
        "reflections and coreflections satisfy their universal properties on all small spaces",
    ),
    "initial-structures": SuiteSpec(
        _suite_initial,
        2,
        2,
        "initial structures verify universally for every small cone; finer mutants fail",
    ),
    "amnesticity": SuiteSpec(
        _suite_amnesticity,
        3,
        2,
        "mutual comparability is equality for rasters and filters, and is not in the loose fibers",
    ),
    "convergence-germs": SuiteSpec(
        _suite_convergence_germs,
        2,
        2,
        "constant sequences converge exactly on centered structures; germ classes partition",
    ),
}


def run_suite(
    name: str,
    max_points: int | None = None,
    max_colors: int | None = None,
    *,
    enum_limit: int | None = None,
) -> SuiteReport:
    """Run one registered suite and wrap the outcome in a report."""
    spec = SUITES.get(name)
    if spec is None:
        known = ", ".join(sorted(SUITES))
        raise ValueError(f"unknown suite {name!r}; available: {known}")
    points = spec.points if max_points is None else max_points
    colors = spec.colors if max_colors is None else max_colors
    start = time.perf_counter()
    cases, failures = spec.run(points, colors, enum_limit)
    return SuiteReport(name, cases, failures, time.perf_counter() - start)

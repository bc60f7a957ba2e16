"""Initial structures, reflections, coreflections, and the fiber preorder.

The five structure classes form concrete categories over finite sets.  All
of them admit initial structures (preimage families closed per class), and
the embeddings between them are reflective or coreflective along specific
arrows, always carried by the identity function.  The verifiers here check
those universal properties by exhausting small probe spaces and every
function between the universes involved; they are deliberately independent
of the closure formulas they audit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coincidence import FiniteFunction, all_functions
from .families import (
    LimitError,
    SetFamily,
    Universe,
    intersection_closure,
    up_closure,
)
from .spaces import (
    CenteredSpace,
    SpaceClass,
    is_centered,
    space_in_class,
    topological_regeneration,
)

REFLECTION_ARROWS = (
    (SpaceClass.PRETOP, SpaceClass.TOP),
    (SpaceClass.FILTERBASE, SpaceClass.PRETOP),
    (SpaceClass.CENTERED, SpaceClass.RASTER),
)

COREFLECTION_ARROWS = (
    (SpaceClass.CENTERED, SpaceClass.FILTERBASE),
    (SpaceClass.RASTER, SpaceClass.PRETOP),
    (SpaceClass.FILTERBASE, SpaceClass.PRETOP),
    (SpaceClass.CENTERED, SpaceClass.RASTER),
)

MAX_PROBE_POINTS = 3


@dataclass(frozen=True)
class Cone:
    """An apex universe with maps into structured spaces."""

    apex: Universe
    legs: tuple[tuple[CenteredSpace, FiniteFunction], ...]

    def __post_init__(self) -> None:
        for space, leg in self.legs:
            if leg.domain != self.apex:
                raise ValueError("every leg must start at the apex universe")
            if leg.codomain != space.universe:
                raise ValueError("every leg must land in its own space's universe")


def _indiscrete_families(universe: Universe) -> tuple[SetFamily, ...]:
    whole = SetFamily.of(universe, [universe.full])
    return (whole,) * universe.size


def initial_structure(cone: Cone, category: SpaceClass) -> CenteredSpace:
    """Coarsest structure on the apex making every leg a morphism.

    Per point, the preimages of the legs' probes are collected and then
    closed as the category requires: nothing for Centered, intersections
    for Filterbase, supersets for Raster, both for PreTop and Top.  An
    empty cone yields the coarsest object of the fiber, which is the empty
    structure in Centered and the indiscrete one elsewhere (the closure of
    an empty preimage family would be empty, which those classes do not
    admit).
    """
    for space, _ in cone.legs:
        if not space_in_class(space, category):
            raise ValueError(f"a leg space is not in the requested category {category.value}")
    universe = cone.apex
    if not cone.legs:
        if category is SpaceClass.CENTERED:
            return CenteredSpace(universe, (SetFamily(universe, 0),) * universe.size)
        return CenteredSpace(universe, _indiscrete_families(universe))
    nu = []
    for x in universe.points():
        raw = SetFamily.of(
            universe,
            (
                leg.preimage(n)
                for space, leg in cone.legs
                for n in space.nu[leg.values[x]]
            ),
        )
        if category is SpaceClass.CENTERED:
            nu.append(raw)
        elif category is SpaceClass.FILTERBASE:
            nu.append(intersection_closure(raw))
        elif category is SpaceClass.RASTER:
            nu.append(up_closure(raw))
        else:
            nu.append(up_closure(intersection_closure(raw)))
    return CenteredSpace(universe, tuple(nu))


def verify_initial(
    cone: Cone,
    candidate: CenteredSpace,
    category: SpaceClass,
    probe_spaces: tuple[CenteredSpace, ...] | list[CenteredSpace],
) -> bool:
    """Universal-property audit of a candidate initial structure.

    Checks that every leg is a morphism from the candidate and that, for
    every probe space and every function from it into the apex, being a
    morphism into the candidate is the same as every composite with a leg
    being one.  Exhausts all functions, so probe universes are capped.
    """
    if candidate.universe != cone.apex:
        raise ValueError("candidate lives on a different universe than the cone's apex")
    for probe in probe_spaces:
        if probe.universe.size > MAX_PROBE_POINTS:
            raise LimitError(
                f"probe universes above {MAX_PROBE_POINTS} points are refused"
            )
    for space, leg in cone.legs:
        if not is_centered(leg, candidate, space):
            return False
    for probe in probe_spaces:
        for g in all_functions(probe.universe, cone.apex):
            into = is_centered(g, probe, candidate)
            through = all(
                is_centered(leg.compose(g), probe, space) for space, leg in cone.legs
            )
            if into != through:
                return False
    return True


def reflect(space: CenteredSpace, source: SpaceClass, target: SpaceClass) -> CenteredSpace:
    """Reflection along a supported embedding, carried by the identity.

    Supported arrows: PreTop to Top (open-set extraction followed by
    neighborhood regeneration), Filterbase to PreTop and Centered to Raster
    (pointwise up-closure).  A centered space with an empty probe family
    has no raster reflection at all, because the identity cannot be a
    morphism from it into any structure with probes, so it is refused.
    """
    if (source, target) not in REFLECTION_ARROWS:
        supported = ", ".join(f"{a.value}->{b.value}" for a, b in REFLECTION_ARROWS)
        raise ValueError(f"unsupported reflection {source.value}->{target.value}; supported: {supported}")
    if not space_in_class(space, source):
        raise ValueError(f"space is not in the source category {source.value}")
    if (source, target) == (SpaceClass.PRETOP, SpaceClass.TOP):
        return topological_regeneration(space)
    if any(family.is_empty for family in space.nu):
        raise ValueError(
            "a point with no probes admits no raster reflection: the identity is "
            "not a morphism into any structure with probes there"
        )
    return CenteredSpace(space.universe, tuple(up_closure(f) for f in space.nu))


def coreflect(space: CenteredSpace, source: SpaceClass, target: SpaceClass) -> CenteredSpace:
    """Coreflection along a supported embedding, carried by the identity.

    Supported arrows: Centered to Filterbase and Raster to PreTop
    (pointwise intersection closure), Filterbase to PreTop and Centered to
    Raster (pointwise up-closure).  Points with no probes receive the
    indiscrete family, the coarsest admissible one; the universal property
    still holds because probe families in the subcategory are nonempty.
    """
    if (source, target) not in COREFLECTION_ARROWS:
        supported = ", ".join(f"{a.value}->{b.value}" for a, b in COREFLECTION_ARROWS)
        raise ValueError(f"unsupported coreflection {source.value}->{target.value}; supported: {supported}")
    if not space_in_class(space, source):
        raise ValueError(f"space is not in the source category {source.value}")
    if (source, target) in ((SpaceClass.CENTERED, SpaceClass.FILTERBASE), (SpaceClass.RASTER, SpaceClass.PRETOP)):
        close = intersection_closure
    else:
        close = up_closure
    whole = SetFamily.of(space.universe, [space.universe.full])
    return CenteredSpace(
        space.universe,
        tuple(whole if f.is_empty else close(f) for f in space.nu),
    )


def find_nonfactoring_morphism(
    space: CenteredSpace,
    reflected: CenteredSpace,
    probes: tuple[CenteredSpace, ...] | list[CenteredSpace],
) -> tuple[CenteredSpace, FiniteFunction] | None:
    """A morphism out of the space that fails to factor through the reflection."""
    for probe in probes:
        for f in all_functions(space.universe, probe.universe):
            if is_centered(f, space, probe) and not is_centered(f, reflected, probe):
                return (probe, f)
    return None


def find_nonlifting_morphism(
    space: CenteredSpace,
    coreflected: CenteredSpace,
    probes: tuple[CenteredSpace, ...] | list[CenteredSpace],
) -> tuple[CenteredSpace, FiniteFunction] | None:
    """A morphism into the space that fails to lift through the coreflection."""
    for probe in probes:
        for f in all_functions(probe.universe, space.universe):
            if is_centered(f, probe, space) and not is_centered(f, probe, coreflected):
                return (probe, f)
    return None


def verify_reflection(
    space: CenteredSpace,
    reflected: CenteredSpace,
    target: SpaceClass,
    probes: tuple[CenteredSpace, ...] | list[CenteredSpace],
) -> bool:
    """Reflection audit: subcategory membership, unit, and factorization.

    Factorization through an identity-carried unit is function equality,
    so the check is that every morphism from the space into a probe of the
    subcategory is already a morphism from the reflected space.
    """
    if not space_in_class(reflected, target):
        return False
    if reflected.universe != space.universe:
        return False
    ident = FiniteFunction.identity(space.universe)
    if not is_centered(ident, space, reflected):
        return False
    return find_nonfactoring_morphism(space, reflected, probes) is None


def verify_coreflection(
    space: CenteredSpace,
    coreflected: CenteredSpace,
    target: SpaceClass,
    probes: tuple[CenteredSpace, ...] | list[CenteredSpace],
) -> bool:
    """Dual audit: membership, counit, and lifting of incoming morphisms."""
    if not space_in_class(coreflected, target):
        return False
    if coreflected.universe != space.universe:
        return False
    ident = FiniteFunction.identity(space.universe)
    if not is_centered(ident, coreflected, space):
        return False
    return find_nonlifting_morphism(space, coreflected, probes) is None


@dataclass(frozen=True)
class FiberComparison:
    """Identity-carried comparability of two structures on one universe."""

    leq: bool
    geq: bool

    @property
    def equivalent(self) -> bool:
        return self.leq and self.geq


def fiber_compare(first: CenteredSpace, second: CenteredSpace) -> FiberComparison:
    """Compare two structures over the same universe in the fiber preorder."""
    if first.universe != second.universe:
        raise ValueError("fiber comparison needs a shared universe")
    ident = FiniteFunction.identity(first.universe)
    return FiberComparison(
        leq=is_centered(ident, first, second),
        geq=is_centered(ident, second, first),
    )


def amnestic_representative(space: CenteredSpace, target: SpaceClass) -> CenteredSpace:
    """Canonical member of the space's mutual-comparability class.

    Pointwise up-closure maps Filterbase onto PreTop and Centered onto
    Raster; mutually comparable structures have the same up-closure, and
    within the target classes mutual comparability already forces equality,
    so the result is the unique representative.  A space with an empty
    probe family is refused for the Raster target: its comparability class
    contains only structures that are empty at the same point.
    """
    if target is SpaceClass.PRETOP:
        if not space_in_class(space, SpaceClass.FILTERBASE):
            raise ValueError("the PreTop representative is defined for filterbase spaces")
    elif target is SpaceClass.RASTER:
        if not space_in_class(space, SpaceClass.CENTERED):
            raise ValueError("the Raster representative is defined for valid centered spaces")
        if any(family.is_empty for family in space.nu):
            raise ValueError(
                "no raster is mutually comparable with a space that has a point without probes"
            )
    else:
        raise ValueError(f"no amnestic representative construction targets {target.value}")
    return CenteredSpace(space.universe, tuple(up_closure(f) for f in space.nu))

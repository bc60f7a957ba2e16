"""Centered spaces: a probe family at every point, and the maps that respect them.

A centered structure assigns to each point x a family of subsets that all
contain x.  Transporting the probe families along a function and comparing
with the refinement preorder gives the morphisms; requiring every probe
family to be a raster, filterbase or filter carves out the structure
classes; asking that the neighborhood data regenerate from its own open
sets pins down the topological ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

from .coincidence import FiniteFunction, all_functions, weakly_related
from .families import (
    LimitError,
    SetFamily,
    Universe,
    classify_family,
    finer,
    mask_of,
    subset_tables,
    up_closure,
)

MAX_SPACE_POINTS = 3


class SpaceClass(enum.Enum):
    """The five structure classes, from loosest to tightest."""

    CENTERED = "Centered"
    RASTER = "Raster"
    FILTERBASE = "Filterbase"
    PRETOP = "PreTop"
    TOP = "Top"


@dataclass(frozen=True)
class CenteredSpace:
    """A universe plus one probe family per point.

    Construction does not enforce the centering invariant (every probe
    contains its point); :func:`validate_space` checks it, so that invalid
    structures remain expressible for the invariant tests and the CLI can
    report the offending pair.
    """

    universe: Universe
    nu: tuple[SetFamily, ...]

    def __post_init__(self) -> None:
        if len(self.nu) != self.universe.size:
            raise ValueError(
                f"{len(self.nu)} probe families for a universe of size {self.universe.size}"
            )
        for family in self.nu:
            if family.universe != self.universe:
                raise ValueError("probe family lives over a different universe")

    def at(self, x: int) -> SetFamily:
        self.universe.check_point(x)
        return self.nu[x]


def discrete(universe: Universe) -> CenteredSpace:
    """The structure whose only probe at x is the singleton of x."""
    return CenteredSpace(
        universe, tuple(SetFamily.of(universe, [1 << x]) for x in universe.points())
    )


def discrete_pretopology(universe: Universe) -> CenteredSpace:
    """Probe family at x is the principal filter of the singleton of x."""
    above = subset_tables(universe.size)[1]
    return CenteredSpace(
        universe, tuple(SetFamily(universe, above[1 << x]) for x in universe.points())
    )


def indiscrete(universe: Universe) -> CenteredSpace:
    """The whole universe is the only probe everywhere."""
    whole = SetFamily.of(universe, [universe.full])
    return CenteredSpace(universe, (whole,) * universe.size)


def empty_structure(universe: Universe) -> CenteredSpace:
    """No probes at any point; the coarsest centered structure."""
    none = SetFamily(universe, 0)
    return CenteredSpace(universe, (none,) * universe.size)


def centering_violation(space: CenteredSpace) -> tuple[int, int] | None:
    """First (point, probe mask) with the point outside its own probe."""
    for x in space.universe.points():
        for m in space.nu[x]:
            if not (m >> x) & 1:
                return (x, m)
    return None


def validate_space(space: CenteredSpace) -> bool:
    """Whether every probe contains its point."""
    return centering_violation(space) is None


@lru_cache(maxsize=None)
def transport(f: FiniteFunction, family: SetFamily) -> SetFamily:
    """Image family under a function, deduplicated and canonical."""
    if family.universe != f.domain:
        raise ValueError("family universe differs from the function's domain")
    bits = 0
    for m in family:
        bits |= 1 << f.image(m)
    return SetFamily(f.codomain, bits)


def _check_map(f: FiniteFunction, src: CenteredSpace, dst: CenteredSpace) -> None:
    if f.domain != src.universe or f.codomain != dst.universe:
        raise ValueError("function universes do not match the given spaces")


def is_centered_at(f: FiniteFunction, src: CenteredSpace, dst: CenteredSpace, x: int) -> bool:
    """The transported probe family at x refines the target's at f(x)."""
    _check_map(f, src, dst)
    src.universe.check_point(x)
    return finer(transport(f, src.nu[x]), dst.nu[f.values[x]])


def morphism_failure(f: FiniteFunction, src: CenteredSpace, dst: CenteredSpace) -> int | None:
    """First point where the map fails to be centered, if any."""
    _check_map(f, src, dst)
    below = subset_tables(dst.universe.size)[0]
    for x in src.universe.points():
        moved = transport(f, src.nu[x])
        if not all(moved.bits & below[n] for n in dst.nu[f.values[x]]):
            return x
    return None


@lru_cache(maxsize=None)
def is_centered(f: FiniteFunction, src: CenteredSpace, dst: CenteredSpace) -> bool:
    """The map is centered at every point of its domain."""
    return morphism_failure(f, src, dst) is None


def classify_space(space: CenteredSpace) -> SpaceClass:
    """Most specific structure class of a valid space."""
    bad = centering_violation(space)
    if bad is not None:
        raise ValueError(f"invalid space: point {bad[0]} is outside its probe {bad[1]}")
    if any(family.is_empty for family in space.nu):
        return SpaceClass.CENTERED
    kinds = [classify_family(family) for family in space.nu]
    if all(k.is_filter for k in kinds):
        return SpaceClass.TOP if is_topological(space) else SpaceClass.PRETOP
    if all(k.is_raster for k in kinds):
        return SpaceClass.RASTER
    if all(k.is_filterbase for k in kinds):
        return SpaceClass.FILTERBASE
    return SpaceClass.CENTERED


def space_in_class(space: CenteredSpace, cls: SpaceClass) -> bool:
    """Membership test; a space belongs to every class at or below its own."""
    if not validate_space(space):
        return False
    if cls is SpaceClass.CENTERED:
        return True
    if any(family.is_empty for family in space.nu):
        return False
    kinds = [classify_family(family) for family in space.nu]
    if cls is SpaceClass.RASTER:
        return all(k.is_raster for k in kinds)
    if cls is SpaceClass.FILTERBASE:
        return all(k.is_filterbase for k in kinds)
    if cls is SpaceClass.PRETOP:
        return all(k.is_filter for k in kinds)
    if cls is SpaceClass.TOP:
        return all(k.is_filter for k in kinds) and is_topological(space)
    raise ValueError(f"unknown space class {cls!r}")


def open_sets(space: CenteredSpace) -> tuple[int, ...]:
    """Subsets that are a probe of each of their points.

    Defined when every probe family is a filter; the result is then closed
    under unions and intersections and contains the empty set and the
    whole universe, so it is a topology.
    """
    for x in space.universe.points():
        family = space.nu[x]
        if family.is_empty or not classify_family(family).is_filter:
            raise ValueError(f"open sets need a filter at every point; point {x} has none")
    out = []
    for u in space.universe.subsets():
        if all((space.nu[x].bits >> u) & 1 for x in space.universe.points() if (u >> x) & 1):
            out.append(u)
    return tuple(out)


def neighborhoods_from_opens(universe: Universe, opens: tuple[int, ...]) -> CenteredSpace:
    """Neighborhood structure of a topology: supersets of opens around each point."""
    above = subset_tables(universe.size)[1]
    nu = []
    for x in universe.points():
        bits = 0
        for u in opens:
            if (u >> x) & 1:
                bits |= above[u]
        nu.append(SetFamily(universe, bits))
    return CenteredSpace(universe, tuple(nu))


def topological_regeneration(space: CenteredSpace) -> CenteredSpace:
    """Extract the open sets, then rebuild the neighborhood structure."""
    return neighborhoods_from_opens(space.universe, open_sets(space))


def is_topological(space: CenteredSpace) -> bool:
    """Fixed point test: the structure equals the one its open sets induce."""
    return topological_regeneration(space) == space


@dataclass(frozen=True)
class EventuallyPeriodicSequence:
    """A sequence given by a finite prefix followed by a repeating cycle."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("the cycle must be nonempty")
        for v in self.prefix + self.cycle:
            if v < 0:
                raise ValueError("sequence points are nonnegative indices")

    def value(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def tail_mask(self, k: int, universe: Universe) -> int:
        """Mask of the values from position k onward."""
        mask = mask_of(self.cycle, universe)
        for n in range(k, len(self.prefix)):
            mask |= 1 << universe.check_point(self.value(n))
        return mask


def converges(space: CenteredSpace, seq: EventuallyPeriodicSequence, x: int) -> bool:
    """Every probe at x contains a tail of the sequence.

    Tails shrink as the start index grows and stabilize, once the prefix is
    consumed, at the set of cycle values; a probe therefore contains some
    tail exactly when it contains that stable set, so only the cycle
    matters.
    """
    space.universe.check_point(x)
    cyc = mask_of(seq.cycle, space.universe)
    for v in seq.prefix:
        space.universe.check_point(v)
    return all(cyc & ~n == 0 for n in space.nu[x])


def _point_candidates(
    universe: Universe, x: int, cls: SpaceClass, allow_empty: bool
) -> tuple[SetFamily, ...]:
    containing = [s for s in universe.subsets() if (s >> x) & 1]
    out = []
    start = 0 if allow_empty else 1
    for chosen in range(start, 1 << len(containing)):
        family = SetFamily.of(
            universe, [containing[i] for i in range(len(containing)) if (chosen >> i) & 1]
        )
        if family.is_empty:
            out.append(family)
            continue
        kind = classify_family(family)
        if cls is SpaceClass.CENTERED:
            out.append(family)
        elif cls is SpaceClass.RASTER and kind.is_raster:
            out.append(family)
        elif cls is SpaceClass.FILTERBASE and kind.is_filterbase:
            out.append(family)
        elif cls in (SpaceClass.PRETOP, SpaceClass.TOP) and kind.is_filter:
            out.append(family)
    return tuple(out)


def enumerate_spaces(
    universe: Universe,
    cls: SpaceClass = SpaceClass.CENTERED,
    *,
    require_nonempty: bool = False,
) -> Iterator[CenteredSpace]:
    """All valid spaces of a class over a small universe, deterministically.

    Empty probe families are admitted only in the Centered class and can be
    excluded with ``require_nonempty``.  The per-point candidate count is
    2^(2^(n-1)), so this refuses universes above ``MAX_SPACE_POINTS``.
    """
    if universe.size > MAX_SPACE_POINTS:
        raise LimitError(
            f"space enumeration over {universe.size} points exceeds the cap of {MAX_SPACE_POINTS}"
        )
    allow_empty = cls is SpaceClass.CENTERED and not require_nonempty
    candidates = [
        _point_candidates(universe, x, cls, allow_empty) for x in universe.points()
    ]
    for nu in product(*candidates):
        space = CenteredSpace(universe, nu)
        if cls is SpaceClass.TOP and not is_topological(space):
            continue
        yield space


def centered_at_functions(
    src: CenteredSpace,
    x: int,
    target: CenteredSpace,
    *,
    limit: int | None = None,
) -> tuple[FiniteFunction, ...]:
    """Functions into the target space that are centered at the one point x."""
    src.universe.check_point(x)
    return tuple(
        f
        for f in all_functions(src.universe, target.universe, limit=limit)
        if is_centered_at(f, src, target, x)
    )


def _germ_target(target: CenteredSpace | Universe) -> CenteredSpace:
    # The discrete structure is the most restrictive natural default; the
    # germ relation itself does not depend on the target structure.
    return discrete(target) if isinstance(target, Universe) else target


def germ_class(
    src: CenteredSpace,
    x: int,
    f: FiniteFunction,
    target: CenteredSpace | Universe,
    *,
    everywhere: bool = False,
    limit: int | None = None,
) -> tuple[FiniteFunction, ...]:
    """Functions agreeing with f on some probe at x, within the centered ones.

    Germs exist exactly when the probe family at x is a filterbase, so
    anything else is refused.  By default the ambient set is the functions
    centered at x; with ``everywhere`` it is the everywhere centered ones,
    an experimental restriction for which the relation is still an
    equivalence but the filterbase characterization is not asserted.
    """
    dst = _germ_target(target)
    family = src.at(x)
    if family.is_empty or not classify_family(family).is_filterbase:
        raise ValueError(
            f"germs at point {x} need a filterbase probe family there; this space does not have one"
        )
    if dst.universe.size < 2:
        raise ValueError("germ classes need at least two target points")
    if everywhere:
        ambient = tuple(
            g
            for g in all_functions(src.universe, dst.universe, limit=limit)
            if is_centered(g, src, dst)
        )
        if not (f in ambient):
            raise ValueError("the reference function is not everywhere centered")
    else:
        ambient = centered_at_functions(src, x, dst, limit=limit)
        if f not in ambient:
            raise ValueError(f"the reference function is not centered at point {x}")
    return tuple(g for g in ambient if weakly_related(family, f, g))


def germ_partition(
    src: CenteredSpace,
    x: int,
    target: CenteredSpace | Universe,
    *,
    everywhere: bool = False,
    limit: int | None = None,
) -> tuple[tuple[FiniteFunction, ...], ...]:
    """Group the ambient function set by the germ relation at x."""
    dst = _germ_target(target)
    family = src.at(x)
    if family.is_empty or not classify_family(family).is_filterbase:
        raise ValueError(
            f"germs at point {x} need a filterbase probe family there; this space does not have one"
        )
    if dst.universe.size < 2:
        raise ValueError("germ classes need at least two target points")
    if everywhere:
        ambient = tuple(
            g
            for g in all_functions(src.universe, dst.universe, limit=limit)
            if is_centered(g, src, dst)
        )
    else:
        ambient = centered_at_functions(src, x, dst, limit=limit)
    classes: list[list[FiniteFunction]] = []
    for g in ambient:
        for cls in classes:
            if weakly_related(family, cls[0], g):
                cls.append(g)
                break
        else:
            classes.append([g])
    return tuple(tuple(cls) for cls in classes)

"""Bitmask algebra for families of subsets of a finite universe.

Points are the indices 0..n-1.  A subset of the universe is an int whose
bit i records membership of the point i.  A family of subsets is, in turn,
an int whose bit s records membership of the subset with mask s, so the
families over a small universe enumerate as a plain integer range and the
canonical member order (ascending mask value) comes for free.

Everything here is an immutable value and every operation is pure, so all
of it is safe to share across threads or to fan out over workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

DEFAULT_ENUM_LIMIT = 4
HARD_ENUM_LIMIT = 5
MAX_TABLE_POINTS = 16


class LimitError(Exception):
    """A computation was refused because it exceeds a configured cap."""


@dataclass(frozen=True)
class Universe:
    """A finite ground set; points are the indices 0..size-1."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"a universe needs at least one point, got size {self.size}")

    @property
    def full(self) -> int:
        """Mask of the whole universe."""
        return (1 << self.size) - 1

    def points(self) -> range:
        return range(self.size)

    def subsets(self) -> range:
        """Every subset mask, ascending."""
        return range(1 << self.size)

    def check_point(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise ValueError(f"point {x} is outside a universe of size {self.size}")
        return x

    def check_mask(self, mask: int) -> int:
        if mask < 0 or mask & ~self.full:
            raise ValueError(f"subset mask {mask} has bits outside a universe of size {self.size}")
        return mask


def bit_indices(bits: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def mask_of(points: Iterable[int], universe: Universe) -> int:
    """Subset mask of the given point indices."""
    mask = 0
    for x in points:
        universe.check_point(x)
        mask |= 1 << x
    return mask


def points_of(mask: int) -> tuple[int, ...]:
    """Ascending point indices of a subset mask."""
    return tuple(bit_indices(mask))


@lru_cache(maxsize=None)
def subset_tables(size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lookup tables ``(below, above)`` for one universe size.

    ``below[t]`` has bit s set iff s is a subset of t; ``above[s]`` has bit
    t set iff t is a superset of s.  Built with the classic submask and
    supermask walks, 3^size steps per table.
    """
    if size > MAX_TABLE_POINTS:
        raise LimitError(
            f"subset tables for {size} points would need 2^{size} entries; the cap is {MAX_TABLE_POINTS}"
        )
    full = (1 << size) - 1
    below = []
    for t in range(full + 1):
        acc = 0
        s = t
        while True:
            acc |= 1 << s
            if s == 0:
                break
            s = (s - 1) & t
        below.append(acc)
    above = []
    for s in range(full + 1):
        acc = 0
        t = s
        while True:
            acc |= 1 << t
            if t == full:
                break
            t = (t + 1) | s
        above.append(acc)
    return tuple(below), tuple(above)


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated family of subset masks in canonical ascending order.

    The member set is packed into ``bits``: bit s is set iff the subset
    with mask s belongs to the family.  Equality, hashing and the canonical
    order all follow from that encoding.
    """

    universe: Universe
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits.bit_length() > 1 << self.universe.size:
            raise ValueError("family bits reference subsets outside the universe")

    @classmethod
    def of(cls, universe: Universe, members: Iterable[int]) -> "SetFamily":
        bits = 0
        for m in members:
            universe.check_mask(m)
            bits |= 1 << m
        return cls(universe, bits)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bit_indices(self.bits))

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return bit_indices(self.bits)

    def __contains__(self, mask: int) -> bool:
        return mask >= 0 and (self.bits >> mask) & 1 == 1

    def member_points(self) -> tuple[tuple[int, ...], ...]:
        """Members as sorted point-index tuples, in canonical order."""
        return tuple(points_of(m) for m in self)


@dataclass(frozen=True)
class FamilyClass:
    """Raster / filterbase / filter flags for one family."""

    is_raster: bool
    is_filterbase: bool
    is_filter: bool

    def __post_init__(self) -> None:
        if self.is_filter != (self.is_raster and self.is_filterbase):
            raise ValueError("a filter is exactly a family that is both a raster and a filterbase")


FILTER_KIND = FamilyClass(is_raster=True, is_filterbase=True, is_filter=True)
RASTER_ONLY_KIND = FamilyClass(is_raster=True, is_filterbase=False, is_filter=False)
FILTERBASE_ONLY_KIND = FamilyClass(is_raster=False, is_filterbase=True, is_filter=False)
PLAIN_KIND = FamilyClass(is_raster=False, is_filterbase=False, is_filter=False)


def _require_members(family: SetFamily) -> None:
    if family.is_empty:
        raise ValueError("this operation is defined for nonempty families only")


def _same_universe(first: SetFamily, second: SetFamily) -> None:
    if first.universe != second.universe:
        raise ValueError("families live over different universes")


def has_fip(family: SetFamily) -> bool:
    """Finite intersection property: every nonempty subfamily meets.

    For a finite family this reduces to one fold: the intersection of all
    members is contained in every subfamily intersection, and the whole
    family is itself one of the subfamilies.
    """
    _require_members(family)
    inter = family.universe.full
    for m in family:
        inter &= m
    return inter != 0


def is_upward_closed(family: SetFamily) -> bool:
    """Every superset of a member is a member.  Containment is non-strict."""
    above = subset_tables(family.universe.size)[1]
    bits = family.bits
    return all(bits & above[m] == above[m] for m in family)


def is_downward_directed(family: SetFamily) -> bool:
    """Every two members contain a common member below their intersection."""
    _require_members(family)
    below = subset_tables(family.universe.size)[0]
    bits = family.bits
    return all(bits & below[a & b] for a, b in combinations(family.members, 2))


def classify_family(family: SetFamily) -> FamilyClass:
    """Classify a nonempty family against the three closure conditions."""
    f0 = has_fip(family)
    f1 = is_upward_closed(family)
    f2 = is_downward_directed(family)
    return FamilyClass(is_raster=f0 and f1, is_filterbase=f0 and f2, is_filter=f0 and f1 and f2)


def up_closure(family: SetFamily) -> SetFamily:
    """All supersets of members; the least upward-closed family above."""
    above = subset_tables(family.universe.size)[1]
    bits = 0
    for m in family:
        bits |= above[m]
    return SetFamily(family.universe, bits)


def intersection_closure(family: SetFamily) -> SetFamily:
    """Close under intersections of nonempty finite subfamilies.

    The empty subfamily is excluded, so the whole universe does not get
    added on its own.
    """
    _require_members(family)
    seen = 0
    for m in family:
        extra = 1 << m
        for s in bit_indices(seen):
            extra |= 1 << (s & m)
        seen |= extra
    return SetFamily(family.universe, seen)


def generated_filter(family: SetFamily) -> SetFamily:
    """The least filter containing the family.

    Up-closure of the intersection closure; the two closures commute, so
    the opposite composition gives the same family.
    """
    if not has_fip(family):
        raise ValueError(
            "family lacks the finite intersection property; its generated family would contain the empty set"
        )
    return up_closure(intersection_closure(family))


def finer(first: SetFamily, second: SetFamily) -> bool:
    """``first`` refines ``second``: every member of ``second`` contains a member of ``first``.

    An empty ``second`` is refined by everything; an empty ``first``
    refines nothing else.
    """
    _same_universe(first, second)
    below = subset_tables(first.universe.size)[0]
    bits = first.bits
    return all(bits & below[n] for n in second)


def is_ultrafilter(family: SetFamily) -> bool:
    """Three-piece partition test for ultrafilters.

    True iff every split of the universe into three disjoint, possibly
    empty pieces puts exactly one piece in the family (pieces counted with
    multiplicity).  Agreement with :func:`is_maximal_filter` is checked
    exhaustively in the verification suites; two pieces would not suffice.
    """
    _require_members(family)
    full = family.universe.full
    bits = family.bits
    for a in range(full + 1):
        rest = full & ~a
        b = rest
        while True:
            c = rest & ~b
            if ((bits >> a) & 1) + ((bits >> b) & 1) + ((bits >> c) & 1) != 1:
                return False
            if b == 0:
                break
            b = (b - 1) & rest
    return True


def is_maximal_filter(family: SetFamily) -> bool:
    """Independent ultrafilter test: a filter holding exactly one of every
    complementary pair of subsets."""
    _require_members(family)
    if not classify_family(family).is_filter:
        return False
    full = family.universe.full
    bits = family.bits
    return all((bits >> a) & 1 != (bits >> (full & ~a)) & 1 for a in range(full + 1))


def principal_filter(mask: int, universe: Universe) -> SetFamily:
    """All supersets of a nonempty subset."""
    universe.check_mask(mask)
    if mask == 0:
        raise ValueError("a principal filter needs a nonempty generating subset")
    return SetFamily(universe, subset_tables(universe.size)[1][mask])


def enumerate_families(
    universe: Universe,
    kind: FamilyClass | None = None,
    *,
    max_points: int | None = None,
) -> Iterator[SetFamily]:
    """Yield every nonempty family over the universe in canonical order.

    With ``kind`` given, only families whose classification equals it are
    yielded.  Refuses universes above the enumeration cap: the default cap
    is ``DEFAULT_ENUM_LIMIT`` points and nothing above ``HARD_ENUM_LIMIT``
    is ever accepted (the family space doubles exponentially).
    """
    limit = DEFAULT_ENUM_LIMIT if max_points is None else max_points
    if limit > HARD_ENUM_LIMIT:
        raise LimitError(f"enumeration limit {limit} is above the hard cap of {HARD_ENUM_LIMIT} points")
    if universe.size > limit:
        raise LimitError(
            f"enumerating all families over {universe.size} points exceeds the cap of {limit} "
            f"(raise max_points, hard cap {HARD_ENUM_LIMIT})"
        )
    for bits in range(1, 1 << (1 << universe.size)):
        family = SetFamily(universe, bits)
        if kind is None or classify_family(family) == kind:
            yield family

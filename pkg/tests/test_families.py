"""Family algebra against literal brute-force oracles.

The oracles below quantify over subsets and subfamilies exactly as the
definitions read, with no bitmask shortcuts, so every fast-path reduction
in the library (single-fold intersection test, table-driven closures) is
checked against an independent route.
"""

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from centeredkit import (
    FamilyClass,
    LimitError,
    SetFamily,
    Universe,
    classify_family,
    enumerate_families,
    finer,
    generated_filter,
    has_fip,
    intersection_closure,
    is_downward_directed,
    is_maximal_filter,
    is_ultrafilter,
    is_upward_closed,
    mask_of,
    points_of,
    principal_filter,
    up_closure,
)


def subsets_of(universe):
    return list(universe.subsets())


def is_subset(a, b):
    return a & ~b == 0


def brute_fip(family):
    """Every nonempty subfamily has a nonempty intersection, literally."""
    members = family.members
    for n in range(1, len(members) + 1):
        for chosen in combinations(members, n):
            inter = family.universe.full
            for m in chosen:
                inter &= m
            if inter == 0:
                return False
    return True


def brute_upward_closed(family):
    return all(
        a in family
        for a in subsets_of(family.universe)
        for b in family
        if is_subset(b, a)
    )


def brute_downward_directed(family):
    return all(
        any(is_subset(c, a & b) for c in family)
        for a in family
        for b in family
    )


def brute_up(family):
    u = family.universe
    return SetFamily.of(u, [a for a in subsets_of(u) if any(is_subset(m, a) for m in family)])


def brute_cap(family):
    u = family.universe
    members = family.members
    out = set()
    for n in range(1, len(members) + 1):
        for chosen in combinations(members, n):
            inter = u.full
            for m in chosen:
                inter &= m
            out.add(inter)
    return SetFamily.of(u, out)


def all_families(universe, include_empty=False):
    start = 0 if include_empty else 1
    return [SetFamily(universe, bits) for bits in range(start, 1 << (1 << universe.size))]


@pytest.mark.parametrize("size", [1, 2, 3])
def test_conditions_match_brute_force(size):
    u = Universe(size)
    for family in all_families(u):
        assert has_fip(family) == brute_fip(family)
        assert is_upward_closed(family) == brute_upward_closed(family)
        assert is_downward_directed(family) == brute_downward_directed(family)


@pytest.mark.parametrize("size", [1, 2, 3])
def test_closures_match_brute_force(size):
    u = Universe(size)
    for family in all_families(u):
        assert up_closure(family) == brute_up(family)
        assert intersection_closure(family) == brute_cap(family)


def test_fip_examples():
    u2, u3 = Universe(2), Universe(3)
    assert has_fip(SetFamily.of(u2, [0b01, 0b11]))
    assert not has_fip(SetFamily.of(u2, [0b01, 0b10]))
    assert has_fip(SetFamily.of(u3, [0b011, 0b110, 0b111]))
    with pytest.raises(ValueError):
        has_fip(SetFamily(u2, 0))


def test_upward_closed_examples():
    u2, u3 = Universe(2), Universe(3)
    assert is_upward_closed(SetFamily.of(u2, [0b01, 0b11]))
    assert is_upward_closed(SetFamily.of(u3, [0b011, 0b110, 0b111]))
    assert not is_upward_closed(SetFamily.of(u2, [0b01]))


def test_downward_directed_examples():
    u2, u3 = Universe(2), Universe(3)
    assert is_downward_directed(SetFamily.of(u2, [0b01, 0b11]))
    # the pair ({0,1}, {1,2}) has no member below its intersection {1}
    assert not is_downward_directed(SetFamily.of(u3, [0b011, 0b110, 0b111]))
    assert is_downward_directed(SetFamily.of(u2, [0b11]))


def test_classify_examples():
    u2, u3 = Universe(2), Universe(3)
    raster_only = classify_family(SetFamily.of(u3, [0b011, 0b110, 0b111]))
    assert raster_only == FamilyClass(is_raster=True, is_filterbase=False, is_filter=False)
    assert classify_family(principal_filter(0b01, u2)).is_filter
    base_only = classify_family(SetFamily.of(u2, [0b01]))
    assert base_only == FamilyClass(is_raster=False, is_filterbase=True, is_filter=False)


def test_family_class_consistency():
    with pytest.raises(ValueError):
        FamilyClass(is_raster=True, is_filterbase=True, is_filter=False)
    for family in all_families(Universe(3)):
        kind = classify_family(family)
        assert kind.is_filter == (kind.is_raster and kind.is_filterbase)


def test_up_closure_examples():
    u3, u2 = Universe(3), Universe(2)
    assert up_closure(SetFamily.of(u3, [0b010])).members == (0b010, 0b011, 0b110, 0b111)
    assert up_closure(SetFamily.of(u2, [0b11])).members == (0b11,)
    raster = SetFamily.of(u3, [0b011, 0b110, 0b111])
    assert up_closure(raster) == raster


def test_intersection_closure_examples():
    u3 = Universe(3)
    assert intersection_closure(SetFamily.of(u3, [0b011, 0b110])).members == (0b010, 0b011, 0b110)
    single = SetFamily.of(u3, [0b101])
    assert intersection_closure(single) == single
    closed = SetFamily.of(u3, [0b010, 0b011, 0b110])
    assert intersection_closure(closed) == closed


def test_generated_filter_examples():
    u3, u2 = Universe(3), Universe(2)
    assert generated_filter(SetFamily.of(u3, [0b011, 0b110])).members == (0b010, 0b011, 0b110, 0b111)
    assert generated_filter(SetFamily.of(u2, [0b01])).members == (0b01, 0b11)
    existing = principal_filter(0b010, u3)
    assert generated_filter(existing) == existing
    with pytest.raises(ValueError):
        generated_filter(SetFamily.of(u2, [0b01, 0b10]))


@pytest.mark.parametrize("size", [1, 2, 3])
def test_closure_formulas_hold_for_all_nonempty_families(size):
    # these five identities need no intersection property at all
    u = Universe(size)
    for p in all_families(u):
        up = up_closure(p)
        cap = intersection_closure(p)
        assert p.bits & ~up.bits == 0
        assert p.bits & ~cap.bits == 0
        assert up_closure(up) == up
        assert intersection_closure(cap) == cap
        assert up_closure(cap) == intersection_closure(up)


def test_finer_examples():
    u2 = Universe(2)
    p = SetFamily.of(u2, [0b01])
    assert finer(p, up_closure(p)) and finer(up_closure(p), p)
    assert finer(SetFamily.of(u2, [0b01]), SetFamily.of(u2, [0b11]))
    assert not finer(SetFamily.of(u2, [0b11]), SetFamily.of(u2, [0b01]))


def test_finer_quantifier_semantics_on_empty_families():
    u = Universe(2)
    empty = SetFamily(u, 0)
    some = SetFamily.of(u, [0b01])
    assert finer(some, empty)
    assert finer(empty, empty)
    assert not finer(empty, some)


def test_finer_is_up_closure_containment():
    # p refines q exactly when up(q) is contained in up(p); transitivity
    # and reflexivity of the preorder follow from this containment form
    u = Universe(3)
    families = all_families(u)
    for p in families:
        assert finer(p, p)
    for p in families:
        up_p = up_closure(p).bits
        for q in families:
            assert finer(p, q) == (up_closure(q).bits & ~up_p == 0)


def test_finer_transitive_exhaustive_two_points():
    families = all_families(Universe(2))
    for p in families:
        for q in families:
            if not finer(p, q):
                continue
            for r in families:
                if finer(q, r):
                    assert finer(p, r)


def test_mutual_refinement_is_up_closure_equality():
    families = all_families(Universe(3))
    for p in families:
        for q in families:
            assert (finer(p, q) and finer(q, p)) == (up_closure(p) == up_closure(q))


def test_ultrafilter_examples():
    u3, u2 = Universe(3), Universe(2)
    assert is_ultrafilter(principal_filter(0b001, u3))
    assert not is_ultrafilter(principal_filter(0b011, u3))
    assert not is_ultrafilter(SetFamily.of(u2, [0b11]))
    assert not is_ultrafilter(SetFamily.of(u3, [0b111]))


@pytest.mark.parametrize("size", [1, 2, 3])
def test_partition_test_agrees_with_maximality(size):
    u = Universe(size)
    count = 0
    for family in all_families(u):
        three = is_ultrafilter(family)
        assert three == is_maximal_filter(family)
        count += three
    # on a finite set the ultrafilters are exactly the point filters
    assert count == size


def test_principal_filter_examples():
    u2, u3 = Universe(2), Universe(3)
    assert principal_filter(0b01, u2).members == (0b01, 0b11)
    assert principal_filter(u3.full, u3).members == (0b111,)
    with pytest.raises(ValueError):
        principal_filter(0, u2)
    for mask in range(1, 1 << 3):
        assert classify_family(principal_filter(mask, u3)).is_filter


def test_enumerate_counts():
    assert len(list(enumerate_families(Universe(1)))) == 3
    assert len(list(enumerate_families(Universe(2)))) == 15
    assert len(list(enumerate_families(Universe(3)))) == 255


def test_enumerate_one_point_members():
    u = Universe(1)
    got = [f.member_points() for f in enumerate_families(u)]
    assert got == [((),), ((0,),), ((), (0,))]


def test_enumerate_filters_two_points():
    # brute-force classification over all 15 nonempty families finds the
    # three principal filters and nothing else
    u = Universe(2)
    expected = sorted(
        f.bits for f in all_families(u) if classify_family(f).is_filter
    )
    kind = FamilyClass(is_raster=True, is_filterbase=True, is_filter=True)
    got = [f.bits for f in enumerate_families(u, kind)]
    assert got == expected
    assert got == sorted(principal_filter(m, u).bits for m in (0b01, 0b10, 0b11))
    assert len(got) == 3


def test_enumerate_kind_is_exact_match():
    u = Universe(2)
    raster_only = FamilyClass(is_raster=True, is_filterbase=False, is_filter=False)
    for family in enumerate_families(u, raster_only):
        assert classify_family(family) == raster_only


def test_enumerate_is_canonically_ordered():
    previous = 0
    for family in enumerate_families(Universe(2)):
        assert family.bits > previous
        previous = family.bits


def test_enumerate_caps():
    with pytest.raises(LimitError):
        next(enumerate_families(Universe(5)))
    with pytest.raises(LimitError):
        next(enumerate_families(Universe(5), max_points=6))
    with pytest.raises(LimitError):
        next(enumerate_families(Universe(4), max_points=3))
    # explicit opt-in up to the hard cap is allowed
    gen = enumerate_families(Universe(5), max_points=5)
    assert next(gen).members == (0,)


def test_filter_least_among_supersets_small():
    # every filter that contains the family also contains its generated
    # filter, checked by enumerating all candidate families
    u = Universe(2)
    for family in all_families(u):
        if not has_fip(family):
            continue
        gen = generated_filter(family)
        for other in all_families(u):
            if family.bits & ~other.bits:
                continue
            if classify_family(other).is_filter:
                assert gen.bits & ~other.bits == 0


def test_intersection_closure_is_refined_by_every_filterbase_superset():
    # the subset-least property is special to tiny universes; the robust
    # statement is that every filterbase containing the family refines its
    # intersection closure
    u = Universe(3)
    for family in all_families(u):
        if not has_fip(family):
            continue
        cap = intersection_closure(family)
        for other in all_families(u):
            if family.bits & ~other.bits:
                continue
            if classify_family(other).is_filterbase:
                assert finer(other, cap)


def test_intersection_closure_not_subset_least_beyond_three_points():
    # on four points a filterbase can contain the family while skipping one
    # of its intersections, so subset-least-ness genuinely fails there
    u = Universe(4)
    family = SetFamily.of(u, [mask_of([0, 1, 2], u), mask_of([0, 1, 3], u), mask_of([0, 2, 3], u)])
    skipping = SetFamily.of(u, list(family.members) + [mask_of([0], u)])
    assert classify_family(skipping).is_filterbase
    assert family.bits & ~skipping.bits == 0
    missing = mask_of([0, 1], u)
    assert missing in intersection_closure(family)
    assert missing not in skipping
    assert finer(skipping, intersection_closure(family))


def test_mask_helpers():
    u = Universe(3)
    assert mask_of([2, 0], u) == 0b101
    assert points_of(0b101) == (0, 2)
    with pytest.raises(ValueError):
        mask_of([3], u)
    with pytest.raises(ValueError):
        u.check_mask(0b1000)
    with pytest.raises(ValueError):
        Universe(0)


def test_family_construction_validates_members():
    u = Universe(2)
    with pytest.raises(ValueError):
        SetFamily.of(u, [0b100])
    assert SetFamily.of(u, [0b01, 0b01]).members == (0b01,)


@given(bits=st.integers(min_value=1, max_value=(1 << 32) - 1))
def test_closure_laws_random_five_point_families(bits):
    u = Universe(5)
    p = SetFamily(u, bits)
    up = up_closure(p)
    cap = intersection_closure(p)
    assert p.bits & ~up.bits == 0
    assert p.bits & ~cap.bits == 0
    assert up_closure(up) == up
    assert intersection_closure(cap) == cap
    assert up_closure(cap) == intersection_closure(up)


@given(bits=st.integers(min_value=1, max_value=(1 << 16) - 1))
def test_characterizations_random_four_point_families(bits):
    u = Universe(4)
    p = SetFamily(u, bits)
    kind = classify_family(p)
    assert kind.is_raster == (has_fip(p) and p == up_closure(p))
    assert kind.is_filterbase == (has_fip(p) and finer(p, intersection_closure(p)))
    if has_fip(p):
        assert kind.is_filter == (p == generated_filter(p))

"""Initial structures, reflections and coreflections against their
universal-property verifiers, which exhaust probes and functions and are
independent of the closure formulas they audit."""

from itertools import combinations, product

import pytest

from centeredkit import (
    CenteredSpace,
    Cone,
    FiniteFunction,
    LimitError,
    SetFamily,
    SpaceClass,
    Universe,
    amnestic_representative,
    coreflect,
    discrete,
    discrete_pretopology,
    empty_structure,
    enumerate_spaces,
    fiber_compare,
    indiscrete,
    initial_structure,
    intersection_closure,
    is_centered,
    reflect,
    space_in_class,
    up_closure,
    verify_coreflection,
    verify_initial,
    verify_reflection,
)
from centeredkit.categories import find_nonfactoring_morphism, find_nonlifting_morphism
from centeredkit.spaces import is_topological, topological_regeneration

U1 = Universe(1)
U2 = Universe(2)
U3 = Universe(3)


def space(universe, *families):
    return CenteredSpace(universe, tuple(SetFamily.of(universe, f) for f in families))


def spaces_up_to(cls, size, require_nonempty=False):
    out = []
    for n in range(1, size + 1):
        out.extend(enumerate_spaces(Universe(n), cls, require_nonempty=require_nonempty))
    return out


def test_cone_validation():
    s = discrete(U2)
    with pytest.raises(ValueError):
        Cone(U3, ((s, FiniteFunction.identity(U2)),))
    with pytest.raises(ValueError):
        Cone(U2, ((s, FiniteFunction(U2, U3, (0, 1))),))


def test_initial_identity_leg_reproduces_the_space():
    for cls in SpaceClass:
        for s in enumerate_spaces(U2, cls):
            cone = Cone(U2, ((s, FiniteFunction.identity(U2)),))
            assert initial_structure(cone, cls) == s


def test_initial_two_indiscrete_legs():
    legs = (
        (indiscrete(U2), FiniteFunction.identity(U2)),
        (indiscrete(U1), FiniteFunction(U2, U1, (0, 0))),
    )
    result = initial_structure(Cone(U2, legs), SpaceClass.PRETOP)
    assert result == indiscrete(U2)


def test_initial_empty_cone_per_category():
    assert initial_structure(Cone(U2, ()), SpaceClass.CENTERED) == empty_structure(U2)
    for cls in (SpaceClass.RASTER, SpaceClass.FILTERBASE, SpaceClass.PRETOP, SpaceClass.TOP):
        assert initial_structure(Cone(U2, ()), cls) == indiscrete(U2)
        probes = spaces_up_to(cls, 2)
        assert verify_initial(Cone(U2, ()), indiscrete(U2), cls, probes)
    assert verify_initial(
        Cone(U2, ()), empty_structure(U2), SpaceClass.CENTERED, spaces_up_to(SpaceClass.CENTERED, 2)
    )


def test_initial_rejects_legs_outside_the_category():
    leg = (discrete(U2), FiniteFunction.identity(U2))  # not a raster space
    with pytest.raises(ValueError):
        initial_structure(Cone(U2, (leg,)), SpaceClass.RASTER)


def test_initial_product_style_cone():
    # four-point apex projecting onto two two-point topological factors
    apex = Universe(4)
    left = space(U2, [0b01, 0b11], [0b11])
    right = discrete_pretopology(U2)
    assert is_topological(left) and is_topological(right)
    legs = (
        (left, FiniteFunction(apex, U2, (0, 0, 1, 1))),
        (right, FiniteFunction(apex, U2, (0, 1, 0, 1))),
    )
    cone = Cone(apex, legs)
    candidate = initial_structure(cone, SpaceClass.PRETOP)
    probes = spaces_up_to(SpaceClass.PRETOP, 2)
    assert verify_initial(cone, candidate, SpaceClass.PRETOP, probes)
    # the product of topological structures along the PreTop formula stays
    # topological here
    assert is_topological(candidate)


def test_verify_initial_rejects_a_strictly_finer_candidate():
    s = indiscrete(U2)
    cone = Cone(U2, ((s, FiniteFunction.identity(U2)),))
    candidate = initial_structure(cone, SpaceClass.PRETOP)
    mutant = discrete_pretopology(U2)
    cmp = fiber_compare(mutant, candidate)
    assert cmp.leq and not cmp.geq
    probes = spaces_up_to(SpaceClass.PRETOP, 2)
    # legs are still morphisms from the finer mutant
    assert is_centered(FiniteFunction.identity(U2), mutant, s)
    assert not verify_initial(cone, mutant, SpaceClass.PRETOP, probes)


def test_verify_initial_probe_cap():
    cone = Cone(U2, ())
    big = indiscrete(Universe(4))
    with pytest.raises(LimitError):
        verify_initial(cone, indiscrete(U2), SpaceClass.PRETOP, [big])


def test_reflect_filterbase_to_pretop():
    assert reflect(discrete(U2), SpaceClass.FILTERBASE, SpaceClass.PRETOP) == discrete_pretopology(U2)
    already = discrete_pretopology(U2)
    assert reflect(already, SpaceClass.FILTERBASE, SpaceClass.PRETOP) == already


def test_reflect_pretop_to_top_regenerates():
    crooked = space(U3, [0b011, 0b111], [0b110, 0b111], [0b100, 0b101, 0b110, 0b111])
    assert not is_topological(crooked)
    reflected = reflect(crooked, SpaceClass.PRETOP, SpaceClass.TOP)
    assert reflected == topological_regeneration(crooked)
    assert is_topological(reflected)
    # coarser exactly at the defective point
    assert reflected.nu[0].members == (0b111,)
    probes = spaces_up_to(SpaceClass.TOP, 2) + list(enumerate_spaces(U3, SpaceClass.TOP))
    assert verify_reflection(crooked, reflected, SpaceClass.TOP, probes)


def test_reflect_fixes_objects_already_in_the_subcategory():
    for s in enumerate_spaces(U2, SpaceClass.TOP):
        assert reflect(s, SpaceClass.PRETOP, SpaceClass.TOP) == s
    for s in enumerate_spaces(U2, SpaceClass.RASTER):
        assert reflect(s, SpaceClass.CENTERED, SpaceClass.RASTER) == s


def test_reflect_rejects_unsupported_arrows_and_empty_probes():
    with pytest.raises(ValueError):
        reflect(discrete(U2), SpaceClass.CENTERED, SpaceClass.FILTERBASE)
    with pytest.raises(ValueError):
        reflect(empty_structure(U2), SpaceClass.CENTERED, SpaceClass.RASTER)
    with pytest.raises(ValueError):
        reflect(discrete(U2), SpaceClass.PRETOP, SpaceClass.TOP)  # not a pretop space


def test_coreflect_examples():
    pieces = space(U3, [0b011, 0b101], [0b010], [0b100])
    result = coreflect(pieces, SpaceClass.CENTERED, SpaceClass.FILTERBASE)
    assert result.nu[0].members == (0b001, 0b011, 0b101)
    raster_only = space(
        U3,
        [0b001, 0b011, 0b101, 0b111],
        [0b011, 0b110, 0b111],
        [0b100, 0b101, 0b110, 0b111],
    )
    smallest = coreflect(raster_only, SpaceClass.RASTER, SpaceClass.PRETOP)
    assert smallest.nu[1] == up_closure(intersection_closure(raster_only.nu[1]))
    assert space_in_class(smallest, SpaceClass.PRETOP)
    for s in enumerate_spaces(U2, SpaceClass.PRETOP):
        assert coreflect(s, SpaceClass.RASTER, SpaceClass.PRETOP) == s
        assert coreflect(s, SpaceClass.FILTERBASE, SpaceClass.PRETOP) == s


def test_coreflect_promotes_probe_free_points_to_indiscrete():
    e = empty_structure(U2)
    for target, cls in (
        (SpaceClass.FILTERBASE, SpaceClass.FILTERBASE),
        (SpaceClass.RASTER, SpaceClass.RASTER),
    ):
        c = coreflect(e, SpaceClass.CENTERED, target)
        assert c == indiscrete(U2)
        probes = spaces_up_to(cls, 2)
        assert verify_coreflection(e, c, target, probes)


def test_coreflect_rejects_unsupported_arrows():
    with pytest.raises(ValueError):
        coreflect(discrete_pretopology(U2), SpaceClass.PRETOP, SpaceClass.TOP)


def test_wrong_reflection_fails_with_a_witness():
    # using the intersection closure where the up-closure is required does
    # not even land in the subcategory
    s = discrete(U2)
    wrong = CenteredSpace(U2, tuple(intersection_closure(f) for f in s.nu))
    assert not verify_reflection(s, wrong, SpaceClass.PRETOP, spaces_up_to(SpaceClass.PRETOP, 2))

    # an indiscrete "reflection" is in the subcategory but fails to factor
    coarse = indiscrete(U2)
    probes = spaces_up_to(SpaceClass.RASTER, 2)
    assert not verify_reflection(s, coarse, SpaceClass.RASTER, probes)
    witness = find_nonfactoring_morphism(s, coarse, probes)
    assert witness is not None
    probe, f = witness
    assert is_centered(f, s, probe) and not is_centered(f, coarse, probe)


def test_wrong_coreflection_fails_with_a_witness():
    # the discrete filterbase structure sits below everything, so using it
    # as a coreflection breaks the counit direction or the lifting
    s = indiscrete(U2)
    wrong = discrete(U2)
    probes = spaces_up_to(SpaceClass.FILTERBASE, 2)
    assert not verify_coreflection(s, wrong, SpaceClass.FILTERBASE, probes)
    witness = find_nonlifting_morphism(s, wrong, probes)
    assert witness is not None
    probe, f = witness
    assert is_centered(f, probe, s) and not is_centered(f, probe, wrong)


def test_fiber_compare_examples():
    d = discrete(U2)
    assert fiber_compare(d, d).equivalent
    lifted = CenteredSpace(U2, tuple(up_closure(f) for f in d.nu))
    cmp = fiber_compare(d, lifted)
    assert cmp.equivalent and d != lifted
    cmp = fiber_compare(d, indiscrete(U2))
    assert cmp.leq and not cmp.geq
    with pytest.raises(ValueError):
        fiber_compare(d, discrete(U3))


def test_up_closure_is_an_isomorphism_in_the_loose_fibers():
    for cls in (SpaceClass.FILTERBASE, SpaceClass.CENTERED):
        for s in enumerate_spaces(U2, cls):
            lifted = CenteredSpace(U2, tuple(up_closure(f) for f in s.nu))
            assert fiber_compare(s, lifted).equivalent


def test_amnestic_representative_examples():
    d = discrete(U2)
    rep = amnestic_representative(d, SpaceClass.PRETOP)
    assert rep == discrete_pretopology(U2)
    assert amnestic_representative(rep, SpaceClass.PRETOP) == rep
    already = discrete_pretopology(U2)
    assert amnestic_representative(already, SpaceClass.RASTER) == already


def test_amnestic_representative_constant_on_equivalence_classes():
    spaces = list(enumerate_spaces(U2, SpaceClass.FILTERBASE))
    reps = {s: amnestic_representative(s, SpaceClass.PRETOP) for s in spaces}
    for s, t in combinations(spaces, 2):
        if fiber_compare(s, t).equivalent:
            assert reps[s] == reps[t]
    assert any(
        fiber_compare(s, t).equivalent and s != t for s, t in combinations(spaces, 2)
    )


def test_amnestic_representative_rejections():
    with pytest.raises(ValueError):
        amnestic_representative(empty_structure(U2), SpaceClass.RASTER)
    with pytest.raises(ValueError):
        amnestic_representative(discrete(U2), SpaceClass.TOP)
    raster_not_base = space(
        U3,
        [0b001, 0b011, 0b101, 0b111],
        [0b011, 0b110, 0b111],
        [0b100, 0b101, 0b110, 0b111],
    )
    with pytest.raises(ValueError):
        amnestic_representative(raster_not_base, SpaceClass.PRETOP)


def test_mutual_comparability_is_equality_for_tight_structures():
    for cls in (SpaceClass.RASTER, SpaceClass.PRETOP):
        for s, t in combinations(list(enumerate_spaces(U2, cls)), 2):
            assert not fiber_compare(s, t).equivalent


def test_all_supported_arrows_verify_on_one_point():
    probes = {cls: spaces_up_to(cls, 2) for cls in SpaceClass}
    one = Universe(1)
    for src, dst in (
        (SpaceClass.PRETOP, SpaceClass.TOP),
        (SpaceClass.FILTERBASE, SpaceClass.PRETOP),
        (SpaceClass.CENTERED, SpaceClass.RASTER),
    ):
        for s in enumerate_spaces(one, src, require_nonempty=True):
            assert verify_reflection(s, reflect(s, src, dst), dst, probes[dst])
    for src, dst in (
        (SpaceClass.CENTERED, SpaceClass.FILTERBASE),
        (SpaceClass.RASTER, SpaceClass.PRETOP),
        (SpaceClass.FILTERBASE, SpaceClass.PRETOP),
        (SpaceClass.CENTERED, SpaceClass.RASTER),
    ):
        for s in enumerate_spaces(one, src):
            assert verify_coreflection(s, coreflect(s, src, dst), dst, probes[dst])

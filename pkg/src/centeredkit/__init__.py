"""Finite models of neighborhood structures.

Families of subsets over a finite universe (rasters, filterbases,
filters), centered spaces with their morphisms and convergence, germ
classes, and the categorical constructions relating the structure classes
(initial structures, reflections, coreflections, amnestic representatives),
all backed by exhaustive small-scale verification suites.
"""

from .families import (
    DEFAULT_ENUM_LIMIT,
    HARD_ENUM_LIMIT,
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
from .coincidence import (
    DEFAULT_FUNCTION_LIMIT,
    FiniteFunction,
    RelationReport,
    all_functions,
    analyze_relation,
    coincidence_set,
    filter_witness_triple,
    filterbase_witness_triple,
    related,
    weakly_related,
)
from .spaces import (
    CenteredSpace,
    EventuallyPeriodicSequence,
    SpaceClass,
    centered_at_functions,
    centering_violation,
    classify_space,
    converges,
    discrete,
    discrete_pretopology,
    empty_structure,
    enumerate_spaces,
    germ_class,
    germ_partition,
    indiscrete,
    is_centered,
    is_centered_at,
    is_topological,
    morphism_failure,
    open_sets,
    space_in_class,
    topological_regeneration,
    transport,
    validate_space,
)
from .categories import (
    COREFLECTION_ARROWS,
    REFLECTION_ARROWS,
    Cone,
    FiberComparison,
    amnestic_representative,
    coreflect,
    fiber_compare,
    initial_structure,
    reflect,
    verify_coreflection,
    verify_initial,
    verify_reflection,
)
from .suites import SUITES, SuiteReport, run_suite

__version__ = "0.1.0"

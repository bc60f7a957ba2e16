"""Functions between finite universes and their coincidence-set relations.

Two functions determine the subset of the domain where they agree.  Fixing
a family of subsets turns agreement into two binary relations on the
function space: an exact one (the coincidence set is a member) and a weak
one (the coincidence set contains a member).  Whether these are nontrivial
equivalence relations characterizes filters and filterbases respectively,
and the exhaustive analyzer below is the oracle for that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Literal

from .families import LimitError, SetFamily, Universe, bit_indices, subset_tables

DEFAULT_FUNCTION_LIMIT = 256

RelationMode = Literal["exact", "weak"]


@dataclass(frozen=True)
class FiniteFunction:
    """A total function between finite universes, stored as a value table."""

    domain: Universe
    codomain: Universe
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.domain.size:
            raise ValueError(
                f"value table has {len(self.values)} entries for a domain of size {self.domain.size}"
            )
        for v in self.values:
            self.codomain.check_point(v)

    @classmethod
    def identity(cls, universe: Universe) -> "FiniteFunction":
        return cls(universe, universe, tuple(universe.points()))

    @classmethod
    def constant(cls, domain: Universe, codomain: Universe, value: int) -> "FiniteFunction":
        codomain.check_point(value)
        return cls(domain, codomain, (value,) * domain.size)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def compose(self, inner: "FiniteFunction") -> "FiniteFunction":
        """self after inner."""
        if inner.codomain != self.domain:
            raise ValueError("functions do not compose: codomain and domain differ")
        return FiniteFunction(inner.domain, self.codomain, tuple(self.values[v] for v in inner.values))

    def image(self, mask: int) -> int:
        """Image mask of a subset of the domain."""
        self.domain.check_mask(mask)
        out = 0
        for x in bit_indices(mask):
            out |= 1 << self.values[x]
        return out

    def preimage(self, mask: int) -> int:
        """Preimage mask of a subset of the codomain."""
        self.codomain.check_mask(mask)
        out = 0
        for x, v in enumerate(self.values):
            if (mask >> v) & 1:
                out |= 1 << x
        return out


@lru_cache(maxsize=None)
def _function_space(domain: Universe, codomain: Universe) -> tuple[FiniteFunction, ...]:
    return tuple(
        FiniteFunction(domain, codomain, values)
        for values in product(range(codomain.size), repeat=domain.size)
    )


def all_functions(
    domain: Universe, codomain: Universe, *, limit: int | None = None
) -> tuple[FiniteFunction, ...]:
    """Every function from domain to codomain, ordered by value table.

    Lexicographic order makes every downstream counterexample
    deterministic.  Refuses function spaces above the cap.
    """
    cap = DEFAULT_FUNCTION_LIMIT if limit is None else limit
    count = codomain.size**domain.size
    if count > cap:
        raise LimitError(f"{count} functions exceed the cap of {cap}")
    return _function_space(domain, codomain)


def coincidence_set(f: FiniteFunction, g: FiniteFunction) -> int:
    """Mask of the points where the two functions agree."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("coincidence sets need a shared domain and codomain")
    out = 0
    for x in f.domain.points():
        if f.values[x] == g.values[x]:
            out |= 1 << x
    return out


def _check_family_domain(family: SetFamily, f: FiniteFunction, g: FiniteFunction) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("the two functions need a shared domain and codomain")
    if family.universe != f.domain:
        raise ValueError("family universe differs from the functions' domain")


def related(family: SetFamily, f: FiniteFunction, g: FiniteFunction) -> bool:
    """Exact relation: the coincidence set is a member of the family."""
    _check_family_domain(family, f, g)
    return coincidence_set(f, g) in family


def weakly_related(family: SetFamily, f: FiniteFunction, g: FiniteFunction) -> bool:
    """Weak relation: the coincidence set contains a member of the family."""
    _check_family_domain(family, f, g)
    if family.is_empty:
        raise ValueError("the weak relation is defined for nonempty families only")
    below = subset_tables(family.universe.size)[0]
    return bool(family.bits & below[coincidence_set(f, g)])


@lru_cache(maxsize=None)
def _coincidence_matrix(domain: Universe, codomain: Universe) -> tuple[tuple[int, ...], ...]:
    fns = _function_space(domain, codomain)
    return tuple(tuple(coincidence_set(f, g) for g in fns) for f in fns)


@dataclass(frozen=True)
class RelationReport:
    """Exhaustive audit of one coincidence relation on a function space.

    ``nontrivial`` means some ordered pair is unrelated.  When an axiom
    fails, ``counterexample`` is the lexicographically first violation of
    the first failing axiom (reflexivity, then symmetry, then
    transitivity); when the axioms hold but the relation is trivial it is
    the first related pair, as a re-checkable exhibit of the collapse.
    """

    reflexive: bool
    symmetric: bool
    transitive: bool
    nontrivial: bool
    counterexample: tuple[FiniteFunction, ...] | None

    @property
    def is_equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive

    @property
    def is_nontrivial_equivalence(self) -> bool:
        return self.is_equivalence and self.nontrivial


def analyze_relation(
    family: SetFamily,
    domain: Universe,
    codomain: Universe,
    mode: RelationMode = "exact",
    *,
    limit: int | None = None,
) -> RelationReport:
    """Check one coincidence relation exhaustively over the function space."""
    if mode not in ("exact", "weak"):
        raise ValueError(f"unknown relation mode {mode!r}")
    if family.universe != domain:
        raise ValueError("family universe differs from the requested domain")
    if family.is_empty:
        raise ValueError("coincidence relations are defined for nonempty families only")
    fns = all_functions(domain, codomain, limit=limit)
    coinc = _coincidence_matrix(domain, codomain)
    bits = family.bits
    below = subset_tables(domain.size)[0]
    k = len(fns)

    rows = []
    if mode == "exact":
        for i in range(k):
            row = 0
            crow = coinc[i]
            for j in range(k):
                if (bits >> crow[j]) & 1:
                    row |= 1 << j
            rows.append(row)
    else:
        for i in range(k):
            row = 0
            crow = coinc[i]
            for j in range(k):
                if bits & below[crow[j]]:
                    row |= 1 << j
            rows.append(row)

    everything = (1 << k) - 1
    reflexive = all((rows[i] >> i) & 1 for i in range(k))
    symmetric = True
    sym_pair = None
    for i in range(k):
        for j in range(k):
            if (rows[i] >> j) & 1 != (rows[j] >> i) & 1:
                symmetric = False
                sym_pair = (i, j)
                break
        if not symmetric:
            break
    transitive = True
    trans_triple = None
    for i in range(k):
        ri = rows[i]
        for j in bit_indices(ri):
            missing = rows[j] & ~ri
            if missing:
                transitive = False
                trans_triple = (i, j, (missing & -missing).bit_length() - 1)
                break
        if not transitive:
            break
    nontrivial = any(rows[i] != everything for i in range(k))

    counterexample: tuple[FiniteFunction, ...] | None = None
    if not reflexive:
        i = next(i for i in range(k) if not (rows[i] >> i) & 1)
        counterexample = (fns[i], fns[i])
    elif not symmetric and sym_pair is not None:
        counterexample = (fns[sym_pair[0]], fns[sym_pair[1]])
    elif not transitive and trans_triple is not None:
        counterexample = (fns[trans_triple[0]], fns[trans_triple[1]], fns[trans_triple[2]])
    elif not nontrivial:
        counterexample = (fns[0], fns[min(1, k - 1)])
    return RelationReport(reflexive, symmetric, transitive, nontrivial, counterexample)


def filter_witness_triple(
    a: int,
    b: int,
    y1: int,
    y2: int,
    y3: int,
    domain: Universe,
    codomain: Universe,
) -> tuple[FiniteFunction, FiniteFunction, FiniteFunction]:
    """Three functions realizing prescribed coincidence sets.

    For any subsets a and b, the returned (f, g, h) satisfy
    ``{f=h} = a``, ``{h=g} = b`` and ``{f=g} = a & b``, which is what
    forces membership closure under supersets and intersections out of a
    transitive relation.  Needs three pairwise distinct values.
    """
    domain.check_mask(a)
    domain.check_mask(b)
    for y in (y1, y2, y3):
        codomain.check_point(y)
    if len({y1, y2, y3}) != 3:
        raise ValueError("the three values must be pairwise distinct")
    both = a & b
    either = a | b
    f_vals = []
    g_vals = []
    h_vals = []
    for x in domain.points():
        bit = 1 << x
        if bit & both:
            f_vals.append(y1)
        elif bit & either:
            f_vals.append(y2)
        else:
            f_vals.append(y3)
        g_vals.append(y1 if bit & either else y2)
        h_vals.append(y2 if bit & a & ~b else y1)
    return (
        FiniteFunction(domain, codomain, tuple(f_vals)),
        FiniteFunction(domain, codomain, tuple(g_vals)),
        FiniteFunction(domain, codomain, tuple(h_vals)),
    )


def filterbase_witness_triple(
    a: int,
    b: int,
    y1: int,
    y2: int,
    domain: Universe,
    codomain: Universe,
) -> tuple[FiniteFunction, FiniteFunction, FiniteFunction]:
    """Two-valued variant of :func:`filter_witness_triple`.

    The returned (f, g, h) satisfy ``{g=h} = a``, ``b <= {f=g}`` and
    ``{f=h} = a & b``; two distinct values suffice.
    """
    domain.check_mask(a)
    domain.check_mask(b)
    codomain.check_point(y1)
    codomain.check_point(y2)
    if y1 == y2:
        raise ValueError("the two values must be distinct")
    f_vals = []
    g_vals = []
    h_vals = []
    for x in domain.points():
        bit = 1 << x
        f_vals.append(y1 if bit & b else y2)
        g_vals.append(y1 if bit & (a | b) else y2)
        h_vals.append(y2 if bit & b & ~a else y1)
    return (
        FiniteFunction(domain, codomain, tuple(f_vals)),
        FiniteFunction(domain, codomain, tuple(g_vals)),
        FiniteFunction(domain, codomain, tuple(h_vals)),
    )

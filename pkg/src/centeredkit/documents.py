"""Canonical JSON documents for families, spaces, sequences and cones.

Subsets serialize as sorted arrays of point indices and families as arrays
of subsets sorted by mask value, so serialization is bit-exact on
canonical documents and parsing followed by serialization canonicalizes
anything structurally valid.  Only integers appear; labels can be layered
on top elsewhere.
"""

from __future__ import annotations

import json
from typing import Any

from .coincidence import FiniteFunction
from .families import SetFamily, Universe, mask_of, points_of
from .spaces import CenteredSpace, EventuallyPeriodicSequence
from .categories import Cone


def dumps(doc: dict) -> str:
    """Canonical document text: two-space indent, trailing newline."""
    return json.dumps(doc, indent=2) + "\n"


def _require(cond: bool, where: str, message: str) -> None:
    if not cond:
        raise ValueError(f"{where}: {message}")


def _parse_points(obj: Any, where: str) -> Universe:
    _require(isinstance(obj, dict), where, "expected a JSON object")
    points = obj.get("points")
    _require(isinstance(points, int) and not isinstance(points, bool), where, '"points" must be an integer')
    _require(points >= 1, where, '"points" must be at least 1')
    return Universe(points)


def _parse_subset(entry: Any, universe: Universe, where: str) -> int:
    _require(isinstance(entry, list), where, "a subset must be an array of point indices")
    for i in entry:
        _require(isinstance(i, int) and not isinstance(i, bool), where, "point indices must be integers")
        _require(0 <= i < universe.size, where, f"point {i} is outside a universe of {universe.size} points")
    return mask_of(entry, universe)


def _parse_family(entries: Any, universe: Universe, where: str) -> SetFamily:
    _require(isinstance(entries, list), where, "expected an array of subsets")
    return SetFamily.of(
        universe, (_parse_subset(e, universe, f"{where}[{i}]") for i, e in enumerate(entries))
    )


def family_to_doc(family: SetFamily) -> dict:
    return {
        "points": family.universe.size,
        "members": [list(points_of(m)) for m in family],
    }


def doc_to_family(obj: Any) -> SetFamily:
    universe = _parse_points(obj, "collection")
    _require("members" in obj, "collection", 'missing "members"')
    extra = set(obj) - {"points", "members"}
    _require(not extra, "collection", f"unknown fields {sorted(extra)}")
    return _parse_family(obj["members"], universe, "members")


def space_to_doc(space: CenteredSpace) -> dict:
    return {
        "points": space.universe.size,
        "nu": {
            str(x): [list(points_of(m)) for m in space.nu[x]]
            for x in space.universe.points()
        },
    }


def doc_to_space(obj: Any) -> CenteredSpace:
    universe = _parse_points(obj, "space")
    nu_obj = obj.get("nu")
    _require(isinstance(nu_obj, dict), "space", '"nu" must map point indices to arrays of subsets')
    extra = set(obj) - {"points", "nu"}
    _require(not extra, "space", f"unknown fields {sorted(extra)}")
    families = [SetFamily(universe, 0)] * universe.size
    for key, entries in nu_obj.items():
        _require(
            isinstance(key, str) and key.isdigit(),
            "nu",
            f"key {key!r} is not a point index",
        )
        x = int(key)
        _require(x < universe.size, "nu", f"point {x} is outside a universe of {universe.size} points")
        families[x] = _parse_family(entries, universe, f"nu.{key}")
    return CenteredSpace(universe, tuple(families))


def sequence_to_doc(seq: EventuallyPeriodicSequence) -> dict:
    return {"prefix": list(seq.prefix), "cycle": list(seq.cycle)}


def doc_to_sequence(obj: Any) -> EventuallyPeriodicSequence:
    _require(isinstance(obj, dict), "sequence", "expected a JSON object")
    extra = set(obj) - {"prefix", "cycle"}
    _require(not extra, "sequence", f"unknown fields {sorted(extra)}")
    prefix = obj.get("prefix", [])
    cycle = obj.get("cycle")
    _require(isinstance(prefix, list), "sequence", '"prefix" must be an array')
    _require(isinstance(cycle, list) and cycle, "sequence", '"cycle" must be a nonempty array')
    for v in list(prefix) + list(cycle):
        _require(isinstance(v, int) and not isinstance(v, bool) and v >= 0, "sequence", "entries must be point indices")
    return EventuallyPeriodicSequence(tuple(prefix), tuple(cycle))


def doc_to_cone(obj: Any) -> Cone:
    apex = _parse_points(obj, "cone")
    legs_obj = obj.get("legs")
    _require(isinstance(legs_obj, list), "cone", '"legs" must be an array')
    extra = set(obj) - {"points", "legs"}
    _require(not extra, "cone", f"unknown fields {sorted(extra)}")
    legs = []
    for i, leg_obj in enumerate(legs_obj):
        where = f"legs[{i}]"
        _require(isinstance(leg_obj, dict), where, "expected an object with space and map")
        _require("space" in leg_obj and "map" in leg_obj, where, 'needs "space" and "map"')
        space = doc_to_space(leg_obj["space"])
        table = leg_obj["map"]
        _require(isinstance(table, list) and len(table) == apex.size, where, f'"map" must list {apex.size} values')
        for v in table:
            _require(isinstance(v, int) and not isinstance(v, bool), where, "map values must be integers")
            _require(0 <= v < space.universe.size, where, f"map value {v} is outside the leg universe")
        legs.append((space, FiniteFunction(apex, space.universe, tuple(table))))
    return Cone(apex, tuple(legs))


def function_to_doc(f: FiniteFunction) -> list[int]:
    return list(f.values)

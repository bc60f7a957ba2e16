"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 cap
refusal.  Output on stdout is deterministic for fixed inputs and flags;
timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import documents
from .categories import COREFLECTION_ARROWS, REFLECTION_ARROWS, coreflect, initial_structure, reflect
from .families import (
    HARD_ENUM_LIMIT,
    LimitError,
    Universe,
    classify_family,
    generated_filter,
    intersection_closure,
    points_of,
    up_closure,
)
from .spaces import (
    SpaceClass,
    centering_violation,
    classify_space,
    converges,
    discrete,
    germ_partition,
    space_in_class,
)
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3

ENUM_ENV_VAR = "CENTEREDKIT_MAX_ENUM"

_CLASS_BY_NAME = {cls.value.lower(): cls for cls in SpaceClass}


def _load(path: str) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"parse error in {path} at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _parse_class(name: str) -> SpaceClass:
    cls = _CLASS_BY_NAME.get(name.lower())
    if cls is None:
        raise ValueError(f"unknown category {name!r}; expected one of {[c.value for c in SpaceClass]}")
    return cls


def _checked_space(obj: object):
    space = documents.doc_to_space(obj)
    bad = centering_violation(space)
    if bad is not None:
        x, mask = bad
        raise ValueError(
            f"invalid space: point {x} is missing from its probe {list(points_of(mask))}"
        )
    return space


def _enum_limit_from_env() -> int | None:
    raw = os.environ.get(ENUM_ENV_VAR)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENUM_ENV_VAR} must be an integer, got {raw!r}") from exc
    return min(value, HARD_ENUM_LIMIT)


def _flags_line(kind) -> str:
    yn = lambda b: "yes" if b else "no"
    return f"raster: {yn(kind.is_raster)}, filterbase: {yn(kind.is_filterbase)}, filter: {yn(kind.is_filter)}"


def _emit(doc: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        sys.stdout.write(documents.dumps(doc))
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _cmd_classify(args) -> int:
    obj = _load(args.file)
    if isinstance(obj, dict) and "nu" in obj:
        space = _checked_space(obj)
        per_point = []
        lines = []
        for x in space.universe.points():
            family = space.nu[x]
            if family.is_empty:
                kind = None
                lines.append(f"point {x}: empty probe family")
                per_point.append(
                    {"raster": False, "filterbase": False, "filter": False, "empty": True}
                )
            else:
                kind = classify_family(family)
                lines.append(f"point {x}: {_flags_line(kind)}")
                per_point.append(
                    {
                        "raster": kind.is_raster,
                        "filterbase": kind.is_filterbase,
                        "filter": kind.is_filter,
                        "empty": False,
                    }
                )
        cls = classify_space(space)
        lines.append(f"class: {cls.value}")
        _emit(
            {"points": space.universe.size, "per_point": per_point, "class": cls.value},
            args.format,
            lines,
        )
        return EXIT_OK
    if isinstance(obj, dict) and "members" in obj:
        family = documents.doc_to_family(obj)
        kind = classify_family(family)
        _emit(
            {
                "raster": kind.is_raster,
                "filterbase": kind.is_filterbase,
                "filter": kind.is_filter,
            },
            args.format,
            [_flags_line(kind)],
        )
        return EXIT_OK
    raise ValueError('document is neither a space ("nu") nor a collection ("members")')


def _cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        print("available suites:", file=sys.stderr)
        for name in sorted(SUITES):
            print(f"  {name}: {SUITES[name].summary}", file=sys.stderr)
        return EXIT_INPUT
    report = run_suite(
        args.suite,
        args.max_points,
        args.max_colors,
        enum_limit=_enum_limit_from_env(),
    )
    if args.format == "json":
        sys.stdout.write(documents.dumps(report.to_dict()))
    else:
        lines = [f"suite: {report.suite}", f"cases: {report.cases}", f"failures: {len(report.failures)}"]
        lines.extend(f"failure: {json.dumps(f, sort_keys=True)}" for f in report.failures)
        sys.stdout.write("\n".join(lines) + "\n")
    print(f"elapsed: {report.seconds:.3f}s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAILURES


def _resolve_reflection_source(space, target: SpaceClass, given: SpaceClass | None) -> SpaceClass:
    if given is not None:
        return given
    for source_cls, target_cls in REFLECTION_ARROWS:
        if target_cls is target:
            return source_cls
    raise ValueError(f"no reflection lands in {target.value}")


def _resolve_coreflection_source(space, target: SpaceClass, given: SpaceClass | None) -> SpaceClass:
    if given is not None:
        return given
    for source_cls, target_cls in COREFLECTION_ARROWS:
        if target_cls is target and space_in_class(space, source_cls):
            return source_cls
    raise ValueError(f"no supported coreflection takes this space into {target.value}")


def _cmd_transform(args) -> int:
    op = args.op
    if op in ("up", "cap", "filter"):
        if len(args.files) != 1:
            raise ValueError(f"transform {op} expects exactly one collection file")
        family = documents.doc_to_family(_load(args.files[0]))
        result = {"up": up_closure, "cap": intersection_closure, "filter": generated_filter}[op](family)
        sys.stdout.write(documents.dumps(documents.family_to_doc(result)))
        return EXIT_OK
    if op in ("reflect", "coreflect"):
        if len(args.files) != 1:
            raise ValueError(f"transform {op} expects exactly one space file")
        if args.category is None:
            raise ValueError(f"transform {op} needs --category (the target class)")
        target = _parse_class(args.category)
        source = _parse_class(args.source) if args.source else None
        space = _checked_space(_load(args.files[0]))
        if op == "reflect":
            result = reflect(space, _resolve_reflection_source(space, target, source), target)
        else:
            result = coreflect(space, _resolve_coreflection_source(space, target, source), target)
        sys.stdout.write(documents.dumps(documents.space_to_doc(result)))
        return EXIT_OK
    if op == "initial":
        if len(args.files) != 1:
            raise ValueError("transform initial expects exactly one cone file")
        if args.category is None:
            raise ValueError("transform initial needs --category")
        cone = documents.doc_to_cone(_load(args.files[0]))
        for leg_space, _ in cone.legs:
            bad = centering_violation(leg_space)
            if bad is not None:
                raise ValueError(
                    f"invalid leg space: point {bad[0]} is missing from its probe"
                )
        result = initial_structure(cone, _parse_class(args.category))
        sys.stdout.write(documents.dumps(documents.space_to_doc(result)))
        return EXIT_OK
    raise ValueError(f"unknown transform {op!r}")


def _cmd_converges(args) -> int:
    space = _checked_space(_load(args.space))
    seq = documents.doc_to_sequence(_load(args.sequence))
    space.universe.check_point(args.point)
    answer = converges(space, seq, args.point)
    if args.format == "json":
        sys.stdout.write(documents.dumps({"point": args.point, "converges": answer}))
    else:
        sys.stdout.write(f"converges: {'yes' if answer else 'no'}\n")
    return EXIT_OK


def _cmd_germs(args) -> int:
    space = _checked_space(_load(args.space))
    space.universe.check_point(args.point)
    if args.colors < 2:
        raise ValueError("germ classes need at least two target points")
    target = discrete(Universe(args.colors))
    parts = germ_partition(space, args.point, target, everywhere=args.everywhere)
    total = sum(len(p) for p in parts)
    if args.format == "json":
        sys.stdout.write(
            documents.dumps(
                {
                    "point": args.point,
                    "functions": total,
                    "classes": [[list(f.values) for f in part] for part in parts],
                }
            )
        )
    else:
        lines = [f"point: {args.point}", f"functions: {total}", f"classes: {len(parts)}"]
        for i, part in enumerate(parts):
            shown = ", ".join(str(list(f.values)) for f in part)
            lines.append(f"class {i} ({len(part)}): {shown}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centeredkit",
        description="Classify, transform and exhaustively verify finite neighborhood structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="classify a collection or space document")
    classify.add_argument("file")
    classify.add_argument("--format", choices=("text", "json"), default="text")
    classify.set_defaults(handler=_cmd_classify)

    verify = sub.add_parser("verify", help="run one exhaustive verification suite")
    verify.add_argument("--suite", required=True)
    verify.add_argument("--max-points", type=int, default=None)
    verify.add_argument("--max-colors", type=int, default=None)
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.set_defaults(handler=_cmd_verify)

    transform = sub.add_parser("transform", help="apply a closure or categorical operation")
    transform.add_argument("op", choices=("up", "cap", "filter", "reflect", "coreflect", "initial"))
    transform.add_argument("files", nargs="*")
    transform.add_argument("--category", default=None)
    transform.add_argument("--from", dest="source", default=None)
    transform.add_argument("--format", choices=("text", "json"), default="json")
    transform.set_defaults(handler=_cmd_transform)

    conv = sub.add_parser("converges", help="decide convergence of an eventually periodic sequence")
    conv.add_argument("space")
    conv.add_argument("sequence")
    conv.add_argument("--point", type=int, required=True)
    conv.add_argument("--format", choices=("text", "json"), default="text")
    conv.set_defaults(handler=_cmd_converges)

    germs = sub.add_parser("germs", help="partition point-centered functions into germ classes")
    germs.add_argument("space")
    germs.add_argument("--point", type=int, required=True)
    germs.add_argument("--colors", type=int, required=True)
    germs.add_argument("--everywhere", action="store_true")
    germs.add_argument("--format", choices=("text", "json"), default="text")
    germs.set_defaults(handler=_cmd_germs)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except LimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())

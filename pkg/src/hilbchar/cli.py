"""Command line front end.

Subcommands::

    hilbchar coeffs --class chern --order 5
    hilbchar taut   --class todd --order 6 [--n 2 --gamma 2]
    hilbchar ch     --order 6 [--n 3 --abstract]
    hilbchar state  --class chern --n 2 --gamma 3
    hilbchar verify --checks all --gamma 2,3 --class chern,todd --order 6

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import engine, oracle
from .fock import H_CLASS, SurfaceModel
from .rings import RATIONALS, TruncPoly, format_element, parse_ring

CHECKS = ("defw", "z2", "z3", "dots", "cases", "readoff", "dual", "plane")


class UsageError(Exception):
    pass


def load_spec_file(path: str) -> engine.ClassSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
        ring = parse_ring(data.get("ring", "rationals"))
        coeffs = data["f"]
        if not isinstance(coeffs, list):
            raise ValueError("'f' must be a list")
        parsed = []
        for c in coeffs:
            if isinstance(c, list):
                parsed.append(ring([Fraction(v) for v in c]))
            else:
                parsed.append(ring(Fraction(c)))
        return engine.ClassSpec.from_coefficients(str(data.get("name", path)), parsed, ring)
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed spec file {path}: {exc}") from exc


def resolve_class(name=None, spec_file=None) -> engine.ClassSpec:
    if spec_file:
        return load_spec_file(spec_file)
    if name is None:
        raise UsageError("one of --class or --spec-file is required")
    if name.startswith("random"):
        seed = name[len("random"):]
        return oracle.random_class(int(seed)) if seed else oracle.random_class()
    try:
        return engine.builtin(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


def _serialize(value):
    if isinstance(value, TruncPoly):
        return format_element(value)
    return format_element(Fraction(value))


def tables_to_json(name: str, tables: engine.CoefficientTables) -> dict:
    out = {
        "class": name,
        "order": tables.order,
        "kind": tables.kind,
        "a": [_serialize(v) for v in tables.a_list()],
        "b": [_serialize(v) for v in tables.b_list()],
    }
    if tables.c is not None:
        out["c"] = [_serialize(v) for v in tables.c_list()]
    out["akl"] = [[_serialize(v) for v in row] for row in tables.akl_rows()]
    return out


def dump_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def tables_to_text(name: str, tables: engine.CoefficientTables) -> str:
    lines = [f"# {tables.kind} coefficients, class {name}, order {tables.order}"]
    for label, values in (("a", tables.a_list()), ("b", tables.b_list()), ("c", tables.c_list())):
        if values is None:
            continue
        for k, v in enumerate(values, 1):
            lines.append(f"{label}_{k} = {_serialize(v)}")
    for (k, l) in sorted(tables.akl):
        lines.append(f"a_{k},{l} = {_serialize(tables.akl[(k, l)])}")
    return "\n".join(lines)


def state_to_json(state) -> list:
    out = []
    for mono, c in state:
        gens = []
        for g in mono:
            if g.label == "Q":
                gens.append([[g.k, g.l], "1"])
            else:
                gens.append([g.k, g.label])
        out.append({"coeff": _serialize(c), "monomial": gens})
    return out


def _emit_state(state, fmt):
    if fmt == "json":
        print(dump_json(state_to_json(state)))
    else:
        print(state)


def _emit_tables(name, tables, fmt):
    if fmt == "json":
        print(dump_json(tables_to_json(name, tables)))
    else:
        print(tables_to_text(name, tables))


def _surface(args):
    if getattr(args, "abstract", False) or args.gamma is None:
        return None
    gamma = int(args.gamma)
    if gamma < 2:
        raise UsageError("--gamma must be >= 2")
    return SurfaceModel(gamma)


def cmd_coeffs(args) -> int:
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    if args.cls == "ch" and not args.spec_file:
        _emit_tables("ch", engine.chern_character_tables(args.order), args.format)
        return 0
    spec = resolve_class(args.cls, args.spec_file)
    _emit_tables(spec.name, engine.tangent_coefficients(spec, args.order), args.format)
    return 0


def cmd_taut(args) -> int:
    spec = resolve_class(args.cls, args.spec_file)
    if args.n is None:
        if args.order < 1:
            raise UsageError("--order must be >= 1")
        _emit_tables(spec.name, engine.tautological_coefficients(spec, args.order), args.format)
        return 0
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    surface = _surface(args)
    state = engine.tautological_class_state(spec, args.n, surface=surface,
                                            F_class=H_CLASS if surface else None)
    _emit_state(state, args.format)
    return 0


def cmd_ch(args) -> int:
    if args.n is None:
        if args.order < 1:
            raise UsageError("--order must be >= 1")
        _emit_tables("ch", engine.chern_character_tables(args.order), args.format)
        return 0
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    _emit_state(engine.chern_character_state(args.n, surface=_surface(args)), args.format)
    return 0


def cmd_state(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    surface = _surface(args)
    if args.cls == "ch" and not args.spec_file:
        state = engine.chern_character_state(args.n, surface=surface)
    else:
        spec = resolve_class(args.cls, args.spec_file)
        state = engine.tangent_class_state(spec, args.n, surface=surface)
    _emit_state(state, args.format)
    return 0


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def run_checks(checks, gammas, classes, order) -> list:
    reports = []
    for check in checks:
        if check == "cases":
            reports.append(oracle.verify_cases(order))
        elif check == "dual":
            reports.append(oracle.verify_dual(order))
        for spec in classes:
            if check == "defw":
                reports.extend(oracle.verify_defw(g, spec, order) for g in gammas)
            elif check == "z2":
                reports.append(oracle.verify_lemma_z2(spec, order))
            elif check == "z3":
                reports.append(oracle.verify_lemma_z3(spec, order))
            elif check == "dots":
                reports.extend(oracle.verify_lemma_dots(spec, n, order) for n in range(min(order, 6) + 1))
            elif check == "readoff":
                reports.append(oracle.verify_readoff(spec, order))
            elif check == "plane":
                reports.append(oracle.verify_affine_plane(spec, order))
    return reports


def cmd_verify(args) -> int:
    checks = [c for c in args.checks.split(",") if c]
    if "all" in checks:
        checks = list(CHECKS)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise UsageError(f"unknown checks: {', '.join(sorted(unknown))}")
    gammas = _int_list(args.gamma)
    if any(g < 2 for g in gammas):
        raise UsageError("--gamma values must be >= 2")
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    classes = [resolve_class(c) for c in args.cls.split(",") if c]
    if args.spec_file:
        classes.append(load_spec_file(args.spec_file))
    reports = run_checks(checks, gammas, classes, args.order)
    if args.format == "json":
        print(dump_json([
            {"check": r.name, "passed": r.passed,
             "mismatch": None if r.mismatch is None else list(r.mismatch)}
            for r in reports
        ]))
    else:
        for r in reports:
            print(r.line())
        failed = sum(not r.passed for r in reports)
        print(f"# {len(reports) - failed}/{len(reports)} checks passed")
    return 0 if all(reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbchar", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order_default=8):
        p.add_argument("--class", dest="cls", help="built-in class name (chern, todd, a_hat, l_genus, "
                       "ch_dual, trivial, randomSEED) or 'ch'")
        p.add_argument("--spec-file", help="JSON file with name, f and optional ring")
        p.add_argument("--order", type=int, default=order_default)
        p.add_argument("--format", choices=("text", "json"), default="text")

    def where(p):
        p.add_argument("--gamma", help="surface parameter (>= 2)")
        p.add_argument("--abstract", action="store_true", help="keep K, F and diagonal operators symbolic")

    p = sub.add_parser("coeffs", help="tangent coefficient tables")
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("taut", help="tautological bundle tables or states")
    common(p)
    p.add_argument("--n", type=int)
    where(p)
    p.set_defaults(func=cmd_taut)

    p = sub.add_parser("ch", help="Chern character tables or states")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--n", type=int)
    where(p)
    p.set_defaults(func=cmd_ch)

    p = sub.add_parser("state", help="weight-n class of the tangent bundle")
    common(p)
    p.add_argument("--n", type=int, required=True)
    where(p)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("verify", help="run localization checks")
    p.add_argument("--checks", default="all", help=f"comma list from {', '.join(CHECKS)}, all")
    p.add_argument("--gamma", default="2,3")
    p.add_argument("--class", dest="cls", default="chern,todd")
    p.add_argument("--spec-file")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hilbchar: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: parse, verify, resolve, canonicalize, normalize, audit, sweep.
Reports are deterministic structured text (graph exports in DOT form with
--format graph); identical configuration and seed give identical bytes.
Exit status 0 on success, 1 when an asserted property fails, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from .field import GF
from .poly import Polynomial, parse_poly, ParseError
from .cover import localize
from .families import (parse_family, build_family, verify_family, euler_audit,
                       canonicalize_z2, canonicalize_alpha2, normalize_unit,
                       random_family, GeneralFormZ2, GeneralFormA2, KINDS,
                       InadmissibleParameter, WouldBeNonisolated,
                       ObstructedReduction, RootUnavailable, AuditMismatch)
from .resolution import resolve_point


def _field(ns) -> "FieldSpec":
    modulus = int(ns.modulus, 16) if ns.modulus else None
    return GF(ns.field, modulus)


def _emit(ns, text: str) -> None:
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_parse(ns) -> int:
    spec = _field(ns)
    p = parse_poly(ns.expression, spec)
    _emit(ns, str(p))
    return 0


def cmd_verify(ns) -> int:
    spec = _field(ns)
    fs = parse_family(ns.family, spec)
    rep = verify_family(fs)
    _emit(ns, "\n".join(rep.lines()))
    return 0 if rep.ok else 1


def cmd_resolve(ns) -> int:
    spec = _field(ns)
    fs = parse_family(ns.family, spec)
    c = build_family(fs)
    if ns.at == "y" and KINDS[fs.kind]["type"] != "z2":
        raise InadmissibleParameter("only the z2 kinds have a singular point at y=t=0")
    ones = ("y", "s") if ns.at == "x" else ("x", "s")
    seed_var = "x" if ns.at == "x" else "y"
    loc = localize(c, ones)
    log = resolve_point(loc, (0, 0),
                        seeds={"F": Polynomial.variable(loc.spec, seed_var)},
                        step_limit=ns.steps)
    if ns.format == "graph":
        _emit(ns, log.graph.to_dot())
    else:
        _emit(ns, log.serialize())
    return 0


def cmd_canonicalize(ns) -> int:
    spec = _field(ns)
    kind, _, rest = ns.form.partition(":")
    coeffs: dict[str, int] = {}
    if rest:
        for item in rest.split(","):
            name, _, val = item.partition("=")
            coeffs[name.strip()] = spec.parse(val)
    if kind == "genz2":
        a = {}
        b = {}
        for name, val in coeffs.items():
            i, j = int(name[1]), int(name[2])
            (a if name[0] == "a" else b)[(i, j)] = val
        can, log = canonicalize_z2(GeneralFormZ2(spec, a, b))
        lines = [f"canonical {can.support_report()}"] + log
    elif kind == "gena2":
        fs, log = canonicalize_alpha2(GeneralFormA2(spec, coeffs))
        lines = [f"canonical {fs.serialize()}"] + log
    else:
        raise InadmissibleParameter("form must be genz2:... or gena2:...")
    _emit(ns, "\n".join(lines))
    return 0


def cmd_normalize(ns) -> int:
    spec = _field(ns)
    fs = parse_family(ns.family, spec)
    out, sc = normalize_unit(fs)
    lines = [f"normalized {out.serialize()}"]
    for u in ("k", "lz", "lx", "ly", "ls", "lt"):
        e = sc.exponents[u][0]
        lines.append(f"{u} = {sc.designated}^({e}) = {spec.format(sc.values[u])}")
    _emit(ns, "\n".join(lines))
    return 0


def cmd_audit(ns) -> int:
    spec = _field(ns)
    rng = random.Random(ns.seed)
    lines = []
    ok = True
    base = parse_family(ns.family, spec)
    types_seen = set()
    for i in range(ns.sweep):
        fs = base if i == 0 else random_family(base.kind, spec, rng)
        rep = euler_audit(fs)
        ok = ok and rep.ok
        for ef in rep.extra_fibers:
            if ef.intersection_type:
                types_seen.add(ef.intersection_type)
        lines.append(f"run {i}: " + "; ".join(rep.lines()[1:]))
    lines.append(f"types-observed {sorted(types_seen)}")
    _emit(ns, "\n".join(lines))
    return 0 if ok else 1


def cmd_sweep(ns) -> int:
    spec = _field(ns)
    rng = random.Random(ns.seed)
    kind = ns.family.partition(":")[0]
    fails = 0
    lines = []
    for i in range(ns.sweep):
        fs = random_family(kind, spec, rng)
        rep = verify_family(fs)
        fails += 0 if rep.ok else 1
        lines.append(f"run {i}: {fs.serialize()} {'pass' if rep.ok else 'FAIL'}")
    lines.append(f"failures {fails}/{ns.sweep}")
    _emit(ns, "\n".join(lines))
    return 0 if fails == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=5, metavar="K",
                        help="extension degree k of GF(2^k) (default 5)")
    common.add_argument("--modulus", metavar="HEX",
                        help="irreducible modulus bitmask (default: smallest)")
    common.add_argument("--seed", type=int, default=0, help="sweep seed")
    common.add_argument("--sweep", type=int, default=20, help="sweep count")
    common.add_argument("--steps", type=int, default=32, help="blow-up budget")
    common.add_argument("--format", choices=("text", "graph"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here")
    ap = argparse.ArgumentParser(
        prog="enriques2", parents=[common],
        description="construct, canonicalize, resolve and audit the"
                    " characteristic-two double-cover equation families")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text, func, *args):
        p = sub.add_parser(name, help=help_text, parents=[common])
        for flags, kwargs in args:
            p.add_argument(*flags, **kwargs)
        p.set_defaults(func=func)
        return p

    add("parse", "parse and canonically echo a polynomial", cmd_parse,
        (("expression",), {}))
    add("verify", "full verification of one family member", cmd_verify,
        (("--family",), {"required": True}))
    add("resolve", "resolution log at a singular point", cmd_resolve,
        (("--family",), {"required": True}),
        (("--at",), {"choices": ("x", "y"), "default": "x"}))
    add("canonicalize", "reduce a general form", cmd_canonicalize,
        (("--form",), {"required": True,
                       "help": "genz2:a37=...,b23=... or gena2:w=...,wp=..."}))
    add("normalize", "rescale an alpha2 family to unit parameter", cmd_normalize,
        (("--family",), {"required": True}))
    add("audit", "Euler-contribution audit over a sweep", cmd_audit,
        (("--family",), {"required": True}))
    add("sweep", "verify a family over seeded random parameters", cmd_sweep,
        (("--family",), {"required": True}))
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return ns.func(ns)
    except (InadmissibleParameter, WouldBeNonisolated, ObstructedReduction,
            RootUnavailable, ParseError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except AuditMismatch as exc:
        sys.stderr.write(f"property violation: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

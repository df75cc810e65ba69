"""The six equation families, their transformations, and the end-to-end audits.

Families are keyed z2-e6, z2-e7, z2-e8, a2-e6, a2-e7, a2-e8; a FamilySpec
holds the free parameters as field elements (the designated one nonzero).
Degeneration sets v, b32 (z2) or w, b50 (a2) to zero one arrow at a time.
canonicalize_z2 reduces a general equation to the nine-coefficient shape
by rescaling x, y, t, killing the x^5*y^5*s^4 slot with t -> t + r*s*x*y,
and removing the squares that shift reintroduces; the three side
conditions are solved jointly because the final z-shift feeds back into
the slot the t-shift just cleared.  normalize_unit solves the
multiplicative rescaling systems exactly over the rationals and realizes
the fractional powers with sqrt and odd-root chains.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import FieldSpec, FieldElement, NonUniqueRoot
from .poly import Polynomial, var_id, X, Y, S, T
from . import cover as cover_mod
from .cover import DoubleCover, localize, even_part, split_fiber, singular_points_masks
from . import resolution as res_mod
from .resolution import (resolve_point, euler_contribution, a1star_graph,
                         r_intersection_type, DualGraph, ResolutionLog)


class InadmissibleParameter(ValueError):
    pass


class WouldBeNonisolated(ValueError):
    pass


class ObstructedReduction(ValueError):
    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(message or f"reduction obstructed at {condition}")


class RootUnavailable(ValueError):
    pass


class AuditMismatch(AssertionError):
    pass


KINDS = {
    "z2-e6": {"params": ("v", "b32", "a53"), "nonzero": "v",
              "label": "E6~", "type": "z2"},
    "z2-e7": {"params": ("b32", "a53"), "nonzero": "b32",
              "label": "E7~", "type": "z2"},
    "z2-e8": {"params": ("a53",), "nonzero": "a53",
              "label": "E8~", "type": "z2"},
    "a2-e6": {"params": ("w", "b50", "a80"), "nonzero": "w",
              "label": "E6~", "type": "a2"},
    "a2-e7": {"params": ("b50", "a80"), "nonzero": "b50",
              "label": "E7~", "type": "a2"},
    "a2-e8": {"params": ("a80",), "nonzero": "a80",
              "label": "E8~", "type": "a2"},
}

DEGENERATION = {"z2-e6": ("z2-e7", "v"), "z2-e7": ("z2-e8", "b32"),
                "a2-e6": ("a2-e7", "w"), "a2-e7": ("a2-e8", "b50")}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: dict

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InadmissibleParameter(f"unknown family kind {self.kind!r}")
        meta = KINDS[self.kind]
        if set(self.params) != set(meta["params"]):
            raise InadmissibleParameter(
                f"{self.kind} takes parameters {meta['params']}")
        nz = meta["nonzero"]
        if not self.params[nz]:
            raise InadmissibleParameter(f"{self.kind} requires {nz} != 0")
        specs = {p.spec for p in self.params.values()}
        if len(specs) != 1:
            raise InadmissibleParameter("parameters from different fields")

    @property
    def field(self) -> FieldSpec:
        return next(iter(self.params.values())).spec

    def bits(self, name: str) -> int:
        return self.params[name].bits

    def serialize(self) -> str:
        meta = KINDS[self.kind]
        parts = [f"{n}={self.field.format(self.bits(n))}" for n in meta["params"]]
        return f"{self.kind}:{','.join(parts)}"

    def __str__(self) -> str:
        return self.serialize()


def parse_family(text: str, field: FieldSpec) -> FamilySpec:
    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    if kind not in KINDS:
        raise InadmissibleParameter(f"unknown family kind {kind!r}")
    params: dict[str, FieldElement] = {}
    if rest:
        for item in rest.split(","):
            name, _, val = item.partition("=")
            if not _ or name.strip() not in KINDS[kind]["params"]:
                raise InadmissibleParameter(f"bad parameter assignment {item!r}")
            params[name.strip()] = field.element(field.parse(val))
    for name in KINDS[kind]["params"]:
        params.setdefault(name, field.element(0))
    return FamilySpec(kind, params)


# ----------------------------------------------------------------------
# construction

def _mono(*pairs) -> tuple:
    return tuple(sorted((v, e) for v, e in pairs if e))


def build_family(fs: FamilySpec) -> DoubleCover:
    """The exact theorem equation of the family, parameters substituted."""
    spec = fs.field
    kind = fs.kind
    g = Polynomial.zero(spec)
    f = Polynomial.zero(spec)

    def add(p, c, *pairs):
        return p + Polynomial.monomial(spec, _mono(*pairs), c)

    if KINDS[kind]["type"] == "z2":
        a53 = fs.bits("a53")
        b32 = fs.bits("b32") if "b32" in fs.params else 0
        v = fs.bits("v") if "v" in fs.params else 0
        v2, v3 = spec.sqr(v), spec.mul(v, spec.sqr(v))
        g = add(g, b32, (X, 3), (Y, 2), (S, 2))
        g = add(g, v2, (X, 2), (Y, 1), (S, 1), (T, 1))
        f = add(f, 1, (X, 3), (Y, 7), (S, 4))
        f = add(f, 1, (X, 7), (Y, 3), (S, 4))
        f = add(f, v3, (X, 4), (Y, 4), (S, 3), (T, 1))
        f = add(f, a53, (X, 5), (Y, 3), (S, 3), (T, 1))
        f = add(f, v2, (X, 3), (Y, 3), (S, 2), (T, 2))
        f = add(f, 1, (X, 1), (Y, 1), (T, 4))
    else:
        a80 = fs.bits("a80")
        b50 = fs.bits("b50") if "b50" in fs.params else 0
        w = fs.bits("w") if "w" in fs.params else 0
        g = add(g, w, (X, 4), (Y, 1), (S, 2))
        g = add(g, b50, (X, 5), (S, 2))
        f = add(f, 1, (X, 3), (Y, 7), (S, 4))
        f = add(f, w, (X, 5), (Y, 3), (S, 3), (T, 1))
        f = add(f, a80, (X, 8), (S, 3), (T, 1))
        f = add(f, w, (X, 4), (S, 1), (T, 3))
        f = add(f, 1, (X, 1), (Y, 1), (T, 4))
    return DoubleCover(g, f)


def degenerate(fs: FamilySpec) -> FamilySpec:
    """One arrow of the degeneration lattice: set the shared parameter to zero."""
    if fs.kind not in DEGENERATION:
        raise InadmissibleParameter(f"{fs.kind} does not degenerate further")
    target, dropped = DEGENERATION[fs.kind]
    nz = KINDS[target]["nonzero"]
    new_params = {n: p for n, p in fs.params.items() if n != dropped}
    if not new_params[nz]:
        raise WouldBeNonisolated(
            f"setting {dropped} = 0 forces {nz} != 0 to avoid a non-isolated"
            f" singularity")
    return FamilySpec(target, new_params)


# ----------------------------------------------------------------------
# general forms

_Z2_A_SUPPORT = {(i, d - i) for d in (10, 8, 6, 4, 2) for i in range(d + 1)}
_Z2_B_SUPPORT = {(i, d - i) for d in (5, 3, 1) for i in range(d + 1)}
_Z2_ST = {10: (4, 0), 8: (3, 1), 6: (2, 2), 4: (1, 3), 2: (0, 4)}
_Z2_B_ST = {5: (2, 0), 3: (1, 1), 1: (0, 2)}


@dataclass
class GeneralFormZ2:
    """Full coefficient record of the bigraded general equation (z2 side)."""

    spec: FieldSpec
    a: dict = dc_field(default_factory=dict)   # (i, j) -> mask
    b: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for key in self.a:
            if key not in _Z2_A_SUPPORT:
                raise ValueError(f"a{key} outside the general support")
        for key in self.b:
            if key not in _Z2_B_SUPPORT:
                raise ValueError(f"b{key} outside the general support")
        self.a = {k: v for k, v in self.a.items() if v}
        self.b = {k: v for k, v in self.b.items() if v}

    def to_cover(self) -> DoubleCover:
        spec = self.spec
        f = Polynomial.zero(spec)
        g = Polynomial.zero(spec)
        for (i, j), c in sorted(self.a.items()):
            es, et = _Z2_ST[i + j]
            f = f + Polynomial.monomial(spec, _mono((X, i), (Y, j), (S, es), (T, et)), c)
        for (i, j), c in sorted(self.b.items()):
            es, et = _Z2_B_ST[i + j]
            g = g + Polynomial.monomial(spec, _mono((X, i), (Y, j), (S, es), (T, et)), c)
        return DoubleCover(g, f)


_A2_FIELDS = ("w", "wp", "b41", "b50", "b30", "a62", "a71", "a80", "a51")


@dataclass
class GeneralFormA2:
    """Coefficient record of the alpha2 general display (shared w, w')."""

    spec: FieldSpec
    coeffs: dict = dc_field(default_factory=dict)  # name -> mask

    def __post_init__(self):
        for key in self.coeffs:
            if key not in _A2_FIELDS:
                raise ValueError(f"{key} is not an alpha2 general coefficient")
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def get(self, name: str) -> int:
        return self.coeffs.get(name, 0)

    def to_cover(self) -> DoubleCover:
        spec = self.spec
        c = self.get
        g = Polynomial.zero(spec)
        f = Polynomial.zero(spec)

        def add(p, cc, *pairs):
            return p + Polynomial.monomial(spec, _mono(*pairs), cc)

        g = add(g, c("wp"), (X, 3), (Y, 2), (S, 2))
        g = add(g, c("b41"), (X, 4), (Y, 1), (S, 2))
        g = add(g, c("b50"), (X, 5), (S, 2))
        g = add(g, c("b30"), (X, 3), (S, 1), (T, 1))
        f = add(f, 1, (X, 3), (Y, 7), (S, 4))
        f = add(f, c("wp"), (X, 4), (Y, 4), (S, 3), (T, 1))
        f = add(f, c("w"), (X, 5), (Y, 3), (S, 3), (T, 1))
        f = add(f, c("a62"), (X, 6), (Y, 2), (S, 3), (T, 1))
        f = add(f, c("a71"), (X, 7), (Y, 1), (S, 3), (T, 1))
        f = add(f, c("a80"), (X, 8), (S, 3), (T, 1))
        f = add(f, c("a51"), (X, 5), (Y, 1), (S, 2), (T, 2))
        f = add(f, c("wp"), (X, 3), (Y, 1), (S, 1), (T, 3))
        f = add(f, c("w"), (X, 4), (S, 1), (T, 3))
        f = add(f, 1, (X, 1), (Y, 1), (T, 4))
        return DoubleCover(g, f)


# ----------------------------------------------------------------------
# exponent systems (multiplicative Gauss elimination over the rationals)

_UNKNOWNS = ("k", "lz", "lx", "ly", "ls", "lt")


def _solve_exponents(rows, gauge) -> dict:
    """Solve sum_i e_i * r_i = rhs for Fraction-vector unknowns.

    rows: list of (coeff dict over _UNKNOWNS, rhs vector tuple of Fractions).
    gauge: unknowns pinned to zero.  Raises on inconsistency.
    """
    free = [u for u in _UNKNOWNS if u not in gauge]
    width = len(rows[0][1])
    mat = []
    for coeffs, rhs in rows:
        mat.append(([Fraction(coeffs.get(u, 0)) for u in free],
                    [Fraction(x) for x in rhs]))
    sol: dict[str, list[Fraction]] = {u: [Fraction(0)] * width for u in gauge}
    piv = {}
    r = 0
    work = [row for row in mat]
    for ci in range(len(free)):
        p = None
        for i in range(r, len(work)):
            if work[i][0][ci] != 0:
                p = i
                break
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = 1 / work[r][0][ci]
        work[r] = ([x * inv for x in work[r][0]], [x * inv for x in work[r][1]])
        for i in range(len(work)):
            if i != r and work[i][0][ci] != 0:
                fct = work[i][0][ci]
                work[i] = ([a - fct * b for a, b in zip(work[i][0], work[r][0])],
                           [a - fct * b for a, b in zip(work[i][1], work[r][1])])
        piv[ci] = r
        r += 1
    for i in range(len(work)):
        if all(x == 0 for x in work[i][0]) and any(x != 0 for x in work[i][1]):
            raise ObstructedReduction("scaling-system", "inconsistent rescaling system")
    for ci, u in enumerate(free):
        if ci in piv:
            sol[u] = work[piv[ci]][1]
        else:
            sol[u] = [Fraction(0)] * width
    return sol


def _eval_frac_power(spec: FieldSpec, base: int, e: Fraction) -> int:
    """base^e with e rational: odd denominator part via odd_root, 2-part via sqrt."""
    if e == 0:
        return 1
    if base == 0:
        raise ZeroDivisionError("0 raised to a rational power")
    num, den = e.numerator, e.denominator
    x = base
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    if den > 1:
        try:
            x = spec.odd_root(x, den)
        except NonUniqueRoot as exc:
            raise RootUnavailable(str(exc)) from exc
    for _ in range(twos):
        x = spec.sqrt(x)
    return spec.pow(x, num)


def _scaling_values(spec: FieldSpec, exponents: dict, bases: list[int]) -> dict:
    out = {}
    for u, vec in exponents.items():
        val = 1
        for bexp, base in zip(vec, bases):
            val = spec.mul(val, _eval_frac_power(spec, base, bexp))
        out[u] = val
    return out


def transform_cover(c: DoubleCover, sc: dict) -> DoubleCover:
    """Apply x -> lx*x, ..., z -> lz*z and the overall rescale k.

    Requires k*lz^2 = 1 so the z^2 coefficient stays 1.
    """
    spec = c.spec
    if spec.mul(sc["k"], spec.sqr(sc["lz"])) != 1:
        raise ValueError("scaling does not preserve the z^2 coefficient")
    sub = {}
    for name, key in (("x", "lx"), ("y", "ly"), ("s", "ls"), ("t", "lt")):
        if sc[key] != 1:
            sub[name] = Polynomial.variable(spec, name) * sc[key]
    g2 = c.g.substitute(sub).scale(spec.mul(sc["k"], sc["lz"]))
    f2 = c.f.substitute(sub).scale(sc["k"])
    return DoubleCover(g2, f2, c.chart, c.chart_vars)


# ----------------------------------------------------------------------
# canonicalization, z2 side

_Z2_REQUIRED_ZERO = [
    ("a19", "a", (1, 9)), ("b14", "b", (1, 4)), ("a17", "a", (1, 7)),
    ("a26", "a", (2, 6)), ("a15", "a", (1, 5)), ("a13", "a", (1, 3)),
    ("a91", "a", (9, 1)), ("b41", "b", (4, 1)), ("a71", "a", (7, 1)),
    ("a62", "a", (6, 2)), ("a51", "a", (5, 1)), ("a31", "a", (3, 1)),
]

EQ6_A_SUPPORT = {(3, 7), (7, 3), (3, 5), (4, 4), (5, 3), (3, 3), (2, 2), (1, 1)}
EQ6_B_SUPPORT = {(2, 3), (3, 2), (1, 2), (2, 1)}


@dataclass
class CanonicalZ2:
    """The nine-coefficient canonical shape (unit slots normalized to 1)."""

    spec: FieldSpec
    b23: int
    b32: int
    b12: int
    b21: int
    a35: int
    a44: int
    a53: int
    a33: int
    a22: int

    def to_cover(self) -> DoubleCover:
        gf = GeneralFormZ2(self.spec,
                           a={(3, 7): 1, (7, 3): 1, (1, 1): 1,
                              (3, 5): self.a35, (4, 4): self.a44, (5, 3): self.a53,
                              (3, 3): self.a33, (2, 2): self.a22},
                           b={(2, 3): self.b23, (3, 2): self.b32,
                              (1, 2): self.b12, (2, 1): self.b21})
        return gf.to_cover()

    def support_report(self) -> str:
        names = ("b23", "b32", "b12", "b21", "a35", "a44", "a53", "a33", "a22")
        return ", ".join(f"{n}={self.spec.format(getattr(self, n))}" for n in names)


def _coeff_of(f: Polynomial, *pairs) -> int:
    return f.coeff(_mono(*pairs))


def canonicalize_z2(gform: GeneralFormZ2) -> tuple[CanonicalZ2, list[str]]:
    """Reduce a square-free general z2 equation to the canonical shape."""
    spec = gform.spec
    log: list[str] = []
    # square-free and base-point preconditions (square slots sit on the
    # s^4, s^2t^2, t^4 lines where the fiber exponents are even too)
    for (i, j), c in sorted(gform.a.items()):
        if i % 2 == 0 and j % 2 == 0 and (i + j) in (10, 6, 2) and c:
            raise ObstructedReduction(
                "squarefree", f"a{(i, j)} is a square slot; apply make_squarefree")
        if (i == 0 or j == 0) and c:
            raise ObstructedReduction(
                "base-points", f"a{(i, j)} nonzero: x*y does not divide f")
    for (i, j), c in sorted(gform.b.items()):
        if (i == 0 or j == 0) and c:
            raise ObstructedReduction(
                "base-points", f"b{(i, j)} nonzero: x*y does not divide g")
    for name, kind, key in _Z2_REQUIRED_ZERO:
        val = (gform.a if kind == "a" else gform.b).get(key, 0)
        if val:
            raise ObstructedReduction(name.upper(), f"{name} must vanish")
    a11 = gform.a.get((1, 1), 0)
    a37 = gform.a.get((3, 7), 0)
    a73 = gform.a.get((7, 3), 0)
    for name, val in (("A11", a11), ("A37", a37), ("A73", a73)):
        if not val:
            raise ObstructedReduction(name, f"{name} must be nonzero")

    # rescale so the three unit slots are exactly 1; gauge k = lz = lx = 1
    # keeps every denominator a power of two, so the roots always exist.
    rows = [
        ({"k": 1, "lz": 2}, (0, 0, 0)),
        ({"k": 1, "lx": 1, "ly": 1, "lt": 4}, (-1, 0, 0)),
        ({"k": 1, "lx": 3, "ly": 7, "ls": 4}, (0, -1, 0)),
        ({"k": 1, "lx": 7, "ly": 3, "ls": 4}, (0, 0, -1)),
    ]
    expo = _solve_exponents(rows, gauge={"k": 0, "lz": 0, "lx": 0})
    sc = _scaling_values(spec, expo, [a11, a37, a73])
    cov = transform_cover(gform.to_cover(), sc)
    log.append("scale " + ", ".join(
        f"{u}={spec.format(sc[u])}" for u in _UNKNOWNS))

    # joint shift solve: t -> t + r*s*x*y kills the x^5y^5 slot, the z-shift
    # h = m1*x^2y^3s^2 + m2*x^3y^2s^2 removes the squares the shift makes,
    # and g*h feeds back into the x^5y^5 slot, so solve the three together.
    work = cov
    ext = 1
    while True:
        fsp = work.spec
        a55 = _coeff_of(work.f, (X, 5), (Y, 5), (S, 4))
        a44 = _coeff_of(work.f, (X, 4), (Y, 4), (S, 3), (T, 1))
        a35 = _coeff_of(work.f, (X, 3), (Y, 5), (S, 3), (T, 1))
        a53 = _coeff_of(work.f, (X, 5), (Y, 3), (S, 3), (T, 1))
        a33 = _coeff_of(work.f, (X, 3), (Y, 3), (S, 2), (T, 2))
        a22 = _coeff_of(work.f, (X, 2), (Y, 2), (S, 1), (T, 3))
        b23 = _coeff_of(work.g, (X, 2), (Y, 3), (S, 2))
        b32 = _coeff_of(work.g, (X, 3), (Y, 2), (S, 2))
        b12 = _coeff_of(work.g, (X, 1), (Y, 2), (S, 1), (T, 1))
        b21 = _coeff_of(work.g, (X, 2), (Y, 1), (S, 1), (T, 1))
        found = None
        for theta in fsp.elements():
            # the t-shift moves the s*t part of g into the s^2 part first
            b23s = b23 ^ fsp.mul(theta, b12)
            b32s = b32 ^ fsp.mul(theta, b21)
            for m1 in fsp.quadratic_roots(b23s, fsp.mul(theta, a35)):
                for m2 in fsp.quadratic_roots(b32s, fsp.mul(theta, a53)):
                    e1 = (a55
                          ^ fsp.mul(a44, theta)
                          ^ fsp.mul(a33, fsp.pow(theta, 2))
                          ^ fsp.mul(a22, fsp.pow(theta, 3))
                          ^ fsp.pow(theta, 4)
                          ^ fsp.mul(b32s, m1) ^ fsp.mul(b23s, m2))
                    if e1 == 0 and found is None:
                        found = (theta, m1, m2)
        if found is not None:
            theta, m1, m2 = found
            break
        if ext >= 4:
            raise ObstructedReduction("A55", "no shift parameter within the cap")
        big = fsp.extension(2)
        work = cover_mod.embed_cover(work, big)
        ext *= 2
    fsp = work.spec
    if theta:
        shift = (Polynomial.variable(fsp, "t")
                 + Polynomial.monomial(fsp, _mono((S, 1), (X, 1), (Y, 1)), theta))
        work = DoubleCover(work.g.substitute({"t": shift}),
                           work.f.substitute({"t": shift}))
        log.append(f"t -> t + {fsp.format(theta)}*s*x*y")
    h = (Polynomial.monomial(fsp, _mono((X, 2), (Y, 3), (S, 2)), m1)
         + Polynomial.monomial(fsp, _mono((X, 3), (Y, 2), (S, 2)), m2))
    if h:
        work = DoubleCover(work.g, work.f + h * h + work.g * h)
        log.append(f"z -> z + ({h})")
    if ext > 1:
        log.append(f"field extended by degree {ext}")

    out = CanonicalZ2(
        fsp,
        b23=_coeff_of(work.g, (X, 2), (Y, 3), (S, 2)),
        b32=_coeff_of(work.g, (X, 3), (Y, 2), (S, 2)),
        b12=_coeff_of(work.g, (X, 1), (Y, 2), (S, 1), (T, 1)),
        b21=_coeff_of(work.g, (X, 2), (Y, 1), (S, 1), (T, 1)),
        a35=_coeff_of(work.f, (X, 3), (Y, 5), (S, 3), (T, 1)),
        a44=_coeff_of(work.f, (X, 4), (Y, 4), (S, 3), (T, 1)),
        a53=_coeff_of(work.f, (X, 5), (Y, 3), (S, 3), (T, 1)),
        a33=_coeff_of(work.f, (X, 3), (Y, 3), (S, 2), (T, 2)),
        a22=_coeff_of(work.f, (X, 2), (Y, 2), (S, 1), (T, 3)))
    # nothing may remain outside the canonical support
    if work.f + out.to_cover().f or work.g + out.to_cover().g:
        raise ObstructedReduction("support", "reduction left terms outside the target shape")
    return out, log


def impose_z2_e6_conditions(can: CanonicalZ2) -> FamilySpec:
    """Read the three successive blow-up conditions against the theorem shape.

    The inline condition names one coefficient as b22, which cannot occur in
    the s*t line (degree 3 forms divisible by x*y have only b12, b21); the
    theorem display pins b21 = v^2, so the check is carried out there.
    """
    spec = can.spec
    if can.b12:
        raise ObstructedReduction("cond.i", "b12 must vanish")
    if can.a35 != can.a22:
        raise ObstructedReduction("cond.i", "a35 + a22 must vanish")
    if can.b23:
        raise ObstructedReduction("cond.ii", "b23 must vanish")
    if can.a22:
        raise ObstructedReduction("cond.ii", "a22 must vanish")
    if can.b21 != can.a33:
        raise ObstructedReduction("cond.iii", "b21 + a33 must vanish")
    v = spec.sqrt(can.a33)
    if can.a44 != spec.mul(v, can.a33):
        raise ObstructedReduction("cond.iii", "a44 + sqrt(a33)*b21 must vanish")
    if v == 0:
        raise InadmissibleParameter("conditions force v = 0: not an E6 member")
    return FamilySpec("z2-e6", {"v": spec.element(v),
                                "b32": spec.element(can.b32),
                                "a53": spec.element(can.a53)})


# ----------------------------------------------------------------------
# canonicalization, alpha2 side

def canonicalize_alpha2(gform: GeneralFormA2) -> tuple[FamilySpec, list[str]]:
    """Impose the E6 condition set on the alpha2 general display.

    The quoted set forces w', b30, a62, a71, a51 to zero and ties b41 to w
    (the stray v in the source display is not defined there; the theorem
    shape fixes b41 = w).  Coefficients are imposed, not transformed.
    """
    spec = gform.spec
    log: list[str] = []
    w = gform.get("w")
    b50 = gform.get("b50")
    a80 = gform.get("a80")
    if w == 0 and b50 == 0 and a80 == 0:
        raise WouldBeNonisolated(
            "w = b50 = 0 with a80 = 0 leaves a non-isolated singularity")
    for name in ("wp", "b30", "a62", "a71", "a51"):
        if gform.get(name):
            log.append(f"impose {name} = 0")
    if gform.get("b41") != w:
        log.append("impose b41 = w")
    if w == 0:
        # the imposed set lands on a degenerate member
        if b50:
            return FamilySpec("a2-e7", {"b50": spec.element(b50),
                                        "a80": spec.element(a80)}), log
        return FamilySpec("a2-e8", {"a80": spec.element(a80)}), log
    return FamilySpec("a2-e6", {"w": spec.element(w),
                                "b50": spec.element(b50),
                                "a80": spec.element(a80)}), log


# ----------------------------------------------------------------------
# unit normalization (alpha2)

_UNIT_ROWS = {
    "a2-e6": ([
        ({"k": 1, "lz": 2}, (0,)),
        ({"k": 1, "lx": 3, "ly": 7, "ls": 4}, (0,)),
        ({"k": 1, "lx": 1, "ly": 1, "lt": 4}, (0,)),
        ({"k": 1, "lz": 1, "lx": 4, "ly": 1, "ls": 2}, (-1,)),
        ({"k": 1, "lx": 5, "ly": 3, "ls": 3, "lt": 1}, (-1,)),
        ({"k": 1, "lx": 4, "ls": 1, "lt": 3}, (-1,)),
    ], {"ly": 0, "ls": 0}, "w"),
    "a2-e7": ([
        ({"k": 1, "lz": 2}, (0,)),
        ({"k": 1, "lx": 3, "ly": 7, "ls": 4}, (0,)),
        ({"k": 1, "lz": 1, "lx": 5, "ls": 2}, (-1,)),
        ({"k": 1, "lx": 1, "ly": 1, "lt": 4}, (0,)),
    ], {"k": 0, "lz": 0, "lx": 0}, "b50"),
    "a2-e8": ([
        ({"k": 1, "lz": 2}, (0,)),
        ({"k": 1, "lx": 3, "ly": 7, "ls": 4}, (0,)),
        ({"k": 1, "lx": 8, "ls": 3, "lt": 1}, (-1,)),
        ({"k": 1, "lx": 1, "ly": 1, "lt": 4}, (0,)),
    ], {"ls": 0, "lt": 0}, "a80"),
}


@dataclass
class UnitScaling:
    exponents: dict            # unknown -> Fraction (power of the designated param)
    values: dict               # unknown -> field mask
    designated: str

    def exponent_vector(self) -> tuple:
        return tuple(self.exponents[u][0] for u in _UNKNOWNS)


def normalize_unit(fs: FamilySpec) -> tuple[FamilySpec, UnitScaling]:
    """Rescale an alpha2 family so the designated parameter becomes 1."""
    if fs.kind not in _UNIT_ROWS:
        raise InadmissibleParameter("normalize_unit applies to the alpha2 kinds")
    rows, gauge, designated = _UNIT_ROWS[fs.kind]
    spec = fs.field
    expo = _solve_exponents(rows, gauge=gauge)
    sc = _scaling_values(spec, expo, [fs.bits(designated)])
    cov = transform_cover(build_family(fs), sc)
    new_params: dict[str, FieldElement] = {}
    slots = {"w": ((X, 4), (Y, 1), (S, 2)), "b50": ((X, 5), (S, 2))}
    for name in KINDS[fs.kind]["params"]:
        if name == "a80":
            new_params[name] = spec.element(
                _coeff_of(cov.f, (X, 8), (S, 3), (T, 1)))
        else:
            new_params[name] = spec.element(_coeff_of(cov.g, *slots[name]))
    out = FamilySpec(fs.kind, new_params)
    if out.bits(designated) != 1:
        raise AuditMismatch("normalization failed to set the designated parameter to 1")
    if build_family(out).f != cov.f or build_family(out).g != cov.g:
        raise AuditMismatch("rescaled equation left the family shape")
    return out, UnitScaling(expo, sc, designated)


# ----------------------------------------------------------------------
# verification reports

@dataclass
class ResolutionSummary:
    point: str
    genus_drop: int
    classification: str
    contracted: int
    marked_multiplicity: int | None
    log: ResolutionLog


@dataclass
class FamilyReport:
    family: str
    field: str
    multihomogeneous: bool
    squarefree: bool
    singular_ok: bool
    singular_found: list
    smooth_r: bool
    smooth_fiber: bool
    resolutions: list
    expected_label: str

    @property
    def classification_ok(self) -> bool:
        return any(r.point == "x=t=0" and r.classification == self.expected_label
                   and r.marked_multiplicity == 1 for r in self.resolutions)

    @property
    def genus_ok(self) -> bool:
        drops = sorted(r.genus_drop for r in self.resolutions)
        return drops == ([2] if len(self.resolutions) == 1 else [1, 1])

    @property
    def ok(self) -> bool:
        return (self.multihomogeneous and self.squarefree and self.singular_ok
                and self.smooth_r and self.smooth_fiber and self.genus_ok
                and self.classification_ok)

    def lines(self) -> list[str]:
        out = [f"family {self.family}", f"field {self.field}",
               f"multihomogeneous {_okno(self.multihomogeneous)}",
               f"squarefree {_okno(self.squarefree)}",
               f"singular-locus {_okno(self.singular_ok)} {self.singular_found}",
               f"smooth-along-R {_okno(self.smooth_r)}",
               f"smooth-along-fiber {_okno(self.smooth_fiber)}"]
        for r in self.resolutions:
            out.append(f"resolve {r.point}: drop={r.genus_drop}"
                       f" classification={r.classification}"
                       f" contracted={r.contracted}"
                       f" marked-mult={r.marked_multiplicity}")
        out.append(f"classification-matches-label {_okno(self.classification_ok)}")
        out.append(f"genus-drops {_okno(self.genus_ok)}")
        out.append(f"verdict {'pass' if self.ok else 'FAIL'}")
        return out


def _okno(b: bool) -> str:
    return "ok" if b else "FAIL"


def _resolve_side(c: DoubleCover, side: str):
    if side == "x":
        loc = localize(c, ("y", "s"))
        seed = {"F": Polynomial.variable(loc.spec, "x")}
        label = "x=t=0"
    else:
        loc = localize(c, ("x", "s"))
        seed = {"F": Polynomial.variable(loc.spec, "y")}
        label = "y=t=0"
    log = resolve_point(loc, (0, 0), seeds=seed)
    marked_mult = None
    if log.graph is not None:
        for nd in log.graph.nodes:
            if nd.marked:
                marked_mult = nd.multiplicity
    return ResolutionSummary(label, log.total_genus_drop,
                             log.graph.classify() if log.graph else "Unknown",
                             log.contracted_count(), marked_mult, log)


def verify_family(fs: FamilySpec) -> FamilyReport:
    c = build_family(fs)
    spec = fs.field
    from .geometry import cover_equation_ok
    multih = bool(cover_equation_ok(c.g, c.f))
    sqfree = even_part(c.f).is_zero()
    # prescribed singular loci: x=t=0 always, y=t=0 for the z2 kinds
    expected = {(("y", "s"), (0, 0))}
    if KINDS[fs.kind]["type"] == "z2":
        expected.add((("x", "s"), (0, 0)))
    found = []
    singular_ok = True
    for ones, _rest in cover_mod.STANDARD_CHARTS:
        loc = localize(c, ones)
        for (a, b, _z) in singular_points_masks(loc):
            found.append((ones, (spec.format(a), spec.format(b))))
            if (ones, (a, b)) not in expected:
                singular_ok = False
    if KINDS[fs.kind]["type"] == "z2":
        singular_ok = singular_ok and len(found) == 2
    else:
        singular_ok = singular_ok and len(found) == 1
    smooth_r = cover_mod.smooth_along(c, "R")
    smooth_f = cover_mod.smooth_along(c, "fiber", 1)
    resolutions = [_resolve_side(c, "x")]
    if KINDS[fs.kind]["type"] == "z2":
        resolutions.append(_resolve_side(c, "y"))
    return FamilyReport(
        family=fs.serialize(), field=f"GF(2^{spec.k})",
        multihomogeneous=multih, squarefree=sqfree,
        singular_ok=singular_ok, singular_found=sorted(found),
        smooth_r=smooth_r, smooth_fiber=smooth_f,
        resolutions=resolutions, expected_label=KINDS[fs.kind]["label"])


# ----------------------------------------------------------------------
# the Euler audit

@dataclass
class ExtraFiber:
    location: str
    graph: DualGraph
    contribution: int
    intersection_type: int | None


@dataclass
class AuditReport:
    family: str
    contributions: list
    total: int
    extra_fibers: list
    quasielliptic: bool

    @property
    def ok(self) -> bool:
        return self.total == 8 and self.quasielliptic

    def lines(self) -> list[str]:
        out = [f"family {self.family}",
               f"quasielliptic {_okno(self.quasielliptic)}",
               f"contributions {self.contributions}",
               f"sum {self.total}"]
        for ef in self.extra_fibers:
            out.append(f"extra-fiber at {ef.location}: {ef.graph.classify()}"
                       f" contribution={ef.contribution}"
                       f" type={ef.intersection_type}")
        out.append(f"verdict {'pass' if self.ok else 'FAIL'}")
        return out


def euler_audit(fs: FamilySpec) -> AuditReport:
    """Classify the degenerate fibers and check the contributions sum to 8."""
    if fs.kind.endswith("e6"):
        raise InadmissibleParameter("the Euler audit applies to the E7/E8 kinds")
    c = build_family(fs)
    spec = fs.field
    qe = cover_mod.is_quasielliptic(c)
    contributions = []
    extras: list[ExtraFiber] = []
    main = _resolve_side(c, "x")
    contributions.append(euler_contribution(main.log.graph))
    if KINDS[fs.kind]["type"] == "z2":
        other = _resolve_side(c, "y")
        co = euler_contribution(other.log.graph)
        if co:
            g = other.log.graph
            g.provenance = "half-fiber"
            extras.append(ExtraFiber("y=0 (half-fiber)", g, co,
                                     r_intersection_type(other.log, g)
                                     if g.classify() == "A1*~" else None))
            contributions.append(co)
    # ordinary reducible fibers: the cover restricted to the fiber splits
    fiber_points = [(x0, 1) for x0 in spec.elements() if x0 != 0]
    if KINDS[fs.kind]["type"] == "a2":
        fiber_points.append((1, 0))
    for x0, y0 in fiber_points:
        got = split_fiber(c, x0, y0)
        if got is None:
            continue
        g = a1star_graph("split-fiber")
        extras.append(ExtraFiber(f"[{spec.format(x0)}:{spec.format(y0)}]", g,
                                 euler_contribution(g),
                                 r_intersection_type(None, g)))
        contributions.append(euler_contribution(g))
    total = sum(contributions)
    report = AuditReport(fs.serialize(), contributions, total, extras, qe)
    if total != 8:
        raise AuditMismatch(
            f"local Euler contributions sum to {total}, not 8:\n"
            + "\n".join(report.lines()))
    return report


# ----------------------------------------------------------------------
# seeded parameter sweeps

def random_family(kind: str, field: FieldSpec, rng: random.Random) -> FamilySpec:
    """Admissible random parameters; measure-zero corners that pick up an
    extra unprescribed singular point are redrawn."""
    meta = KINDS[kind]
    while True:
        params = {}
        for name in meta["params"]:
            if name == meta["nonzero"]:
                params[name] = field.element(rng.randrange(1, field.order))
            else:
                params[name] = field.element(rng.randrange(field.order))
        if kind == "a2-e6" and not params["b50"] and not params["a80"]:
            continue
        if kind == "z2-e6" and not params["b32"]:
            v3 = field.pow(params["v"].bits, 3)
            if params["a53"].bits == v3:
                continue
        return FamilySpec(kind, params)


def sweep(kind: str, field: FieldSpec, count: int, seed: int):
    rng = random.Random(seed)
    return [verify_family(random_family(kind, field, rng)) for _ in range(count)]

"""Double covers z^2 + z*g + f = 0 and their analysis primitives.

A cover is a pair (g, f) of z-free polynomials.  In the global chart the
five ambient variables carry the bidegree rules of the geometry module;
a local cover lives in an affine chart with two coordinates.

Singular points in characteristic two satisfy g = 0 (the z-derivative),
which pins z = sqrt(f) at every candidate, so searches enumerate base
points only and solve for z exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .field import FieldSpec, FieldElement, gf2_matrix_solve
from .poly import (Polynomial, Monomial, parse_poly, var_id, var_name,
                   mono_degree, uni_gcd, uni_trim, uni_roots, Z, X, Y, S, T)
from . import geometry


class NotLocal(ValueError):
    pass


class SquarefreeUnsolvable(ArithmeticError):
    """No z-shift removing the square part exists within the extension cap."""


@dataclass(frozen=True)
class DoubleCover:
    """z^2 + z*g + f = 0 over the base; g and f are z-free."""

    g: Polynomial
    f: Polynomial
    chart: tuple | str = "global"   # "global" or ("local", ((var, value), ...))
    chart_vars: tuple | None = None  # var ids of the affine coordinates

    def __post_init__(self):
        if Z in self.g.variables() or Z in self.f.variables():
            raise ValueError("g and f must be z-free")
        if self.chart == "global":
            rep = geometry.cover_equation_ok(self.g, self.f)
            if not rep:
                raise ValueError(f"global cover not multihomogeneous: {rep}")

    @property
    def spec(self) -> FieldSpec:
        return self.f.spec

    def is_global(self) -> bool:
        return self.chart == "global"

    def to_text(self) -> str:
        return f"z^2 + z*({self.g}) + ({self.f}) = 0"

    def __str__(self) -> str:
        return self.to_text()


def cover_from_text(text: str, spec: FieldSpec, chart: tuple | str = "global",
                    chart_vars: tuple | None = None) -> DoubleCover:
    """Inverse of DoubleCover.to_text (whitespace insignificant)."""
    body = text.replace(" ", "")
    if body.endswith("=0"):
        body = body[:-2]
    if not body.startswith("z^2+"):
        raise ValueError("cover text must start with z^2")
    body = body[4:]
    g = Polynomial.zero(spec)
    if body.startswith("z*("):
        depth = 1
        i = 3
        while depth:
            if body[i] == "(":
                depth += 1
            elif body[i] == ")":
                depth -= 1
            i += 1
        g = parse_poly(body[3:i - 1], spec)
        body = body[i:].lstrip("+")
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    f = parse_poly(body, spec)
    return DoubleCover(g, f, chart, chart_vars)


# the four standard affine charts of the base surface
STANDARD_CHARTS = (
    (("y", "s"), ("x", "t")),
    (("y", "t"), ("x", "s")),
    (("x", "s"), ("y", "t")),
    (("x", "t"), ("y", "s")),
)


def localize(c: DoubleCover, ones: tuple[str, str]) -> DoubleCover:
    """Set the two named ambient variables to 1."""
    fix = {name: 1 for name in ones}
    rest = tuple(n for n in ("x", "y", "s", "t") if n not in ones)
    return DoubleCover(c.g.restrict(fix), c.f.restrict(fix),
                       ("local", (tuple((n, 1) for n in ones))),
                       tuple(var_id(n) for n in rest))


def localize_all(c: DoubleCover) -> list[tuple[tuple[str, str], DoubleCover]]:
    return [(ones, localize(c, ones)) for ones, _rest in STANDARD_CHARTS]


# ----------------------------------------------------------------------
# square part removal (the characteristic-two z-shift)

def even_part(p: Polynomial) -> Polynomial:
    root, rest = p.square_decompose()
    return p + rest


def _zshape_monomials_global(spec: FieldSpec) -> list[Monomial]:
    """Monomials with the weights of z itself: s^2*(deg 5), s*t*(deg 3), t^2*(deg 1)."""
    out = []
    for (es, et, d) in ((2, 0, 5), (1, 1, 3), (0, 2, 1)):
        for i in range(d + 1):
            m = []
            if i:
                m.append((X, i))
            if d - i:
                m.append((Y, d - i))
            if es:
                m.append((S, es))
            if et:
                m.append((T, et))
            out.append(tuple(sorted(m)))
    return sorted(out)


def _monomials_upto(vids: tuple, d: int) -> list[Monomial]:
    out: list[Monomial] = [()]
    for v in sorted(vids):
        nxt = []
        for m in out:
            used = mono_degree(m)
            for e in range(0, d - used + 1):
                nxt.append(m if e == 0 else tuple(sorted(m + ((v, e),))))
        out = nxt
    return sorted(set(m for m in out if mono_degree(m) <= d))


def squarefree_shift_space(c: DoubleCover, target_root: Polynomial) -> list[Monomial]:
    if c.is_global():
        return _zshape_monomials_global(c.spec)
    vids = tuple(sorted(set(c.f.variables()) | set(c.g.variables())
                        | set(target_root.variables())))
    d = max(target_root.degree(), c.g.degree(), 1)
    return _monomials_upto(vids, d)


def _solve_squarefree_shift(c: DoubleCover) -> Polynomial | None:
    """Find h with even_part(f + h^2 + g*h) = 0 over c's own field, or None."""
    spec = c.spec
    target = even_part(c.f)
    if target.is_zero():
        return Polynomial.zero(spec)
    if c.g.is_zero():
        root, _ = c.f.square_decompose()
        return root
    root, _ = c.f.square_decompose()
    basis_monos = squarefree_shift_space(c, root)
    columns: list[Polynomial] = []
    for m in basis_monos:
        for j in range(spec.k):
            hb = Polynomial.monomial(spec, m, 1 << j)
            columns.append(even_part(hb * hb + c.g * hb))
    rows = sorted(set().union(*[set(p.terms) for p in columns + [target]]))
    row_index = {m: i for i, m in enumerate(rows)}
    col_vecs = []
    for p in columns:
        vec = [0] * len(rows)
        for m, cc in p.terms.items():
            vec[row_index[m]] = cc
        col_vecs.append(vec)
    tvec = [0] * len(rows)
    for m, cc in target.terms.items():
        tvec[row_index[m]] = cc
    sol = gf2_matrix_solve(col_vecs, tvec, spec.k)
    if sol is None:
        return None
    h = Polynomial.zero(spec)
    for idx in range(len(columns)):
        if sol >> idx & 1:
            m = basis_monos[idx // spec.k]
            h = h + Polynomial.monomial(spec, m, 1 << (idx % spec.k))
    return h


def embed_cover(c: DoubleCover, big: FieldSpec) -> DoubleCover:
    return replace(c, g=embed_poly(c.g, big), f=embed_poly(c.f, big))


def embed_poly(p: Polynomial, big: FieldSpec) -> Polynomial:
    spec = p.spec
    return Polynomial(big, {m: spec.embed(cc, big) for m, cc in p.terms.items()})


def make_squarefree(c: DoubleCover, max_total_degree: int = 16
                    ) -> tuple[Polynomial, DoubleCover, int]:
    """Shift z by h so the square part of f vanishes.

    Returns (h, shifted cover, extension degree).  Solvability can fail
    over the base field in the separable case (an Artin-Schreier
    obstruction); quadratic extensions are tried until the cap.
    """
    ext = 1
    cur = c
    while True:
        h = _solve_squarefree_shift(cur)
        if h is not None:
            f2 = cur.f + h * h + cur.g * h
            return h, replace(cur, f=f2), ext
        if cur.spec.k * 2 > max_total_degree:
            raise SquarefreeUnsolvable(
                f"no square-removing shift within GF(2^{max_total_degree})")
        ext *= 2
        cur = embed_cover(cur, cur.spec.extension(2))


# ----------------------------------------------------------------------
# singular points

def _local_data(c: DoubleCover):
    if c.chart_vars is None or len(c.chart_vars) != 2:
        raise NotLocal("operation needs a local affine chart with two coordinates")
    u, v = c.chart_vars
    return u, v, c.g, c.f, c.g.partial(u), c.g.partial(v), c.f.partial(u), c.f.partial(v)


def _is_singular_at(spec, u, v, g, f, gu, gv, fu, fv, a: int, b: int) -> int | None:
    """z-mask when (a, b) is singular, else None."""
    pt = {u: a, v: b}
    if g.evaluate(pt) != 0:
        return None
    z = spec.sqrt(f.evaluate(pt))
    if spec.mul(z, gu.evaluate(pt)) ^ fu.evaluate(pt):
        return None
    if spec.mul(z, gv.evaluate(pt)) ^ fv.evaluate(pt):
        return None
    return z


def singular_points_masks(c: DoubleCover, field: FieldSpec | None = None
                          ) -> list[tuple[int, int, int]]:
    """All singular (u, v, z) masks over the given field (default: c's)."""
    work = c
    if field is not None and field != c.spec:
        work = embed_cover(c, field)
    spec = work.spec
    u, v, g, f, gu, gv, fu, fv = _local_data(work)
    out = []
    for a in spec.elements():
        ga = g.restrict({u: a})
        fa = None
        for b in spec.elements():
            if ga.evaluate({v: b}) != 0:
                continue
            z = _is_singular_at(spec, u, v, g, f, gu, gv, fu, fv, a, b)
            if z is not None:
                out.append((a, b, z))
    return out


def singular_points(c: DoubleCover, field: FieldSpec | None = None):
    """Public form: list of dicts {var name: FieldElement} plus 'z'."""
    spec = field or c.spec
    u, v = c.chart_vars
    out = []
    for a, b, z in singular_points_masks(c, field):
        out.append({var_name(u): spec.element(a), var_name(v): spec.element(b),
                    "z": spec.element(z)})
    return out


def is_singular_point(c: DoubleCover, a: int, b: int) -> int | None:
    spec = c.spec
    u, v, g, f, gu, gv, fu, fv = _local_data(c)
    return _is_singular_at(spec, u, v, g, f, gu, gv, fu, fv, a, b)


# ----------------------------------------------------------------------
# Lipman-style local tests at a singular point at the origin

def _is_square_form(h2: Polynomial, u: int, v: int) -> bool:
    # a*u^2 + b*u*v + c*v^2 is a square over the algebraic closure iff b = 0
    return h2.coeff(tuple(sorted(((u, 1), (v, 1))))) == 0


def _is_cube_form(h3: Polynomial, u: int, v: int) -> bool:
    spec = h3.spec
    c30 = h3.coeff(((u, 3),))
    c03 = h3.coeff(((v, 3),))
    c21 = h3.coeff(tuple(sorted(((u, 2), (v, 1)))))
    c12 = h3.coeff(tuple(sorted(((u, 1), (v, 2)))))
    # (a*u + b*v)^3 has c21 = a^2 b, c12 = a b^2; closure conditions:
    return (spec.sqr(c21) == spec.mul(c30, c12)
            and spec.sqr(c12) == spec.mul(c03, c21)
            and spec.mul(c21, c12) == spec.mul(c30, c03))


def lipman_conditions(c: DoubleCover) -> dict:
    """Square/cube tests on the quadratic and cubic parts of f at the origin.

    The singular point must already sit at the origin with z = 0 (translate
    and shift first).
    """
    u, v = c.chart_vars
    h2 = c.f.homogeneous_part(2)
    h3 = c.f.homogeneous_part(3)
    return {
        "quadratic_is_square": _is_square_form(h2, u, v),
        "cubic_is_cube": _is_cube_form(h3, u, v),
    }


# ----------------------------------------------------------------------
# smoothness along distinguished curves

def _singular_on_line(c: DoubleCover, fixed_var: int, fixed_val: int,
                      field: FieldSpec) -> bool:
    work = c if field == c.spec else embed_cover(c, field)
    spec = work.spec
    u, v, g, f, gu, gv, fu, fv = _local_data(work)
    if fixed_var == u:
        fv_iter = [(fixed_val, b) for b in spec.elements()]
    else:
        fv_iter = [(a, fixed_val) for a in spec.elements()]
    for a, b in fv_iter:
        if _is_singular_at(spec, u, v, g, f, gu, gv, fu, fv, a, b) is not None:
            return True
    return False


def smooth_along(c: DoubleCover, curve, lam: int = 1) -> bool:
    """True iff no singular point lies on the curve over the field and its
    quadratic extension.  curve is "R" (s = 0) or "fiber" (x = lam*y)."""
    if not c.is_global():
        raise NotLocal("smooth_along expects the global cover")
    spec = c.spec
    fields = [spec, spec.extension(2)]
    if curve == "R":
        charts = ((("y", "t"), "s"), (("x", "t"), "s"))
        for ones, zvar in charts:
            loc = localize(c, ones)
            for fl in fields:
                if _singular_on_line(loc, var_id(zvar), 0, fl):
                    return False
        return True
    if curve == "fiber":
        for ones in (("y", "s"), ("y", "t")):
            loc = localize(c, ones)
            for fl in fields:
                val = lam if fl == spec else spec.embed(lam, fl)
                if _singular_on_line(loc, var_id("x"), val, fl):
                    return False
        return True
    raise ValueError("curve must be 'R' or 'fiber'")


# ----------------------------------------------------------------------
# fibers of the genus-one pencil

def fiber_restriction(c: DoubleCover, x0: int, y0: int) -> tuple[Polynomial, Polynomial]:
    """Restrict (g, f) to the fiber over [x0 : y0]; result in s, t only."""
    if not c.is_global():
        raise NotLocal("fiber restriction expects the global cover")
    fix = {"x": x0, "y": y0}
    return c.g.restrict(fix), c.f.restrict(fix)


def _fiber_chart_singular(spec: FieldSpec, gbar: Polynomial, fbar: Polynomial,
                          free: int, one: int) -> bool:
    g1 = gbar.restrict({one: 1})
    f1 = fbar.restrict({one: 1})
    gl = _as_uni(g1, free)
    fl = _as_uni(f1, free)
    gd = _uni_diff(spec, gl)
    fd = _uni_diff(spec, fl)
    if not gl:
        # inseparable fiber: singular wherever f' vanishes; a nonzero
        # constant derivative is the only obstruction to a root over the closure
        return not (len(fd) == 1)
    from .poly import uni_mul, uni_add
    p = uni_add(spec, uni_mul(spec, fd, fd), uni_mul(spec, fl, uni_mul(spec, gd, gd)))
    if not p:
        return True
    g_gcd = uni_gcd(spec, gl, p)
    return len(g_gcd) > 1


def _as_uni(p: Polynomial, vid: int) -> list[int]:
    out = [0] * (p.degree() + 1 if p.terms else 0)
    for m, c in p.terms.items():
        e = 0
        for v, ee in m:
            if v == vid:
                e = ee
            elif ee:
                raise ValueError("not univariate")
        out[e] ^= c
    return uni_trim(out)


def _uni_diff(spec: FieldSpec, p: list[int]) -> list[int]:
    out = [0] * max(0, len(p) - 1)
    for i, c in enumerate(p):
        if i % 2 == 1 and c:
            out[i - 1] = c
    return uni_trim(out)


def fiber_is_singular(c: DoubleCover, x0: int, y0: int) -> bool:
    """Exact test (over the algebraic closure) that the fiber curve is singular."""
    gbar, fbar = fiber_restriction(c, x0, y0)
    spec = c.spec
    return (_fiber_chart_singular(spec, gbar, fbar, T, S)
            or _fiber_chart_singular(spec, gbar, fbar, S, T))


def is_quasielliptic(c: DoubleCover) -> bool:
    """True iff every tested fiber is singular.

    Inseparable covers (g = 0) short-circuit: the two partials of the
    restricted quartic share the critical point [sqrt(d) : sqrt(b)], so
    every fiber has a cusp.  Separable covers are swept over all rational
    fiber points of the field and its quadratic extension.
    """
    if not c.is_global():
        raise NotLocal("is_quasielliptic expects the global cover")
    if c.g.is_zero():
        return True
    for fl in (c.spec, c.spec.extension(2)):
        work = c if fl == c.spec else embed_cover(c, fl)
        for x0 in fl.elements():
            if not fiber_is_singular(work, x0, 1):
                return False
        if not fiber_is_singular(work, 1, 0):
            return False
    return True


# ----------------------------------------------------------------------
# split fibers (the A1*-configurations)

def split_fiber(c: DoubleCover, x0: int, y0: int, allow_extension: bool = True):
    """Factor the fiber cover as (z + h1)(z + h2); None when irreducible.

    Returns (h1, h2, extension_degree) with h_i quadratic forms in s, t.
    The two components meet where h1 + h2 = gbar vanishes, which is what
    makes a split fiber an A1*-configuration.
    """
    work = c
    ext = 1
    while True:
        spec = work.spec
        gbar, fbar = fiber_restriction(work, x0, y0)
        if gbar.is_zero() and even_part(fbar) == fbar and not fbar.is_zero():
            # perfect square: non-reduced fiber, not a split one
            return None
        basis = [tuple(sorted(m)) for m in
                 (((S, 2),), ((S, 1), (T, 1)), ((T, 2),))]
        columns = []
        for m in basis:
            for j in range(spec.k):
                hb = Polynomial.monomial(spec, m, 1 << j)
                columns.append(hb * hb + gbar * hb)
        rows = sorted(set().union(set(fbar.terms),
                                  *[set(p.terms) for p in columns]))
        ridx = {m: i for i, m in enumerate(rows)}
        cols = []
        for p in columns:
            vec = [0] * len(rows)
            for m, cc in p.terms.items():
                vec[ridx[m]] = cc
            cols.append(vec)
        tvec = [0] * len(rows)
        for m, cc in fbar.terms.items():
            tvec[ridx[m]] = cc
        sol = gf2_matrix_solve(cols, tvec, spec.k)
        if sol is not None:
            h1 = Polynomial.zero(spec)
            for idx in range(len(columns)):
                if sol >> idx & 1:
                    h1 = h1 + Polynomial.monomial(spec, basis[idx // spec.k],
                                                  1 << (idx % spec.k))
            h2 = h1 + gbar
            if h1 == h2:
                return None  # doubled component, not a split
            return h1, h2, ext
        if not allow_extension or ext >= 2:
            return None
        big = spec.extension(2)
        work = embed_cover(work, big)
        x0 = spec.embed(x0, big)
        y0 = spec.embed(y0, big)
        ext = 2

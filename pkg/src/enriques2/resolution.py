"""Iterated blow-up resolution of double-cover singularities.

The driver follows singular points chart by chart.  A blow-up at the
origin of a chart (u, v) produces two children, A: u = u'*v and
B: v = v'*u; f is divided by e^(2n) and g by e^n with n maximal, and the
arithmetic genus drops by n - 1.  New singular points can only appear on
the exceptional curve, where they are located exactly: eliminating z
from the Jacobian system leaves a univariate gcd whose roots are the
singular parameters.  Roots outside the working field trigger a restart
of the whole resolution over the needed extension, so every processed
center is rational.

Exceptional curves are tracked by their strict-transform equations.
Downstairs intersection numbers follow the classical infinitely-near
calculus (separating a blow-up subtracts the product of center
multiplicities); upstairs numbers come out of the projection formula
2*I/(r_i*r_j), where r = 2 exactly when the curve lies in the branch
locus or carries a doubled preimage.  The curves created before the last
genus-drop blow-up, together with the seeded fiber, are the contractible
(-1)-pieces; the remaining curves form the dual graph that is classified
against the (extended) Dynkin catalog.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import FieldSpec, gf2_matrix_solve
from .poly import (Polynomial, var_id, var_name, uni_gcd, uni_trim, uni_eval,
                   uni_divmod, uni_min_splitting_degree)
from .cover import DoubleCover, embed_cover, embed_poly, even_part


class NotSingular(ValueError):
    pass


class Nonisolated(ArithmeticError):
    """A whole curve of singular points appeared (inadmissible parameters)."""


class StepLimit(RuntimeError):
    pass


class ResolutionError(RuntimeError):
    pass


class _NeedsExtension(Exception):
    def __init__(self, degree: int):
        self.degree = degree


# ----------------------------------------------------------------------
# log records

@dataclass
class TranslateStep:
    chart: str
    shift: tuple[int, int]
    z_value: int
    post_g: Polynomial
    post_f: Polynomial


@dataclass
class ZShiftStep:
    chart: str
    h: Polynomial
    post_f: Polynomial


@dataclass
class BlowupStep:
    index: int                      # 1-based among blow-ups
    chart: str
    substitution: str               # e.g. "x -> u1*t"
    substitution_b: str
    normalization_power: int
    genus_drop: int
    pre_g: Polynomial
    pre_f: Polynomial
    post: dict                      # side -> (g, f); sides "A", "B"
    curve: int                      # id of the exceptional curve created
    primary: str = "A"

    def post_f(self, side: str = "A") -> Polynomial:
        return self.post[side][1]


@dataclass
class CurveInfo:
    cid: int
    name: str
    birth_index: int                # 0 for seeded curves
    kind: str                       # fiber | branch | doubled | insep | inert | split
    r: int                          # ramification factor of the preimage (1 or 2)
    self_down: int = -1             # downstairs self-intersection, kept current
    contracted: bool = False
    marked: bool = False


@dataclass
class GraphNode:
    key: str
    self_intersection: int = -2
    multiplicity: int | None = None
    marked: bool = False


@dataclass
class DualGraph:
    nodes: list[GraphNode]
    edges: list[tuple[int, int, int]]        # (i, j, multiplicity), i < j
    provenance: str = "resolution"           # resolution | split-fiber | half-fiber

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[list[int]]:
        adj = [[] for _ in self.nodes]
        for i, j, _m in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def classify(self) -> str:
        return classify(self)

    def canonical(self):
        """Isomorphism-insensitive fingerprint used for graph equality."""
        adj = self.neighbors()
        degs = sorted(len(a) for a in adj)
        emults = sorted(m for _i, _j, m in self.edges)
        return (self.n_nodes, tuple(degs), tuple(emults), self.classify())

    def to_dot(self) -> str:
        lines = ["graph dualgraph {"]
        for i, nd in enumerate(self.nodes):
            attrs = [f"self_intersection={nd.self_intersection}"]
            if nd.multiplicity is not None:
                attrs.append(f"multiplicity={nd.multiplicity}")
            if nd.marked:
                attrs.append("marked=true")
            lines.append(f'  n{i} [label="{nd.key}", {", ".join(attrs)}];')
        for i, j, m in self.edges:
            extra = f" [multiplicity={m}]" if m != 1 else ""
            lines.append(f"  n{i} -- n{j}{extra};")
        lines.append("}")
        return "\n".join(lines)


@dataclass
class ResolutionLog:
    field: FieldSpec
    extension_degree: int = 1
    steps: list = dc_field(default_factory=list)
    curves: dict[int, CurveInfo] = dc_field(default_factory=dict)
    intersections: dict[tuple[int, int], int] = dc_field(default_factory=dict)
    total_genus_drop: int = 0
    terminal_charts: list = dc_field(default_factory=list)
    graph: DualGraph | None = None
    marked_curve: int | None = None

    def blowups(self) -> list[BlowupStep]:
        return [s for s in self.steps if isinstance(s, BlowupStep)]

    def genus_drops(self) -> list[int]:
        return [s.genus_drop for s in self.blowups()]

    def contracted_count(self) -> int:
        return sum(1 for c in self.curves.values() if c.contracted)

    def serialize(self) -> str:
        out = ["resolution-log v1", f"field GF(2^{self.field.k})",
               f"extension {self.extension_degree}"]
        for s in self.steps:
            if isinstance(s, BlowupStep):
                out.append(f"step {s.index} blowup chart={s.chart}"
                           f" subst=({s.substitution}; {s.substitution_b})"
                           f" n={s.normalization_power} drop={s.genus_drop}")
                for side in ("A", "B"):
                    g, f = s.post[side]
                    out.append(f"  {side}: z^2 + z*({g}) + ({f})")
            elif isinstance(s, TranslateStep):
                sh = ", ".join(self.field.format(v) for v in s.shift)
                out.append(f"translate chart={s.chart} by ({sh})"
                           f" z={self.field.format(s.z_value)}")
            elif isinstance(s, ZShiftStep):
                out.append(f"zshift chart={s.chart} h={s.h}")
        out.append(f"total-genus-drop {self.total_genus_drop}")
        for cid in sorted(self.curves):
            c = self.curves[cid]
            out.append(f"curve {c.name} birth={c.birth_index} kind={c.kind} r={c.r}"
                       f" self_intersection={-1 if c.contracted else -2}"
                       f"{' marked' if c.marked else ''}"
                       f"{' contracted' if c.contracted else ''}")
        if self.graph is not None:
            out.append(f"classification {self.graph.classify()}")
        return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# univariate helpers on restricted data

def _poly_to_uni(p: Polynomial, vid: int) -> list[int]:
    out = [0] * (p.degree() + 1 if p.terms else 0)
    for m, c in p.terms.items():
        e = 0
        for v, ee in m:
            if v == vid:
                e = ee
            else:
                raise ValueError("restriction left an unexpected variable")
        out[e] ^= c
    return uni_trim(out)


def _is_square_uni(u: list[int]) -> bool:
    return all(c == 0 for i, c in enumerate(u) if i % 2 == 1)


def _split_solutions_uni(spec: FieldSpec, gbar: list[int], fbar: list[int]
                         ) -> list[int] | None:
    """Solve h^2 + gbar*h = fbar for a polynomial h (coefficient list), or None."""
    d = max((len(fbar) - 1) // 2 if fbar else 0, len(gbar) - 1, 1)
    from .poly import uni_mul, uni_add
    cols = []
    for i in range(d + 1):
        for j in range(spec.k):
            hb = [0] * i + [1 << j]
            img = uni_add(spec, uni_mul(spec, hb, hb), uni_mul(spec, gbar, hb))
            cols.append(img)
    rows = 2 * d + max(len(gbar), 1) + 2
    colv = [c + [0] * (rows - len(c)) for c in cols]
    tv = fbar + [0] * (rows - len(fbar))
    sol = gf2_matrix_solve(colv, tv, spec.k)
    if sol is None:
        return None
    h = [0] * (d + 1)
    for idx in range((d + 1) * spec.k):
        if sol >> idx & 1:
            h[idx // spec.k] ^= 1 << (idx % spec.k)
    return uni_trim(h)


# ----------------------------------------------------------------------
# the resolver

class _Chart:
    __slots__ = ("name", "u", "v", "g", "f", "curves")

    def __init__(self, name, u, v, g, f, curves):
        self.name = name
        self.u = u
        self.v = v
        self.g = g
        self.f = f
        self.curves = curves  # cid -> Polynomial


class _Resolver:
    def __init__(self, cover: DoubleCover, start: tuple[int, int],
                 seeds: dict[str, Polynomial] | None, step_limit: int):
        self.base = cover
        self.start = start
        self.seeds = seeds or {}
        self.step_limit = step_limit

    def run(self) -> ResolutionLog:
        spec0 = self.base.spec
        spec = spec0
        start = self.start
        while True:
            try:
                return self._run_over(spec, start)
            except _NeedsExtension as ne:
                big = spec.extension(ne.degree)
                if big.k > 20:
                    raise ResolutionError(
                        f"singular point needs GF(2^{big.k}); extension cap exceeded")
                start = tuple(spec.embed(c, big) for c in start)
                # re-embedding is relative to the original field of the input
                spec = big

    # -- one attempt over a fixed field ------------------------------------
    def _run_over(self, spec: FieldSpec, start: tuple[int, int]) -> ResolutionLog:
        cover = self.base if spec == self.base.spec else embed_cover(self.base, spec)
        u, v = cover.chart_vars
        log = ResolutionLog(field=spec,
                            extension_degree=spec.k // self.base.spec.k)
        self.log = log
        self.spec = spec
        self.nblow = 0
        self.next_curve = 0
        self.inter: dict[tuple[int, int], int] = {}
        curves: dict[int, Polynomial] = {}
        for name, eq in self.seeds.items():
            eqe = eq if spec == eq.spec else embed_poly(eq, spec)
            cid = self._new_curve(name, 0, "fiber", eqe, None, None)
            curves[cid] = eqe
        chart = _Chart("c0", u, v, cover.g, cover.f, curves)
        from .cover import is_singular_point
        probe = DoubleCover(chart.g, chart.f, ("res", chart.name), (chart.u, chart.v))
        if is_singular_point(probe, *start) is None:
            raise NotSingular(f"start point is not singular on {probe}")
        self._process(chart, [start])
        log.intersections = self.inter
        self._finish_graph()
        return log

    # -- curve registry ------------------------------------------------------
    def _new_curve(self, name, birth, kind, _eq, gbar, fbar) -> int:
        cid = self.next_curve
        self.next_curve += 1
        r = 2 if kind in ("fiber", "branch", "doubled") else 1
        self.log.curves[cid] = CurveInfo(cid, name, birth, kind, r)
        return cid

    def _ipair(self, a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    # -- main recursion --------------------------------------------------------
    def _process(self, chart: _Chart, points: list[tuple[int, int]]):
        if not points:
            self.log.terminal_charts.append(
                (chart.name, chart.g, chart.f, dict(chart.curves)))
            return
        points = sorted(set(points))
        p0 = points[0]
        rest = points[1:]
        chart, rest = self._translate(chart, p0, rest)
        chart = self._strip_squares(chart)
        (childA, ptsA), (childB, ptsB), _step = self._blowup(chart)
        for a, b in rest:
            if b != 0:
                ptsA.append((self.spec.div(a, b), b))
            else:
                ptsB.append((a, 0))
        self._process(childA, ptsA)
        self._process(childB, ptsB)

    def _translate(self, chart: _Chart, p: tuple[int, int], rest):
        a0, b0 = p
        if a0 == 0 and b0 == 0:
            zv = self.spec.sqrt(chart.f.evaluate({chart.u: 0, chart.v: 0}))
            if zv == 0:
                return chart, rest
        spec = self.spec
        pu = Polynomial.variable(spec, var_name(chart.u)) + Polynomial.const(spec, a0)
        pv = Polynomial.variable(spec, var_name(chart.v)) + Polynomial.const(spec, b0)
        mp = {chart.u: pu, chart.v: pv}
        g2 = chart.g.substitute(mp)
        f2 = chart.f.substitute(mp)
        # absorb the z-coordinate of the center as well: z -> z + z0
        z0 = spec.sqrt(f2.evaluate({chart.u: 0, chart.v: 0}))
        if z0:
            f2 = f2 + Polynomial.const(spec, spec.sqr(z0)) + g2.scale(z0)
        curves = {cid: eq.substitute(mp) for cid, eq in chart.curves.items()}
        out = _Chart(chart.name, chart.u, chart.v, g2, f2, curves)
        self.log.steps.append(TranslateStep(chart.name, (a0, b0), z0, g2, f2))
        return out, [(a ^ a0, b ^ b0) for a, b in rest]

    def _strip_squares(self, chart: _Chart) -> _Chart:
        sq = even_part(chart.f)
        if sq.is_zero():
            return chart
        if chart.g.is_zero():
            h, _ = chart.f.square_decompose()
        else:
            probe = DoubleCover(chart.g, chart.f, ("res", chart.name),
                                (chart.u, chart.v))
            from .cover import _solve_squarefree_shift
            h = _solve_squarefree_shift(probe)
            if h is None:
                # Artin-Schreier obstruction over the working field; harmless
                # to keep the square part, singularity detection ignores it
                return chart
        f2 = chart.f + h * h + chart.g * h
        out = _Chart(chart.name, chart.u, chart.v, chart.g, f2, chart.curves)
        self.log.steps.append(ZShiftStep(chart.name, h, f2))
        return out

    def _blowup(self, chart: _Chart):
        spec = self.spec
        self.nblow += 1
        if self.nblow > self.step_limit:
            raise StepLimit(f"blow-up budget {self.step_limit} exhausted")
        idx = self.nblow
        mf = chart.f.mult_at_origin()
        mg = chart.g.mult_at_origin() if chart.g else None
        if mf < 2 and (mg is None or mg < 1):
            raise NotSingular("blow-up center is a smooth point")
        n = mf // 2 if mg is None else min(mf // 2, mg)
        if n < 1:
            raise NotSingular("normalization power 0: center is not singular")
        drop = n - 1
        self.log.total_genus_drop += drop

        # center multiplicities of tracked curves, then the separation update
        mults = {}
        for cid, eq in chart.curves.items():
            m = eq.mult_at_origin()
            if m > 0:
                mults[cid] = m
        pairs = sorted(mults)
        for i, c1 in enumerate(pairs):
            for c2 in pairs[i + 1:]:
                key = self._ipair(c1, c2)
                cur = self.inter.get(key, 0) - mults[c1] * mults[c2]
                if cur:
                    self.inter[key] = cur
                else:
                    self.inter.pop(key, None)
        for c1, m in mults.items():
            self.log.curves[c1].self_down -= m * m

        uname, vname = var_name(chart.u), var_name(chart.v)
        new_u = var_id(f"u{idx}")
        new_v = var_id(f"v{idx}")
        sub_a = {chart.u: Polynomial.variable(spec, f"u{idx}")
                 * Polynomial.variable(spec, vname)}
        sub_b = {chart.v: Polynomial.variable(spec, f"v{idx}")
                 * Polynomial.variable(spec, uname)}

        def transform(side, sub, evar, along):
            f2 = chart.f.substitute(sub)
            f2 = f2.exact_divide(((evar, 2 * n),))
            if chart.g:
                g2 = chart.g.substitute(sub).exact_divide(((evar, n),))
            else:
                g2 = Polynomial.zero(spec)
            curves = {}
            for cid, eq in chart.curves.items():
                e2 = eq.substitute(sub)
                val = e2.valuation(evar)
                if val:
                    e2 = e2.exact_divide(((evar, val),))
                if e2.degree() > 0:
                    curves[cid] = e2
            return g2, f2, curves

        gA, fA, curvesA = transform("A", sub_a, chart.v, new_u)
        gB, fB, curvesB = transform("B", sub_b, chart.u, new_v)

        # the new exceptional curve: classify its preimage from the A side
        gbar = _poly_to_uni(gA.restrict({chart.v: 0}), new_u)
        fbar = _poly_to_uni(fA.restrict({chart.v: 0}), new_u)
        if gbar:
            kind = "split" if _split_solutions_uni(spec, gbar, fbar) is not None \
                else "inert"
        elif not fbar:
            kind = "branch"
        elif _is_square_uni(fbar):
            kind = "doubled"
        else:
            kind = "insep"
        cid = self._new_curve(f"E{idx}", idx, kind, None, gbar, fbar)
        for other, m in mults.items():
            self.inter[self._ipair(cid, other)] = m
        curvesA[cid] = Polynomial.variable(spec, vname)
        curvesB[cid] = Polynomial.variable(spec, uname)

        chartA = _Chart(f"{chart.name}.{idx}A", new_u, chart.v, gA, fA, curvesA)
        chartB = _Chart(f"{chart.name}.{idx}B", chart.u, new_v, gB, fB, curvesB)

        ptsA = self._exceptional_points(chartA, chart.v)
        ptsB = []
        probeB = DoubleCover(gB, fB, ("res", chartB.name), (chartB.u, chartB.v))
        from .cover import is_singular_point
        if is_singular_point(probeB, 0, 0) is not None:
            ptsB.append((0, 0))
        step = BlowupStep(
            index=idx, chart=chart.name,
            substitution=f"{uname} -> u{idx}*{vname}",
            substitution_b=f"{vname} -> v{idx}*{uname}",
            normalization_power=n, genus_drop=drop,
            pre_g=chart.g, pre_f=chart.f,
            post={"A": (gA, fA), "B": (gB, fB)},
            curve=cid,
            primary="A" if (ptsA or not ptsB) else "B")
        self.log.steps.append(step)
        return (chartA, ptsA), (chartB, ptsB), step

    def _exceptional_points(self, chart: _Chart, evar: int) -> list[tuple[int, int]]:
        """Exact singular locus on the exceptional {evar = 0} of a child chart."""
        spec = self.spec
        from .poly import uni_mul, uni_add
        along = chart.u if evar == chart.v else chart.v
        g, f = chart.g, chart.f
        rst = {evar: 0}
        G = _poly_to_uni(g.restrict(rst), along)
        Ga = _poly_to_uni(g.partial(chart.u).restrict(rst), along)
        Gb = _poly_to_uni(g.partial(chart.v).restrict(rst), along)
        F = _poly_to_uni(f.restrict(rst), along)
        Fa = _poly_to_uni(f.partial(chart.u).restrict(rst), along)
        Fb = _poly_to_uni(f.partial(chart.v).restrict(rst), along)
        conds = [
            G,
            uni_add(spec, uni_mul(spec, Fa, Gb), uni_mul(spec, Fb, Ga)),
            uni_add(spec, uni_mul(spec, Fa, Fa), uni_mul(spec, F, uni_mul(spec, Ga, Ga))),
            uni_add(spec, uni_mul(spec, Fb, Fb), uni_mul(spec, F, uni_mul(spec, Gb, Gb))),
        ]
        d: list[int] = []
        for c in conds:
            d = uni_gcd(spec, d, c)
        if not d:
            raise Nonisolated(
                f"the whole exceptional curve of chart {chart.name} is singular")
        if len(d) == 1:
            return []
        roots = [x for x in spec.elements() if uni_eval(spec, d, x) == 0]
        resid = d
        for r in roots:
            while len(resid) > 1 and uni_eval(spec, resid, r) == 0:
                resid, rem = uni_divmod(spec, resid, [r, 1])
                assert not rem
        if len(resid) > 1:
            need = uni_min_splitting_degree(spec, resid, 4)
            if need is None:
                raise ResolutionError(
                    "singular point beyond quartic extensions of the working field")
            raise _NeedsExtension(need)
        out = []
        for r in roots:
            pt = (r, 0) if along == chart.u else (0, r)
            out.append(pt)
        return out

    # -- dual graph --------------------------------------------------------------
    def _finish_graph(self):
        log = self.log
        drops = [(s.index, s.genus_drop) for s in log.blowups() if s.genus_drop > 0]
        last_drop = drops[-1][0] if drops else None
        kept: list[int] = []
        for cid, info in sorted(log.curves.items()):
            if info.kind == "fiber":
                info.contracted = True
                continue
            if last_drop is not None and info.birth_index < last_drop:
                info.contracted = True
                continue
            if last_drop is not None and info.birth_index == last_drop:
                info.marked = True
                log.marked_curve = cid
            kept.append(cid)
        nodes = []
        index_of: dict[int, tuple[int, ...]] = {}
        for cid in kept:
            info = log.curves[cid]
            if info.kind == "split":
                if info.marked:
                    raise ResolutionError("marked curve has a split preimage")
                index_of[cid] = (len(nodes), len(nodes) + 1)
                nodes.append(GraphNode(key=info.name + "+", self_intersection=-2))
                nodes.append(GraphNode(key=info.name + "-", self_intersection=-2))
            else:
                index_of[cid] = (len(nodes),)
                nodes.append(GraphNode(key=info.name, self_intersection=-2,
                                       marked=info.marked))
        edges = []
        # a split preimage contributes two components that the deck involution
        # z -> z + g exchanges, which forces the symmetric distributions below
        for (c1, c2), val in sorted(log.intersections.items()):
            if val == 0 or c1 not in index_of or c2 not in index_of:
                continue
            if val < 0:
                raise ResolutionError("negative downstairs intersection")
            i1, i2 = log.curves[c1], log.curves[c2]
            s1, s2 = i1.kind == "split", i2.kind == "split"
            n1, n2 = index_of[c1], index_of[c2]
            if not s1 and not s2:
                num, den = 2 * val, i1.r * i2.r
                if num % den:
                    raise ResolutionError(
                        f"non-integral intersection {i1.name}.{i2.name}: {num}/{den}")
                if num // den:
                    edges.append((n1[0], n2[0], num // den))
            elif s1 and s2:
                if val != 1:
                    raise ResolutionError(
                        f"split-split intersection {val} > 1 is ambiguous")
                edges.append((n1[0], n2[0], 1))
                edges.append((n1[1], n2[1], 1))
            else:
                if s2:
                    i1, i2 = i2, i1
                    n1, n2 = n2, n1
                # n1 split, n2 plain: invariance of the plain preimage halves it
                tot = 2 * val // i2.r
                if (2 * val) % i2.r or tot % 2:
                    raise ResolutionError(
                        f"asymmetric split intersection {i1.name}.{i2.name}")
                half = tot // 2
                if half:
                    edges.append((min(n1[0], n2[0]), max(n1[0], n2[0]), half))
                    edges.append((min(n1[1], n2[0]), max(n1[1], n2[0]), half))
        for cid in kept:
            info = log.curves[cid]
            if info.kind == "split":
                t = info.self_down + 2
                if t < 0:
                    raise ResolutionError("split components with negative contact")
                if t:
                    edges.append((index_of[cid][0], index_of[cid][1], t))
        log.graph = DualGraph(nodes, sorted(edges))
        _assign_marks(log.graph)


def resolve_point(c: DoubleCover, start, seeds: dict[str, Polynomial] | None = None,
                  step_limit: int = 32) -> ResolutionLog:
    """Resolve the singular point of a local cover at the given (u, v) masks."""
    if c.chart_vars is None:
        raise ValueError("resolve_point expects a localized cover")
    a, b = start
    a = a.bits if hasattr(a, "bits") else a
    b = b.bits if hasattr(b, "bits") else b
    return _Resolver(c, (a, b), seeds, step_limit).run()


def blowup_normalize(c: DoubleCover, center, direction: str = "A") -> BlowupStep:
    """One blow-up at the center, normalized; raises NotSingular off a singular point."""
    from .cover import is_singular_point
    a, b = center
    a = a.bits if hasattr(a, "bits") else a
    b = b.bits if hasattr(b, "bits") else b
    if is_singular_point(c, a, b) is None:
        raise NotSingular("center is not a singular point")
    res = _Resolver(c, (a, b), None, step_limit=2)
    res.log = ResolutionLog(field=c.spec)
    res.spec = c.spec
    res.nblow = 0
    res.next_curve = 0
    res.inter = {}
    res.step_limit = 2
    chart = _Chart("c0", c.chart_vars[0], c.chart_vars[1], c.g, c.f, {})
    chart, _ = res._translate(chart, (a, b), [])
    (chartA, _pA), (chartB, _pB), step = res._blowup(chart)
    if direction == "B":
        step.primary = "B"
    return step


# ----------------------------------------------------------------------
# classification

def classify(graph: DualGraph) -> str:
    n = graph.n_nodes
    if n == 0:
        return "Unknown"
    adj = graph.neighbors()
    # connectivity
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        return "Unknown"
    mult2 = [e for e in graph.edges if e[2] == 2]
    if n == 2 and len(graph.edges) == 1 and len(mult2) == 1:
        return "A1*~"
    if any(e[2] != 1 for e in graph.edges):
        return "Unknown"
    ne = graph.n_edges
    degs = [len(a) for a in adj]
    if ne == n and all(d == 2 for d in degs):
        return f"A{n - 1}~"
    if ne != n - 1:
        return "Unknown"
    branch = [i for i, d in enumerate(degs) if d >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) == 1:
        b = branch[0]
        arms = _arm_lengths(adj, b)
        arms.sort()
        if degs[b] == 4:
            return "D4~" if arms == [1, 1, 1, 1] else "Unknown"
        if degs[b] != 3:
            return "Unknown"
        a1, a2, a3 = arms
        if (a1, a2) == (1, 1):
            return f"D{a3 + 3}"
        table = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8",
                 (2, 2, 2): "E6~", (1, 3, 3): "E7~", (1, 2, 5): "E8~"}
        return table.get((a1, a2, a3), "Unknown")
    if len(branch) == 2:
        b1, b2 = branch
        if degs[b1] != 3 or degs[b2] != 3:
            return "Unknown"
        arms1 = sorted(_arm_lengths(adj, b1, avoid_towards=b2))
        arms2 = sorted(_arm_lengths(adj, b2, avoid_towards=b1))
        if arms1 == [1, 1] and arms2 == [1, 1]:
            return f"D{n - 1}~"
        return "Unknown"
    return "Unknown"


def _arm_lengths(adj, b, avoid_towards=None) -> list[int]:
    out = []
    for start in adj[b]:
        ln = 0
        prev, cur = b, start
        hit_branch = False
        while True:
            ln += 1
            nxt = [k for k in adj[cur] if k != prev]
            if len(adj[cur]) >= 3:
                hit_branch = True
                break
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        if hit_branch:
            if avoid_towards is not None:
                continue
            out.append(ln)  # path toward another branch point
        else:
            out.append(ln)
    return out


_EXTENDED = {"A1*~", "D4~", "E6~", "E7~", "E8~"}


def _assign_marks(graph: DualGraph) -> None:
    """Standard extended-Dynkin multiplicities from the kernel of 2I - A."""
    label = graph.classify()
    if not (label in _EXTENDED or label.endswith("~")):
        return
    n = graph.n_nodes
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = Fraction(2)
    for i, j, m in graph.edges:
        mat[i][j] -= m
        mat[j][i] -= m
    kern = _kernel_vector(mat)
    if kern is None:
        return
    denom = 1
    for x in kern:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in kern]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [abs(x) // g for x in ints]
    for i, nd in enumerate(graph.nodes):
        nd.multiplicity = ints[i]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _kernel_vector(mat) -> list[Fraction] | None:
    n = len(mat)
    m = [row[:] for row in mat]
    piv_cols = []
    r = 0
    for c in range(n):
        p = None
        for i in range(r, n):
            if m[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for i, c in enumerate(piv_cols):
        vec[c] = -m[i][fc]
    return vec


def euler_contribution(graph: DualGraph) -> int:
    """Euler characteristic of the fiber configuration minus the typical 2.

    Components are rational (cusps do not change the etale Euler number);
    every edge of the dual graph is one intersection point, tangencies
    included, so inclusion-exclusion gives 2*V - E - 2.
    """
    return 2 * graph.n_nodes - graph.n_edges - 2


def a1star_graph(provenance: str = "split-fiber") -> DualGraph:
    return DualGraph([GraphNode("C1"), GraphNode("C2")], [(0, 1, 2)], provenance)


def r_intersection_type(log: ResolutionLog | None, a1star: DualGraph) -> int:
    """Intersection multiplicity of the double section with the A1* pair.

    An ordinary split fiber keeps both components through the single point
    where the double section crosses the fiber (the two z-branches agree
    there because g vanishes on s = 0), giving total multiplicity 2.  When
    the A1* is the half-fiber over y = 0 the section reaches it through the
    contracted chain and meets one component transversally: multiplicity 1.
    """
    if a1star.classify() != "A1*~":
        raise ValueError("graph is not an A1* configuration")
    if a1star.provenance == "half-fiber":
        return 1
    return 2

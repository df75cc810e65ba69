"""Sparse multivariate polynomials over a binary field.

A monomial is a sorted tuple of (variable id, positive exponent) pairs;
a polynomial maps monomials to nonzero coefficient masks and carries its
FieldSpec.  Addition of a polynomial to itself gives zero (characteristic
two), and no zero coefficient is ever stored, so equality is plain dict
equality.

Variable names are interned in a global registry.  The ambient variables
z, x, y, s, t get the first five ids; chart variables created during a
resolution (u1, v1, u2, ...) follow in creation order, which is also the
precedence used for printing.

The text grammar (parse/show round-trip bit-exactly):

    poly   := term ('+' term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ('^' uint)?
    coeff  := '0x' hex | uint | 'a' ('^' uint)?
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec

Monomial = tuple  # tuple[(var_id, exp), ...] sorted by var_id


class NotDivisible(ArithmeticError):
    """exact_divide hit a term the monomial does not divide."""


class ParseError(ValueError):
    pass


# ----------------------------------------------------------------------
# variable registry

_VAR_NAMES: list[str] = []
_VAR_IDS: dict[str, int] = {}


def var_id(name: str) -> int:
    vid = _VAR_IDS.get(name)
    if vid is None:
        if not name or not (name[0].isalpha() or name[0] == "_"):
            raise ValueError(f"bad variable name {name!r}")
        vid = len(_VAR_NAMES)
        _VAR_NAMES.append(name)
        _VAR_IDS[name] = vid
    return vid


def var_name(vid: int) -> str:
    return _VAR_NAMES[vid]


for _n in ("z", "x", "y", "s", "t"):
    var_id(_n)

Z, X, Y, S, T = range(5)


# ----------------------------------------------------------------------
# monomial helpers

ONE_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    d = dict(a)
    for v, e in b:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r == 0:
            d.pop(v, None)
        else:
            d[v] = r
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial, vids=None) -> int:
    if vids is None:
        return sum(e for _, e in m)
    return sum(e for v, e in m if v in vids)


def mono_exp(m: Monomial, vid: int) -> int:
    for v, e in m:
        if v == vid:
            return e
    return 0


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(parts)


def _mono_sort_key(m: Monomial):
    # lexicographic on the precedence z > x > y > s > t > chart variables,
    # descending, so z-terms lead and printing round-trips deterministically
    return tuple(-mono_exp(m, v) for v in range(len(_VAR_NAMES)))


class Polynomial:
    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: dict | None = None):
        self.spec = spec
        self.terms: dict[Monomial, int] = terms if terms is not None else {}

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, spec: FieldSpec) -> "Polynomial":
        return cls(spec, {})

    @classmethod
    def const(cls, spec: FieldSpec, c: int) -> "Polynomial":
        return cls(spec, {ONE_MONO: c} if c else {})

    @classmethod
    def variable(cls, spec: FieldSpec, name: str, exp: int = 1) -> "Polynomial":
        if exp == 0:
            return cls.const(spec, 1)
        return cls(spec, {((var_id(name), exp),): 1})

    @classmethod
    def monomial(cls, spec: FieldSpec, mono: Monomial, c: int = 1) -> "Polynomial":
        return cls(spec, {mono: c} if c else {})

    def copy(self) -> "Polynomial":
        return Polynomial(self.spec, dict(self.terms))

    # -- basics -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and self.spec == other.spec
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.spec, tuple(sorted(self.terms.items()))))

    def variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def degree(self, vids=None) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m, vids) for m in self.terms)

    def coeff(self, mono: Monomial) -> int:
        return self.terms.get(mono, 0)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        t = dict(self.terms)
        for m, c in other.terms.items():
            r = t.get(m, 0) ^ c
            if r:
                t[m] = r
            else:
                t.pop(m, None)
        return Polynomial(self.spec, t)

    __sub__ = __add__

    def scale(self, c: int) -> "Polynomial":
        if c == 0:
            return Polynomial.zero(self.spec)
        if c == 1:
            return self
        mul = self.spec.mul
        return Polynomial(self.spec, {m: mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "Polynomial":
        if c == 0:
            return Polynomial.zero(self.spec)
        mul = self.spec.mul
        t = {}
        for m, v in self.terms.items():
            t[mono_mul(m, mono)] = v if c == 1 else mul(v, c)
        return Polynomial(self.spec, t)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, FieldElement):
            return self.scale(other.bits)
        mul = self.spec.mul
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Monomial, int] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                c = mul(c1, c2)
                r = out.get(m, 0) ^ c
                if r:
                    out[m] = r
                else:
                    del out[m]
        return Polynomial(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        r = Polynomial.const(self.spec, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    # -- the four operations the resolution procedure consumes ---------------
    def substitute(self, mapping: dict) -> "Polynomial":
        """Simultaneous ring-homomorphism image; unmapped variables pass through.

        Keys may be names or ids; values Polynomial, FieldElement, or mask.
        """
        spec = self.spec
        subs: dict[int, Polynomial] = {}
        for k, v in mapping.items():
            vid = var_id(k) if isinstance(k, str) else k
            if isinstance(v, Polynomial):
                subs[vid] = v
            elif isinstance(v, FieldElement):
                subs[vid] = Polynomial.const(spec, v.bits)
            else:
                subs[vid] = Polynomial.const(spec, v)
        if not subs:
            return self
        pow_cache: dict[tuple[int, int], Polynomial] = {}

        def vpow(vid: int, e: int) -> Polynomial:
            key = (vid, e)
            got = pow_cache.get(key)
            if got is None:
                got = subs[vid] ** e
                pow_cache[key] = got
            return got

        out = Polynomial.zero(spec)
        for m, c in self.terms.items():
            fixed: list[tuple[int, int]] = []
            parts: list[Polynomial] = []
            for v, e in m:
                if v in subs:
                    parts.append(vpow(v, e))
                else:
                    fixed.append((v, e))
            term = Polynomial.monomial(spec, tuple(fixed), c)
            for p in parts:
                term = term * p
            out = out + term
        return out

    def square_decompose(self) -> tuple["Polynomial", "Polynomial"]:
        """Split p = root^2 + rest, root^2 the all-even-exponent part."""
        spec = self.spec
        root: dict[Monomial, int] = {}
        rest: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            if all(e % 2 == 0 for _, e in m):
                root[tuple((v, e // 2) for v, e in m)] = spec.sqrt(c)
            else:
                rest[m] = c
        return Polynomial(spec, root), Polynomial(spec, rest)

    def exact_divide(self, mono: Monomial) -> "Polynomial":
        if not mono:
            return self
        out = {}
        for m, c in self.terms.items():
            q = mono_div(m, mono)
            if q is None:
                raise NotDivisible(f"{mono_str(mono)} does not divide term {mono_str(m)}")
            out[q] = c
        return Polynomial(self.spec, out)

    def partial(self, v) -> "Polynomial":
        """Formal partial derivative; even exponents vanish in characteristic 2."""
        vid = var_id(v) if isinstance(v, str) else v
        out = {}
        for m, c in self.terms.items():
            e = mono_exp(m, vid)
            if e % 2 == 0:  # covers e == 0
                continue
            q = mono_div(m, ((vid, 1),))
            out[q] = out.get(q, 0) ^ c
            if not out[q]:
                del out[q]
        return Polynomial(self.spec, out)

    # -- structure helpers ----------------------------------------------------
    def valuation(self, v) -> int:
        """Minimal exponent of v over all terms; -1 for the zero polynomial."""
        vid = var_id(v) if isinstance(v, str) else v
        if not self.terms:
            return -1
        return min(mono_exp(m, vid) for m in self.terms)

    def mult_at_origin(self) -> int:
        """Lowest total degree; -1 for zero."""
        if not self.terms:
            return -1
        return min(mono_degree(m) for m in self.terms)

    def homogeneous_part(self, d: int, vids=None) -> "Polynomial":
        return Polynomial(self.spec,
                          {m: c for m, c in self.terms.items() if mono_degree(m, vids) == d})

    def restrict(self, assignment: dict) -> "Polynomial":
        """Substitute constants for some variables (fast path of substitute)."""
        spec = self.spec
        fix: dict[int, int] = {}
        for k, v in assignment.items():
            vid = var_id(k) if isinstance(k, str) else k
            fix[vid] = v.bits if isinstance(v, FieldElement) else v
        out: dict[Monomial, int] = {}
        mul = spec.mul
        pw = spec.pow
        for m, c in self.terms.items():
            keep: list[tuple[int, int]] = []
            for v, e in m:
                if v in fix:
                    c = mul(c, pw(fix[v], e))
                    if c == 0:
                        break
                else:
                    keep.append((v, e))
            if c == 0:
                continue
            km = tuple(keep)
            r = out.get(km, 0) ^ c
            if r:
                out[km] = r
            else:
                del out[km]
        return Polynomial(spec, out)

    def evaluate(self, assignment: dict) -> int:
        p = self.restrict(assignment)
        if not p.terms:
            return 0
        if set(p.terms) != {ONE_MONO}:
            missing = sorted(var_name(v) for v in p.variables())
            raise ValueError(f"evaluate left free variables {missing}")
        return p.terms[ONE_MONO]

    def univariate(self, v) -> list[int]:
        """Dense coefficient list (ascending) of a polynomial in the single variable v."""
        vid = var_id(v) if isinstance(v, str) else v
        if any(w != vid for m in self.terms for w, _ in m):
            raise ValueError("polynomial is not univariate in the requested variable")
        if not self.terms:
            return []
        out = [0] * (self.degree() + 1)
        for m, c in self.terms.items():
            out[mono_exp(m, vid)] ^= c
        while out and out[-1] == 0:
            out.pop()
        return out

    # -- display ---------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: _mono_sort_key(mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(self.spec.format(c))
            elif c == 1:
                parts.append(mono_str(m))
            else:
                parts.append(f"{self.spec.format(c)}*{mono_str(m)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<poly {self} over {self.spec!r}>"


# ----------------------------------------------------------------------
# parsing

def parse_poly(text: str, spec: FieldSpec) -> Polynomial:
    text = "".join(text.split())
    if not text:
        raise ParseError("empty polynomial text")
    out = Polynomial.zero(spec)
    for chunk in text.split("+"):
        if not chunk:
            raise ParseError("empty term (stray '+')")
        coeff = 1
        mono: dict[int, int] = {}
        for i, factor in enumerate(chunk.split("*")):
            if not factor:
                raise ParseError(f"empty factor in {chunk!r}")
            if _is_coeff(factor):
                if i != 0:
                    raise ParseError(f"coefficient {factor!r} must lead its term")
                coeff = spec.mul(coeff, spec.parse(factor))
                continue
            name, _, exp = factor.partition("^")
            if not name.isidentifier():
                raise ParseError(f"bad factor {factor!r}")
            e = 1
            if exp:
                if not exp.isdigit():
                    raise ParseError(f"bad exponent in {factor!r}")
                e = int(exp)
            if e:
                vid = var_id(name)
                mono[vid] = mono.get(vid, 0) + e
        out = out + Polynomial.monomial(spec, tuple(sorted(mono.items())), coeff)
    return out


def _is_coeff(tok: str) -> bool:
    if tok.isdigit() or tok.startswith("0x") or tok.startswith("0X"):
        return True
    return tok == "a" or (tok.startswith("a^") and tok[2:].isdigit())


# ----------------------------------------------------------------------
# univariate utilities over GF(2^k) (dense ascending coefficient lists)

def uni_degree(p: list[int]) -> int:
    return len(p) - 1


def uni_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def uni_add(spec: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] ^= c
    for i, c in enumerate(b):
        out[i] ^= c
    return uni_trim(out)

def uni_mul(spec: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul = spec.mul
    for i, c in enumerate(a):
        if not c:
            continue
        for j, d in enumerate(b):
            if d:
                out[i + j] ^= mul(c, d)
    return uni_trim(out)


def uni_divmod(spec: FieldSpec, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    b = uni_trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = uni_trim(list(a))
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = spec.inv(b[-1])
    mul = spec.mul
    while len(a) >= len(b):
        c = mul(a[-1], inv_lead)
        d = len(a) - len(b)
        if c:
            q[d] = c
            for i, bc in enumerate(b):
                if bc:
                    a[d + i] ^= mul(c, bc)
        a.pop()
        uni_trim(a)
        if not a:
            break
    return uni_trim(q), a


def uni_mod(spec: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    return uni_divmod(spec, a, b)[1]


def uni_gcd(spec: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, uni_mod(spec, a, b)
    if a:
        inv = spec.inv(a[-1])
        a = [spec.mul(c, inv) for c in a]
    return a


def uni_powmod(spec: FieldSpec, base: list[int], n: int, mod: list[int]) -> list[int]:
    r = [1]
    b = uni_mod(spec, base, mod)
    while n:
        if n & 1:
            r = uni_mod(spec, uni_mul(spec, r, b), mod)
        b = uni_mod(spec, uni_mul(spec, b, b), mod)
        n >>= 1
    return r


def uni_eval(spec: FieldSpec, p: list[int], x: int) -> int:
    r = 0
    for c in reversed(p):
        r = spec.mul(r, x) ^ c
    return r


def uni_roots(spec: FieldSpec, p: list[int]) -> list[int]:
    """Roots in the base field, ascending (p nonzero)."""
    if not p:
        raise ValueError("zero polynomial has every root")
    if len(p) == 1:
        return []
    # factor out the distinct linear part via gcd with x^q - x when cheap
    out = [x for x in spec.elements() if uni_eval(spec, p, x) == 0]
    return out


def uni_min_splitting_degree(spec: FieldSpec, p: list[int], dmax: int = 4) -> int | None:
    """Smallest d <= dmax such that p has a root in GF(2^(k*d)), else None."""
    if len(p) <= 1:
        return None
    for d in range(1, dmax + 1):
        # gcd(p, x^(q^d) - x) is nonconstant iff p has a root in the degree-d extension
        xp = uni_powmod(spec, [0, 1], spec.order ** d, p)
        g = uni_gcd(spec, uni_add(spec, xp, [0, 1]), p)
        if len(g) > 1:
            return d
    return None

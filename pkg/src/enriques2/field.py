"""Exact arithmetic in binary fields GF(2^k).

Elements are k-bit masks reduced modulo a fixed irreducible polynomial
over GF(2); addition is xor.  Performance-critical code in this package
passes raw bitmask ints around together with a FieldSpec (multiplication
tables are built for k <= 8); FieldElement is the thin wrapper used at
API boundaries, where it prints as a 0x-prefixed hex mask (0/1 in GF(2)).

Beyond ring arithmetic the module provides the two root operations the
rest of the package depends on: the Frobenius inverse sqrt (unique in a
perfect field of characteristic two) and unique odd-order roots, plus
solvers for Artin-Schreier equations z^2 + z = c and general GF(2)-linear
systems on bit vectors.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass


class NonUniqueRoot(ValueError):
    """Raised when odd_root is asked for an n-th root with gcd(n, 2^k - 1) > 1."""


class NoSuchElement(ValueError):
    """Raised when a requested root or solution does not exist in the field."""


# ----------------------------------------------------------------------
# GF(2)[x] on ints: bit i of the mask is the coefficient of x^i.

def gf2_degree(a: int) -> int:
    return a.bit_length() - 1


def gf2_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] masks."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a: int, m: int) -> int:
    dm = gf2_degree(m)
    da = a.bit_length() - 1
    while da >= dm:
        a ^= m << (da - dm)
        da = a.bit_length() - 1
    return a


def is_irreducible(m: int, k: int) -> bool:
    """Trial division of a degree-k mask by every polynomial of degree <= k/2."""
    if gf2_degree(m) != k:
        return False
    if k == 1:
        return True
    if m & 1 == 0:  # divisible by x
        return False
    for d in range(1, k // 2 + 1):
        for low in range(1 << d):
            q = (1 << d) | low
            if gf2_mod(m, q) == 0:
                return False
    return True


@functools.lru_cache(maxsize=None)
def default_modulus(k: int) -> int:
    """Smallest irreducible degree-k mask; x+1 for k = 1 by convention."""
    if k == 1:
        return 0b11
    for low in range(1 << k):
        m = (1 << k) | low
        if is_irreducible(m, k):
            return m
    raise AssertionError("unreachable: irreducibles exist in every degree")


_SPEC_CACHE: dict[tuple[int, int], "FieldSpec"] = {}


def GF(k: int, modulus: int | None = None) -> "FieldSpec":
    """Interned FieldSpec for GF(2^k)."""
    if modulus is None:
        modulus = default_modulus(k)
    key = (k, modulus)
    spec = _SPEC_CACHE.get(key)
    if spec is None:
        spec = FieldSpec(k, modulus)
        _SPEC_CACHE[key] = spec
    return spec


class FieldSpec:
    """GF(2^k) with a fixed irreducible modulus.

    Irreducibility is checked at construction.  All methods below work on
    raw bitmask ints; element() wraps a mask into a FieldElement.
    """

    def __init__(self, k: int, modulus: int | None = None):
        if k < 1:
            raise ValueError("extension degree must be positive")
        if modulus is None:
            modulus = default_modulus(k)
        if not is_irreducible(modulus, k):
            raise ValueError(f"modulus {modulus:#x} is not irreducible of degree {k}")
        self.k = k
        self.modulus = modulus
        self.order = 1 << k
        self.mult_order = self.order - 1
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if k <= 8:
            self._build_tables()
        # Artin-Schreier solver: z -> z^2 + z is GF(2)-linear on the basis.
        self._as_cols = [self.mul(1 << i, 1 << i) ^ (1 << i) for i in range(k)]
        self._embeddings: dict[tuple[int, int], list[int]] = {}

    def _build_tables(self) -> None:
        if self.order == 2:
            self._exp, self._log = [1, 1], [0, 0]
            return
        # the generator 0b10 (the class of x) need not generate the whole
        # multiplicative group for an arbitrary modulus, so search one.
        for g in range(2, self.order):
            exp = [1] * (2 * self.mult_order)
            seen = {1}
            v = 1
            ok = True
            for i in range(1, self.mult_order):
                v = self._mul_slow(v, g)
                if v in seen:
                    ok = False
                    break
                seen.add(v)
                exp[i] = v
            if ok:
                log = [0] * self.order
                for i in range(self.mult_order):
                    exp[i + self.mult_order] = exp[i]
                    log[exp[i]] = i
                self._exp, self._log = exp, log
                return
        raise AssertionError("no multiplicative generator found")

    # -- ring ops on masks -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return a ^ b

    def _mul_slow(self, a: int, b: int) -> int:
        return gf2_mod(gf2_mul(a, b), self.modulus)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero field element")
            return 0 if n else 1
        if n < 0:
            a = self.inv(a)
            n = -n
        n %= self.mult_order
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % self.mult_order]
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.sqr(a)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.mult_order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        """Frobenius inverse: the unique square root, a^(2^(k-1))."""
        r = a
        for _ in range(self.k - 1):
            r = self.sqr(r)
        return r

    def odd_root(self, a: int, n: int) -> int:
        """Unique n-th root for odd n coprime to 2^k - 1 (nonzero a)."""
        if n <= 0 or n % 2 == 0:
            raise ValueError("root order must be an odd positive integer")
        import math
        if math.gcd(n, self.mult_order) != 1:
            raise NonUniqueRoot(
                f"{n}-th roots are not unique in GF(2^{self.k}):"
                f" gcd({n}, {self.mult_order}) > 1")
        if a == 0:
            raise ValueError("odd_root requires a nonzero element")
        d = pow(n, -1, self.mult_order)
        return self.pow(a, d)

    def trace(self, a: int) -> int:
        t = a
        v = a
        for _ in range(self.k - 1):
            v = self.sqr(v)
            t ^= v
        return t

    def artin_schreier_roots(self, c: int) -> list[int]:
        """All z with z^2 + z = c, in ascending mask order (0 or 2 of them)."""
        z = solve_gf2_linear(self._as_cols, c)
        if z is None:
            return []
        return sorted((z, z ^ 1))

    def quadratic_roots(self, b: int, c: int) -> list[int]:
        """All z with z^2 + b z + c = 0, ascending."""
        if b == 0:
            return [self.sqrt(c)]
        binv2 = self.inv(self.sqr(b))
        return sorted(self.mul(b, z) for z in self.artin_schreier_roots(self.mul(c, binv2)))

    # -- embeddings and extensions ------------------------------------------
    def extension(self, d: int) -> "FieldSpec":
        return GF(self.k * d)

    def embedding_into(self, big: "FieldSpec") -> list[int]:
        """Images of the k basis monomials x^i inside the bigger field.

        Requires self.k | big.k.  The image of x is the smallest root of
        this field's modulus in the big field, so the map is deterministic.
        """
        key = (big.k, big.modulus)
        cached = self._embeddings.get(key)
        if cached is not None:
            return cached
        if big.k % self.k != 0:
            raise ValueError("no embedding: extension degrees incompatible")
        if big.k == self.k and big.modulus == self.modulus:
            basis = [1 << i for i in range(self.k)]
            self._embeddings[key] = basis
            return basis
        root = None
        for cand in range(big.order):
            acc = 0
            p = 1
            m = self.modulus
            i = 0
            while m:
                if m & 1:
                    acc ^= p
                p = big.mul(p, cand)
                m >>= 1
                i += 1
            if acc == 0:
                root = cand
                break
        if root is None:
            raise AssertionError("modulus has a root in every compatible extension")
        basis = [1]
        for _ in range(1, self.k):
            basis.append(big.mul(basis[-1], root))
        self._embeddings[key] = basis
        return basis

    def embed(self, a: int, big: "FieldSpec") -> int:
        basis = self.embedding_into(big)
        r = 0
        i = 0
        while a:
            if a & 1:
                r ^= basis[i]
            a >>= 1
            i += 1
        return r

    def elements(self) -> range:
        return range(self.order)

    def element(self, bits: int) -> "FieldElement":
        return FieldElement(self, bits)

    # -- display -------------------------------------------------------------
    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return format(a, "#x")

    def parse(self, text: str) -> int:
        """Accepts 0x-hex, decimal, and generator powers a, a^i."""
        text = text.strip()
        if text.startswith("0x") or text.startswith("0X"):
            v = int(text, 16)
        elif text == "a":
            v = 0b10
        elif text.startswith("a^"):
            v = self.pow(0b10, int(text[2:]))
        else:
            v = int(text)
        if v >= self.order:
            raise ValueError(f"{text!r} is not an element of GF(2^{self.k})")
        return v

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.k, self.modulus) == (other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF(2^{self.k}; {self.modulus:#x})"


@dataclass(frozen=True, slots=True)
class FieldElement:
    """Element of GF(2^k): a bitmask plus a reference to its FieldSpec."""

    spec: FieldSpec
    bits: int

    def _lift(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other.bits
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._lift(other)
        return FieldElement(self.spec, self.bits ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        b = self._lift(other)
        return FieldElement(self.spec, self.spec.mul(self.bits, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._lift(other)
        return FieldElement(self.spec, self.spec.div(self.bits, b))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.bits, n))

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.sqrt(self.bits))

    def odd_root(self, n: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.odd_root(self.bits, n))

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return self.spec.format(self.bits)

    def __repr__(self) -> str:
        return f"FieldElement({self.spec!r}, {self.spec.format(self.bits)})"


# ----------------------------------------------------------------------
# GF(2) linear algebra on bit vectors.

def solve_gf2_linear(cols: list[int], target: int) -> int | None:
    """Solve sum_j x_j * cols[j] = target over GF(2).

    Columns and target are bit vectors packed into ints.  Returns the
    solution mask that is lexicographically smallest when coordinate 0 is
    the most significant position (so free coordinates prefer 0), or None.
    """
    n = len(cols)
    red: list[tuple[int, int]] = []  # (reduced column, combination mask)
    pivots: dict[int, int] = {}      # pivot row -> index in red
    basis_kernel: list[int] = []
    for j in range(n):
        c = cols[j]
        combo = 1 << j
        while c:
            p = c.bit_length() - 1
            idx = pivots.get(p)
            if idx is None:
                break
            c ^= red[idx][0]
            combo ^= red[idx][1]
        if c:
            pivots[c.bit_length() - 1] = len(red)
            red.append((c, combo))
        else:
            basis_kernel.append(combo)
    t = target
    combo = 0
    while t:
        p = t.bit_length() - 1
        idx = pivots.get(p)
        if idx is None:
            return None
        t ^= red[idx][0]
        combo ^= red[idx][1]
    # canonicalize: make the solution lexicographically smallest, treating
    # coordinate 0 as most significant.  Echelonize the kernel on reversed
    # bit significance and greedily clear high coordinates.
    def keyed(mask: int) -> int:
        r = 0
        for j in range(n):
            if mask >> j & 1:
                r |= 1 << (n - 1 - j)
        return r

    by_top: dict[int, int] = {}
    for m in basis_kernel:
        v = keyed(m)
        while v:
            tb = v.bit_length() - 1
            if tb in by_top:
                v ^= by_top[tb]
            else:
                by_top[tb] = v
                break
    sol = keyed(combo)
    for tb in sorted(by_top, reverse=True):
        sol = min(sol, sol ^ by_top[tb])
    return keyed(sol)  # keyed is an involution


def gf2_matrix_solve(columns: list[list[int]], target: list[int], width: int) -> int | None:
    """Solve over GF(2) where each column/target is a list of field masks.

    Each mask contributes `width` rows.  Returns the canonical solution
    mask over the columns or None.
    """
    def pack(vec: list[int]) -> int:
        r = 0
        for i, m in enumerate(vec):
            r |= m << (i * width)
        return r

    return solve_gf2_linear([pack(c) for c in columns], pack(target))

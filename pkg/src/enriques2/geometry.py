"""Divisor lattice of the ruled base surface and the bidegree checker.

The base is the rational ruled surface with a section Cs of
self-intersection -2 and fiber class Cx; Ct = Cs + 2*Cx is the disjoint
degree-two section, and the canonical class is -2*Ct.  Candidate
equations in z, x, y, s, t must satisfy the two weight rules

    d_s + d_t + 2*d_z = 4        2*d_t + d_x + d_y + 5*d_z = 10

on every monomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Polynomial, Monomial, mono_exp, mono_str, Z, X, Y, S, T


class OddPairing(ArithmeticError):
    """Riemann-Roch integrality violated: E.(E - K) came out odd."""


@dataclass(frozen=True, slots=True)
class DivisorClass:
    """Integer combination cs*Cs + cx*Cx."""

    cs: int
    cx: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.cs + other.cs, self.cx + other.cx)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.cs, -self.cx)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __rmul__(self, n: int) -> "DivisorClass":
        return DivisorClass(n * self.cs, n * self.cx)

    def __str__(self) -> str:
        return f"{self.cs}*Cs + {self.cx}*Cx"


CS = DivisorClass(1, 0)
CX = DivisorClass(0, 1)
CT = DivisorClass(1, 2)          # Cs + 2*Cx: Ct^2 = 2, Ct.Cs = 0
K_Y = DivisorClass(-2, -4)       # -2*Ct
D_COVER = 2 * CT + CX            # the class whose inverse defines the cover


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    """Bilinear form with Cs^2 = -2, Cs.Cx = 1, Cx^2 = 0."""
    return -2 * d1.cs * d2.cs + d1.cs * d2.cx + d1.cx * d2.cs


def chi_line_bundle(d: DivisorClass) -> int:
    """chi(O(E)) = E.(E - K_Y)/2 + 1."""
    pairing = intersect(d, d - K_Y)
    if pairing % 2:
        raise OddPairing(f"{d}.({d} - K) = {pairing} is odd")
    return pairing // 2 + 1


def chi_cover_total() -> int:
    """chi of the unresolved double cover: chi(O_Y) + chi(L)."""
    return chi_line_bundle(DivisorClass(0, 0)) + chi_line_bundle(-D_COVER)


# weight-rule coefficients per variable id: (rule1, rule2)
_WEIGHTS = {Z: (2, 5), X: (0, 1), Y: (0, 1), S: (1, 0), T: (1, 2)}
RULE1_TOTAL = 4
RULE2_TOTAL = 10


def monomial_weights(m: Monomial) -> tuple[int, int]:
    w1 = w2 = 0
    for v, e in m:
        a, b = _WEIGHTS[v]
        w1 += a * e
        w2 += b * e
    return w1, w2


@dataclass(frozen=True, slots=True)
class BidegreeReport:
    ok: bool
    monomial: Monomial | None = None
    weights: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "multihomogeneous"
        w1, w2 = self.weights
        return (f"monomial {mono_str(self.monomial)} violates the weight rules:"
                f" ({w1}, {w2}) != ({RULE1_TOTAL}, {RULE2_TOTAL})")


def check_multihomogeneous(p: Polynomial) -> BidegreeReport:
    """Every monomial must satisfy both weight equations; first violation reported."""
    for m, _ in sorted(p.terms.items()):
        for v, _e in m:
            if v not in _WEIGHTS:
                return BidegreeReport(False, m, monomial_weights(
                    tuple((w, e) for w, e in m if w in _WEIGHTS)))
        w = monomial_weights(m)
        if w != (RULE1_TOTAL, RULE2_TOTAL):
            return BidegreeReport(False, m, w)
    return BidegreeReport(True)


def cover_equation_ok(g: Polynomial, f: Polynomial) -> BidegreeReport:
    """Check z^2 + z*g + f: g carries z's weights implicitly."""
    zmono = ((Z, 1),)
    gz = g.mul_monomial(zmono)
    rep = check_multihomogeneous(gz)
    if not rep:
        return rep
    return check_multihomogeneous(f)

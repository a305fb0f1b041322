"""Hirota bilinear derivative operators on exact polynomials.

The operator D1^a D2^b acting on an ordered pair (f, g) is computed through
the Leibniz sum

    D1^a D2^b f.g = sum_{p<=a, q<=b} (-1)^{p+q} C(a,p) C(b,q)
                    (d1^{a-p} d2^{b-q} f) (d1^p d2^q g),

which keeps everything sparse and exact.  The classical shift-variable
definition (expand f(x+h1, y+h2) g(x-h1, y-h2) in powers of h) is reserved
for the test-suite oracle.

A BilinearForm is a rational-weighted list of such operators applied to
tau.tau; its residual is the exact polynomial whose vanishing says tau
solves the corresponding bilinear PDE.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Tuple

from .polyring import Basis, ExactPoly, QQi


def hirota_d(a: int, b: int, f: ExactPoly, g: ExactPoly) -> ExactPoly:
    """D1^a D2^b f.g in the common basis of f and g, exactly."""
    if a < 0 or b < 0:
        raise ValueError("Hirota orders must be >= 0")
    if f.basis is not g.basis:
        # reuse the polyring error path for a uniform message
        f._require_same_basis(g, "apply a Hirota operator to")

    df = [[None] * (b + 1) for _ in range(a + 1)]
    dg = [[None] * (b + 1) for _ in range(a + 1)]
    for p in range(a + 1):
        for q in range(b + 1):
            df[p][q] = f.diff(0, p).diff(1, q)
            dg[p][q] = g.diff(0, p).diff(1, q)

    total = ExactPoly.zero(f.basis)
    for p in range(a + 1):
        for q in range(b + 1):
            sign = -1 if (p + q) % 2 else 1
            w = sign * comb(a, p) * comb(b, q)
            total = total + (df[a - p][b - q] * dg[p][q]).scale(Fraction(w))
    return total


def falling(a: int, s: int) -> int:
    """Falling factorial a (a-1) ... (a-s+1); defined for any integer a."""
    out = 1
    for t in range(s):
        out *= a - t
    return out


def hirota_axis_coeff(order: int, a: int, c: int) -> int:
    """Coefficient of the single-axis Hirota action on a monomial pair.

    D^order applied to (v^a).(v^c) is this integer times v^{a+c-order};
    the integer is sum_r (-1)^r C(order, r) falling(a, order-r) falling(c, r).
    """
    return sum((-1) ** r * comb(order, r) * falling(a, order - r) * falling(c, r)
               for r in range(order + 1))


def hirota_monomial_zz(a: int, b: int, c: int, d: int, p: int, q: int) -> Fraction:
    """Closed-form coefficient of Dz^p Dzbar^q (z^a zbar^b).(z^c zbar^d).

    The output monomial is z^{a+c-p} zbar^{b+d-q}.  The two axes factor, so
    the coefficient is the product of the single-axis sums.  Exponents may
    be any integers; the falling factorials extend the formula to the formal
    chains of the classifier.
    """
    return Fraction(hirota_axis_coeff(p, a, c) * hirota_axis_coeff(q, b, d))


def hirota_dx4_zz_coeff(b: int, d: int) -> Fraction:
    """Coefficient of z^{a+c} zbar^{b+d-4} in Dx^4 (z^a zbar^b).(z^c zbar^d).

    Dx = Dz + Dzbar, so Dx^4 splits into C(4,p) Dz^p Dzbar^{4-p}; only the
    p = 0 component keeps the full z-exponent, and its value depends on the
    zbar exponents alone.
    """
    return Fraction(hirota_axis_coeff(4, b, d))


@dataclass(frozen=True)
class BilinearForm:
    """Weighted combination sum_k w_k D1^{a_k} D2^{b_k} acting on tau.tau."""

    name: str
    terms: Tuple[Tuple[QQi, int, int], ...]
    basis: Basis = Basis.XY

    def __post_init__(self):
        normalized = []
        for w, a, b in self.terms:
            wq = QQi.of(w)
            if wq.is_zero():
                raise ValueError(f"form {self.name!r}: zero weight on D^{a} D^{b}")
            if (a + b) % 2:
                raise ValueError(
                    f"form {self.name!r}: odd total order {a}+{b}; odd-order "
                    "Hirota operators annihilate tau.tau")
            if a < 0 or b < 0:
                raise ValueError("Hirota orders must be >= 0")
            normalized.append((wq, int(a), int(b)))
        object.__setattr__(self, "terms", tuple(normalized))

    def residual(self, tau: ExactPoly) -> ExactPoly:
        """sum w_k D1^{a_k} D2^{b_k} tau.tau; empty means tau solves the form."""
        if tau.basis is not self.basis:
            tau._require_same_basis(
                ExactPoly.zero(self.basis), "evaluate a bilinear form on")
        total = ExactPoly.zero(self.basis)
        for w, a, b in self.terms:
            total = total + hirota_d(a, b, tau, tau).scale(w)
        return total

    def describe(self) -> list:
        return [{"weight": w.to_json(), "order": [a, b]} for w, a, b in self.terms]


def _form(name: str, *terms) -> BilinearForm:
    return BilinearForm(name, tuple((QQi.of(Fraction(w)), a, b) for w, a, b in terms))


#: Dx^4 - Dx^2 - Dy^2: bilinear Boussinesq with u = 2 dxx log tau.
STANDARD = _form("standard", (1, 4, 0), (-1, 2, 0), (-1, 0, 2))

#: Dx^2 + Dy^2 - Dx^4: the even-solution section (standard negated).
EVEN_SECTION = _form("even-section", (1, 2, 0), (1, 0, 2), (-1, 4, 0))

#: Dx^4 - 3 Dx^2 + 3 Dy^2: scaling used by the degree-6 two-parameter family.
YANG = _form("yang", (1, 4, 0), (-3, 2, 0), (3, 0, 2))

#: 3 Dx^4 - 3 Dx^2 - Dy^2: scaling with q = (3/2) dxx log tau and (x^2+3y^2)
#: leading behavior; the normalization the pole-dynamics checks assume.
BNEW = _form("bnew", (3, 4, 0), (-3, 2, 0), (-1, 0, 2))

PRESETS = {f.name: f for f in (STANDARD, EVEN_SECTION, YANG, BNEW)}


def preset(name: str) -> BilinearForm:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown bilinear form {name!r}; available: {sorted(PRESETS)}"
        ) from None


def custom_form(spec: Sequence, basis: Basis = Basis.XY) -> BilinearForm:
    """Build a form from (weight, a, b) triples; weights parsed as Fractions."""
    terms = tuple((QQi.of(Fraction(str(w))), int(a), int(b)) for w, a, b in spec)
    return BilinearForm("custom", terms, basis)

"""Exact sparse bivariate polynomial arithmetic over the Gaussian rationals.

A polynomial is a dictionary mapping exponent pairs ``(i, j)`` to ``QQi``
coefficients (complex numbers with ``Fraction`` real and imaginary parts).
Every polynomial carries a basis tag: either the real coordinates ``(x, y)``
or the complex coordinates ``(z, zbar)`` with ``z = x + iy``.  All arithmetic
is exact; nothing in this module touches floating point.

The tag is checked on every binary operation.  Mixing bases silently is the
most dangerous bug this representation admits, so it is a hard error.

Conversion between the two bases is the exact linear substitution

    x = (z + zbar)/2,   y = (z - zbar)/(2i)

and its inverse ``z = x + iy``, ``zbar = x - iy``; round trips are identities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Union

Rat = Union[int, Fraction]


class BasisMismatchError(ValueError):
    """Raised when a binary operation mixes (x,y)- and (z,zbar)-polynomials."""


class ExactDivisionError(ArithmeticError):
    """Raised when divide_exact is asked for a quotient that does not exist.

    Carries the nonzero remainder so callers can report the failure precisely.
    """

    def __init__(self, message: str, remainder: "ExactPoly"):
        super().__init__(message)
        self.remainder = remainder


@dataclass(frozen=True)
class QQi:
    """A Gaussian rational: ``re + im*i`` with exact Fraction components.

    Fractions keep denominators positive and in lowest terms, so equality
    of QQi values is exact structural equality.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: "QQi | Rat") -> "QQi":
        """Coerce an int, Fraction or QQi to QQi."""
        if isinstance(value, QQi):
            return value
        return QQi(Fraction(value))

    def __add__(self, other: "QQi | Rat") -> "QQi":
        o = QQi.of(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "QQi | Rat") -> "QQi":
        o = QQi.of(other)
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "QQi | Rat") -> "QQi":
        return QQi.of(other) - self

    def __mul__(self, other: "QQi | Rat") -> "QQi":
        o = QQi.of(other)
        return QQi(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: "QQi | Rat") -> "QQi":
        o = QQi.of(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def __neg__(self) -> "QQi":
        return QQi(-self.re, -self.im)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"({self.re})+({self.im})i"

    def to_json(self) -> "str | dict":
        """Serialize: bare "p/q" string for real values, {re, im} otherwise."""
        if self.im == 0:
            return str(self.re)
        return {"re": str(self.re), "im": str(self.im)}

    @staticmethod
    def from_json(obj: "str | int | dict") -> "QQi":
        if isinstance(obj, dict):
            return QQi(Fraction(str(obj["re"])), Fraction(str(obj.get("im", 0))))
        return QQi(Fraction(str(obj)))


ZERO = QQi()
ONE = QQi(Fraction(1))
I = QQi(Fraction(0), Fraction(1))
HALF = QQi(Fraction(1, 2))


class Basis(Enum):
    XY = "xy"
    ZZBAR = "zzbar"

    @property
    def axes(self) -> tuple:
        return ("x", "y") if self is Basis.XY else ("z", "zbar")


def _axis_index(basis: Basis, var: "int | str") -> int:
    if isinstance(var, int):
        if var in (0, 1):
            return var
        raise ValueError(f"axis index must be 0 or 1, got {var}")
    names = basis.axes
    if var in names:
        return names.index(var)
    raise ValueError(f"unknown axis {var!r} for basis {basis.value}")


class ExactPoly:
    """Immutable sparse bivariate polynomial with QQi coefficients.

    ``terms`` maps exponent pairs to nonzero coefficients; the zero
    polynomial has an empty term map.  Instances are value-like: share
    them freely, never mutate them.
    """

    __slots__ = ("basis", "_terms")

    def __init__(self, terms: Mapping[tuple, "QQi | Rat"], basis: Basis = Basis.XY):
        clean = {}
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term ({i},{j})")
            q = QQi.of(c)
            if not q.is_zero():
                clean[(int(i), int(j))] = q
        self.basis = basis
        self._terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(basis: Basis = Basis.XY) -> "ExactPoly":
        return ExactPoly({}, basis)

    @staticmethod
    def constant(c: "QQi | Rat", basis: Basis = Basis.XY) -> "ExactPoly":
        return ExactPoly({(0, 0): QQi.of(c)}, basis)

    @staticmethod
    def variable(axis: int, basis: Basis = Basis.XY) -> "ExactPoly":
        key = (1, 0) if axis == 0 else (0, 1)
        return ExactPoly({key: ONE}, basis)

    @staticmethod
    def monomial(i: int, j: int, c: "QQi | Rat" = 1, basis: Basis = Basis.XY) -> "ExactPoly":
        return ExactPoly({(i, j): QQi.of(c)}, basis)

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coeff(self, i: int, j: int) -> QQi:
        return self._terms.get((i, j), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Max of i+j over stored terms; the zero polynomial has degree 0."""
        if not self._terms:
            return 0
        return max(i + j for (i, j) in self._terms)

    def degree_in(self, axis: int) -> int:
        if not self._terms:
            return 0
        return max(key[axis] for key in self._terms)

    def num_terms(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return self.basis is other.basis and self._terms == other._terms

    def __hash__(self):
        return hash((self.basis, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"ExactPoly(0, {self.basis.value})"
        vx, vy = self.basis.axes
        parts = []
        for (i, j) in sorted(self._terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self._terms[(i, j)]
            mon = "".join(
                f"*{v}^{e}" for v, e in ((vx, i), (vy, j)) if e)
            parts.append(f"({c}){mon}")
        return " + ".join(parts)

    # -- ring operations ----------------------------------------------

    def _require_same_basis(self, other: "ExactPoly", op: str) -> None:
        if self.basis is not other.basis:
            raise BasisMismatchError(
                f"cannot {op} a {self.basis.value}-polynomial and a "
                f"{other.basis.value}-polynomial; convert explicitly first")

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        self._require_same_basis(other, "add")
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return ExactPoly(out, self.basis)

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        return self + (-other)

    def __neg__(self) -> "ExactPoly":
        return ExactPoly({k: -c for k, c in self._terms.items()}, self.basis)

    def __mul__(self, other: "ExactPoly") -> "ExactPoly":
        self._require_same_basis(other, "multiply")
        out: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                s = out.get(key, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return ExactPoly(out, self.basis)

    def scale(self, c: "QQi | Rat") -> "ExactPoly":
        q = QQi.of(c)
        if q.is_zero():
            return ExactPoly.zero(self.basis)
        return ExactPoly({k: v * q for k, v in self._terms.items()}, self.basis)

    def __pow__(self, n: int) -> "ExactPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ExactPoly.constant(1, self.basis)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def conjugate_coeffs(self) -> "ExactPoly":
        return ExactPoly({k: c.conjugate() for k, c in self._terms.items()},
                         self.basis)

    # -- calculus -----------------------------------------------------

    def diff(self, var: "int | str", order: int = 1) -> "ExactPoly":
        """Exact partial derivative in the basis's own variables."""
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        axis = _axis_index(self.basis, var)
        poly = self
        for _ in range(order):
            out = {}
            for (i, j), c in poly._terms.items():
                e = (i, j)[axis]
                if e == 0:
                    continue
                key = (i - 1, j) if axis == 0 else (i, j - 1)
                out[key] = out.get(key, ZERO) + c * e
            poly = ExactPoly(out, self.basis)
            if poly.is_zero():
                break
        return poly

    # -- evaluation ---------------------------------------------------

    def eval_exact(self, a: "QQi | Rat", b: "QQi | Rat") -> QQi:
        """Evaluate at exact first/second-variable values."""
        av, bv = QQi.of(a), QQi.of(b)
        pow_a = {0: ONE}
        pow_b = {0: ONE}
        total = ZERO
        for (i, j), c in self._terms.items():
            if i not in pow_a:
                pow_a[i] = _int_pow(av, i)
            if j not in pow_b:
                pow_b[j] = _int_pow(bv, j)
            total = total + c * pow_a[i] * pow_b[j]
        return total

    def eval_complex(self, a: complex, b: complex) -> complex:
        total = 0j
        for (i, j), c in self._terms.items():
            total += complex(c) * (a ** i) * (b ** j)
        return total

    def substitute_squares(self, x2: "QQi | Rat", y2: "QQi | Rat") -> QQi:
        """Value after replacing x^2 and y^2 by the given scalars.

        Only defined for polynomials whose every monomial has even degree in
        both variables; an odd exponent is an error, not a convention.
        """
        if self.basis is not Basis.XY:
            raise BasisMismatchError("substitute_squares expects an (x,y)-polynomial")
        xs, ys = QQi.of(x2), QQi.of(y2)
        total = ZERO
        for (i, j), c in self._terms.items():
            if i % 2 or j % 2:
                raise ValueError(
                    f"substitute_squares: term x^{i} y^{j} has an odd exponent")
            total = total + c * _int_pow(xs, i // 2) * _int_pow(ys, j // 2)
        return total

    # -- exact division -----------------------------------------------

    def divide_exact(self, divisor: "ExactPoly") -> "ExactPoly":
        """Return q with q * divisor == self, exactly.

        Division proceeds by leading-term elimination in graded-lex order.
        If the division leaves a nonzero remainder, ExactDivisionError is
        raised carrying that remainder.
        """
        self._require_same_basis(divisor, "divide")
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")

        def order_key(key):
            return (key[0] + key[1], key[0])

        lead_g = max(divisor._terms, key=order_key)
        cg = divisor._terms[lead_g]
        rem = dict(self._terms)
        quot: dict = {}
        stuck: dict = {}
        while rem:
            lead_r = max(rem, key=order_key)
            cr = rem.pop(lead_r)
            di, dj = lead_r[0] - lead_g[0], lead_r[1] - lead_g[1]
            if di < 0 or dj < 0:
                stuck[lead_r] = cr
                continue
            factor = cr / cg
            quot[(di, dj)] = quot.get((di, dj), ZERO) + factor
            for (gi, gj), gc in divisor._terms.items():
                key = (gi + di, gj + dj)
                s = rem.get(key, ZERO) - factor * gc
                if s.is_zero():
                    rem.pop(key, None)
                else:
                    rem[key] = s
            # the eliminated leading term re-enters rem as zero; drop it
            rem.pop(lead_r, None)
        if stuck:
            remainder = ExactPoly(stuck, self.basis)
            raise ExactDivisionError(
                f"polynomial division is not exact; remainder has "
                f"{remainder.num_terms()} term(s)", remainder)
        return ExactPoly(quot, self.basis)

    # -- basis conversion ---------------------------------------------

    def to_zzbar(self) -> "ExactPoly":
        """Substitute x = (z+zbar)/2, y = (z-zbar)/(2i); exact."""
        if self.basis is not Basis.XY:
            raise BasisMismatchError("to_zzbar expects an (x,y)-polynomial")
        # x -> (z + zbar)/2 ; y -> -i(z - zbar)/2
        x_sub = ExactPoly({(1, 0): HALF, (0, 1): HALF}, Basis.ZZBAR)
        y_sub = ExactPoly({(1, 0): -I * HALF, (0, 1): I * HALF}, Basis.ZZBAR)
        return self._substitute(x_sub, y_sub, Basis.ZZBAR)

    def to_xy(self) -> "ExactPoly":
        """Substitute z = x + iy, zbar = x - iy; exact."""
        if self.basis is not Basis.ZZBAR:
            raise BasisMismatchError("to_xy expects a (z,zbar)-polynomial")
        z_sub = ExactPoly({(1, 0): ONE, (0, 1): I}, Basis.XY)
        zb_sub = ExactPoly({(1, 0): ONE, (0, 1): -I}, Basis.XY)
        return self._substitute(z_sub, zb_sub, Basis.XY)

    def _substitute(self, first: "ExactPoly", second: "ExactPoly",
                    target: Basis) -> "ExactPoly":
        pow_first = {0: ExactPoly.constant(1, target)}
        pow_second = {0: ExactPoly.constant(1, target)}

        def power(cache, base, n):
            if n not in cache:
                below = max(k for k in cache if k <= n)
                acc = cache[below]
                for k in range(below + 1, n + 1):
                    acc = acc * base
                    cache[k] = acc
            return cache[n]

        total = ExactPoly.zero(target)
        for (i, j) in sorted(self._terms):
            c = self._terms[(i, j)]
            term = power(pow_first, first, i) * power(pow_second, second, j)
            total = total + term.scale(c)
        return total

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = [[i, j, self._terms[(i, j)].to_json()]
                 for (i, j) in sorted(self._terms)]
        return {"basis": self.basis.value, "terms": terms}

    @staticmethod
    def from_json_dict(obj: dict) -> "ExactPoly":
        basis = Basis(obj["basis"])
        terms = {}
        for entry in obj["terms"]:
            i, j, coeff = entry
            terms[(int(i), int(j))] = QQi.from_json(coeff)
        return ExactPoly(terms, basis)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1)

    @staticmethod
    def loads(text: str) -> "ExactPoly":
        return ExactPoly.from_json_dict(json.loads(text))


def _int_pow(base: QQi, n: int) -> QQi:
    result = ONE
    b = base
    while n:
        if n & 1:
            result = result * b
        b = b * b
        n >>= 1
    return result


# -- convenience builders used throughout the test-suite and catalog ----

def poly_xy(mapping: Mapping[tuple, "QQi | Rat"]) -> ExactPoly:
    return ExactPoly(mapping, Basis.XY)


def poly_zz(mapping: Mapping[tuple, "QQi | Rat"]) -> ExactPoly:
    return ExactPoly(mapping, Basis.ZZBAR)


def x_plus_iy_power(k: int) -> ExactPoly:
    """(x + iy)^k as an exact (x,y)-polynomial."""
    return ExactPoly({(1, 0): ONE, (0, 1): I}, Basis.XY) ** k


def r_squared(basis: Basis = Basis.XY) -> ExactPoly:
    """x^2 + y^2 (or its (z,zbar) avatar z*zbar)."""
    if basis is Basis.XY:
        return ExactPoly({(2, 0): ONE, (0, 2): ONE}, Basis.XY)
    return ExactPoly({(1, 1): ONE}, Basis.ZZBAR)

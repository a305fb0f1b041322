"""Closed-form spectral data of the third-order Lax system.

The constant-coefficient limit of the Lax operator has eigenvalues

    lambda_1 = i k,
    lambda_{2,3} = (-i k +/- sqrt(3 k^2 + 8)) / 2,

with transverse phases sigma_j = i (3 lambda_j^2 - 4) and plane-wave
exponents Lambda_j = lambda_j x + sigma_j y.  The four distinguished
spectral points are k = +/- (sqrt6/3) i (where 3k^2 + 2 = 0) and
k = +/- (2 sqrt6/3) i (where 3k^2 + 8 = 0 and the eigenvalues collide).

At those points everything lives in Q + Q*sqrt6, so the phase table is
computed exactly: an entry is a pair of Fractions, the x-coefficient in
units of sqrt6 and the y-coefficient in units of i.  sqrt(3k^2+8) uses the
principal branch; at the four distinguished points the radicand is 6 or 0,
so no branch ambiguity enters the exact table.

The printed reference table is also shipped: ten of its twelve entries
agree with the computed table, and the remaining two (Lambda_2 and
Lambda_3 at k = -(sqrt6/3) i) have their y-parts transposed in print,
which no eigenvalue branch can produce because the x- and y-coefficients
are tied through sigma = i (3 lambda^2 - 4).  See compare_phase_tables().
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np


class SingularSpectralPointError(ValueError):
    """e_matrix evaluated where a normalization factor vanishes."""

    def __init__(self, factor: str, k: complex):
        super().__init__(f"{factor} = 0 at k = {k}: the normalization blows up")
        self.factor = factor


def eigenvalues(k: complex) -> Tuple[complex, complex, complex]:
    """(lambda_1, lambda_2, lambda_3) with the principal branch of the root."""
    s = cmath.sqrt(3 * k * k + 8)
    return (1j * k, (-1j * k + s) / 2, (-1j * k - s) / 2)


def sigma_of_lambda(lam: complex) -> complex:
    return 1j * (3 * lam * lam - 4)


# ---------------------------------------------------------------------------
# exact phase table at the four distinguished points

#: point name -> c, where k = c * sqrt6 * i
DISTINGUISHED = {
    "k1+": Fraction(1, 3),
    "k1-": Fraction(-1, 3),
    "k2+": Fraction(2, 3),
    "k2-": Fraction(-2, 3),
}


@dataclass(frozen=True)
class PhaseEntry:
    """Lambda_j at a distinguished point: x_coeff * sqrt6 * x + y_coeff * i * y."""

    point: str
    j: int
    x_coeff: Fraction
    y_coeff: Fraction

    def pretty(self) -> str:
        return f"({self.x_coeff})*sqrt6*x + ({self.y_coeff})*i*y"


def point_value(name: str) -> complex:
    """The distinguished point as a complex number."""
    c = DISTINGUISHED[name]
    return complex(0.0, float(c) * math.sqrt(6.0))


def computed_phase_table() -> List[PhaseEntry]:
    """The twelve Lambda entries from the eigenvalue formulas, exact.

    With k = c*sqrt6*i: lambda_1 = -c*sqrt6; sqrt(3k^2+8) = s*sqrt6 with
    s = 1 at k1 points, s = 0 at k2 points; lambda_{2,3} = ((c +/- s)/2)*sqrt6.
    Then sigma = (18 lam_coeff^2 - 4) * i.
    """
    out = []
    for name, c in DISTINGUISHED.items():
        radicand = 8 - 18 * c * c        # (3k^2+8) as a rational
        if radicand == 6:
            s = Fraction(1)
        elif radicand == 0:
            s = Fraction(0)
        else:  # pragma: no cover - DISTINGUISHED only holds the four points
            raise ValueError(f"point {name} is not distinguished")
        lam_coeffs = (-c, (c + s) / 2, (c - s) / 2)
        for j, lc in enumerate(lam_coeffs, start=1):
            out.append(PhaseEntry(name, j, lc, 18 * lc * lc - 4))
    return out


def printed_phase_table() -> List[PhaseEntry]:
    """The reference table exactly as printed, including its two bad entries."""
    rows = {
        "k1+": ((Fraction(-1, 3), Fraction(-2)),
                (Fraction(2, 3), Fraction(4)),
                (Fraction(-1, 3), Fraction(-2))),
        "k1-": ((Fraction(1, 3), Fraction(-2)),
                (Fraction(1, 3), Fraction(4)),      # y-part transposed in print
                (Fraction(-2, 3), Fraction(-2))),   # y-part transposed in print
        "k2+": ((Fraction(-2, 3), Fraction(4)),
                (Fraction(1, 3), Fraction(-2)),
                (Fraction(1, 3), Fraction(-2))),
        "k2-": ((Fraction(2, 3), Fraction(4)),
                (Fraction(-1, 3), Fraction(-2)),
                (Fraction(-1, 3), Fraction(-2))),
    }
    return [PhaseEntry(name, j, xc, yc)
            for name, row in rows.items()
            for j, (xc, yc) in enumerate(row, start=1)]


#: (point, j) pairs where print and computation disagree; the printed y-parts
#: of these two entries are swapped with each other.
PRINT_ERRATA = (("k1-", 2), ("k1-", 3))


def compare_phase_tables() -> List[dict]:
    """Entry-by-entry exact comparison of computed vs printed tables."""
    comp = {(e.point, e.j): e for e in computed_phase_table()}
    out = []
    for printed in printed_phase_table():
        computed = comp[(printed.point, printed.j)]
        out.append({
            "point": printed.point,
            "j": printed.j,
            "computed": computed.pretty(),
            "printed": printed.pretty(),
            "match": (computed.x_coeff == printed.x_coeff
                      and computed.y_coeff == printed.y_coeff),
        })
    return out


def phase_consistency(entry: PhaseEntry) -> bool:
    """Whether the entry obeys the sigma-lambda tie y = 18 x^2 - 4."""
    return entry.y_coeff == 18 * entry.x_coeff ** 2 - 4


# ---------------------------------------------------------------------------
# normalized eigenvector matrix


def e_matrix(k: complex, tol: float = 1e-12) -> Tuple[np.ndarray, complex]:
    """E = n(k) P(k) with n(k) = ((3k^2+2) sqrt(3k^2+8))^{-1}, plus n itself.

    Raises SingularSpectralPointError naming the vanished factor near the
    four distinguished points.
    """
    f1 = 3 * k * k + 2
    f2 = 3 * k * k + 8
    if abs(f1) <= tol * max(1.0, abs(3 * k * k)):
        raise SingularSpectralPointError("3k^2+2", k)
    if abs(f2) <= tol * max(1.0, abs(3 * k * k)):
        raise SingularSpectralPointError("3k^2+8", k)
    lams = eigenvalues(k)
    P = np.array([
        [1.0, 1.0, 1.0],
        [lams[0], lams[1], lams[2]],
        [lams[0] ** 2, lams[1] ** 2, lams[2] ** 2],
    ], dtype=complex)
    n = 1.0 / (f1 * cmath.sqrt(f2))
    return n * P, n


def det_normalization(k: complex) -> Tuple[complex, complex]:
    """(det E, n * det P): the printed claim is det = 1.

    det P is the Vandermonde product (3k^2+2) sqrt(3k^2+8) = 1/n, so
    n * det P = 1 exactly, while det(E) = det(n P) = n^3 det P = n^2.
    The observed discrepancy (det E = n^2, a k-dependent value rather
    than 1) is recorded rather than patched.
    """
    E, n = e_matrix(k)
    detE = complex(np.linalg.det(E))
    detP = detE / n ** 3
    return detE, n * detP


# ---------------------------------------------------------------------------
# Phi entries and the removable-singularity probe

_SERIES_CUTOFF = 0.25
_SERIES_TERMS = 12


def _cosh_sqrt(zeta: complex) -> complex:
    """cosh(sqrt(zeta)) as an entire function of zeta."""
    if abs(zeta) < _SERIES_CUTOFF:
        term = 1.0 + 0j
        total = term
        for m in range(1, _SERIES_TERMS):
            term *= zeta / ((2 * m - 1) * (2 * m))
            total += term
        return total
    w = cmath.sqrt(zeta)
    return cmath.cosh(w)


def _sinhc_sqrt(zeta: complex) -> complex:
    """sinh(sqrt(zeta))/sqrt(zeta) as an entire function of zeta."""
    if abs(zeta) < _SERIES_CUTOFF:
        term = 1.0 + 0j
        total = term
        for m in range(1, _SERIES_TERMS):
            term *= zeta / ((2 * m) * (2 * m + 1))
            total += term
        return total
    w = cmath.sqrt(zeta)
    return cmath.sinh(w) / w


def phi_entries(k: complex, x: float) -> Tuple[complex, complex]:
    """(Phi_12, Phi_22) of E e^{Mx} E^{-1} via the cosh/sinhc closed forms.

    With zeta = (x^2/4)(3k^2+8):

      Phi_12 = (ki/(3k^2+2)) e^{-kxi/2} C + ((3k^2+4)/(6k^2+4)) x e^{-kxi/2} S
               - (ki/(3k^2+2)) e^{kix}
      Phi_22 = ((2k^2+2)/(3k^2+2)) e^{-kxi/2} C + (ki/(3k^2+2)) x e^{-kxi/2} S
               + (k^2/(3k^2+2)) e^{kix}

    where C = cosh(sqrt(zeta)) and S = sinh(sqrt(zeta))/sqrt(zeta); both are
    entire in zeta, so the only candidate singularities are 3k^2+2 = 0 and
    they are removable (probed numerically by removable_probe).
    """
    f1 = 3 * k * k + 2
    zeta = (x * x / 4.0) * (3 * k * k + 8)
    C = _cosh_sqrt(zeta)
    S = _sinhc_sqrt(zeta)
    half = cmath.exp(-k * x * 1j / 2)
    full = cmath.exp(k * x * 1j)
    phi12 = (k * 1j / f1) * half * C \
        + ((3 * k * k + 4) / (2 * f1)) * x * half * S \
        - (k * 1j / f1) * full
    phi22 = ((2 * k * k + 2) / f1) * half * C \
        + (k * 1j / f1) * x * half * S \
        + (k * k / f1) * full
    return phi12, phi22


def removable_probe(point: str, x: float,
                    epsilons: Sequence[float] = (1e-2, 1e-3, 1e-4)
                    ) -> dict:
    """Approach a distinguished point radially; report values and Cauchy gaps.

    The sequence k = k* (1 + eps) converges, with successive differences
    shrinking proportionally to eps, exactly when the singularity is
    removable.
    """
    kstar = point_value(point)
    values12 = []
    values22 = []
    for eps in epsilons:
        k = kstar * (1 + eps)
        p12, p22 = phi_entries(k, x)
        values12.append(p12)
        values22.append(p22)
    gaps12 = [abs(values12[i + 1] - values12[i]) for i in range(len(epsilons) - 1)]
    gaps22 = [abs(values22[i + 1] - values22[i]) for i in range(len(epsilons) - 1)]
    return {
        "point": point,
        "x": x,
        "epsilons": list(epsilons),
        "phi12": values12,
        "phi22": values22,
        "phi12_gaps": gaps12,
        "phi22_gaps": gaps22,
    }

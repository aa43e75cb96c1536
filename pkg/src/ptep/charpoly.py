"""Characteristic polynomials det(H - E*I) of the tridiagonal family.

Uses the leading-minor recurrence

    P_k = (d_k - E) * P_{k-1} + z_{min(k-1, n-k+1)} * P_{k-2},   P_0 = 1,

which involves the couplings only through z, so rational z give exact
rational coefficients even when the matrix entries are surds.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotEvenError, UnsupportedExactError
from .model import Hamiltonian, ZParams, build_hamiltonian

EXACT = "exact"
FLOAT = "float"
ODD_TOL = 1e-12


@dataclass(frozen=True)
class Polynomial:
    """Coefficients from the constant term upward."""

    coeffs: tuple
    arithmetic: str = FLOAT
    variable: str = "E"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_array(self, dtype=float) -> np.ndarray:
        return np.array([complex(c) if dtype is complex else float(c) for c in self.coeffs],
                        dtype=dtype)


def _exact_z(z: ZParams) -> list[Fraction]:
    out = []
    for v in z.z:
        if isinstance(v, bool) or not (isinstance(v, numbers.Rational)
                                       or (isinstance(v, float) and v.is_integer())):
            raise UnsupportedExactError(
                f"exact arithmetic needs rational couplings (int or Fraction), got {v!r}")
        out.append(Fraction(v))
    return out


def _recurrence(diag, products, one, zero):
    # products[p-1] == -(sup_p * sub_p); polynomials as ascending coefficient lists
    prev2, prev = None, [one]
    for k, d in enumerate(diag, start=1):
        cur = [d * c for c in prev] + [zero]
        for i, c in enumerate(prev):
            cur[i + 1] -= c
        if prev2 is not None:
            zk = products[k - 2]
            for i, c in enumerate(prev2):
                cur[i] += zk * c
        prev2, prev = prev, cur
    return prev


def char_poly(h: Hamiltonian, arithmetic: str = EXACT) -> Polynomial:
    """det(H - E*I) as a monic degree-n polynomial in E."""
    n = h.n
    idx = [min(p, n - p) - 1 for p in range(1, n)]
    if arithmetic == EXACT:
        z = _exact_z(h.params)
        diag = [Fraction(2 * k - 1 - n) for k in range(1, n + 1)]
        coeffs = _recurrence(diag, [z[j] for j in idx], Fraction(1), Fraction(0))
    elif arithmetic == FLOAT:
        # binary floats are exact dyadic rationals: run the recurrence exactly and
        # round once, so odd coefficients vanish exactly and no cancellation occurs
        z = [Fraction(float(v)) for v in h.z]
        diag = [Fraction(2 * k - 1 - n) for k in range(1, n + 1)]
        exact = _recurrence(diag, [z[j] for j in idx], Fraction(1), Fraction(0))
        coeffs = [float(c) for c in exact]
    else:
        raise ValueError(f"unknown arithmetic {arithmetic!r}")
    return Polynomial(tuple(coeffs), arithmetic, "E")


def char_poly_tridiagonal(diag, sup, sub) -> Polynomial:
    """Float characteristic polynomial of an arbitrary tridiagonal matrix.

    Works from the products ``sup_p * sub_p``; coefficients come back complex
    unless every imaginary part is exactly zero.
    """
    products = [-(complex(a) * complex(b)) for a, b in zip(sup, sub)]
    coeffs = _recurrence([complex(d) for d in diag], products, 1 + 0j, 0j)
    if all(c.imag == 0 for c in coeffs):
        coeffs = [c.real for c in coeffs]
    return Polynomial(tuple(coeffs), FLOAT, "E")


def even_reduce(p: Polynomial) -> Polynomial:
    """Rewrite an even polynomial p(E) as q(s) with s = E**2."""
    odd = p.coeffs[1::2]
    if p.arithmetic == EXACT:
        bad = [c for c in odd if c != 0]
    else:
        tol = ODD_TOL * max(abs(c) for c in p.coeffs)
        bad = [c for c in odd if abs(c) > tol]
    if bad:
        raise NotEvenError(f"polynomial has nonzero odd coefficients: {bad}")
    return Polynomial(tuple(p.coeffs[0::2]), p.arithmetic, "s")


def secular_coeffs_n8(A, B, C, D):
    """Closed-form (f_6, f_4, f_2, f_0) of det(H^(8) - E*I) = E^8 + f_6 E^6 + f_4 E^4 + f_2 E^2 + f_0.

    Couplings enter as a_1 = sqrt(D), a_2 = sqrt(C), a_3 = sqrt(B), a_4 = sqrt(A).
    """
    f6 = -84 + 2 * D + 2 * C + 2 * B + A
    f4 = (2 * C * D + 50 * D + 4 * B * D + 2 * A * D + D**2 - 70 * C + 1974 - 142 * B
          - 83 * A + 2 * B * C + 2 * A * C + C**2 + B**2)
    f2 = (-12916 - 682 * D - 74 * B**2 + 2 * B**2 * D + 2006 * B - 1402 * C - 50 * C**2
          - 44 * C * D + 2 * C * B * D + 2 * C * A * D + A * C**2 - 68 * A * C + 52 * A * D
          + 1891 * A + 152 * B * D - 108 * B * C + 2 * B * D**2 + A * D**2 - 10 * D**2)
    f0 = (11025 + 630 * D + 1225 * B**2 + 70 * B**2 * D + 7350 * B + 1470 * C + 49 * C**2
          + 42 * C * D + 14 * C * B * D - 42 * C * A * D - 49 * A * C**2 - 1470 * A * C
          - 630 * A * D - 11025 * A + 420 * B * D + 490 * B * C + 6 * B * D**2
          - 9 * A * D**2 + 9 * D**2 + B**2 * D**2)
    return f6, f4, f2, f0


def char_poly_of_z(z, arithmetic: str = EXACT) -> Polynomial:
    """Shortcut: characteristic polynomial straight from a ZParams."""
    return char_poly(build_hamiltonian(z), arithmetic)

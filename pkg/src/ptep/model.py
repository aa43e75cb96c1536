"""Tridiagonal PT-symmetric Hamiltonian family H^(n)(t) and its block partition.

The n x n matrix (n = 2J even) has the equidistant diagonal
``-n+1, -n+3, ..., n-1`` and antisymmetric off-diagonal couplings
``H[p-1, p] = a_j``, ``H[p, p-1] = -a_j`` with ``j = min(p, n-p)``.
The couplings are parameterized by ``z_j = a_j**2``; the spectrum depends on
``z`` only.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    BlocksNotDecoupledError,
    InvalidDimensionError,
    UnsupportedPartitionError,
)

MAX_FLOAT_DIM = 64


def _check_dimension(n) -> int:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise InvalidDimensionError(f"dimension must be an integer, got {n!r}")
    n = int(n)
    if n < 2 or n % 2:
        raise InvalidDimensionError(f"dimension must be even and >= 2, got {n}")
    return n


def _squarefree_split(r: int) -> tuple[int, int]:
    """Return (s, q) with r == s*s*q and q squarefree."""
    s, q, d = 1, r, 2
    while d * d <= q:
        while q % (d * d) == 0:
            q //= d * d
            s *= d
        d += 1
    return s, q


@dataclass(frozen=True)
class Surd:
    """Exact number ``coeff * i**phase * sqrt(radicand)``.

    ``radicand`` is kept squarefree and ``phase`` in 0..3, so equal values have
    equal representations.
    """

    coeff: Fraction = Fraction(0)
    phase: int = 0
    radicand: int = 1

    def __post_init__(self):
        coeff = Fraction(self.coeff)
        radicand = int(self.radicand)
        if radicand < 0:
            raise ValueError("radicand must be nonnegative; use phase for i")
        phase = self.phase % 4
        if coeff == 0 or radicand == 0:
            coeff, phase, radicand = Fraction(0), 0, 1
        else:
            s, radicand = _squarefree_split(radicand)
            coeff *= s
            if phase >= 2:
                coeff, phase = -coeff, phase - 2
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "phase", phase)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def sqrt_of(cls, z) -> "Surd":
        """Principal-branch square root of a rational z (imaginary for z < 0)."""
        z = Fraction(z)
        if z == 0:
            return cls()
        num, den = abs(z.numerator), z.denominator
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(Fraction(1, den), 1 if z < 0 else 0, num * den)

    def __mul__(self, other):
        if isinstance(other, Surd):
            return Surd(self.coeff * other.coeff, self.phase + other.phase,
                        self.radicand * other.radicand)
        if isinstance(other, numbers.Rational):
            return Surd(self.coeff * other, self.phase, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return Surd(-self.coeff, self.phase, self.radicand)

    def __complex__(self):
        return complex(float(self.coeff) * math.sqrt(self.radicand) * (1j ** self.phase))

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __repr__(self):
        unit = "i*" if self.phase else ""
        return f"Surd({self.coeff}*{unit}sqrt({self.radicand}))"


@dataclass(frozen=True)
class ZParams:
    """Coupling parameters ``z_1..z_J`` of an n x n member of the family."""

    n: int
    z: tuple

    def __post_init__(self):
        n = _check_dimension(self.n)
        z = tuple(self.z)
        if len(z) != n // 2:
            raise InvalidDimensionError(f"expected {n // 2} couplings for n={n}, got {len(z)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "z", z)

    @property
    def J(self) -> int:
        return self.n // 2

    def is_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.z, self.z[1:]))

    def is_exact(self) -> bool:
        return all(_is_exact_number(v) for v in self.z)


def _is_exact_number(v) -> bool:
    if isinstance(v, bool):
        return False
    if isinstance(v, numbers.Rational):
        return True
    return isinstance(v, float) and v.is_integer()


def z_of_t(n: int, t) -> ZParams:
    """Linear family ``z_j(t) = j*(n-j) - t``.

    Integer and Fraction ``t`` stay exact; floats give float couplings.
    """
    n = _check_dimension(n)
    return ZParams(n, tuple(j * (n - j) - t for j in range(1, n // 2 + 1)))


def coupling(zj) -> complex:
    """Branch-fixed coupling: ``sqrt(z)`` for z >= 0, ``i*sqrt(|z|)`` for z < 0."""
    zj = float(zj)
    return complex(math.sqrt(zj)) if zj >= 0 else 1j * math.sqrt(-zj)


def coupling_index(p: int, n: int) -> int:
    """1-based coupling index j used at off-diagonal position p (1..n-1)."""
    return min(p, n - p)


def _readonly(a):
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Banded storage of H^(n); use :meth:`dense` for the full matrix."""

    params: ZParams
    diag: np.ndarray = field(repr=False)
    sup: np.ndarray = field(repr=False)
    sub: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def z(self) -> tuple:
        return self.params.z

    def dense(self) -> np.ndarray:
        h = np.diag(self.diag.astype(complex))
        idx = np.arange(self.n - 1)
        h[idx, idx + 1] = self.sup
        h[idx + 1, idx] = self.sub
        return h

    def off_products(self) -> np.ndarray:
        """``sup_p * sub_p`` for every off-diagonal position; equals ``-z``."""
        return self.sup * self.sub

    def exact_coupling(self, j: int) -> Surd:
        """Exact ``a_j`` (1-based) as a :class:`Surd`; needs rational ``z_j``."""
        return Surd.sqrt_of(self.z[j - 1])

    def scale(self) -> float:
        """Max-norm of the dense matrix, used to make tolerances relative."""
        return float(max(np.max(np.abs(self.diag)),
                         np.max(np.abs(self.sup), initial=0.0)))

    def with_branch_signs(self, signs) -> "Hamiltonian":
        """Same z, with ``a_j`` replaced by ``signs[j-1] * a_j``.

        The spectrum is unchanged; used to probe branch independence.
        """
        signs = np.asarray(signs, dtype=float)
        p = np.arange(1, self.n)
        s = signs[np.minimum(p, self.n - p) - 1]
        return Hamiltonian(self.params, self.diag, _readonly(self.sup * s),
                           _readonly(self.sub * s))


def build_hamiltonian(z: ZParams) -> Hamiltonian:
    n = z.n
    diag = np.array([2 * k - 1 - n for k in range(1, n + 1)], dtype=float)
    a = np.array([coupling(v) for v in z.z], dtype=complex)
    p = np.arange(1, n)
    sup = a[np.minimum(p, n - p) - 1]
    return Hamiltonian(z, _readonly(diag), _readonly(sup.copy()), _readonly(-sup))


def parity_matrix(n: int) -> np.ndarray:
    """Antidiagonal unit matrix P; the family satisfies P H P = -H."""
    return np.eye(n)[::-1]


@dataclass(frozen=True)
class Partition:
    """Split of H into Hermitian A (m x m), non-Hermitian C (2k x 2k), Hermitian B."""

    n: int
    m: int
    k: int
    coupled: bool

    @property
    def a_range(self) -> range:
        return range(0, self.m)

    @property
    def c_range(self) -> range:
        return range(self.m, self.n - self.m)

    @property
    def b_range(self) -> range:
        return range(self.n - self.m, self.n)


def partition(z: ZParams) -> Partition:
    if not z.is_increasing():
        raise UnsupportedPartitionError(f"couplings must be strictly increasing: {z.z}")
    m = sum(1 for v in z.z if v <= 0)
    coupled = not any(v == 0 for v in z.z)
    return Partition(z.n, m, z.J - m, coupled)


def extract_blocks(h: Hamiltonian, p: Partition):
    """Return (A, C, B) dense blocks of a decoupled Hamiltonian."""
    if p.coupled:
        raise BlocksNotDecoupledError(
            "Hermitian and non-Hermitian blocks are coupled (no z_j == 0)")
    d = h.dense()
    a, c, b = p.a_range, p.c_range, p.b_range
    return (d[a.start:a.stop, a.start:a.stop],
            d[c.start:c.stop, c.start:c.stop],
            d[b.start:b.stop, b.start:b.stop])


def direct_sum(*blocks) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=complex)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out

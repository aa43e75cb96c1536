"""Perturbation theory around an EP(N).

With the transition matrix Q of the unperturbed EP Hamiltonian,
``Q^-1 H Q = S + W``.  Restricted to the N x N Jordan block the eigenproblem
``(J + W) psi = eps psi`` (normalized ``psi_1 = 1``) becomes the linear system
``(L + Z) y = r`` with the side condition ``y_N = 0``.  Keeping only the
leading resolvent term gives the secular polynomial

    eps^N - W_11 eps^(N-1) - W_21 eps^(N-2) - ... - W_N1,

and when ``W_N1 != 0`` the N perturbed levels sit on the ring
``W_N1**(1/N) * exp(2 pi i n / N)`` to leading order.
"""
from __future__ import annotations

import cmath
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charpoly import Polynomial
from .errors import ConditioningError, InvalidDimensionError
from .jordan import JordanForm

FT_TOL = 1e-10
MAX_COND = 1e13


@dataclass(frozen=True, eq=False)
class PerturbationData:
    w: np.ndarray
    ep_order: int
    first_column: np.ndarray
    fine_tuned: bool

    @property
    def block(self) -> np.ndarray:
        """W restricted to the Jordan block."""
        return self.w[:self.ep_order, :self.ep_order]

    @property
    def w_n1(self) -> complex:
        return complex(self.first_column[-1])


def perturbation_matrix(h, jf: JordanForm, ft_tol: float = FT_TOL) -> PerturbationData:
    """``W = Q^-1 H Q - S``; ``h`` may be a Hamiltonian or any square array."""
    mat = h.dense() if hasattr(h, "dense") else np.asarray(h, dtype=complex)
    if mat.shape != jf.q.shape:
        raise InvalidDimensionError(f"shape mismatch: H {mat.shape} vs Q {jf.q.shape}")
    cond = np.linalg.cond(jf.q)
    if not np.isfinite(cond) or cond > MAX_COND:
        raise ConditioningError(f"transition matrix is numerically singular (cond={cond:.3e})")
    w = np.linalg.solve(jf.q, mat @ jf.q) - jf.s
    order = jf.ep_order
    first = w[:order, 0].copy()
    wmax = float(np.max(np.abs(w)))
    fine = abs(first[-1]) <= ft_tol * wmax
    return PerturbationData(w, order, first, bool(fine))


def _is_exact(x) -> bool:
    return isinstance(x, numbers.Rational) and not isinstance(x, bool)


def build_L(eps, n: int) -> np.ndarray:
    """Unit lower-bidiagonal matrix with ``-eps`` on the subdiagonal."""
    if _is_exact(eps):
        out = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            out[i, i] = Fraction(1)
            if i:
                out[i, i - 1] = -Fraction(eps)
        return out
    out = np.eye(n, dtype=complex)
    out[np.arange(1, n), np.arange(n - 1)] = -eps
    return out


def build_R(eps, n: int) -> np.ndarray:
    """Inverse of :func:`build_L`: ``R[i, j] = eps**(i-j)`` for i >= j."""
    if _is_exact(eps):
        e = Fraction(eps)
        out = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            for j in range(i + 1):
                out[i, j] = e ** (i - j)
        return out
    powers = complex(eps) ** np.arange(n)
    i, j = np.indices((n, n))
    return np.where(i >= j, powers[np.clip(i - j, 0, n - 1)], 0)


def build_Z(w) -> np.ndarray:
    """W with its first column dropped and a zero column appended."""
    w = np.asarray(w)
    z = np.zeros_like(w)
    z[:, :-1] = w[:, 1:]
    return z


def rhs(w, eps) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    r = -w[:, 0].copy()
    r[0] += eps
    return r


@dataclass(frozen=True)
class ResolventSolution:
    y: np.ndarray
    residual: complex  # y_N; eps is an eigenvalue of J + W iff this vanishes


def resolvent_solve(w, eps, order: int | None = None) -> ResolventSolution:
    """Solve ``(L + Z) y = r`` exactly (``order=None``) or by the Neumann series.

    A finite ``order`` keeps the terms ``(-R Z)^k R r`` for ``k = 0..order``.
    """
    w = np.asarray(w, dtype=complex)
    n = w.shape[0]
    L = build_L(complex(eps), n)
    R = build_R(complex(eps), n)
    Z = build_Z(w)
    r = rhs(w, eps)
    if order is None:
        y = np.linalg.solve(L + Z, r)
    else:
        if order < 0:
            raise ValueError("order must be >= 0")
        term = R @ r
        y = term.copy()
        for _ in range(order):
            term = -(R @ (Z @ term))
            y = y + term
    return ResolventSolution(y, complex(y[-1]))


def secular_leading(w) -> Polynomial:
    """Leading-order secular polynomial in eps from the first column of W."""
    w = np.asarray(w, dtype=complex)
    col = w[:, 0]
    n = w.shape[0]
    # ascending: c_0 = -W_N1, ..., c_{N-1} = -W_11, c_N = 1
    coeffs = tuple(complex(-col[n - 1 - k]) for k in range(n)) + (1 + 0j,)
    return Polynomial(coeffs, "float", "eps")


@dataclass(frozen=True)
class UnfoldingPrediction:
    ring: tuple
    radius: float
    real_on_ring: int
    applicable: bool = True


def principal_root(w: complex, n: int) -> complex:
    """N-th root with argument in [0, 2 pi / N)."""
    w = complex(w)
    if w == 0:
        return 0j
    arg = cmath.phase(w) % (2 * cmath.pi)
    return abs(w) ** (1.0 / n) * cmath.exp(1j * arg / n)


def unfold_ring(w_n1: complex, big_n: int, real_tol: float = 1e-9) -> UnfoldingPrediction:
    if big_n < 2:
        raise InvalidDimensionError("EP order must be >= 2")
    base = principal_root(w_n1, big_n)
    ring = tuple(base * cmath.exp(2j * cmath.pi * k / big_n) for k in range(1, big_n + 1))
    radius = abs(complex(w_n1)) ** (1.0 / big_n)
    n_real = sum(1 for e in ring if abs(e.imag) <= real_tol * (abs(e) + 1e-300) or e == 0)
    return UnfoldingPrediction(ring, radius, n_real)


def predict_unfolding(data: PerturbationData) -> UnfoldingPrediction:
    """Ring prediction, or a not-applicable result for fine-tuned W."""
    if data.fine_tuned:
        return UnfoldingPrediction((), 0.0, 0, applicable=False)
    return unfold_ring(data.w_n1, data.ep_order)


def ring_distance(eigs, ring) -> float:
    """Max over eigenvalues of the distance to the nearest ring member."""
    eigs = np.asarray(eigs, dtype=complex)
    ring = np.asarray(ring, dtype=complex)
    return float(np.abs(eigs[:, None] - ring[None, :]).min(axis=1).max())

"""Exceptional-point locus of the family: exact EP couplings and the EP cascade.

At ``z_k = k*(n-k)`` the matrix has a single eigenvalue 0 of algebraic
multiplicity n.  Shifting all couplings by ``t = j*(n-j)`` decouples the two
outermost j x j Hermitian blocks and leaves an EP of order n - 2j in the middle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import model
from .charpoly import EXACT, char_poly
from .errors import ExactCapExceededError, NotEpTimeError, PTEPError
from .model import ZParams, build_hamiltonian, partition, z_of_t

EXACT_CAP = 64
NEAR_EP_TOL = 1e-6


def ep_params(n: int) -> ZParams:
    n = model._check_dimension(n)
    return ZParams(n, tuple(k * (n - k) for k in range(1, n // 2 + 1)))


@dataclass(frozen=True)
class EpIdentityReport:
    n: int
    holds: bool
    coeffs: tuple  # exact coefficients of det(H - E*I), constant term first


def verify_ep_identity(n: int, cap: int = EXACT_CAP, *, z: ZParams | None = None) -> EpIdentityReport:
    """Exact check that det(H - E*I) == E**n at the EP couplings.

    ``z`` overrides the couplings (used by negative controls).
    """
    n = model._check_dimension(n)
    if n > cap:
        raise ExactCapExceededError(f"n={n} exceeds exact-arithmetic cap {cap}")
    z = ep_params(n) if z is None else z
    p = char_poly(build_hamiltonian(z), EXACT)
    holds = p.coeffs[-1] == 1 and all(c == 0 for c in p.coeffs[:-1])
    return EpIdentityReport(n, holds, p.coeffs)


@dataclass(frozen=True)
class EpCascade:
    n: int
    times: tuple  # exact integers, ascending
    orders: tuple  # 2K of the central block at each time


def ep_order_at(n: int, t) -> int:
    return n - 2 * sum(1 for j in range(1, n // 2 + 1) if j * (n - j) <= t)


def ep_cascade(n: int) -> EpCascade:
    n = model._check_dimension(n)
    times = (0,) + tuple(j * (n - j) for j in range(1, n // 2 + 1))
    return EpCascade(n, times, tuple(ep_order_at(n, t) for t in times))


def lemma4_check(j: int, n: int) -> bool:
    """``j(n-j) == (j-1)(n-2-(j-1)) + (n-1)`` in exact integers."""
    n = model._check_dimension(n)
    if n < 4 or not 2 <= j <= n // 2:
        raise PTEPError(f"need 2 <= j <= n/2 and n >= 4, got j={j}, n={n}")
    return j * (n - j) == (j - 1) * (n - 2 - (j - 1)) + (n - 1)


def _require_ep_time(n: int, t) -> None:
    if t not in ep_cascade(n).times:
        raise NotEpTimeError(f"t={t} is not an EP time for n={n}")


def inner_block_z(n: int, t) -> tuple:
    """Couplings of the central non-Hermitian block at an EP time."""
    _require_ep_time(n, t)
    return tuple(v for v in z_of_t(n, t).z if v > 0)


def inner_block_is_ep(n: int, t) -> bool:
    n = model._check_dimension(n)
    _require_ep_time(n, t)
    if t >= (n // 2) ** 2:
        raise NotEpTimeError(f"t={t} leaves no non-Hermitian block")
    inner = inner_block_z(n, t)
    return inner == ep_params(2 * len(inner)).z


def decoupled_at(n: int, t) -> bool:
    return not partition(z_of_t(n, t)).coupled


def near_ep(h_or_matrix, order: int, tol: float = NEAR_EP_TOL) -> bool:
    """Float near-EP test for scans.

    True when the central ``order`` x ``order`` block has a cluster of
    ``order`` eigenvalues at 0 and its Jordan chain closes within ``tol``.
    """
    from .jordan import chain_residual
    from .spectra import single_linkage

    mat = h_or_matrix.dense() if hasattr(h_or_matrix, "dense") else np.asarray(h_or_matrix)
    n = mat.shape[0]
    lo = (n - order) // 2
    block = mat[lo:lo + order, lo:lo + order]
    ev = np.linalg.eigvals(block)
    scale = max(np.max(np.abs(block)), 1.0)
    # defective clusters spread like eps**(1/order)
    gap = max(tol, 4 * np.finfo(float).eps ** (1.0 / order)) * (1 + scale)
    groups = single_linkage(ev, gap)
    at_zero = [g for g in groups if abs(np.mean(ev[g])) <= gap * len(g)]
    if not at_zero or max(len(g) for g in at_zero) < order:
        return False
    return chain_residual(block, 0.0) <= tol

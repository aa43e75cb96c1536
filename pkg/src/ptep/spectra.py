"""Eigenvalues of the family by two independent routes, plus classification.

* ``poly``: even-reduce det(H - E*I) to a degree-J polynomial in s = E**2,
  find its roots by Aberth-Ehrlich simultaneous iteration, return +-sqrt(s).
* ``dense``: LAPACK nonsymmetric eigensolver on the dense matrix.

Near an exceptional point the matrix is defective and both routes lose
accuracy like eps**(1/N); compare them with :func:`cross_check`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .charpoly import FLOAT, Polynomial, char_poly, even_reduce
from .errors import ConvergenceError, InvalidDimensionError
from .model import MAX_FLOAT_DIM, Hamiltonian

POLY = "poly"
DENSE = "dense"
REAL_TOL = 1e-9
CLUSTER_TOL = 1e-6
MAX_ITER_PER_ROOT = 200
EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Cluster:
    center: complex
    multiplicity: int


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray
    method: str
    real_count: int | None = None
    clusters: tuple = field(default=())

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.eigenvalues), initial=0.0))

    def real_values(self) -> np.ndarray:
        """Real parts of the eigenvalues classified as real (after :func:`classify`)."""
        mask = _real_mask(self.eigenvalues, REAL_TOL)
        return np.sort(self.eigenvalues[mask].real)


def aberth_roots(coeffs, *, tol: float = 4 * EPS, max_iter: int | None = None) -> np.ndarray:
    """All roots of the polynomial with ascending ``coeffs``.

    Trailing exact-zero coefficients are split off as roots at 0 first.
    Deterministic start: points on a circle of the Fujiwara radius with a
    fixed angular offset.
    """
    c = np.array(coeffs, dtype=complex)
    while c.size and c[-1] == 0:
        c = c[:-1]
    if c.size == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    nzero = 0
    while c.size > 1 and c[0] == 0:
        c = c[1:]
        nzero += 1
    deg = c.size - 1
    zeros = np.zeros(nzero, dtype=complex)
    if deg == 0:
        return zeros
    c = c / c[-1]
    if deg == 1:
        return np.concatenate([zeros, [-c[0]]])

    desc = c[::-1]
    adesc = np.abs(desc)
    ddesc = desc[:-1] * np.arange(deg, 0, -1)
    radius = 2.0 * max(abs(desc[k]) ** (1.0 / k) if k < deg
                       else abs(desc[deg] / 2) ** (1.0 / deg) for k in range(1, deg + 1))
    radius = radius or 1.0
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    z = radius * np.exp(1j * angles)
    max_iter = MAX_ITER_PER_ROOT if max_iter is None else max_iter
    done = np.zeros(deg, dtype=bool)
    for _ in range(max_iter):
        for i in range(deg):
            if done[i]:
                continue
            zi = z[i]
            p = np.polyval(desc, zi)
            # stop once |p| is at the rounding level of Horner's scheme
            if abs(p) <= 8 * EPS * np.polyval(adesc, abs(zi)):
                done[i] = True
                continue
            ratio = p / np.polyval(ddesc, zi)
            diff = zi - np.delete(z, i)
            if np.any(diff == 0):
                diff = np.where(diff == 0, 1e-300, diff)
            w = ratio / (1 - ratio * np.sum(1.0 / diff))
            z[i] = zi - w
            if abs(w) <= tol * max(abs(z[i]), 1e-300) or abs(w) < 1e-300:
                done[i] = True
        if done.all():
            break
    else:
        raise ConvergenceError(f"Aberth iteration did not converge in {max_iter} sweeps",
                               partial=np.concatenate([zeros, z]), iterations=max_iter)
    return np.concatenate([zeros, z])


def _signed_sqrt_pair(s: complex) -> tuple[complex, complex]:
    if s.imag == 0:
        if s.real >= 0:
            r = math.sqrt(s.real)
            return complex(r), complex(-r)
        r = math.sqrt(-s.real)
        return complex(0, r), complex(0, -r)
    r = cmath.sqrt(s)
    return r, -r


def _poly_route(h: Hamiltonian) -> np.ndarray:
    q = even_reduce(char_poly(h, FLOAT))
    s_roots = aberth_roots(q.coeffs)
    # real polynomial: snap roots whose imaginary part is pure noise
    big = max(np.max(np.abs(s_roots)), 1.0)
    s_roots = np.where(np.abs(s_roots.imag) <= 1e-14 * big, s_roots.real + 0j, s_roots)
    out = []
    for s in s_roots:
        out.extend(_signed_sqrt_pair(complex(s)))
    return np.array(out, dtype=complex)


def _dense_route(h) -> np.ndarray:
    mat = h.dense() if isinstance(h, Hamiltonian) else np.asarray(h, dtype=complex)
    try:
        return np.linalg.eigvals(mat).astype(complex)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"dense eigensolve failed: {exc}") from exc


def eigenvalues(h: Hamiltonian, method: str = POLY) -> Spectrum:
    if h.n > MAX_FLOAT_DIM:
        raise InvalidDimensionError(f"float routines support n <= {MAX_FLOAT_DIM}")
    if method == POLY:
        ev = _poly_route(h)
    elif method == DENSE:
        ev = _dense_route(h)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Spectrum(ev, method)


def _real_mask(ev: np.ndarray, real_tol: float) -> np.ndarray:
    return np.abs(ev.imag) <= real_tol * (1 + np.abs(ev))


def single_linkage(points: np.ndarray, gap: float) -> list[list[int]]:
    """Groups of indices whose points are chained by distances <= gap."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) <= gap:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def classify(s: Spectrum, real_tol: float = REAL_TOL, cluster_tol: float = CLUSTER_TOL) -> Spectrum:
    ev = s.eigenvalues
    real_count = int(np.count_nonzero(_real_mask(ev, real_tol)))
    gap = cluster_tol * (1 + s.scale)
    clusters = []
    for g in single_linkage(ev, gap):
        center = complex(np.mean(ev[g]))
        clusters.append(Cluster(center, len(g)))
    clusters.sort(key=lambda c: (c.center.real, c.center.imag))
    return replace(s, real_count=real_count, clusters=tuple(clusters))


def hausdorff(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size == 0 and b.size == 0:
        return 0.0
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass(frozen=True)
class CrossCheck:
    distance: float
    tolerance: float
    passed: bool
    poly: Spectrum
    dense: Spectrum


def cross_check(h: Hamiltonian, tol: float = 1e-8) -> CrossCheck:
    """Compare the poly-roots and dense spectra by Hausdorff distance."""
    a = eigenvalues(h, POLY)
    b = eigenvalues(h, DENSE)
    scale = max(a.scale, b.scale)
    d = hausdorff(a.eigenvalues, b.eigenvalues)
    limit = tol * (1 + scale)
    return CrossCheck(d, limit, d <= limit, a, b)


def sort_eigenvalues(ev) -> np.ndarray:
    """Ascending by (real, imag); ties keep solver order."""
    ev = list(np.asarray(ev, dtype=complex))
    order = sorted(range(len(ev)), key=lambda i: (ev[i].real, ev[i].imag))
    return np.array([ev[i] for i in order], dtype=complex)
